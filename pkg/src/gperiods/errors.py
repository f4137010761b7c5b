"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own class;
all inherit from GPeriodsError so a CLI can catch the lot in one place.
"""


class GPeriodsError(Exception):
    """Base class for all package-specific errors."""


class NotAUnit(GPeriodsError):
    """Element is not invertible modulo the given modulus."""


class NotInvertible(GPeriodsError):
    """Matrix determinant is not a unit modulo the modulus."""


class NotFound(GPeriodsError):
    """Bounded search exhausted its candidate budget without a hit."""


class ImpossibleOrder(GPeriodsError):
    """Requested element order is provably unattainable for these parameters."""


class BadExponent(GPeriodsError):
    """Exponent parameters out of range (e.g. a > e in a p-power construction)."""


class NotMonic(GPeriodsError):
    """Polynomial argument must be monic."""


class NotADivisor(GPeriodsError):
    """Polynomial does not divide x^d - 1 exactly."""


class NotPrime(GPeriodsError):
    """Argument must be prime."""


class DimensionMismatch(GPeriodsError):
    """Vector/matrix dimensions do not agree."""


class BudgetExceeded(GPeriodsError):
    """Requested computation is larger than the evaluation budget."""


class NotSquarefree(GPeriodsError):
    """Field discriminant parameter d must be squarefree."""


class ClassNumberNotOne(GPeriodsError):
    """d is outside the class-number-one list and no override was given."""


class ModulusMismatch(GPeriodsError):
    """Operands live modulo different moduli."""


class ToleranceOutOfRange(GPeriodsError):
    """Numeric tolerance outside the supported range."""


class PoleAtLattice(GPeriodsError):
    """Evaluation point is (numerically) on the period lattice."""


class IdentityTorsionPoint(GPeriodsError):
    """The zero torsion point is a pole and cannot be plotted."""


class EmptyPointSet(GPeriodsError):
    """No points supplied where at least one is required."""
