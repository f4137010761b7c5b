"""Residue and matrix arithmetic mod n with fast element-order computation.

Orders are found by factoring a known multiple of the group exponent and
stripping primes (descent), never by naive iteration, so moduli in the 10^6..10^7
range stay fast. Matrix orders reduce to prime-power moduli via CRT and use

    #GL_m(Z/p^e) = p^{(e-1)m^2} * p^{m(m-1)/2} * prod_{j=1..m} (p^j - 1)

as the factored multiple. Python integers keep every intermediate exact.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field

from .errors import (
    BadExponent,
    ImpossibleOrder,
    NotAUnit,
    NotFound,
    NotInvertible,
    NotPrime,
)
from ._primes import factorize, is_prime
from .laurent import IntPolynomial, cyclotomic


@dataclass(frozen=True)
class Residue:
    """Integer residue a mod n, stored canonically in [0, n)."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __pow__(self, k: int) -> "Residue":
        return Residue(pow(self.value, k, self.modulus), self.modulus)

    @property
    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def inverse(self) -> "Residue":
        if not self.is_unit:
            raise NotAUnit(f"{self.value} is not a unit mod {self.modulus}")
        return Residue(pow(self.value, -1, self.modulus), self.modulus)


@dataclass(frozen=True)
class FactoredModulus:
    """n together with its prime factorization [(p, e), ...] sorted by p."""

    n: int
    factors: tuple[tuple[int, int], ...]


def factor(n: int) -> FactoredModulus:
    """Factor n >= 1 (trial division then Brent rho; deterministic)."""
    return FactoredModulus(n=n, factors=tuple(factorize(n)))


@dataclass(frozen=True)
class MatrixModN:
    """Square matrix over Z/nZ; entries canonical in [0, n)."""

    entries: tuple[tuple[int, ...], ...]
    modulus: int
    _pow_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = self.modulus
        if n < 1:
            raise ValueError("modulus must be >= 1")
        m = len(self.entries)
        rows = []
        for row in self.entries:
            if len(row) != m:
                raise ValueError("matrix must be square")
            rows.append(tuple(int(x) % n for x in row))
        object.__setattr__(self, "entries", tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @functools.cached_property
    def det(self) -> int:
        return _det_int([list(r) for r in self.entries]) % self.modulus

    @property
    def det_unit(self) -> bool:
        return math.gcd(self.det, self.modulus) == 1


def _det_int(a: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    m = len(a)
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def mat_from_rows(rows, n: int) -> MatrixModN:
    return MatrixModN(entries=tuple(tuple(r) for r in rows), modulus=n)


def identity(m: int, n: int) -> MatrixModN:
    return mat_from_rows([[1 if i == j else 0 for j in range(m)] for i in range(m)], n)


def mat_mul(a: MatrixModN, b: MatrixModN) -> MatrixModN:
    if a.modulus != b.modulus or a.dim != b.dim:
        raise ValueError("incompatible operands")
    n, m = a.modulus, a.dim
    bt = list(zip(*b.entries))
    rows = tuple(
        tuple(sum(x * y for x, y in zip(ra, cb)) % n for cb in bt) for ra in a.entries
    )
    return MatrixModN(entries=rows, modulus=n)


def mat_vec(a: MatrixModN, v) -> tuple[int, ...]:
    if len(v) != a.dim:
        raise ValueError("vector length mismatch")
    n = a.modulus
    return tuple(sum(x * y for x, y in zip(row, v)) % n for row in a.entries)


def mat_pow(a: MatrixModN, k: int) -> MatrixModN:
    if k < 0:
        raise ValueError("negative matrix powers not supported")
    hit = a._pow_cache.get(k)
    if hit is not None:
        return hit
    result = identity(a.dim, a.modulus)
    base = a
    e = k
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    if len(a._pow_cache) < 64:
        a._pow_cache[k] = result
    return result


def companion_matrix(poly: IntPolynomial, n: int) -> MatrixModN:
    """Companion matrix of a monic polynomial, reduced mod n."""
    if not poly.is_monic or poly.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    m = poly.degree
    rows = [[0] * m for _ in range(m)]
    for j in range(m - 1):
        rows[j + 1][j] = 1
    for i in range(m):
        rows[i][m - 1] = -poly.coeffs[i]
    return mat_from_rows(rows, n)


def _order_by_descent(multiple_factors: dict[int, int], power_is_identity) -> int:
    """Exact order given a factored multiple of it and a tester A^k == I."""
    order = 1
    for p, e in multiple_factors.items():
        order *= p**e
    for p in multiple_factors:
        while order % p == 0 and power_is_identity(order // p):
            order //= p
    return order


def _merge(acc: dict[int, int], extra: list[tuple[int, int]], mult: int = 1) -> None:
    for p, e in extra:
        acc[p] = acc.get(p, 0) + e * mult


def mul_order(a: Residue) -> int:
    """Multiplicative order of a unit mod n (factored-exponent descent + CRT)."""
    if not a.is_unit:
        raise NotAUnit(f"{a.value} is not a unit mod {a.modulus}")
    if a.modulus == 1:
        return 1
    result = 1
    for p, e in factor(a.modulus).factors:
        pe = p**e
        av = a.value % pe
        mult: dict[int, int] = {}
        _merge(mult, factorize(p - 1))
        if e > 1:
            _merge(mult, [(p, e - 1)])
        ordpe = _order_by_descent(mult, lambda k: pow(av, k, pe) == 1)
        result = math.lcm(result, ordpe)
    return result


def _gl_order_factors(p: int, e: int, m: int) -> dict[int, int]:
    mult: dict[int, int] = {}
    _merge(mult, [(p, (e - 1) * m * m + m * (m - 1) // 2)])
    for j in range(1, m + 1):
        _merge(mult, factorize(p**j - 1))
    return {q: k for q, k in mult.items() if k > 0}


def mat_order(a: MatrixModN) -> int:
    """Order of an invertible matrix mod n, via CRT over prime-power factors."""
    if not a.det_unit:
        raise NotInvertible(f"determinant {a.det} is not a unit mod {a.modulus}")
    if a.modulus == 1:
        return 1
    m = a.dim
    result = 1
    for p, e in factor(a.modulus).factors:
        pe = p**e
        ape = mat_from_rows(a.entries, pe)
        ident = identity(m, pe)
        mult = _gl_order_factors(p, e, m)
        ordpe = _order_by_descent(mult, lambda k: mat_pow(ape, k) == ident)
        result = math.lcm(result, ordpe)
    return result


def check_cyclotomic_vanishing(a: MatrixModN, d: int) -> bool:
    """Whether Phi_d(A) is the zero matrix mod n (Horner over matrices)."""
    phi = cyclotomic(d)
    n, m = a.modulus, a.dim
    acc = mat_from_rows([[0] * m for _ in range(m)], n)
    for c in reversed(phi.coeffs):
        acc = mat_mul(acc, a)
        if c:
            cm = c % n
            acc = mat_from_rows(
                [
                    [(acc.entries[i][j] + (cm if i == j else 0)) for j in range(m)]
                    for i in range(m)
                ],
                n,
            )
    zero = mat_from_rows([[0] * m for _ in range(m)], n)
    return acc == zero


def order_p_power_element(p: int, e: int, a: int, beta: int) -> Residue:
    """The element 1 + p^{e-a} * beta mod p^e.

    For odd p and 1 <= a < e this has multiplicative order exactly p^a when
    beta is a unit mod p^a; in general (including a = e) the construction is
    returned as-is and only divisibility-style guarantees may survive.
    """
    if not is_prime(p):
        raise NotPrime(f"p = {p} must be prime")
    if a < 1 or a > e:
        raise BadExponent(f"need 1 <= a <= e, got a={a}, e={e}")
    if beta % p == 0:
        raise NotAUnit(f"beta = {beta} is divisible by p = {p}")
    pe = p**e
    return Residue(1 + p ** (e - a) * beta, pe)


def find_matrix(
    n: int,
    m: int,
    d: int,
    require_vanishing: bool = False,
    seed: int = 0,
    budget: int = 10**6,
) -> MatrixModN:
    """Search GL_m(Z/nZ) for an element of order exactly d.

    With require_vanishing, additionally demand Phi_d(A) = 0 mod n. The
    cyclotomic companion matrix is tried first when its size matches; after
    that, seeded random candidates B are power-adjusted to B^{ord(B)/d}
    whenever d divides ord(B). Every random draw counts against the budget.

    Raises ImpossibleOrder when require_vanishing is set and d does not divide
    #GL_m(Z/pZ) for some prime p | n; raises NotFound on budget exhaustion.
    """
    if n < 2 or m < 1 or d < 1:
        raise ValueError("need n >= 2, m >= 1, d >= 1")
    if require_vanishing and d > 1:
        for p, _ in factor(n).factors:
            glp = p ** (m * (m - 1) // 2)
            for j in range(1, m + 1):
                glp *= p**j - 1
            if glp % d != 0:
                raise ImpossibleOrder(
                    f"no order-{d} solution of Phi_{d}(A) = 0 exists mod {n}: "
                    f"{d} does not divide #GL_{m}(Z/{p}Z)"
                )
    if d == 1:
        return identity(m, n)

    phi = cyclotomic(d)
    if phi.degree == m and math.gcd(phi(0), n) == 1:
        cand = companion_matrix(phi, n)
        if cand.det_unit and mat_order(cand) == d:
            return cand  # Phi_d(companion) = 0 over Z, hence mod n

    rng = random.Random(seed)
    for _ in range(budget):
        b = mat_from_rows(
            [[rng.randrange(n) for _ in range(m)] for _ in range(m)], n
        )
        if not b.det_unit:
            continue
        t = mat_order(b)
        if t % d != 0:
            continue
        cand = mat_pow(b, t // d)
        if require_vanishing and not check_cyclotomic_vanishing(cand, d):
            continue
        return cand
    raise NotFound(f"no order-{d} element found in GL_{m}(Z/{n}Z) within {budget} draws")
