"""Lattice periods for imaginary quadratic orders of class number one.

For squarefree d, the ring of integers of Q(sqrt(-d)) is Z[alpha] with
alpha = sqrt(-d) (d = 1, 2 mod 4) or alpha = (-1 + sqrt(-d))/2 (d = 3 mod 4).
Ring elements a + b*alpha mod m act on m-torsion points of C/(Z + Z alpha)
through the 2x2 matrices a*I + b*C_alpha, and the period of a torsion point z
under a unit gamma is

    eta(z) = sum_{j=0}^{r-1} wp(gamma^j z),

r the order of gamma in (O/mO)^x modulo the image of the unit group O^x.

wp and wp' are evaluated as logarithmic derivatives of the Jacobi theta1
series (nome e^{i pi tau}, |nome| <= e^{-pi sqrt(3)/2}), which converges
superexponentially everywhere on the fundamental cell; reducing to the nearest
lattice point and summing the 1/z^2 Laurent tail instead would diverge at
mid-cell points once the cell is taller than the shortest lattice vector.
The classical Laurent coefficients (c2 = g2/20, c3 = g3/28, quadratic
recursion above that) are still computed and exposed: they are the standard
near-pole expansion and a useful cross-check, with g2 = 60*G4 and g3 = 140*G6
taken from the Eisenstein q-series.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    ClassNumberNotOne,
    IdentityTorsionPoint,
    ModulusMismatch,
    NotAUnit,
    NotPrime,
    NotSquarefree,
    PoleAtLattice,
    ToleranceOutOfRange,
)
from ._primes import factorize, is_prime
from .laurent import IntPolynomial
from .modring import MatrixModN, mat_from_rows, mat_order
from .periods import PlotPoint

CLASS_NUMBER_ONE = (1, 2, 3, 7, 11, 19, 43, 67, 163)

_POLE_TOL = 1e-8
_EISENSTEIN_TERMS = 40


@dataclass(frozen=True)
class FieldData:
    """Q(sqrt(-d)) with its integral generator alpha and companion matrix."""

    d: int
    alpha: complex
    min_poly: IntPolynomial  # x^2 + p1 x + q0, monic
    c_alpha: tuple[tuple[int, int], tuple[int, int]]
    w: int  # number of roots of unity in O^x
    class_number_one: bool


def field_data(d: int, allow_higher_class_number: bool = False) -> FieldData:
    if d < 1:
        raise ValueError("d must be >= 1")
    if any(e > 1 for _, e in factorize(d)):
        raise NotSquarefree(f"d = {d} is not squarefree")
    h1 = d in CLASS_NUMBER_ONE
    if not h1 and not allow_higher_class_number:
        raise ClassNumberNotOne(
            f"d = {d} gives class number > 1; pass allow_higher_class_number to proceed"
        )
    if d % 4 in (1, 2):
        alpha = complex(0.0, math.sqrt(d))
        min_poly = IntPolynomial((d, 0, 1))
        rows = ((0, -d), (1, 0))
    else:
        alpha = complex(-0.5, math.sqrt(d) / 2.0)
        q0 = (d + 1) // 4
        min_poly = IntPolynomial((q0, 1, 1))
        rows = ((0, -q0), (1, -1))
    w = 4 if d == 1 else 6 if d == 3 else 2
    return FieldData(d=d, alpha=alpha, min_poly=min_poly, c_alpha=rows, w=w, class_number_one=h1)


@dataclass(frozen=True)
class OkElement:
    """a + b*alpha in O/mO, stored canonically."""

    a: int
    b: int
    modulus: int
    field: FieldData


def ok_element(field: FieldData, m: int, a: int, b: int) -> OkElement:
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return OkElement(a=a % m, b=b % m, modulus=m, field=field)


def ok_matrix(el: OkElement) -> MatrixModN:
    q0, p1 = el.field.min_poly.coeffs[0], el.field.min_poly.coeffs[1]
    a, b = el.a, el.b
    return mat_from_rows([[a, -q0 * b], [b, a - p1 * b]], el.modulus)


def ok_norm(el: OkElement) -> int:
    q0, p1 = el.field.min_poly.coeffs[0], el.field.min_poly.coeffs[1]
    return (el.a * el.a - p1 * el.a * el.b + q0 * el.b * el.b) % el.modulus


def ok_is_unit(el: OkElement) -> bool:
    return math.gcd(ok_norm(el), el.modulus) == 1


def ok_mul(x: OkElement, y: OkElement) -> OkElement:
    if x.modulus != y.modulus or x.field.d != y.field.d:
        raise ModulusMismatch("operands live in different rings")
    q0, p1 = x.field.min_poly.coeffs[0], x.field.min_poly.coeffs[1]
    a = x.a * y.a - q0 * x.b * y.b
    b = x.a * y.b + y.a * x.b - p1 * x.b * y.b
    return ok_element(x.field, x.modulus, a, b)


def ok_pow(x: OkElement, k: int) -> OkElement:
    if k < 0:
        raise ValueError("negative powers not supported")
    acc = ok_element(x.field, x.modulus, 1, 0)
    base = x
    while k:
        if k & 1:
            acc = ok_mul(acc, base)
        base = ok_mul(base, base)
        k >>= 1
    return acc


def unit_images(field: FieldData, m: int) -> tuple[tuple[int, int], ...]:
    """The w roots of unity of O^x as residue pairs mod m (deduplicated)."""
    pairs = [(1, 0), (-1, 0)]
    if field.d == 1:
        pairs += [(0, 1), (0, -1)]
    elif field.d == 3:
        # powers of -rho, rho = alpha a primitive cube root of unity
        pairs += [(0, 1), (0, -1), (-1, -1), (1, 1)]
    return tuple(sorted({(a % m, b % m) for a, b in pairs}))


def quotient_order(el: OkElement) -> int:
    """Order of el in (O/mO)^x divided out by the image of the unit group."""
    if not ok_is_unit(el):
        raise NotAUnit(f"{el.a} + {el.b}*alpha is not a unit mod {el.modulus}")
    m = el.modulus
    r0 = mat_order(ok_matrix(el))
    one = (1 % m, 0)
    intersection = set()
    for ua, ub in unit_images(el.field, m):
        u = ok_element(el.field, m, ua, ub)
        e, cur = 1, u
        while (cur.a, cur.b) != one:
            cur = ok_mul(cur, u)
            e += 1
            if e > 12:  # unit images have order dividing w <= 6
                raise ArithmeticError("unit order overflow")  # pragma: no cover
        if r0 % e != 0:
            continue
        gen = ok_pow(el, r0 // e)  # generates the unique order-e subgroup of <el>
        members, cur = set(), ok_element(el.field, m, 1, 0)
        for _ in range(e):
            members.add((cur.a, cur.b))
            cur = ok_mul(cur, gen)
        if (ua, ub) in members:
            intersection.add((ua, ub))
    return r0 // len(intersection)


def prime_splitting(p: int, field: FieldData) -> str:
    """'split', 'inert', or 'ramified' according to the minimal polynomial mod p."""
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    q0, p1 = field.min_poly.coeffs[0], field.min_poly.coeffs[1]
    if p == 2:
        if p1 % 2 == 0:
            return "ramified"  # x^2 or (x+1)^2
        return "split" if q0 % 2 == 0 else "inert"  # x(x+1) vs irreducible
    disc = (p1 * p1 - 4 * q0) % p
    if disc == 0:
        return "ramified"
    return "split" if pow(disc, (p - 1) // 2, p) == 1 else "inert"


def unit_group_order(p: int, e: int, field: FieldData) -> int:
    """#(O/p^e O)^x from the splitting type of p."""
    if e < 1:
        raise ValueError("e must be >= 1")
    kind = prime_splitting(p, field)
    if kind == "split":
        return ((p - 1) * p ** (e - 1)) ** 2
    if kind == "inert":
        return (p * p - 1) * p ** (2 * (e - 1))
    return (p - 1) * p ** (2 * e - 1)


@dataclass(frozen=True)
class LatticeContext:
    """Precomputed analytic data for wp on Z + Z*alpha at a given tolerance."""

    field: FieldData
    tol: float
    g2: complex
    g3: complex
    laurent_coeffs: tuple[complex, ...]  # (c2, c3, ...): wp = 1/z^2 + sum c_k z^{2k-2}
    theta_coeffs: tuple[complex, ...]  # 2*(-1)^n * qh^{(n+1/2)^2}
    wp_const: complex  # pi^2/3 * theta1'''(0)/theta1'(0)


def _sigma(k: int, n: int) -> int:
    return sum(t**k for t in range(1, n + 1) if n % t == 0)


@functools.lru_cache(maxsize=32)
def _context_cached(d: int, tol: float) -> LatticeContext:
    field = field_data(d)
    tau = field.alpha
    q = np.exp(2j * np.pi * tau)
    e4 = 1 + 240 * sum(_sigma(3, n) * q**n for n in range(1, _EISENSTEIN_TERMS))
    e6 = 1 - 504 * sum(_sigma(5, n) * q**n for n in range(1, _EISENSTEIN_TERMS))
    g2 = complex((4 * math.pi**4 / 3) * e4)
    g3 = complex((8 * math.pi**6 / 27) * e6)

    coeffs = [g2 / 20.0, g3 / 28.0]  # c_2, c_3
    r = 0.45  # tail radius: safely inside the unit convergence disc
    k = 4
    while k <= 80:
        ck = (3.0 / ((2 * k + 1) * (k - 3))) * sum(
            coeffs[h - 2] * coeffs[k - h - 2] for h in range(2, k - 1)
        )
        coeffs.append(ck)
        if abs(ck) * r ** (2 * k - 2) < tol * 1e-2 and k >= 6:
            break
        k += 1

    qh = np.exp(1j * np.pi * tau)
    log_inv_q = -math.log(abs(qh))
    target = -math.log(tol * 1e-3)
    terms = 4
    while (terms + 0.5) ** 2 - (terms + 0.5) < target / log_inv_q and terms < 64:
        terms += 1
    theta_coeffs = tuple(
        complex(2 * (-1) ** n * qh ** ((n + 0.5) ** 2)) for n in range(terms + 2)
    )
    t1 = sum(a * (2 * n + 1) for n, a in enumerate(theta_coeffs))
    t3 = -sum(a * (2 * n + 1) ** 3 for n, a in enumerate(theta_coeffs))
    wp_const = (math.pi**2 / 3.0) * (t3 / t1)
    return LatticeContext(
        field=field,
        tol=tol,
        g2=g2,
        g3=g3,
        laurent_coeffs=tuple(complex(c) for c in coeffs),
        theta_coeffs=theta_coeffs,
        wp_const=complex(wp_const),
    )


def lattice_context(field: FieldData, tol: float = 1e-12) -> LatticeContext:
    if not (1e-14 <= tol <= 1e-6):
        raise ToleranceOutOfRange(f"tol = {tol} outside [1e-14, 1e-6]")
    return _context_cached(field.d, float(tol))


def _reduce_to_cell(ctx: LatticeContext, zs: np.ndarray) -> np.ndarray:
    tau = ctx.field.alpha
    y = zs.imag / tau.imag
    x = zs.real - y * tau.real
    x = x - np.round(x)
    y = y - np.round(y)
    return x + y * np.complex128(tau)


def _theta_sums(ctx: LatticeContext, v: np.ndarray, third: bool):
    t = np.zeros_like(v, dtype=complex)
    t1 = np.zeros_like(t)
    t2 = np.zeros_like(t)
    t3 = np.zeros_like(t) if third else None
    for n, a in enumerate(ctx.theta_coeffs):
        c = 2 * n + 1
        s, co = np.sin(c * v), np.cos(c * v)
        t += a * s
        t1 += (a * c) * co
        t2 -= (a * c * c) * s
        if third:
            t3 -= (a * c**3) * co
    return t, t1, t2, t3


def wp_many(ctx: LatticeContext, zs, derivative: bool = False) -> np.ndarray:
    """wp (or wp') at each z, reduced into the fundamental cell first."""
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    u = _reduce_to_cell(ctx, zs)
    bad = np.abs(u) < _POLE_TOL
    if bad.any():
        raise PoleAtLattice(f"{int(bad.sum())} points within {_POLE_TOL} of the lattice")
    v = np.pi * u
    t, t1, t2, t3 = _theta_sums(ctx, v, third=derivative)
    if derivative:
        return -(np.pi**3) * (t3 * t * t - 3 * t2 * t1 * t + 2 * t1**3) / t**3
    return -(np.pi**2) * (t2 * t - t1 * t1) / (t * t) + ctx.wp_const


def wp(ctx: LatticeContext, z: complex) -> complex:
    return complex(wp_many(ctx, [z])[0])


def wp_prime(ctx: LatticeContext, z: complex) -> complex:
    return complex(wp_many(ctx, [z], derivative=True)[0])


def wp_laurent(ctx: LatticeContext, z: complex) -> complex:
    """Near-pole Laurent evaluation 1/z^2 + sum c_k z^{2k-2} (cross-check only)."""
    z = complex(z)
    acc = 1.0 / (z * z)
    zz = z * z
    p = zz
    for c in ctx.laurent_coeffs:
        acc += c * p
        p *= zz
    return acc


@dataclass(frozen=True)
class TorsionPoint:
    """(a + b*alpha)/m modulo the lattice; order m/gcd(a, b, m)."""

    a: int
    b: int
    modulus: int
    order: int
    lift: complex


def torsion_point(field: FieldData, m: int, a: int, b: int) -> TorsionPoint:
    if m < 1:
        raise ValueError("modulus must be >= 1")
    a, b = a % m, b % m
    order = m // math.gcd(a, math.gcd(b, m))
    lift = (a + b * field.alpha) / m
    return TorsionPoint(a=a, b=b, modulus=m, order=order, lift=lift)


def torsion_points(field: FieldData, m: int) -> list[TorsionPoint]:
    """All m^2 torsion points of C/(Z + Z alpha), identity included."""
    return [torsion_point(field, m, a, b) for a in range(m) for b in range(m)]


def weber_power(field: FieldData) -> int:
    return 2 if field.d == 1 else 3 if field.d == 3 else 1


def weber(field: FieldData, x: complex) -> complex:
    """Unit-group-invariant coordinate: x, x^2 (d=1) or x^3 (d=3)."""
    return complex(x) ** weber_power(field)


def rescale_to_disc(w, m: int):
    """Map w to w/(|w| + sqrt(m)); lands in the open unit disc."""
    if isinstance(w, np.ndarray):
        return w / (np.abs(w) + math.sqrt(m))
    w = complex(w)
    return w / (abs(w) + math.sqrt(m))


def rcfp(
    ctx: LatticeContext,
    el: OkElement,
    point: "TorsionPoint | tuple[int, int]",
    weber_flag: bool = False,
) -> complex:
    """Period of a torsion point: sum of wp over the <el>-orbit (length r).

    With weber_flag the unit-invariant power is applied to each wp value
    before summation.
    """
    m = el.modulus
    if isinstance(point, TorsionPoint):
        if point.modulus != m:
            raise ModulusMismatch(f"point mod {point.modulus}, element mod {m}")
        a, b = point.a, point.b
    else:
        a, b = point[0] % m, point[1] % m
    if a == 0 and b == 0:
        raise IdentityTorsionPoint("the zero torsion point is a pole of wp")
    r = quotient_order(el)  # also raises NotAUnit
    q0, p1 = el.field.min_poly.coeffs[0], el.field.min_poly.coeffs[1]
    ea, eb = el.a, el.b
    power = weber_power(el.field) if weber_flag else 1
    res, ims = [], []
    for _ in range(r):
        val = wp(ctx, (a + b * el.field.alpha) / m)
        if power != 1:
            val = val**power
        res.append(val.real)
        ims.append(val.imag)
        a, b = (ea * a - q0 * eb * b) % m, (eb * a + (ea - p1 * eb) * b) % m
    return complex(math.fsum(res), math.fsum(ims))


def _wp_cache_for_modulus(ctx: LatticeContext, m: int, derivative: bool = False) -> np.ndarray:
    """wp over all m^2 torsion points as a flat array indexed a*m + b (0 -> nan)."""
    a_idx, b_idx = np.divmod(np.arange(m * m, dtype=np.int64), m)
    lifts = (a_idx + b_idx * np.complex128(ctx.field.alpha)) / m
    cache = np.full(m * m, np.nan, dtype=complex)
    cache[1:] = wp_many(ctx, lifts[1:], derivative=derivative)
    return cache


def rcfp_plot(
    ctx: LatticeContext,
    el: OkElement,
    color_modulus: int = 1,
    budget: int = 1_000_000,
    weber_flag: bool = False,
    rescale: bool = False,
) -> list[PlotPoint]:
    """Periods of all m^2 - 1 nonzero torsion points, row-major in (a, b)."""
    m = el.modulus
    if color_modulus < 1:
        raise ValueError("color_modulus must be >= 1")
    total = m * m - 1
    if total > budget:
        raise BudgetExceeded(f"m^2 - 1 = {total} exceeds budget {budget}")
    r = quotient_order(el)
    cache = _wp_cache_for_modulus(ctx, m)
    if weber_flag:
        cache = cache ** weber_power(el.field)
    q0, p1 = el.field.min_poly.coeffs[0], el.field.min_poly.coeffs[1]
    ea, eb = el.a, el.b
    a_cur, b_cur = np.divmod(np.arange(1, m * m, dtype=np.int64), m)
    acc = np.zeros(total, dtype=complex)
    for _ in range(r):
        acc += cache[a_cur * m + b_cur]
        a_cur, b_cur = (
            (ea * a_cur - q0 * eb * b_cur) % m,
            (eb * a_cur + (ea - p1 * eb) * b_cur) % m,
        )
    if rescale:
        acc = rescale_to_disc(acc, m)
    a_all, b_all = np.divmod(np.arange(1, m * m, dtype=np.int64), m)
    c = color_modulus
    return [
        PlotPoint(index=(int(a), int(b)), value=complex(v), color=int(a) % c)
        for a, b, v in zip(a_all, b_all, acc)
    ]


def torsion_coordinate_plot(
    ctx: LatticeContext,
    m: int,
    coordinate: str = "x",
    color_modulus: int = 1,
    s_max: float = 8.0,
    gamma: float = 0.5,
    budget: int = 1_000_000,
) -> list[PlotPoint]:
    """wp ('x') or wp' ('y') at every nonzero m-torsion point.

    Marker size decays with torsion order: s_max * (1/order)^gamma.
    """
    if coordinate not in ("x", "y"):
        raise ValueError("coordinate must be 'x' or 'y'")
    if color_modulus < 1:
        raise ValueError("color_modulus must be >= 1")
    total = m * m - 1
    if total > budget:
        raise BudgetExceeded(f"m^2 - 1 = {total} exceeds budget {budget}")
    cache = _wp_cache_for_modulus(ctx, m, derivative=(coordinate == "y"))
    a_all, b_all = np.divmod(np.arange(1, m * m, dtype=np.int64), m)
    g = math.gcd
    points = []
    for a, b, v in zip(a_all, b_all, cache[1:]):
        order = m // g(int(a), g(int(b), m))
        points.append(
            PlotPoint(
                index=(int(a), int(b)),
                value=complex(v),
                color=int(a) % color_modulus,
                size=s_max * (1.0 / order) ** gamma,
            )
        )
    return points
