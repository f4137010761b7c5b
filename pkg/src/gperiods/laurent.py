"""Integer Laurent envelopes of period plots.

The core objects are cyclotomic polynomials, the reduction tables that express
x^k modulo a monic divisor of x^d - 1, and the Laurent polynomial

    g(z_1, ..., z_s) = sum_{k=0}^{d-1} prod_j z_j^{c_{jk}},

whose image on the unit torus envelopes the corresponding period plots. For a
d-th cyclotomic divisor with prime d this image is the filled d-cusped
hypocycloid, which is also where the h-component of a period decomposition
must land; membership testing against that region lives here too.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    NotADivisor,
    NotMonic,
    NotPrime,
)
from ._primes import is_prime

_UNIT_TOL = 1e-12
_SAMPLE_BUDGET = 4_000_000


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ascending order, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial -> -1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(tuple(out))

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Exact integer (quotient, remainder) by a monic divisor."""
        if not divisor.is_monic:
            raise NotMonic(f"divisor {divisor.coeffs} is not monic")
        rem = list(self.coeffs)
        s = divisor.degree
        if len(rem) <= s:
            return IntPolynomial(()), IntPolynomial(tuple(rem))
        quot = [0] * (len(rem) - s)
        for top in range(len(rem) - 1, s - 1, -1):
            c = rem[top]
            if c:
                quot[top - s] = c
                for j, pj in enumerate(divisor.coeffs):
                    rem[top - s + j] -= c * pj
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:s]))


def x_pow_minus_one(d: int) -> IntPolynomial:
    return IntPolynomial((-1,) + (0,) * (d - 1) + (1,))


def _divisors(d: int) -> list[int]:
    small, large = [], []
    for k in range(1, math.isqrt(d) + 1):
        if d % k == 0:
            small.append(k)
            if k != d // k:
                large.append(d // k)
    return small + large[::-1]


@functools.lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """d-th cyclotomic polynomial via Phi_d = (x^d - 1) / prod_{k|d, k<d} Phi_k."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return IntPolynomial((-1, 1))
    num = x_pow_minus_one(d)
    for k in _divisors(d)[:-1]:
        num, rem = num.divmod_monic(cyclotomic(k))
        if rem.coeffs:
            raise ArithmeticError(f"inexact cyclotomic division at d={d}, k={k}")
    return num


@dataclass(frozen=True)
class ReductionTable:
    """Columns c_{.k} of x^k reduced modulo a monic divisor of x^d - 1.

    columns[k][j] is the coefficient of x^j in x^k mod poly, exact integers.
    """

    d: int
    poly: IntPolynomial
    columns: tuple[tuple[int, ...], ...]

    @property
    def degree(self) -> int:
        return self.poly.degree


def reduction_table(poly: IntPolynomial, d: int) -> ReductionTable:
    if d < 1:
        raise ValueError("d must be >= 1")
    if not poly.is_monic or poly.degree < 1:
        raise NotMonic(f"{poly.coeffs} is not monic of positive degree")
    _, rem = x_pow_minus_one(d).divmod_monic(poly)
    if rem.coeffs:
        raise NotADivisor(f"{poly.coeffs} does not divide x^{d} - 1")
    s = poly.degree
    cols = []
    col = [0] * s
    col[0] = 1
    for _ in range(d):
        cols.append(tuple(col))
        top = col[s - 1]
        col = [0] + col[:-1]
        if top:
            for j in range(s):
                col[j] -= top * poly.coeffs[j]
    return ReductionTable(d=d, poly=poly, columns=tuple(cols))


@dataclass(frozen=True)
class TorusPoint:
    """Tuple of unit-modulus complex coordinates."""

    coords: tuple[complex, ...]

    def __post_init__(self) -> None:
        coords = tuple(complex(z) for z in self.coords)
        for z in coords:
            if abs(abs(z) - 1.0) > _UNIT_TOL:
                raise ValueError(f"|{z}| deviates from 1 by more than {_UNIT_TOL}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_angles(cls, angles: Iterable[float]) -> "TorusPoint":
        return cls(tuple(cmath.exp(2j * math.pi * a) for a in angles))


def eval_g(table: ReductionTable, z: "TorusPoint | Sequence[complex]") -> complex:
    """Evaluate g at z; negative table entries mean complex reciprocals."""
    coords = z.coords if isinstance(z, TorusPoint) else tuple(complex(w) for w in z)
    if len(coords) != table.degree:
        raise DimensionMismatch(f"need {table.degree} coordinates, got {len(coords)}")
    res, ims = [], []
    for col in table.columns:
        term = complex(1.0)
        for zj, ej in zip(coords, col):
            if ej:
                term *= zj ** ej
        res.append(term.real)
        ims.append(term.imag)
    return complex(math.fsum(res), math.fsum(ims))


def sample_image(table: ReductionTable, samples_per_axis: int, seed: int = 0) -> np.ndarray:
    """g evaluated on a jittered uniform torus grid; deterministic per seed."""
    if samples_per_axis < 1:
        raise ValueError("samples_per_axis must be >= 1")
    s = table.degree
    total = samples_per_axis ** s
    if total > _SAMPLE_BUDGET:
        raise BudgetExceeded(f"{total} samples exceed budget {_SAMPLE_BUDGET}")
    rng = np.random.default_rng(seed)
    idx = np.array(list(itertools.product(range(samples_per_axis), repeat=s)), dtype=float)
    idx = idx.reshape(total, s)
    angles = (idx + rng.random((total, s))) / samples_per_axis
    z = np.exp(2j * np.pi * angles)
    out = np.zeros(total, dtype=complex)
    for col in table.columns:
        term = np.ones(total, dtype=complex)
        for j, ej in enumerate(col):
            if ej:
                term = term * z[:, j] ** ej
        out += term
    return out


def hypocycloid_boundary(d: int, theta):
    """Boundary point (d-1)e^{i theta} + e^{-i(d-1) theta} of the d-cusped region."""
    if d < 2:
        raise ValueError("d must be >= 2")
    if isinstance(theta, (int, float)):
        return (d - 1) * cmath.exp(1j * theta) + cmath.exp(-1j * (d - 1) * theta)
    th = np.asarray(theta, dtype=float)
    return (d - 1) * np.exp(1j * th) + np.exp(-1j * (d - 1) * th)


@functools.lru_cache(maxsize=32)
def _polygon(q: int, tol_bucket: float) -> np.ndarray:
    """Closed vertex array for the q-cusped hypocycloid, sagitta < tol_bucket/2.

    Vertex count is a multiple of q so every cusp is an exact vertex.
    """
    bpp = (q - 1) + (q - 1) ** 2  # bound on |boundary''|
    dtheta = math.sqrt(8.0 * (tol_bucket / 2.0) / bpp)
    n = max(10_000, math.ceil(2 * math.pi / dtheta))
    n = ((n + q - 1) // q) * q
    thetas = 2 * np.pi * np.arange(n + 1) / n
    return hypocycloid_boundary(q, thetas)


def _crossing_inside(points: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Even-odd rule point-in-polygon, chunked to bound memory."""
    x1, y1 = verts.real[:-1], verts.imag[:-1]
    x2, y2 = verts.real[1:], verts.imag[1:]
    dy = y2 - y1
    safe_dy = np.where(dy == 0.0, 1.0, dy)
    out = np.zeros(points.shape[0], dtype=bool)
    chunk = max(1, 20_000_000 // max(1, verts.size))
    for lo in range(0, points.shape[0], chunk):
        px = points.real[lo : lo + chunk, None]
        py = points.imag[lo : lo + chunk, None]
        straddle = (y1 > py) != (y2 > py)
        xcross = x1 + (py - y1) * (x2 - x1) / safe_dy
        hits = straddle & (px < xcross)
        out[lo : lo + chunk] = (hits.sum(axis=1) % 2).astype(bool)
    return out


def _distance_to_boundary(p: complex, q: int, verts: np.ndarray) -> float:
    """Distance from p to the true boundary curve, refined near closest vertex."""
    i = int(np.argmin(np.abs(verts[:-1] - p)))
    n = verts.shape[0] - 1
    lo = 2 * math.pi * (i - 1) / n
    hi = 2 * math.pi * (i + 1) / n

    def dist(t: float) -> float:
        return abs(hypocycloid_boundary(q, t) - p)

    for _ in range(60):  # golden-section on a unimodal-enough bracket
        m1 = lo + (hi - lo) * 0.381966
        m2 = hi - (hi - lo) * 0.381966
        if dist(m1) <= dist(m2):
            hi = m2
        else:
            lo = m1
    return dist(0.5 * (lo + hi))


def inside_filled_hypocycloid(points, q: int, tol: float) -> np.ndarray:
    """Membership in the closed filled q-cusped hypocycloid, inflated by tol."""
    if q < 3:
        raise ValueError("q must be >= 3")
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    verts = _polygon(q, min(tol, 1e-6))
    inside = _crossing_inside(pts, verts)
    pending = ~inside & (np.abs(pts) <= q + tol)
    for i in np.nonzero(pending)[0]:
        if _distance_to_boundary(complex(pts[i]), q, verts) <= tol:
            inside[i] = True
    return inside


def prop6_decompose(
    eta: complex, n: int, k: int, d: int, tol: float = 1e-9
) -> tuple[complex, bool]:
    """Split eta into e(k/n) + h*e(-k/((d-1)n)) and test h against H_{d-1}.

    For prime d dividing p - 1 and n a power of p, h lands in the filled
    (d-1)-cusped hypocycloid (the segment [-2, 2] when d = 3, the point 1 when
    d = 2). Returns (h, inside-with-tolerance).
    """
    if d < 2 or not is_prime(d):
        raise NotPrime(f"d = {d} must be a prime >= 2")
    if n < 2:
        raise ValueError("n must be >= 2")
    theta = 2 * math.pi * k / ((d - 1) * n)
    h = (complex(eta) - cmath.exp(2j * math.pi * k / n)) * cmath.exp(1j * theta)
    if d == 2:
        return h, abs(h - 1.0) <= tol
    if d == 3:
        return h, abs(h.imag) <= tol and -2 - tol <= h.real <= 2 + tol
    return h, bool(inside_filled_hypocycloid([h], d - 1, tol)[0])


def prop6_inside_batch(etas, n: int, ks, d: int, tol: float = 1e-9) -> np.ndarray:
    """Vectorized membership half of prop6_decompose over matching arrays."""
    if d < 2 or not is_prime(d):
        raise NotPrime(f"d = {d} must be a prime >= 2")
    etas = np.asarray(etas, dtype=complex)
    ks = np.asarray(ks, dtype=np.int64)
    theta = 2 * np.pi * ks / ((d - 1) * n)
    h = (etas - np.exp(2j * np.pi * ks / n)) * np.exp(1j * theta)
    if d == 2:
        return np.abs(h - 1.0) <= tol
    if d == 3:
        return (np.abs(h.imag) <= tol) & (h.real >= -2 - tol) & (h.real <= 2 + tol)
    return inside_filled_hypocycloid(h, d - 1, tol)
