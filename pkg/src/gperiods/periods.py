"""Gaussian periods and their matrix (supercharacter) generalization.

A period spec fixes (n, omega) with omega a unit mod n of multiplicative order
d; the period at k is sum_{j<d} e(omega^j k / n) with e(x) = exp(2 pi i x).
The matrix version replaces omega-powers by weight vectors w_j = A^j . 1 and
evaluates sum_j e((w_j . x)/n) over x in (Z/nZ)^m. Bulk evaluation is
vectorized; scalar entry points use error-free (fsum) summation so long orbits
do not drift.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, NotAUnit
from .modring import MatrixModN, Residue, mat_from_rows, mat_order, mat_vec, mul_order

_TABLE_LIMIT = 1_000_000
_SUPERCHAR_BUDGET = 20_000_000
_CHUNK = 1 << 20


@dataclass(frozen=True)
class PeriodSpec:
    """Parameters of a Gaussian-period plot; d and the omega-orbit are derived."""

    n: int
    omega: int
    d: int
    color_modulus: int
    orbit: tuple[int, ...]


def period_spec(n: int, omega: int, color_modulus: int = 1) -> PeriodSpec:
    if n < 2:
        raise ValueError("n must be >= 2")
    if color_modulus < 1:
        raise ValueError("color_modulus must be >= 1")
    omega %= n
    if math.gcd(omega, n) != 1:
        raise NotAUnit(f"omega = {omega} is not a unit mod {n}")
    d = mul_order(Residue(omega, n))
    orbit = []
    t = 1
    for _ in range(d):
        orbit.append(t)
        t = t * omega % n
    return PeriodSpec(n=n, omega=omega, d=d, color_modulus=color_modulus, orbit=tuple(orbit))


@dataclass(frozen=True)
class SupercharSpec:
    """Parameters of a supercharacter plot over (Z/nZ)^m.

    weights[j] = A^j . (1, ..., 1) mod n; weights[0] is the all-ones vector.
    """

    n: int
    m: int
    a: MatrixModN
    d: int
    color_modulus: int
    weights: tuple[tuple[int, ...], ...]


def superchar_spec(a: "MatrixModN | list", n: int | None = None, color_modulus: int = 1) -> SupercharSpec:
    if not isinstance(a, MatrixModN):
        if n is None:
            raise ValueError("n is required when passing raw rows")
        a = mat_from_rows(a, n)
    n = a.modulus
    if n < 2:
        raise ValueError("n must be >= 2")
    if color_modulus < 1:
        raise ValueError("color_modulus must be >= 1")
    d = mat_order(a)  # raises NotInvertible for singular a
    m = a.dim
    weights = []
    w = tuple([1] * m)
    for _ in range(d):
        weights.append(w)
        w = mat_vec(a, w)
    return SupercharSpec(n=n, m=m, a=a, d=d, color_modulus=color_modulus, weights=tuple(weights))


@dataclass(frozen=True)
class PlotPoint:
    """One plotted value: lattice index, complex value, color class, marker size."""

    index: "int | tuple[int, ...]"
    value: complex
    color: int
    size: float = 1.0


def gaussian_period(spec: PeriodSpec, k: int) -> complex:
    """Period value at k, with error-free summation over the orbit."""
    n = spec.n
    res, ims = [], []
    for w in spec.orbit:
        t = 2 * math.pi * ((w * k) % n) / n
        res.append(math.cos(t))
        ims.append(math.sin(t))
    return complex(math.fsum(res), math.fsum(ims))


@functools.lru_cache(maxsize=4)
def _unit_roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def gaussian_values(spec: PeriodSpec, ks=None) -> np.ndarray:
    """Vectorized period values at the given k (default: all of Z/nZ)."""
    n = spec.n
    ks = np.arange(n, dtype=np.int64) if ks is None else np.asarray(ks, dtype=np.int64)
    table = _unit_roots(n) if n <= _TABLE_LIMIT else None
    out = np.zeros(ks.shape, dtype=complex)
    for w in spec.orbit:
        idx = (w * ks) % n
        if table is not None:
            out += table[idx]
        else:
            out += np.exp(2j * np.pi * (idx / n))
    return out


def gaussian_plot(spec: PeriodSpec) -> list[PlotPoint]:
    """All n period values in k-order, colored by k mod color_modulus."""
    vals = gaussian_values(spec)
    c = spec.color_modulus
    return [
        PlotPoint(index=k, value=complex(v), color=k % c)
        for k, v in enumerate(vals)
    ]


def supercharacter_value(spec: SupercharSpec, x) -> complex:
    if len(x) != spec.m:
        raise ValueError(f"x must have {spec.m} coordinates")
    n = spec.n
    res, ims = [], []
    for w in spec.weights:
        t = 2 * math.pi * (sum(wi * xi for wi, xi in zip(w, x)) % n) / n
        res.append(math.cos(t))
        ims.append(math.sin(t))
    return complex(math.fsum(res), math.fsum(ims))


def _coordinate(idx: np.ndarray, n: int, m: int, i: int) -> np.ndarray:
    """i-th coordinate of the row-major enumeration of (Z/nZ)^m."""
    return (idx // n ** (m - 1 - i)) % n


def supercharacter_values(spec: SupercharSpec, budget: int = _SUPERCHAR_BUDGET) -> np.ndarray:
    """Values at all n^m arguments in row-major order."""
    n, m = spec.n, spec.m
    total = n**m
    if total > budget:
        raise BudgetExceeded(f"n^m = {total} exceeds budget {budget}")
    table = _unit_roots(n) if n <= _TABLE_LIMIT else None
    out = np.empty(total, dtype=complex)
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        coords = [_coordinate(idx, n, m, i) for i in range(m)]
        acc = np.zeros(idx.shape, dtype=complex)
        for w in spec.weights:
            dot = np.zeros(idx.shape, dtype=np.int64)
            for wi, xi in zip(w, coords):
                dot += wi * xi
            dot %= n
            acc += table[dot] if table is not None else np.exp(2j * np.pi * (dot / n))
        out[lo : lo + idx.shape[0]] = acc
    return out


def supercharacter_plot(spec: SupercharSpec, budget: int = _SUPERCHAR_BUDGET) -> list[PlotPoint]:
    """All n^m values, row-major, colored by the first coordinate mod c."""
    vals = supercharacter_values(spec, budget=budget)
    n, m, c = spec.n, spec.m, spec.color_modulus
    points = []
    for t, v in enumerate(vals):
        x = tuple(int((t // n ** (m - 1 - i)) % n) for i in range(m))
        points.append(PlotPoint(index=x, value=complex(v), color=x[0] % c))
    return points


def frame_batches(n_points: int, batch_size: int) -> list[tuple[int, int]]:
    """Half-open index ranges of size batch_size covering range(n_points)."""
    if n_points < 0 or batch_size < 1:
        raise ValueError("need n_points >= 0 and batch_size >= 1")
    return [(lo, min(lo + batch_size, n_points)) for lo in range(0, n_points, batch_size)]
