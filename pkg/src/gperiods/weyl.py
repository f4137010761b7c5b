"""Exponential-sum equidistribution checks for matrix period arguments.

For an integer matrix A, the point set Lambda collects the fractional vectors
((A^0 . x)/n, ..., (A^{s-1} . x)/n) over x in (Z/nZ)^m. The character sum
attached to an integer vector v has a closed form: it equals n^m exactly when
n divides every entry of alpha = f_v(A) . 1 computed over Z (f_v(t) = sum v_j
t^j), and 0 otherwise. Both routes are implemented: the exact integer decision
and the brute-force numeric sum, plus a grid-box discrepancy estimator.

Matrices here are raw integer rows, not canonical residues: the exact route
works over Z and must respect the caller's chosen lift (the divisibility
decision itself is lift-independent).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .modring import MatrixModN

_NUMERIC_BUDGET = 10_000_000


@dataclass(frozen=True)
class WeylInstance:
    n: int
    m: int
    rows: tuple[tuple[int, ...], ...]
    s: int
    v: tuple[int, ...]


def weyl_instance(n: int, rows, v, s: int | None = None) -> WeylInstance:
    if isinstance(rows, MatrixModN):
        rows = rows.entries
    rows = tuple(tuple(int(x) for x in row) for row in rows)
    m = len(rows)
    if any(len(row) != m for row in rows):
        raise ValueError("matrix must be square")
    if n < 1:
        raise ValueError("n must be >= 1")
    v = tuple(int(x) for x in v)
    s = len(v) if s is None else s
    if s < 1 or len(v) != s:
        raise ValueError("v must have length s >= 1")
    if not any(v):
        raise ValueError("v must be nonzero")
    return WeylInstance(n=n, m=m, rows=rows, s=s, v=v)


def _mat_vec_int(rows, vec) -> list[int]:
    return [sum(a * x for a, x in zip(row, vec)) for row in rows]


def _weight_rows_int(inst: WeylInstance) -> list[list[int]]:
    """A^j . 1 over Z for j = 0..s-1."""
    w = [1] * inst.m
    out = []
    for _ in range(inst.s):
        out.append(list(w))
        w = _mat_vec_int(inst.rows, w)
    return out


def alpha_vector(inst: WeylInstance) -> tuple[int, ...]:
    """f_v(A) . (1, ..., 1) with exact integer arithmetic, no reduction."""
    acc = [0] * inst.m
    for vj, wj in zip(inst.v, _weight_rows_int(inst)):
        if vj:
            for i in range(inst.m):
                acc[i] += vj * wj[i]
    return tuple(acc)


def weyl_sum_exact(inst: WeylInstance) -> int:
    """n^m if n | alpha_l for every l, else 0. Pure integer path."""
    alpha = alpha_vector(inst)
    return inst.n**inst.m if all(a % inst.n == 0 for a in alpha) else 0


def weyl_sum_numeric(inst: WeylInstance, budget: int = _NUMERIC_BUDGET) -> complex:
    """Brute-force sum of e(u . v) over all points u of the Lambda set."""
    n, m, s = inst.n, inst.m, inst.s
    total = n**m
    if total > budget:
        raise BudgetExceeded(f"n^m = {total} exceeds budget {budget}")
    w = np.array([[x % n for x in row] for row in _weight_rows_int(inst)], dtype=np.int64)
    v = np.array(inst.v, dtype=np.int64)
    chunk = 1 << 20
    partials_re, partials_im = [], []
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        coords = np.stack([(idx // n ** (m - 1 - i)) % n for i in range(m)])
        u = (w @ coords) % n  # (s, chunk), entries in [0, n)
        phase = (v @ u) / n
        vals = np.exp(2j * np.pi * phase)
        partials_re.append(float(vals.real.sum()))
        partials_im.append(float(vals.imag.sum()))
    return complex(math.fsum(partials_re), math.fsum(partials_im))


@dataclass(frozen=True)
class LambdaSet:
    """All n^m fractional vectors (multiset), one row per argument x."""

    n: int
    m: int
    s: int
    points: np.ndarray  # shape (n^m, s), float64 in [0, 1)


def build_lambda(n: int, m: int, rows, s: int, budget: int = _NUMERIC_BUDGET) -> LambdaSet:
    if isinstance(rows, MatrixModN):
        rows = rows.entries
    inst = weyl_instance(n, rows, (1,) * s)  # v unused; reuses validation
    total = n**m
    if total > budget:
        raise BudgetExceeded(f"n^m = {total} exceeds budget {budget}")
    w = np.array([[x % n for x in row] for row in _weight_rows_int(inst)], dtype=np.int64)
    idx = np.arange(total, dtype=np.int64)
    coords = np.stack([(idx // n ** (m - 1 - i)) % n for i in range(m)])
    u = (w @ coords) % n
    return LambdaSet(n=n, m=m, s=s, points=(u.T / n).astype(np.float64))


def _prefix_counts(points: np.ndarray, grid: int) -> np.ndarray:
    s = points.shape[1]
    hist, _ = np.histogramdd(points, bins=[grid] * s, range=[(0.0, 1.0)] * s)
    pref = np.zeros(tuple(grid + 1 for _ in range(s)))
    pref[(slice(1, None),) * s] = hist
    for axis in range(s):
        pref = np.cumsum(pref, axis=axis)
    return pref


def discrepancy_estimate(
    points: "LambdaSet | np.ndarray",
    grid: int,
    seed: int = 0,
    box_budget: int = 100_000,
) -> float:
    """Largest |count/N - volume| over boxes with corners on the grid.

    Exhaustive over all grid boxes for s <= 2; seeded random boxes for s >= 3.
    A restricted-corner sup, hence a lower bound on the true discrepancy.
    """
    pts = points.points if isinstance(points, LambdaSet) else np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n_pts, s = pts.shape
    if n_pts == 0:
        raise ValueError("empty point set")
    if grid < 1:
        raise ValueError("grid must be >= 1")
    pref = _prefix_counts(pts, grid)
    edges = np.arange(grid + 1) / grid

    if s == 1:
        cnt = pref  # (g+1,)
        diff = np.abs(
            (cnt[None, :] - cnt[:, None]) / n_pts - (edges[None, :] - edges[:, None])
        )
        return float(np.max(np.triu(diff, 1)))

    if s == 2:
        best = 0.0
        for a1 in range(grid):
            for b1 in range(a1 + 1, grid + 1):
                cnt = pref[b1, :] - pref[a1, :]  # (g+1,) column prefixes
                w1 = edges[b1] - edges[a1]
                diff = np.abs(
                    (cnt[None, :] - cnt[:, None]) / n_pts
                    - w1 * (edges[None, :] - edges[:, None])
                )
                best = max(best, float(np.max(np.triu(diff, 1))))
        return best

    rng = np.random.default_rng(seed)
    lo = np.empty((box_budget, s), dtype=np.int64)
    hi = np.empty((box_budget, s), dtype=np.int64)
    for axis in range(s):
        a = rng.integers(0, grid + 1, size=box_budget)
        b = rng.integers(0, grid + 1, size=box_budget)
        lo[:, axis] = np.minimum(a, b)
        hi[:, axis] = np.maximum(a, b)
        flat = lo[:, axis] == hi[:, axis]
        hi[flat, axis] = np.minimum(lo[flat, axis] + 1, grid)
        lo[flat, axis] = hi[flat, axis] - 1
    counts = np.zeros(box_budget)
    for mask in range(1 << s):
        corner = np.empty((box_budget, s), dtype=np.int64)
        bits = 0
        for axis in range(s):
            if mask >> axis & 1:
                corner[:, axis] = lo[:, axis]
                bits += 1
            else:
                corner[:, axis] = hi[:, axis]
        sign = -1.0 if bits % 2 else 1.0
        counts += sign * pref[tuple(corner[:, axis] for axis in range(s))]
    vols = np.prod((hi - lo) / grid, axis=1)
    return float(np.max(np.abs(counts / n_pts - vols)))
