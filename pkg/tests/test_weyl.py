import math
import random

import numpy as np
import pytest

from gperiods.errors import BudgetExceeded
from gperiods.laurent import cyclotomic
from gperiods.modring import companion_matrix
from gperiods.weyl import (
    alpha_vector,
    build_lambda,
    discrepancy_estimate,
    weyl_instance,
    weyl_sum_exact,
    weyl_sum_numeric,
)


def test_instance_validation():
    with pytest.raises(ValueError):
        weyl_instance(7, [[1, 2]], (1,))  # not square
    with pytest.raises(ValueError):
        weyl_instance(7, [[1]], (0, 0))  # v must be nonzero
    with pytest.raises(ValueError):
        weyl_instance(7, [[1]], (1, 2), s=3)  # length mismatch
    inst = weyl_instance(7, [[2]], (0, 1))
    assert (inst.m, inst.s) == (1, 2)


def test_contract_example():
    inst = weyl_instance(7, [[2]], (0, 1))
    assert alpha_vector(inst) == (2,)
    assert weyl_sum_exact(inst) == 0
    assert abs(weyl_sum_numeric(inst)) < 1e-9


def test_divisible_case():
    inst = weyl_instance(7, [[2]], (7,))
    assert weyl_sum_exact(inst) == 7
    assert weyl_sum_numeric(inst) == pytest.approx(7.0, abs=1e-9)


def test_counterexample_vanishing_alpha():
    # companion of Phi_3 * Phi_5, weights (1,1,1,1,1,0): alpha = 0 over Z
    poly = cyclotomic(3) * cyclotomic(5)
    assert poly.coeffs == (1, 2, 3, 3, 3, 2, 1)
    # alpha is computed from the rows as given, so keep true integer entries;
    # subdiagonal convention: A maps e_j to e_{j+1}, last column holds -coeffs
    rows = [
        [1 if c == r - 1 else (-poly.coeffs[r] if c == 5 else 0) for c in range(6)]
        for r in range(6)
    ]
    v = (1, 1, 1, 1, 1, 0)
    for n in (4, 7, 9):
        inst = weyl_instance(n, rows, v)
        assert alpha_vector(inst) == (0,) * 6
        assert weyl_sum_exact(inst) == n**6
    inst4 = weyl_instance(4, rows, v)
    assert weyl_sum_numeric(inst4) == pytest.approx(4**6, abs=1e-6)


def test_exact_matches_numeric_random():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(2, 30)
        m = rng.randrange(1, 3)
        s = rng.randrange(1, 5)
        rows = [[rng.randrange(-n, n) for _ in range(m)] for _ in range(m)]
        v = [rng.randrange(-3, 4) for _ in range(s)]
        if not any(v):
            v[0] = 1
        inst = weyl_instance(n, rows, v)
        exact = weyl_sum_exact(inst)
        numeric = weyl_sum_numeric(inst)
        assert abs(numeric - exact) < 1e-6 * n**m, (n, rows, v)


def test_lift_changes_alpha_not_decision():
    a1 = weyl_instance(9, [[-1]], (1, 1))
    a2 = weyl_instance(9, [[8]], (1, 1))
    assert alpha_vector(a1) == (0,)
    assert alpha_vector(a2) == (9,)
    assert weyl_sum_exact(a1) == weyl_sum_exact(a2) == 9


def test_numeric_budget():
    with pytest.raises(BudgetExceeded):
        weyl_sum_numeric(weyl_instance(100, [[1, 0], [0, 1]], (1,)), budget=100)


def test_build_lambda_tiny():
    lam = build_lambda(3, 1, [[1]], s=2)
    assert lam.points.shape == (3, 2)
    assert np.allclose(lam.points, np.array([[0, 0], [1 / 3, 1 / 3], [2 / 3, 2 / 3]]))


def test_discrepancy_extremes():
    uniform = (np.arange(64) / 64).reshape(-1, 1)
    assert discrepancy_estimate(uniform, grid=64) == pytest.approx(0.0, abs=1e-12)
    assert discrepancy_estimate(np.zeros((1, 1)), grid=64) == pytest.approx(1 - 1 / 64)


def test_discrepancy_prefix_path_matches_brute_force():
    rng = np.random.default_rng(12)
    pts = rng.random((200, 2))
    grid = 8
    ours = discrepancy_estimate(pts, grid=grid)
    worst = 0.0
    edges = [i / grid for i in range(grid + 1)]
    for a1 in range(grid):
        for b1 in range(a1 + 1, grid + 1):
            for a2 in range(grid):
                for b2 in range(a2 + 1, grid + 1):
                    inside = (
                        (pts[:, 0] >= edges[a1])
                        & (pts[:, 0] < edges[b1])
                        & (pts[:, 1] >= edges[a2])
                        & (pts[:, 1] < edges[b2])
                    )
                    vol = (edges[b1] - edges[a1]) * (edges[b2] - edges[a2])
                    worst = max(worst, abs(int(inside.sum()) / 200 - vol))
    assert ours == pytest.approx(worst, abs=1e-12)


def test_discrepancy_s3_seeded():
    rng = np.random.default_rng(13)
    pts = rng.random((500, 3))
    d1 = discrepancy_estimate(pts, grid=16, seed=5)
    d2 = discrepancy_estimate(pts, grid=16, seed=5)
    assert d1 == d2
    assert 0.0 <= d1 <= 1.0


def test_lambda_discrepancy_shrinks():
    vals = []
    for p, w in ((7, 2), (61, 13)):
        assert (w * w + w + 1) % p == 0
        lam = build_lambda(p, 1, [[w]], s=2)
        vals.append(discrepancy_estimate(lam, grid=64))
    assert vals[1] < vals[0]
