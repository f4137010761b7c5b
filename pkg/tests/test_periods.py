import cmath
import math
import random

import numpy as np
import pytest

from gperiods.errors import BudgetExceeded, NotAUnit, NotInvertible
from gperiods.periods import (
    PlotPoint,
    frame_batches,
    gaussian_period,
    gaussian_plot,
    gaussian_values,
    period_spec,
    superchar_spec,
    supercharacter_plot,
    supercharacter_value,
    supercharacter_values,
)


def test_period_spec_basics():
    spec = period_spec(7, 2)
    assert spec.d == 3
    assert spec.orbit == (1, 2, 4)
    with pytest.raises(NotAUnit):
        period_spec(10, 5)
    with pytest.raises(ValueError):
        period_spec(7, 2, color_modulus=0)


def test_gaussian_period_identities():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(3, 400)
        omega = rng.randrange(2, n)
        if math.gcd(omega, n) != 1:
            continue
        spec = period_spec(n, omega)
        assert gaussian_period(spec, 0) == spec.d  # exactly d ones summed
        for _ in range(5):
            k = rng.randrange(1, n)
            eta = gaussian_period(spec, k)
            assert gaussian_period(spec, n - k) == pytest.approx(eta.conjugate(), abs=1e-12)
            assert gaussian_period(spec, omega * k % n) == pytest.approx(eta, abs=1e-12)


def test_gaussian_values_match_scalar():
    spec = period_spec(101, 5)
    vals = gaussian_values(spec)
    assert vals.shape == (101,)
    for k in (0, 1, 17, 100):
        assert vals[k] == pytest.approx(gaussian_period(spec, k), abs=1e-12)
    sub = gaussian_values(spec, ks=[3, 9])
    assert sub[0] == pytest.approx(vals[3], abs=1e-12)


def test_gaussian_d1_unit_circle():
    spec = period_spec(7, 1)
    assert spec.d == 1
    vals = gaussian_values(spec)
    assert np.allclose(np.abs(vals), 1.0)
    assert vals[1] == pytest.approx(cmath.exp(2j * math.pi / 7))


def test_gaussian_plot_points():
    pts = gaussian_plot(period_spec(10, 3, color_modulus=4))
    assert len(pts) == 10
    assert [p.index for p in pts] == list(range(10))
    assert [p.color for p in pts] == [k % 4 for k in range(10)]
    assert all(p.size == 1.0 for p in pts)


def test_superchar_spec_and_value():
    spec = superchar_spec([[0, 1], [454, 454]], 455)
    assert spec.d == 3
    assert spec.weights[0] == (1, 1)
    # brute-force the defining sum at a few arguments
    rng = random.Random(8)
    for _ in range(10):
        x = (rng.randrange(455), rng.randrange(455))
        direct = sum(
            cmath.exp(2j * math.pi * ((w[0] * x[0] + w[1] * x[1]) % 455) / 455)
            for w in spec.weights
        )
        assert supercharacter_value(spec, x) == pytest.approx(direct, abs=1e-9)


def test_superchar_requires_invertible():
    with pytest.raises(NotInvertible):
        superchar_spec([[2, 0], [0, 1]], 4)


def test_supercharacter_values_row_major():
    spec = superchar_spec([[1]], 3)
    vals = supercharacter_values(spec)
    assert vals.shape == (3,)
    assert vals[1] == pytest.approx(cmath.exp(2j * math.pi / 3))
    spec2 = superchar_spec([[0, 1], [1, 1]], 5)
    vals2 = supercharacter_values(spec2)
    assert vals2.shape == (25,)
    for idx in (0, 7, 13, 24):
        x = (idx // 5, idx % 5)
        assert vals2[idx] == pytest.approx(supercharacter_value(spec2, x), abs=1e-9)


def test_supercharacter_budget():
    spec = superchar_spec([[0, 1], [454, 454]], 455)
    with pytest.raises(BudgetExceeded):
        supercharacter_values(spec, budget=1000)


def test_supercharacter_plot_colors():
    spec = superchar_spec([[0, 1], [1, 1]], 5, color_modulus=3)
    pts = supercharacter_plot(spec)
    assert len(pts) == 25
    assert pts[7].index == (1, 2)
    assert pts[7].color == 1 % 3
    assert pts[13].color == (13 // 5) % 3


def test_frame_batches():
    assert frame_batches(10, 3) == [(0, 3), (3, 6), (6, 9), (9, 10)]
    assert frame_batches(5, 5) == [(0, 5)]
    assert frame_batches(5, 10) == [(0, 5)]
    with pytest.raises(ValueError):
        frame_batches(5, 0)


def test_plot_point_defaults():
    p = PlotPoint(index=3, value=1j, color=0)
    assert p.size == 1.0
