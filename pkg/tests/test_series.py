import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kptau.series import TauSeries, coefficient, series_exp, series_inverse, series_log, series_mul

M, W = 4, 6


def random_series(seed, const=None, scale=0.5):
    rng = np.random.default_rng(seed)
    f = TauSeries(None, M, W)
    f.coeffs[:] = scale * (rng.normal(size=len(f.coeffs)) + 1j * rng.normal(size=len(f.coeffs)))
    if const is not None:
        f.coeffs[0] = const
    return f


def test_product_examples():
    one_t1 = 1 + TauSeries.variable(1, M, W)
    one_t2 = 1 + TauSeries.variable(2, M, W)
    p = one_t1 * one_t2
    assert p.to_dict() == {(0, 0, 0, 0): 1, (1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (1, 1, 0, 0): 1}
    assert not np.any((one_t1 * TauSeries(None, M, W)).coeffs)
    t1 = TauSeries.variable(1, 2, 1)
    assert not np.any((t1 * t1).coeffs)
    with pytest.raises(ValueError):
        series_mul(TauSeries(None, 2, 3), TauSeries(None, 2, 4))


def test_exp_examples():
    e = series_exp(TauSeries.variable(1, M, W))
    for n in range(W + 1):
        assert e.coefficient((n,)) == pytest.approx(1 / np.prod(range(1, n + 1)))
    assert series_exp(TauSeries(None, M, W)).to_dict() == {(0,) * M: 1}
    Q = np.zeros((1, 1))
    Q[0, 0] = 0.7
    q = series_exp(TauSeries.quadratic(-Q, M, W))
    assert q.coefficient((2,)) == pytest.approx(-0.35)


def test_coefficient_contract():
    f = 1 + 3 * TauSeries.variable(2, 2, 3)
    assert coefficient(f, (0, 1)) == 3
    assert coefficient(f, ()) == 1
    with pytest.raises(ValueError):
        coefficient(f, (0, 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ring_axioms(seed):
    f, g, h = (random_series(seed + k) for k in range(3))
    scale = max(1.0, float(np.max(np.abs(((f * g) * h).coeffs))))
    assert ((f * g) * h).max_abs_diff(f * (g * h)) < 1e-12 * scale
    assert (f * (g + h)).max_abs_diff(f * g + f * h) < 1e-12 * scale
    assert (f * g).max_abs_diff(g * f) < 1e-12 * scale


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_exp_log_inverse(seed):
    f = random_series(seed, const=0.0)
    g = random_series(seed + 1, const=0.0)
    e = series_exp(f)
    prod = e * series_exp(-f)
    assert abs(prod.coeffs[0] - 1) < 1e-10 and np.max(np.abs(prod.coeffs[1:])) < 1e-10
    assert series_log(e).max_abs_diff(f) < 1e-10
    assert series_exp(f + g).max_abs_diff(e * series_exp(g)) < 1e-10 * max(1, np.max(np.abs(e.coeffs)))
    h = random_series(seed, const=1.5)
    assert (h * series_inverse(h)).max_abs_diff(TauSeries.constant(1, M, W)) < 1e-10


def test_exp_with_constant():
    f = TauSeries.constant(0.3, M, W) + TauSeries.variable(1, M, W)
    assert series_exp(f).coefficient((1,)) == pytest.approx(np.exp(0.3))


def test_log_needs_constant():
    with pytest.raises(ValueError):
        series_log(TauSeries.variable(1, M, W))
    with pytest.raises(ValueError):
        series_inverse(TauSeries(None, M, W))
