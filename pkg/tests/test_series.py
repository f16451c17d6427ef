import math

import numpy as np
import pytest

from steklov_pert.series import FourierSeries

from conftest import random_series


def test_evaluate_constant():
    s = FourierSeries(b=[1.0])
    assert s.evaluate(1.234) == pytest.approx(1.0, abs=1e-15)


def test_evaluate_single_cosine():
    s = FourierSeries.cosine(3, 500.0)
    assert s.evaluate(0.0) == pytest.approx(500.0, abs=1e-12)


def test_evaluate_mixed_modes():
    s = FourierSeries(b=[0, 0, 0, 0, 0, -2.0], a=[0, 0, 1.0])
    expected = math.sin(1.4) - 2.0 * math.cos(3.5)
    assert s.evaluate(0.7) == pytest.approx(expected, rel=1e-13)


def test_evaluate_periodic_and_vectorized():
    rng = np.random.default_rng(7)
    s = random_series(rng, max_mode=6)
    theta = rng.uniform(0, 2 * np.pi, 50)
    np.testing.assert_allclose(s.evaluate(theta + 2 * np.pi), s.evaluate(theta), atol=1e-12)
    # direct summation cross-check
    direct = sum(
        s.coeff(j)[0] * np.sin(j * theta) + s.coeff(j)[1] * np.cos(j * theta)
        for j in range(s.max_mode + 1)
    )
    np.testing.assert_allclose(s.evaluate(theta), direct, rtol=1e-13, atol=1e-13)


def test_derivative_constant_is_zero():
    assert FourierSeries(b=[4.2]).derivative().is_zero()


def test_derivative_single_cosine():
    d = FourierSeries.cosine(3).derivative()
    assert d.coeff(3) == pytest.approx((-3.0, 0.0))
    assert d.sum_of_squares() == pytest.approx(9.0)


def test_derivative_mixed():
    s = FourierSeries(b=[0, 0, 0, 0, 0, 4.0], a=[0, 0, 1.0])
    d = s.derivative()
    assert d.coeff(2) == pytest.approx((0.0, 2.0))
    assert d.coeff(5) == pytest.approx((-20.0, 0.0))


def test_product_double_angle():
    c1 = FourierSeries.cosine(1)
    p = c1.product(c1)
    assert p.coeff(0)[1] == pytest.approx(0.5)
    assert p.coeff(2)[1] == pytest.approx(0.5)
    assert p.coeff(1) == (0.0, 0.0)


def test_product_rho_rho_prime():
    rho = FourierSeries.cosine(1)
    p = rho.product(rho.derivative())
    assert p.coeff(2)[0] == pytest.approx(-0.5)
    assert p.max_mode == 2


def test_product_matches_sampled_product():
    rng = np.random.default_rng(11)
    s = random_series(rng, max_mode=4)
    t = random_series(rng, max_mode=4)
    p = s.product(t)
    assert p.max_mode <= 8
    theta = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    np.testing.assert_allclose(
        p.evaluate(theta), s.evaluate(theta) * t.evaluate(theta), atol=1e-12
    )


def test_signed_coefficient_convention():
    s = FourierSeries(a=[0, 0, 3.0])
    assert s.signed_coefficient(-2) == pytest.approx((-3.0, 0.0))
    t = FourierSeries(b=[0, 0, 0, 0, 5.0])
    assert t.signed_coefficient(-4) == pytest.approx((0.0, 5.0))
    u = FourierSeries(b=[0.7], a=[0, 0.4])
    assert u.signed_coefficient(0) == pytest.approx((0.0, 0.7))


def test_truncate():
    s = FourierSeries.cosine(3)
    assert s.truncate(5).allclose(s)
    t = FourierSeries(b=[0, 0, 0, 1.0], a=[0, 0, 0, 0, 0, 0, 0, 2.0])
    cut = t.truncate(5)
    assert cut.allclose(FourierSeries.cosine(3))
    assert cut.truncate(4).allclose(t.truncate(4))


def test_sine_mode_zero_discarded_with_warning():
    with pytest.warns(UserWarning):
        s = FourierSeries(b=[1.0], a=[0.5])
    assert s.coeff(0) == (0.0, 1.0)


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        FourierSeries(b=[np.nan])
    with pytest.raises(ValueError):
        FourierSeries(a=[0.0, np.inf])


def test_mode_cap():
    with pytest.raises(ValueError):
        FourierSeries.cosine(65)
    big = FourierSeries(b=np.zeros(81), a=None, cap=128)
    assert big.max_mode == 0


def test_from_dict_map_and_dense_forms():
    s = FourierSeries.from_dict({"a": {"2": 1.0}, "b": {"0": 0.5, "3": 500.0}})
    assert s.coeff(2) == pytest.approx((1.0, 0.0))
    assert s.coeff(0)[1] == pytest.approx(0.5)
    assert s.coeff(3)[1] == pytest.approx(500.0)
    dense = FourierSeries.from_dict({"a": [0, 1.0], "b": [0.5, 0, 0, 500.0]})
    assert dense.coeff(1)[0] == pytest.approx(1.0)
    with pytest.warns(UserWarning):
        FourierSeries.from_dict({"a": [3.0]})
    with pytest.raises(ValueError):
        FourierSeries.from_dict({"c": {}})
    with pytest.raises(ValueError):
        FourierSeries.from_dict({"a": {"-1": 2.0}})


def test_round_trip_dict():
    rng = np.random.default_rng(3)
    s = random_series(rng, max_mode=5)
    again = FourierSeries.from_dict(s.to_dict())
    assert again.allclose(s, tol=0.0)


def test_parseval_against_trapezoid():
    rng = np.random.default_rng(23)
    theta = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    for _ in range(20):
        s = random_series(rng, max_mode=10)
        quad = np.sum(s.evaluate(theta) ** 2) * (2 * np.pi / 512) / np.pi
        b0 = s.coeff(0)[1]
        closed = 2 * b0 * b0 + s.sum_of_squares()
        assert quad == pytest.approx(closed, abs=1e-11)


def test_product_commutative_and_bilinear():
    rng = np.random.default_rng(5)
    s = random_series(rng, max_mode=6)
    t = random_series(rng, max_mode=5)
    u = random_series(rng, max_mode=4)
    assert s.product(t).allclose(t.product(s), tol=1e-14)
    left = s.product(2.0 * t + u)
    right = 2.0 * s.product(t) + s.product(u)
    assert left.allclose(right, tol=1e-13)


def test_derivative_of_square_is_twice_product():
    rng = np.random.default_rng(17)
    for _ in range(10):
        s = random_series(rng, max_mode=8)
        lhs = s.square().derivative()
        rhs = 2.0 * s.product(s.derivative())
        assert lhs.allclose(rhs, tol=1e-12)


def _square_by_double_sum(s):
    """Independent oracle: expand s^2 with the Cauchy-product double sum."""
    big_j = s.max_mode
    b = np.zeros(2 * big_j + 1)
    a = np.zeros(2 * big_j + 1)

    def add_cos(m, c):
        b[abs(m)] += c

    def add_sin(m, c):
        if m > 0:
            a[m] += c
        elif m < 0:
            a[-m] -= c

    for j in range(2 * big_j + 1):
        for i in range(j + 1):
            ai, bi = s.coeff(i) if i <= big_j else (0.0, 0.0)
            aj, bj = s.coeff(j - i) if j - i <= big_j else (0.0, 0.0)
            add_cos(j, 0.5 * (-ai * aj + bi * bj))
            add_cos(j - 2 * i, 0.5 * (ai * aj + bi * bj))
            add_sin(j, 0.5 * (ai * bj + bi * aj))
            add_sin(j - 2 * i, 0.5 * (-ai * bj + bi * aj))
    return FourierSeries(b=b, a=a)


def test_square_matches_double_sum_formula():
    rng = np.random.default_rng(29)
    for _ in range(10):
        s = random_series(rng, max_mode=6)
        assert s.square().allclose(_square_by_double_sum(s), tol=1e-12)
