import math

import numpy as np
import pytest

from steklov_pert import integrals
from steklov_pert.errors import InvalidMode
from steklov_pert.series import FourierSeries

from conftest import random_series

RT = math.sqrt(math.pi)


class TestSingleClosedForms:
    def test_e_from_cosine(self):
        table = integrals.single_constants(FourierSeries.cosine(2), 1)
        assert table["E"] == pytest.approx(-RT)

    def test_a_from_first_cosine(self):
        # (1/sqrt(pi)) int cos^2 cos^2 = (3/4) sqrt(pi)
        table = integrals.single_constants(FourierSeries.cosine(1), 1)
        assert table["A"] == pytest.approx(0.75 * RT)
        quad = integrals.quadrature_constant("A", FourierSeries.cosine(1), 1)
        assert quad == pytest.approx(0.75 * RT, abs=1e-12)

    def test_zero_profile(self):
        table = integrals.single_constants(FourierSeries.zero(), 3)
        assert all(v == 0.0 for v in table.values())

    def test_invalid_mode(self):
        with pytest.raises(InvalidMode):
            integrals.single_constants(FourierSeries.zero(), 0)


class TestCoupledClosedForms:
    def test_l_and_v(self):
        rho = FourierSeries.cosine(2)
        table = integrals.coupled_constants(rho, 1, 3)
        assert table["L"] == pytest.approx(0.5 * RT)
        assert table["V"] == pytest.approx(RT)

    def test_signed_convention(self):
        rho = FourierSeries.sine(3)
        table = integrals.coupled_constants(rho, 5, 2)
        assert table["N"] == pytest.approx(-0.5 * RT)

    def test_k_equal_n_refused(self):
        with pytest.raises(InvalidMode):
            integrals.coupled_constants(FourierSeries.zero(), 2, 2)
        with pytest.raises(InvalidMode):
            integrals.quadrature_coupled_table(FourierSeries.zero(), 2, 2)

    def test_negative_k_refused(self):
        with pytest.raises(InvalidMode):
            integrals.coupled_constants(FourierSeries.zero(), 2, -1)


class TestQuadratureOracle:
    def test_b_constant_profile(self):
        got = integrals.quadrature_constant("B", FourierSeries.constant(1.0), 3)
        assert got == pytest.approx(RT, abs=1e-12)

    def test_c_first_cosine(self):
        got = integrals.quadrature_constant("C", FourierSeries.cosine(1), 2)
        assert got == pytest.approx(0.5 * RT, abs=1e-12)

    def test_w_zero_profile(self):
        assert integrals.quadrature_constant("W", FourierSeries.zero(), 1, k=4) == 0.0

    def test_unknown_kind(self):
        with pytest.raises(InvalidMode):
            integrals.quadrature_constant("Z", FourierSeries.zero(), 1)

    def test_kind_index_mismatch(self):
        with pytest.raises(InvalidMode):
            integrals.quadrature_constant("A", FourierSeries.zero(), 1, k=2)
        with pytest.raises(InvalidMode):
            integrals.quadrature_constant("K", FourierSeries.zero(), 1)


def test_closed_forms_match_quadrature():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(30):
        rho = random_series(rng, max_mode=8)
        for n in range(1, 6):
            single = integrals.single_constants(rho, n)
            quad = integrals.quadrature_single_table(rho, n)
            worst = max(worst, max(abs(single[k] - quad[k]) for k in integrals.SINGLE_KINDS))
            for k in (0, 1, 4, 9, 12):
                if k == n:
                    continue
                coupled = integrals.coupled_constants(rho, n, k)
                cquad = integrals.quadrature_coupled_table(rho, n, k)
                worst = max(
                    worst, max(abs(coupled[j] - cquad[j]) for j in integrals.COUPLED_KINDS)
                )
    assert worst <= 1e-10


def test_antisymmetric_pairs_exact():
    rng = np.random.default_rng(37)
    for _ in range(10):
        rho = random_series(rng, max_mode=6)
        for n in (1, 2, 3):
            table = integrals.single_constants(rho, n)
            assert table["I"] == -table["O"]
            assert table["J"] == -table["P"]


def test_degenerate_profile_values():
    rng = np.random.default_rng(41)
    for n in (1, 2, 3):
        rho = random_series(rng, max_mode=8, zero_modes=(2 * n,))
        table = integrals.single_constants(rho, n)
        b0 = rho.coeff(0)[1]
        for kind in ("E", "G", "J", "P"):
            assert table[kind] == 0.0
        assert table["B"] == pytest.approx(RT * b0)
        assert table["R"] == pytest.approx(RT * b0)


def test_constant_table_builder():
    rho = FourierSeries.cosine(3)
    table = integrals.constant_table(rho, 2)
    assert table.n == 2
    assert set(table.single) == set(integrals.SINGLE_KINDS)
    assert sorted(table.coupled) == [0, 1, 3, 4, 5]
    assert set(table.coupled[1]) == set(integrals.COUPLED_KINDS)


def test_b_plus_r_identity():
    rng = np.random.default_rng(43)
    for _ in range(10):
        rho = random_series(rng, max_mode=7)
        b0 = rho.coeff(0)[1]
        for n in (1, 2, 4):
            table = integrals.single_constants(rho, n)
            assert table["B"] + table["R"] == pytest.approx(2 * RT * b0, abs=1e-14)
