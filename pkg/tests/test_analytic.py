"""Special functions and the near-maximal-entanglement expansions."""

import math

import pytest

from coboson.analytic import (
    DeltaExpansion,
    bose_f1_derivative,
    bose_integral,
    fraction_thermo_limit,
    occupation_delta_expansion,
    riemann_zeta,
    total_number_decomposition,
)
from coboson.core import Kind, SchmidtSpec
from coboson.trap import TrapEnsemble, level_occupation, total_number

Z3 = 1.2020569031595943  # Apery's constant, reference digits


class TestRiemannZeta:
    def test_basel_identity(self):
        assert abs(riemann_zeta(2.0) - math.pi ** 2 / 6.0) < 1e-10

    def test_zeta3_quoted_value(self):
        assert abs(riemann_zeta(3.0) - 1.202) < 1e-3
        assert abs(riemann_zeta(3.0) - Z3) < 1e-12

    def test_zeta_three_halves_two_truncations_agree(self):
        a = riemann_zeta(1.5, terms=800)
        b = riemann_zeta(1.5, terms=4000)
        assert abs(a - b) < 1e-9
        assert a == pytest.approx(2.612375348685, abs=1e-9)

    @pytest.mark.parametrize("l", [1.0, 0.5, -2.0])
    def test_rejects_divergent_orders(self, l):
        with pytest.raises(ValueError):
            riemann_zeta(l)


class TestBoseIntegral:
    @pytest.mark.parametrize("l", [2, 3])
    def test_reduces_to_zeta_at_zero(self, l):
        assert bose_integral(l, 0.0) == pytest.approx(riemann_zeta(float(l)), abs=1e-12)

    @pytest.mark.parametrize("gamma", [0.1, 1.0, 5.0])
    def test_first_order_closed_form(self, gamma):
        closed = -math.log(-math.expm1(-gamma))
        assert abs(bose_integral(1, gamma) - closed) < 1e-10

    def test_large_gamma_single_term(self):
        assert bose_integral(3, 10.0) == pytest.approx(math.exp(-10.0), rel=1e-4)

    def test_rejects_divergent_case(self):
        with pytest.raises(ValueError):
            bose_integral(1, 0.0)

    def test_monotone_in_gamma_and_order(self):
        gammas = (0.05, 0.2, 0.5, 1.0, 2.0)
        for l in (1, 2, 3):
            vals = [bose_integral(l, g) for g in gammas]
            assert all(a > b for a, b in zip(vals, vals[1:]))
        for g in gammas:
            assert bose_integral(1, g) > bose_integral(2, g) > bose_integral(3, g)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_derivative_matches_central_difference(self, gamma):
        h = 1e-5
        fd = (bose_integral(1, gamma + h) - bose_integral(1, gamma - h)) / (2 * h)
        assert abs(bose_f1_derivative(gamma) - fd) < 1e-6


class TestOccupationDeltaExpansion:
    def test_reduces_to_bose_einstein(self):
        for e in (0.3, 1.0, 4.0):
            assert occupation_delta_expansion(0.0, e) == pytest.approx(
                1.0 / math.expm1(e), abs=1e-14)

    def test_high_energy_leading_order(self):
        delta, e = 0.01, 30.0
        assert occupation_delta_expansion(delta, e) == pytest.approx(
            (1.0 + 2 * delta) * math.exp(-e), rel=1e-3)

    def test_first_order_gap_to_exact_series(self):
        # the expansion drops the 1/(1 - n*delta/2) part of the exact
        # ratio, so it departs from the exact occupation at first order
        # with coefficient q^2/(1-q)^2; lock that measured behavior in
        e = 1.0
        q = math.exp(-e)
        coeff = q * q / (1.0 - q) ** 2
        delta = 1e-3
        gap = (occupation_delta_expansion(delta, e)
               - level_occupation(SchmidtSpec(1.0 - delta, Kind.BI_FERMION), e))
        assert gap / delta == pytest.approx(-coeff, rel=1e-3)

    def test_rejects_nonpositive_energy(self):
        with pytest.raises(ValueError):
            occupation_delta_expansion(0.01, 0.0)


class TestThermoLimitFraction:
    def test_ideal_accumulation_point_clamps(self):
        assert fraction_thermo_limit(0.0, 1.0) == 0.0
        assert fraction_thermo_limit(0.0, 1.0, clamp=False) == pytest.approx(
            1.0 - Z3, abs=1e-10)

    def test_ideal_half_temperature(self):
        assert fraction_thermo_limit(0.0, 0.5) == pytest.approx(
            1.0 - 0.125 * Z3, abs=1e-10)

    def test_delta_correction_sign_and_size(self):
        z2 = riemann_zeta(2.0)
        delta = 0.01
        drop = fraction_thermo_limit(0.0, 0.5) - fraction_thermo_limit(delta, 0.5)
        assert drop == pytest.approx(2 * delta * (Z3 + z2) * 0.125, rel=1e-10)

    def test_validity_flag(self):
        assert DeltaExpansion(0.01).valid
        assert not DeltaExpansion(0.1).valid
        with pytest.raises(ValueError):
            DeltaExpansion(1.0)


class TestTotalNumberDecomposition:
    def test_thermodynamic_composition_at_delta_zero(self):
        # N_excited ~ N t^3 zeta(3) once the spacing is small and gamma -> 0
        parts = total_number_decomposition(0.0, 0.5, 10 ** 9, 1e-6)
        excited = parts.total - parts.part_one_ground
        assert excited == pytest.approx(10 ** 9 * 0.125 * Z3, rel=2e-2)

    def test_bose_integrals_near_zeta_at_small_gamma(self):
        assert bose_integral(3, 1e-6) == pytest.approx(Z3, abs=1e-5)
        assert bose_integral(2, 1e-4) == pytest.approx(riemann_zeta(2.0), abs=2e-3)

    def test_direct_part_matches_trap_sum_in_valid_regime(self):
        # small spacing (1/(t N^(1/3)) = 0.02) and alpha >> delta keep both
        # the shell integrals and the delta expansion inside their domains
        n, t_rel, delta, alpha = 10 ** 6, 0.5, 0.005, 1.0
        parts = total_number_decomposition(delta, t_rel, n, alpha)
        ens = TrapEnsemble(n, SchmidtSpec(1.0 - delta, Kind.BI_FERMION), t_rel, alpha)
        exact = total_number(ens)
        assert parts.total_direct == pytest.approx(exact, rel=1e-2)

    def test_integral_replacement_residual_is_the_sign_flip(self):
        # the closed form carries the printed signs, so its gap to the
        # direct shell sum is -(2 t^3 N F2 + 5 t^2 N^(2/3) F1)
        n, t_rel, delta, alpha = 10 ** 6, 0.5, 0.005, 1.0
        parts = total_number_decomposition(delta, t_rel, n, alpha)
        f2 = bose_integral(2, parts.gamma)
        f1 = bose_integral(1, parts.gamma)
        predicted = -(2 * t_rel ** 3 * n * f2
                      + 5 * t_rel ** 2 * n ** (2.0 / 3.0) * f1)
        assert parts.integral_replacement_residual == pytest.approx(
            predicted, rel=1e-3)

    def test_rejects_bad_offsets(self):
        with pytest.raises(ValueError):
            total_number_decomposition(0.01, 0.5, 100, 0.0)
        with pytest.raises(ValueError):
            total_number_decomposition(0.01, 0.0, 100, 0.1)
