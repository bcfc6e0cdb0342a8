"""Schmidt-weight bookkeeping and normalization-ratio algebra."""

import math

import numpy as np
import pytest

from coboson.core import (
    Kind,
    SchmidtSpec,
    TruncatedWeights,
    fermion_ratio_bounds,
    ladder_residual,
    normalization_ratio,
    normalization_ratio_array,
    normalization_ratio_oracle,
    occupancy_factor,
    purity,
    schmidt_number,
    schmidt_weight,
    truncated_weights,
)

FERMION = Kind.BI_FERMION
BOSON = Kind.BI_BOSON


def fspec(x):
    return SchmidtSpec(x, FERMION)


def bspec(x):
    return SchmidtSpec(x, BOSON)


class TestSchmidtWeights:
    def test_separable_state_occupies_mode_zero(self):
        assert schmidt_weight(fspec(0.0), 0) == 1.0
        assert schmidt_weight(fspec(0.0), 1) == 0.0
        assert schmidt_weight(fspec(0.0), 7) == 0.0

    def test_geometric_value(self):
        # (1 - 0.5) * 0.5^3, cross-checked by summing the first 64 weights
        assert schmidt_weight(fspec(0.5), 3) == pytest.approx(0.0625, abs=1e-15)
        total = math.fsum(schmidt_weight(fspec(0.5), m) for m in range(64))
        assert total == pytest.approx(1.0 - 0.5 ** 64, abs=1e-15)

    @pytest.mark.parametrize("x", [0.1, 0.3, 0.7, 0.9, 0.99])
    def test_partial_sums_close_to_tail(self, x):
        m_cut = 40
        total = math.fsum(schmidt_weight(fspec(x), m) for m in range(m_cut))
        assert abs(total - (1.0 - x ** m_cut)) < 1e-14

    def test_rejects_x_equal_one(self):
        with pytest.raises(ValueError):
            schmidt_weight(fspec(1.0), 0)

    def test_truncated_weights_tail_and_order(self):
        tw = truncated_weights(fspec(0.5))
        assert tw.truncation_tail < 1e-14
        w = np.array(tw.weights)
        assert np.all(np.diff(w) < 0)
        assert tw.weights[0] == 0.5
        assert tw.truncation_tail == 0.5 ** len(tw.weights)

    def test_truncated_weights_separable(self):
        tw = truncated_weights(fspec(0.0))
        assert tw.weights == (1.0,)
        assert tw.truncation_tail == 0.0

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            SchmidtSpec(-0.1, FERMION)
        with pytest.raises(ValueError):
            SchmidtSpec(1.5, BOSON)
        with pytest.raises(TypeError):
            SchmidtSpec(0.5, "bifermion")


class TestPurityAndSchmidtNumber:
    def test_separable(self):
        assert purity(fspec(0.0)) == 1.0
        assert schmidt_number(fspec(0.0)) == 1.0

    def test_half_gives_one_third(self):
        # direct sum of 64 squared weights as the oracle
        brute = math.fsum(schmidt_weight(fspec(0.5), m) ** 2 for m in range(64))
        assert purity(fspec(0.5)) == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert purity(fspec(0.5)) == pytest.approx(brute, abs=1e-15)

    def test_schmidt_number_of_one_third(self):
        assert schmidt_number(fspec(1.0 / 3.0)) == pytest.approx(2.0, abs=1e-14)

    def test_purity_monotone_to_zero(self):
        xs = np.linspace(0.0, 0.999, 60)
        vals = [purity(fspec(float(x))) for x in xs]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 6e-4

    def test_inverse_identity_grid(self):
        for x in np.linspace(0.0, 0.999, 100):
            spec = fspec(float(x))
            assert abs(schmidt_number(spec) * purity(spec) - 1.0) < 1e-12

    def test_reject_x_equal_one(self):
        with pytest.raises(ValueError):
            purity(fspec(1.0))
        with pytest.raises(ValueError):
            schmidt_number(fspec(1.0))


class TestNormalizationRatio:
    @pytest.mark.parametrize("x", [0.0, 0.2, 0.9, 1.0])
    @pytest.mark.parametrize("kind", [FERMION, BOSON])
    def test_single_pair_is_normalized(self, x, kind):
        assert normalization_ratio(SchmidtSpec(x, kind), 0) == 1.0

    def test_pauli_blocking_at_zero_entanglement(self):
        assert normalization_ratio(fspec(0.0), 1) == 0.0
        assert normalization_ratio(fspec(0.0), 5) == 0.0

    def test_separable_bosons_reduce_to_n_plus_one(self):
        assert normalization_ratio(bspec(0.0), 3) == 4.0

    def test_fermion_half_matches_one_minus_purity(self):
        spec = fspec(0.5)
        assert normalization_ratio(spec, 1) == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert normalization_ratio(spec, 1) == pytest.approx(
            1.0 - purity(spec), abs=1e-15)

    @pytest.mark.parametrize("kind", [FERMION, BOSON])
    @pytest.mark.parametrize("n", [0, 1, 4, 9])
    def test_ideal_limit(self, kind, n):
        assert normalization_ratio(SchmidtSpec(1.0, kind), n) == 1.0

    @pytest.mark.parametrize("x", [0.05, 0.3, 0.6, 0.9, 0.99])
    @pytest.mark.parametrize("n", range(9))
    def test_ranges(self, x, n):
        rf = normalization_ratio(fspec(x), n)
        rb = normalization_ratio(bspec(x), n)
        assert 0.0 <= rf <= 1.0
        assert 1.0 <= rb <= n + 1.0

    @pytest.mark.parametrize("x", [0.99, 0.999, 0.9999, 1.0 - 1e-6])
    @pytest.mark.parametrize("n", [1, 5, 20])
    def test_stable_near_maximal_entanglement(self, x, n):
        # 80-bit direct evaluation still has ~6 spare digits here
        xl = np.longdouble(x)
        ref = float(xl ** n * (n + 1) * (1.0 - xl) / (1.0 - xl ** (n + 1)))
        got = normalization_ratio(fspec(x), n)
        assert got == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("n", [1, 5, 20])
    def test_first_order_behavior_at_tiny_delta(self, n):
        # ratio = 1 - n*delta/2 + O(n^2 delta^2); raw powers would lose this
        delta = 1e-12
        got = normalization_ratio(fspec(1.0 - delta), n)
        assert abs(got - (1.0 - 0.5 * n * delta)) < 1e-14

    def test_array_path_matches_scalar(self):
        n = np.arange(0, 40)
        for spec in (fspec(0.0), fspec(0.37), fspec(0.97), bspec(0.0), bspec(0.6),
                     fspec(1.0)):
            arr = normalization_ratio_array(spec, n)
            scl = np.array([normalization_ratio(spec, int(k)) for k in n])
            assert np.max(np.abs(arr - scl)) < 1e-14

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            normalization_ratio(fspec(0.5), -1)


class TestOracle:
    def weights_64(self, x=0.5):
        # tail 0.5^64 ~ 5.4e-20 still beats the oracle's 1e-12 requirement
        tw = truncated_weights(fspec(x), tail_tol=1e-19)
        assert len(tw.weights) == 64
        return tw

    def test_fermion_example(self):
        got = normalization_ratio_oracle(FERMION, self.weights_64(), 1)
        assert got == pytest.approx(2.0 / 3.0, abs=1e-10)

    def test_boson_example(self):
        got = normalization_ratio_oracle(BOSON, self.weights_64(), 1)
        assert got == pytest.approx(4.0 / 3.0, abs=1e-10)

    def test_single_weight_fermion_blocks(self):
        single = TruncatedWeights(weights=(1.0,), truncation_tail=0.0)
        assert normalization_ratio_oracle(FERMION, single, 1) == 0.0

    def test_single_weight_degenerate_denominator(self):
        single = TruncatedWeights(weights=(1.0,), truncation_tail=0.0)
        with pytest.raises(ZeroDivisionError):
            normalization_ratio_oracle(FERMION, single, 2)

    def test_rejects_fat_tail(self):
        fat = TruncatedWeights(weights=(0.5, 0.25), truncation_tail=0.25)
        with pytest.raises(ValueError):
            normalization_ratio_oracle(FERMION, fat, 1)

    @pytest.mark.parametrize("kind", [FERMION, BOSON])
    @pytest.mark.parametrize("x", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_closed_form_agreement(self, kind, x):
        spec = SchmidtSpec(x, kind)
        tw = truncated_weights(spec)
        assert tw.truncation_tail < 1e-14
        for n in range(9):
            closed = normalization_ratio(spec, n)
            oracle = normalization_ratio_oracle(kind, tw, n)
            assert abs(closed - oracle) < 1e-9


class TestLadderResidual:
    @pytest.mark.parametrize("spec", [fspec(0.0), fspec(0.5), bspec(0.3), bspec(0.9)])
    def test_vanishes_at_n1(self, spec):
        assert ladder_residual(spec, 1) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("kind", [FERMION, BOSON])
    @pytest.mark.parametrize("n", [1, 3, 8])
    def test_vanishes_for_ideal_bosons(self, kind, n):
        assert ladder_residual(SchmidtSpec(1.0, kind), n) == 0.0

    def test_fermion_half_n2_value(self):
        # assembled from closed ratios: 1 - 2*(2/3) + 1*(3/7)
        val = ladder_residual(fspec(0.5), 2)
        assert 0.0 <= val <= 1.0
        assert val == pytest.approx(1.0 - 4.0 / 3.0 + 3.0 / 7.0, abs=1e-14)
        # same assembly from oracle ratios
        tw = truncated_weights(fspec(0.5))
        oracle = (1.0
                  - 2 * normalization_ratio_oracle(FERMION, tw, 1)
                  + 1 * normalization_ratio_oracle(FERMION, tw, 2))
        assert val == pytest.approx(oracle, abs=1e-10)

    @pytest.mark.parametrize("kind", [FERMION, BOSON])
    def test_nonnegative_squared_norm(self, kind):
        for x in np.linspace(0.0, 0.99, 34):
            for n in range(1, 9):
                assert ladder_residual(SchmidtSpec(float(x), kind), n) >= -1e-12

    def test_rejects_n_zero(self):
        with pytest.raises(ValueError):
            ladder_residual(fspec(0.5), 0)


class TestFermionRatioBounds:
    def test_separable_point(self):
        lower, upper = fermion_ratio_bounds(fspec(0.0), 1)
        assert (lower, upper) == (0.0, 0.0)
        assert lower <= normalization_ratio(fspec(0.0), 1) <= upper

    def test_equality_at_n1(self):
        lower, upper = fermion_ratio_bounds(fspec(0.5), 1)
        assert lower == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert upper == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_loose_lower_bound_still_brackets(self):
        spec = fspec(0.9)
        lower, upper = fermion_ratio_bounds(spec, 5)
        r = normalization_ratio(spec, 5)
        assert lower <= r <= upper

    @pytest.mark.parametrize("x", np.linspace(0.0, 0.99, 23).tolist())
    def test_bounds_hold(self, x):
        spec = fspec(float(x))
        for n in range(1, 9):
            lower, upper = fermion_ratio_bounds(spec, n)
            r = normalization_ratio(spec, n)
            assert lower - 1e-12 <= r <= upper + 1e-12
        _, upper1 = fermion_ratio_bounds(spec, 1)
        assert abs(normalization_ratio(spec, 1) - upper1) < 1e-12

    def test_rejects_boson_pairs(self):
        with pytest.raises(ValueError):
            fermion_ratio_bounds(bspec(0.5), 1)


def test_occupancy_factor_zero_at_vacuum_step():
    # 1 + (0-1)*ratio(0) = 0 for every spec with ratio(0) = 1
    for spec in (fspec(0.3), bspec(0.3), fspec(1.0)):
        assert occupancy_factor(spec, 0) == 0.0
