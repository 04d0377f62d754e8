from fractions import Fraction

import pytest

import brute
from pairmoments import pairings, weights
from pairmoments.pairings import PairPartition
from pairmoments.weights import (
    ComponentPower,
    Constant1,
    CrossingPower,
    Product,
    SingletonCountPower,
    SingletonHPower,
)

HALF = Fraction(1, 2)


def P(*pairs):
    return PairPartition.from_pairs(pairs)


class TestEvaluate:
    def test_constant(self):
        assert weights.evaluate(Constant1(), P((1, 4), (2, 6), (3, 5))) == 1

    def test_h_power_noncrossing_is_one(self):
        # all singletons => H = 0, so any base gives 1
        assert weights.evaluate(SingletonHPower(HALF), P((1, 6), (2, 5), (3, 4))) == 1

    def test_crossing_power_single_crossing(self):
        q = Fraction(2, 7)
        assert weights.evaluate(CrossingPower(q), P((1, 3), (2, 4))) == q

    def test_component_power(self):
        # (1,2),(3,5),(4,6): cc = 2, n = 3 => s^1
        s = Fraction(3, 5)
        assert weights.evaluate(ComponentPower(s), P((1, 2), (3, 5), (4, 6))) == s

    def test_singleton_count_power(self):
        assert weights.evaluate(SingletonCountPower(2), P((1, 2), (3, 5), (4, 6))) == 2

    def test_zero_base_indicator(self):
        # 0^0 = 1: b = 0 turns the H-power into the non-crossing indicator
        spec = SingletonHPower(0)
        assert weights.evaluate(spec, P((1, 6), (2, 5), (3, 4))) == 1
        assert weights.evaluate(spec, P((1, 3), (2, 4))) == 0

    @pytest.mark.parametrize(
        "spec",
        [Constant1(), CrossingPower(HALF), ComponentPower(HALF), SingletonHPower(HALF)],
    )
    def test_normalized_at_one_pair(self, spec):
        assert weights.evaluate(spec, P((1, 2))) == 1

    def test_singleton_count_power_not_normalized(self):
        assert weights.evaluate(SingletonCountPower(3), P((1, 2))) == 3

    @pytest.mark.parametrize("n", range(1, 5))
    def test_product_is_pointwise_product(self, n):
        a = CrossingPower(Fraction(1, 3))
        b = SingletonHPower(Fraction(2, 5))
        prod = Product([a, b])
        for v in pairings.enumerate_pairings(n):
            assert weights.evaluate(prod, v) == (
                weights.evaluate(a, v) * weights.evaluate(b, v)
            )

    def test_float_parameters_stay_float(self):
        val = weights.evaluate(CrossingPower(0.25), P((1, 3), (2, 4)))
        assert isinstance(val, float) and val == 0.25


class TestStatisticPolynomial:
    def test_h_power_n2(self):
        poly = weights.statistic_polynomial(SingletonHPower, 2)
        assert dict(poly.coefficients) == {0: 2, 2: 1}

    def test_h_power_n3(self):
        poly = weights.statistic_polynomial(SingletonHPower, 3)
        assert dict(poly.coefficients) == {0: 5, 2: 6, 3: 4}

    @pytest.mark.parametrize(
        "family",
        [CrossingPower, ComponentPower, SingletonHPower],
    )
    def test_n1_constant(self, family):
        # cr, n-cc, and H all vanish on the one-pair partition
        poly = weights.statistic_polynomial(family, 1)
        assert dict(poly.coefficients) == {0: 1}
        assert poly.evaluate(Fraction(7, 3)) == 1

    def test_n1_singleton_count(self):
        # the raw singleton count is 1 on the one-pair partition, not 0
        poly = weights.statistic_polynomial(SingletonCountPower, 1)
        assert dict(poly.coefficients) == {1: 1}
        assert poly.evaluate(Fraction(7, 3)) == Fraction(7, 3)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_endpoint_evaluations(self, n):
        poly = weights.statistic_polynomial(SingletonHPower, n)
        assert poly.evaluate(0) == pairings.count_nc_pairings(n)
        assert poly.evaluate(1) == pairings.pairing_count(n)
        assert poly.total() == pairings.pairing_count(n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_h_family_first_moment_is_singleton_total(self, n):
        poly = weights.statistic_polynomial(SingletonCountPower, n)
        assert sum(k * c for k, c in poly.coefficients.items()) == (
            pairings.total_singletons(n)
        )

    @pytest.mark.parametrize(
        "family,spec",
        [
            (CrossingPower, CrossingPower(Fraction(2, 3))),
            (ComponentPower, ComponentPower(Fraction(2, 3))),
            (SingletonHPower, SingletonHPower(Fraction(2, 3))),
            (SingletonCountPower, SingletonCountPower(Fraction(2, 3))),
        ],
    )
    @pytest.mark.parametrize("n", range(1, 6))
    def test_polynomial_equals_direct_sum(self, family, spec, n):
        poly = weights.statistic_polynomial(family, n)
        direct = sum(
            weights.evaluate(spec, v) for v in pairings.enumerate_pairings(n)
        )
        assert poly.evaluate(Fraction(2, 3)) == direct

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError):
            weights.statistic_polynomial(Constant1, 2)


class _CrossingCountPlusOne(weights.WeightSpec):
    # additive, hence not strongly multiplicative: a failure witness
    def weight_of(self, n, cr, h, cc):
        return cr + 1


class TestStrongMultiplicativity:
    @pytest.mark.parametrize(
        "spec",
        [
            Constant1(),
            SingletonHPower(HALF),
            CrossingPower(Fraction(1, 3)),
            ComponentPower(Fraction(2, 3)),
            SingletonCountPower(Fraction(3, 2)),
            Product([CrossingPower(HALF), SingletonHPower(Fraction(1, 3))]),
        ],
    )
    def test_primitives_pass(self, spec):
        report = weights.check_strong_multiplicativity(spec, 5)
        assert report.passed
        assert report.counterexample is None

    def test_constant_trivially_passes(self):
        assert weights.check_strong_multiplicativity(Constant1(), 5).passed

    def test_counterexample_reported_for_additive_weight(self):
        report = weights.check_strong_multiplicativity(_CrossingCountPlusOne(), 4)
        assert not report.passed
        assert report.counterexample is not None
        # the witness really does violate factorization
        v = report.counterexample
        whole = weights.evaluate(_CrossingCountPlusOne(), v)
        _, comps = pairings.connected_components(v)
        assert len(comps) > 1

    @pytest.mark.parametrize("n", range(1, 5))
    def test_oracle_agreement(self, n):
        # factorization implies the weight is determined by component shapes;
        # cross-check one nontrivial weight against the brute-force scan
        spec = SingletonHPower(HALF)
        direct = brute.weighted_sum(n, lambda cr, h, cc: HALF ** (n - h))
        mine = sum(weights.evaluate(spec, v) for v in pairings.enumerate_pairings(n))
        assert mine == direct


class TestTraceability:
    @pytest.mark.parametrize("stat", ["cr", "h", "cc", "H"])
    def test_all_statistics_traceable(self, stat):
        report = weights.check_traceability(stat, 5)
        assert report.passed, report.detail

    def test_small_case(self):
        assert weights.check_traceability("h", 2).passed

    def test_unknown_statistic(self):
        with pytest.raises(ValueError):
            weights.check_traceability("parity", 3)
