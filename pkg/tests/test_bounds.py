"""Tests for the bound computations.

Derived expectations are either recomputed here with exact Fraction
arithmetic or cross-checked against independently evaluated inequalities;
regression values carry the arithmetic that produced them.
"""

import math
from fractions import Fraction

import pytest

from coverkit import bounds
from coverkit.core import CAParams
from coverkit.errors import UnsupportedParameterError


class TestSljBound:
    def test_reference_value_6_54_3(self):
        # C(54,6)*3^6 = 18,828,003,285 total interactions
        assert bounds.slj_bound(CAParams(6, 54, 3)).value == 17236

    def test_smallest_binary_case(self):
        # ceil(log 4 / log(4/3)) = ceil(4.8188) = 5
        assert bounds.slj_bound(CAParams(2, 2, 2)).value == 5

    def test_leftover_brackets_one(self):
        # 4*(3/4)^5 < 1 <= 4*(3/4)^4, by exact rationals
        n = bounds.slj_bound(CAParams(2, 2, 2)).value
        assert 4 * Fraction(3, 4) ** n < 1
        assert 4 * Fraction(3, 4) ** (n - 1) >= 1

    def test_exact_inequality_at_value(self):
        for t, k, v in [(2, 10, 2), (3, 8, 3), (2, 20, 4)]:
            p = CAParams(t, k, v)
            n = bounds.slj_bound(p).value
            m = p.interaction_space_size
            y = Fraction(p.tuple_count - 1, p.tuple_count)
            assert m * y**n < 1
            assert m * y ** (n - 1) >= 1


class TestDiscreteSlj:
    def test_tiny_trace(self):
        rep, trace = bounds.discrete_slj_bound(CAParams(2, 2, 2))
        assert trace.counts == (4, 3, 2, 1, 0)
        assert rep.value == 4

    def test_first_deficit_zero(self):
        _, trace = bounds.discrete_slj_bound(CAParams(3, 6, 2))
        assert trace.deficits[0] == 0

    def test_deficits_in_unit_interval(self):
        _, trace = bounds.discrete_slj_bound(CAParams(2, 12, 3))
        assert all(0 <= d <= 1 for d in trace.deficits)

    def test_counts_strictly_decreasing(self):
        _, trace = bounds.discrete_slj_bound(CAParams(2, 12, 3))
        assert all(a > b for a, b in zip(trace.counts, trace.counts[1:]))

    def test_exact_divisor_step_subtracts_one(self):
        # r=4 with v^t=4 after the first row: next is y*r - 1 = 2
        _, trace = bounds.discrete_slj_bound(CAParams(2, 4, 2))
        counts = trace.counts
        assert counts[0] == 24
        for i in range(1, len(counts) - 1):
            r = counts[i]
            if r % 4 == 0:
                assert counts[i + 1] == r * 3 // 4 - 1

    def test_never_above_slj(self):
        for t, k, v in [(2, 2, 2), (2, 10, 2), (3, 8, 3), (2, 15, 4)]:
            p = CAParams(t, k, v)
            rep, _ = bounds.discrete_slj_bound(p)
            assert rep.value <= bounds.slj_bound(p).value

    def test_sandwich_exact_sample(self):
        # estimate < N <= (log(C+eps) - log eps)/log x, exact rationals
        for t, k, v in [(2, 7, 2), (3, 9, 2), (2, 11, 3)]:
            p = CAParams(t, k, v)
            rep, trace = bounds.discrete_slj_bound(p)
            n = rep.value
            c = math.comb(k, t)
            vt = p.tuple_count
            assert vt**n > (c + 1) * (vt - 1) ** n  # lower, strict
            eps = min(trace.deficits[1 : n - 1])
            a, b = eps.numerator, eps.denominator
            assert a * vt**n <= (b * c + a) * (vt - 1) ** n  # upper

    def test_regression_6_54_3(self):
        p = CAParams(6, 54, 3)
        rep, _ = bounds.discrete_slj_bound(p)
        assert rep.value == 12853
        assert rep.value > bounds.discrete_slj_estimate(p)

    def test_step_cap(self):
        from coverkit.errors import ResourceLimitError

        with pytest.raises(ResourceLimitError):
            bounds.discrete_slj_bound(CAParams(2, 12, 3), max_steps=5)


class TestDiscreteSljEstimate:
    def test_small_value(self):
        est = bounds.discrete_slj_estimate(CAParams(2, 2, 2))
        assert est == pytest.approx(math.log(2) / math.log(4 / 3), rel=1e-12)
        assert est == pytest.approx(2.409, abs=5e-4)

    def test_below_recurrence_value(self):
        for t, k, v in [(2, 5, 2), (2, 14, 3), (3, 10, 2), (3, 7, 3)]:
            p = CAParams(t, k, v)
            rep, _ = bounds.discrete_slj_bound(p)
            assert bounds.discrete_slj_estimate(p) < rep.value

    def test_formula_identity_with_slj_shape(self):
        # the estimate is the slj expression with C(k,t)+1 in place of C(k,t)*v^t
        p = CAParams(3, 9, 2)
        lnx = math.log(p.tuple_count / (p.tuple_count - 1))
        assert bounds.discrete_slj_estimate(p) == pytest.approx(
            math.log(math.comb(9, 3) + 1) / lnx, rel=1e-12
        )


class TestTwoStage:
    def test_reference_minimum_6_54_3(self):
        rep = bounds.two_stage_bound(CAParams(6, 54, 3))
        assert rep.value == 13162
        assert rep.stage1_rows == 12402

    def test_reference_objective_values(self):
        p = CAParams(6, 54, 3)
        assert bounds.two_stage_objective(p, 12402) == 13162
        assert bounds.two_stage_bound(p).value < bounds.slj_bound(p).value

    def test_objective_at_zero_is_space_size(self):
        p = CAParams(2, 2, 2)
        assert bounds.two_stage_objective(p, 0) == 4
        p2 = CAParams(3, 7, 3)
        assert bounds.two_stage_objective(p2, 0) == p2.interaction_space_size

    def test_objective_lower_bounds(self):
        p = CAParams(2, 8, 3)
        for n in (0, 3, 10, 40, 200):
            val = bounds.two_stage_objective(p, n)
            assert val >= n
            assert val >= val - n >= 0

    def test_objective_matches_fraction_oracle(self):
        p = CAParams(2, 6, 2)
        m = p.interaction_space_size
        for n in range(0, 40):
            expect = n + int(m * Fraction(3, 4) ** n)
            assert bounds.two_stage_objective(p, n) == expect

    def test_bound_is_window_minimum(self):
        # the reported value is minimal over a wide brute-forced range
        p = CAParams(2, 10, 2)
        rep = bounds.two_stage_bound(p)
        brute = min(bounds.two_stage_objective(p, n) for n in range(0, 200))
        assert rep.value == brute
        firsts = [n for n in range(0, 200) if bounds.two_stage_objective(p, n) == brute]
        assert rep.stage1_rows == firsts[0]

    def test_below_analytic_ceiling(self):
        for t, k, v in [(2, 10, 2), (3, 12, 2), (2, 30, 3), (6, 54, 3)]:
            p = CAParams(t, k, v)
            rep = bounds.two_stage_bound(p)
            assert rep.value <= math.ceil(rep.notes["analytic_value"])


class TestGss:
    def test_coefficient_ratio_to_slj(self):
        for t in range(2, 7):
            for v in (2, 3, 5):
                ratio = bounds.asymptotic_coefficient("slj", t, v) / bounds.asymptotic_coefficient("gss", t, v)
                assert ratio == pytest.approx(t / (t - 1), rel=1e-12)

    def test_normalized_value_approaches_coefficient(self):
        coef = bounds.asymptotic_coefficient("gss", 6, 3)
        r1 = bounds.gss_lll_bound(CAParams(6, 10**6, 3)).value / math.log(10**6)
        r2 = bounds.gss_lll_bound(CAParams(6, 10**9, 3)).value / math.log(10**9)
        assert abs(r2 / coef - 1) < abs(r1 / coef - 1)
        assert r1 / coef == pytest.approx(1.0, abs=0.08)

    def test_dependence_options_reported(self):
        p = CAParams(3, 10, 2)
        simple = bounds.gss_lll_bound(p, "simple")
        improved = bounds.gss_lll_bound(p, "improved")
        assert simple.notes["d_plus_1"] == 3 * math.comb(10, 2)
        assert improved.notes["d_plus_1"] == 3 * math.comb(9, 2) + 1
        assert improved.value <= simple.value

    def test_exact_inequality_at_value(self):
        # e*v^t*y^N*(d+1) <= 1 at N, > 1 at N-1 (checked in logs)
        p = CAParams(2, 6, 2)
        rep = bounds.gss_lll_bound(p)
        n = rep.value
        factor = rep.notes["d_plus_1"] * p.tuple_count
        lhs = lambda j: 1 + math.log(factor) - j * math.log(p.tuple_count / (p.tuple_count - 1))
        assert lhs(n) <= 1e-12
        assert lhs(n - 1) > 0


class TestCyclic:
    def test_hand_computed_binary_case(self):
        # e*2*(1/2)^n*2*C(4,1) < 1 first at n=6, so N = 12
        rep = bounds.cyclic_lll_bound(CAParams(2, 4, 2))
        assert rep.stage1_rows == 6
        assert rep.value == 12
        assert 16 * math.e * 0.5**6 < 1 < 16 * math.e * 0.5**5

    def test_orbit_bookkeeping(self):
        rep = bounds.cyclic_lll_bound(CAParams(3, 5, 3))
        assert rep.notes["orbit_count"] == 9
        assert rep.notes["orbit_length"] == 3
        assert rep.notes["orbit_count"] * rep.notes["orbit_length"] == 27

    def test_coefficient_beats_gss_on_grid(self):
        for t in range(2, 7):
            for v in range(2, 8):
                assert bounds.asymptotic_coefficient("cyclic", t, v) < bounds.asymptotic_coefficient("gss", t, v)

    def test_value_is_multiple_of_v(self):
        for v in (2, 3, 5):
            rep = bounds.cyclic_lll_bound(CAParams(2, 7, v))
            assert rep.value == v * rep.stage1_rows


class TestFrobenius:
    def test_non_prime_power_rejected(self):
        with pytest.raises(UnsupportedParameterError):
            bounds.frobenius_lll_bound(CAParams(2, 8, 6))
        with pytest.raises(UnsupportedParameterError):
            bounds.asymptotic_coefficient("frobenius", 3, 12)

    def test_orbit_arithmetic_v3_t2(self):
        rep = bounds.frobenius_lll_bound(CAParams(2, 5, 3))
        assert rep.notes["full_orbit_count"] == 1       # (3-1)/(3-1)... = (v^{t-1}-1)/(v-1)
        assert rep.notes["full_orbit_length"] == 6
        assert rep.notes["short_orbit_rows"] == 3
        assert 3 + 1 * 6 == 9  # orbit sizes partition v^t

    def test_structure_of_value(self):
        rep = bounds.frobenius_lll_bound(CAParams(3, 8, 4))
        assert rep.value == 4 * 3 * rep.stage1_rows + 4

    def test_coefficient_beats_cyclic_where_defined(self):
        for t in range(2, 7):
            for v in (3, 4, 5, 7):
                assert bounds.asymptotic_coefficient("frobenius", t, v) < bounds.asymptotic_coefficient("cyclic", t, v)

    def test_reference_ordering_6_3(self):
        f = bounds.asymptotic_coefficient("frobenius", 6, 3)
        c = bounds.asymptotic_coefficient("cyclic", 6, 3)
        g = bounds.asymptotic_coefficient("gss", 6, 3)
        assert f < c < g

    def test_coefficient_close_to_series_form(self):
        # v^t (t-1) / (1 + (v-1)/(2 v^(t-1))) approximates the coefficient
        for t, v in [(3, 3), (4, 4), (6, 3), (5, 5)]:
            exact = bounds.asymptotic_coefficient("frobenius", t, v)
            approx = v**t * (t - 1) / (1 + (v - 1) / (2 * v ** (t - 1)))
            assert exact == pytest.approx(approx, rel=0.02)


class TestPgl:
    def test_full_orbit_count_formula(self):
        # (25 - 4*3 - 1) / (4*3) = 1
        assert bounds.pgl_orbit_counts(3, 5)["full_orbits"] == 1
        assert bounds.pgl_orbit_counts(2, 5)["full_orbits"] == 0
        assert bounds.pgl_orbit_counts(3, 5)["two_symbol_orbits"] == 3

    def test_orbit_size_accounting(self):
        for t in (2, 3, 4):
            for v in (3, 4, 5):
                census = bounds.pgl_orbit_counts(t, v)
                total = (
                    v
                    + v * (v - 1) * census["two_symbol_orbits"]
                    + v * (v - 1) * (v - 2) * census["full_orbits"]
                )
                assert total == v**t

    def test_parameter_validation(self):
        with pytest.raises(UnsupportedParameterError):
            bounds.pgl_lll_bound(CAParams(3, 8, 7))  # v-1 = 6 not a prime power
        with pytest.raises(UnsupportedParameterError):
            bounds.asymptotic_coefficient("pgl", 3, 7)

    def test_value_decomposition(self):
        p = CAParams(3, 8, 4)
        rep = bounds.pgl_lll_bound(p)
        assert rep.value == rep.notes["full_stage_addend"] + rep.notes["pair_addend"]
        assert rep.notes["pair_addend"] == math.comb(4, 2) * bounds.cyclic_lll_bound(
            CAParams(3, 8, 2)
        ).value

    def test_frobenius_tighter_at_t5_through_v29(self):
        # one-sided check of the stated range; both coefficients defined at
        # v in {3,4,5,8,9,17} below 29 (v and v-1 both prime powers)
        for v in (3, 4, 5, 8, 9, 17):
            f = bounds.asymptotic_coefficient("frobenius", 5, v)
            g = bounds.asymptotic_coefficient("pgl", 5, v)
            assert f < g

    def test_coefficient_is_sum_of_two_terms(self):
        t, v = 4, 5
        base = v ** (t - 1)
        full = v * (v - 1) * (v - 2) * (t - 1) / math.log(base / (base - (v - 1) * (v - 2)))
        pairs = v * (v - 1) * (t - 1) / math.log(2 ** (t - 1) / (2 ** (t - 1) - 1))
        assert bounds.asymptotic_coefficient("pgl", t, v) == pytest.approx(full + pairs, rel=1e-12)


class TestConditional:
    def test_discrete_variant_never_worse(self):
        for k in (50, 100, 200, 400, 1000):
            p = CAParams(6, k, 3)
            one = bounds.conditional_lll_two_stage_bound(p, "one_row_each")
            dens = bounds.conditional_lll_two_stage_bound(p, "discrete_slj")
            assert dens.value <= one.value
            assert dens.stage1_rows == one.stage1_rows

    def test_second_term_roughly_linear(self):
        p1 = bounds.conditional_lll_two_stage_bound(CAParams(6, 300, 3))
        p2 = bounds.conditional_lll_two_stage_bound(CAParams(6, 600, 3))
        ratio = p2.notes["stage2_rows"] / p1.notes["stage2_rows"]
        assert 1.7 < ratio < 2.3

    def test_loose_form_reported(self):
        p = CAParams(6, 54, 3)
        rep = bounds.conditional_lll_two_stage_bound(p)
        # floor(k * e^t (v^t-1)/t^2 * (1-1/t)^(t-1)), the coarse closed form
        loose = int(54 * math.e**6 * 728 / 36 * (5 / 6) ** 5)
        assert abs(rep.notes["loose_linear_leftover"] - loose) <= 1
        assert rep.notes["expected_leftover_floor"] < rep.notes["loose_linear_leftover"]


class TestKatonaKleitman:
    def test_reference_values(self):
        # k=4: C(4,3)=4 >= 4 at N=5 while C(3,2)=3 < 4
        assert bounds.katona_kleitman_exact(4) == 5
        # k=10: C(5,3)=10 >= 10 at N=6
        assert bounds.katona_kleitman_exact(10) == 6
        assert bounds.katona_kleitman_exact(2) == 4

    def test_monotone_in_k(self):
        vals = [bounds.katona_kleitman_exact(k) for k in range(2, 60)]
        assert vals == sorted(vals)


class TestCrossBoundProperties:
    GRID = [(2, 5, 2), (2, 8, 2), (2, 5, 3), (3, 6, 2), (3, 8, 3), (2, 6, 5)]

    def _all_bounds(self, p: CAParams):
        out = {
            "slj": bounds.slj_bound(p).value,
            "discrete_slj": bounds.discrete_slj_bound(p)[0].value,
            "two_stage": bounds.two_stage_bound(p).value,
            "gss": bounds.gss_lll_bound(p).value,
            "cyclic": bounds.cyclic_lll_bound(p).value,
            "conditional": bounds.conditional_lll_two_stage_bound(p).value,
        }
        from coverkit._numeric import is_prime_power

        if is_prime_power(p.v):
            out["frobenius"] = bounds.frobenius_lll_bound(p).value
        if p.v >= 3 and is_prime_power(p.v - 1):
            out["pgl"] = bounds.pgl_lll_bound(p).value
        return out

    def test_all_bounds_at_least_tuple_count(self):
        for t, k, v in self.GRID:
            p = CAParams(t, k, v)
            for name, val in self._all_bounds(p).items():
                assert val >= p.tuple_count, (name, p)

    def test_all_bounds_at_least_katona_for_binary_pairs(self):
        for k in (4, 6, 10, 20):
            p = CAParams(2, k, 2)
            floor = bounds.katona_kleitman_exact(k)
            for name, val in self._all_bounds(p).items():
                assert val >= floor, (name, k)

    def test_monotone_in_k(self):
        for t, v in [(2, 2), (2, 3), (3, 2)]:
            for name in ("slj", "discrete_slj", "two_stage", "gss", "cyclic"):
                prev = None
                for k in range(max(t, 4), 16, 2):
                    val = self._all_bounds(CAParams(t, k, v))[name]
                    if prev is not None:
                        assert val >= prev, (name, t, v, k)
                    prev = val

    def test_monotone_in_v(self):
        for name in ("slj", "discrete_slj", "two_stage", "gss", "cyclic"):
            prev = None
            for v in (2, 3, 4, 5):
                val = self._all_bounds(CAParams(2, 8, v))[name]
                if prev is not None:
                    assert val >= prev, (name, v)
                prev = val

    def test_recurrence_never_exceeds_two_stage(self):
        # each recurrence step removes at least one leftover, so the step
        # count is at most n + floor(M y^n) for every n, hence at most the
        # two-stage minimum
        for t, k, v in self.GRID + [(6, 54, 3)]:
            p = CAParams(t, k, v)
            assert bounds.discrete_slj_bound(p)[0].value <= bounds.two_stage_bound(p).value

    def test_two_stage_never_exceeds_slj(self):
        for t, k, v in self.GRID + [(6, 54, 3)]:
            p = CAParams(t, k, v)
            assert bounds.two_stage_bound(p).value <= bounds.slj_bound(p).value
