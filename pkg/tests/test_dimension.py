import math

import numpy as np
import pytest

import findim as fd
from findim.cover import fine_cover_profiles
from findim.errors import (
    BadParameter,
    FastPathInapplicable,
    HypothesisViolated,
    InfiniteDimensionError,
    NoUniqueSolution,
)
from findim.metric import cached_summary

from conftest import random_spaces

TRIPLE = [[0.0, 0.0], [0.0, 3.0], [4.0, 0.0]]
L4 = fd.from_points(fd.linear(4))
TRI345 = fd.from_points(fd.PointCloud(points=TRIPLE, metric="l2"))


def _space(metric):
    return fd.from_points(fd.PointCloud(points=TRIPLE, metric=metric))


class TestBoxDimension:
    def test_triple_l2(self):
        r = fd.box_dimension(_space("l2"))
        assert r.value == pytest.approx(math.log(2) / math.log(5 / 4), abs=1e-12)

    def test_triple_l1(self):
        r = fd.box_dimension(_space("l1"))
        assert r.value == pytest.approx(math.log(2) / math.log(7 / 4), abs=1e-12)

    def test_triple_linf_infinite(self):
        r = fd.box_dimension(_space("linf"))
        assert r.kind is fd.DimensionKind.INFINITE
        assert math.isinf(r.value)

    def test_singleton_zero(self):
        r = fd.box_dimension(fd.FiniteMetric.from_matrix([[0.0]]))
        assert r.kind is fd.DimensionKind.ZERO
        assert r.value == 0.0


class TestHausdorffDimension:
    def test_triple_l2_is_two(self):
        r = fd.hausdorff_dimension(_space("l2"))
        assert r.value == pytest.approx(2.0, abs=1e-8)
        assert r.residual <= 1e-8 * 5.0 ** r.value
        assert r.bounds[0] <= r.value <= r.bounds[1]

    def test_linear_four(self):
        r = fd.hausdorff_dimension(L4)
        assert r.value == pytest.approx(math.log(2) / math.log(3), abs=1e-9)

    def test_three_collinear_is_one(self):
        m = fd.from_points(fd.PointCloud(points=[[0.0], [1.7], [4.4]]))
        r = fd.hausdorff_dimension(m)
        assert r.value == pytest.approx(1.0, abs=1e-9)

    def test_two_points_infinite(self):
        r = fd.hausdorff_dimension(fd.FiniteMetric.from_matrix([[0, 1], [1, 0]]))
        assert r.kind is fd.DimensionKind.INFINITE

    def test_witness_attains_measure(self):
        r = fd.hausdorff_dimension(TRI345)
        assert r.witness.weight(r.value) == pytest.approx(5.0 ** r.value, rel=1e-8)


class TestCoverExponent:
    def test_unit_pair_cover(self):
        m = fd.from_points(fd.PointCloud(points=[[0.0], [1.0], [2.0]]))
        cover = fd.TwoCover(sets=(fd.CoverSet(0b011, 1.0), fd.CoverSet(0b110, 1.0)),
                            cover_class=fd.CoverClass.FINE)
        assert fd.cover_exponent(cover, m) == pytest.approx(1.0, abs=1e-11)

    def test_uniform_cover_closed_form(self):
        m = fd.from_points(fd.linear(6))
        _, witness = fd.min_cover_count(m, 1.0)
        expected = math.log(witness.size) / math.log(5.0)
        assert fd.cover_exponent(witness, m) == pytest.approx(expected, abs=1e-11)

    def test_triangle_cover_is_dimension(self):
        _, witness = fd.min_weighted_cover(TRI345, 4.0, 2.0)
        assert fd.cover_exponent(witness, TRI345) == pytest.approx(2.0, abs=1e-11)

    def test_non_fine_cover_rejected(self):
        m = fd.FiniteMetric.from_matrix([[0.0, 7.0], [7.0, 0.0]])
        trivial = fd.TwoCover(sets=(fd.CoverSet(0b11, 7.0),),
                              cover_class=fd.CoverClass.TRIVIAL)
        with pytest.raises(NoUniqueSolution):
            fd.cover_exponent(trivial, m)

    def test_sandwich_bounds(self):
        for m in random_spaces(8, seed=88, n_range=(4, 8)):
            s = cached_summary(m)
            if s.has_focal:
                continue
            _, witness = fd.min_weighted_cover(m, s.covering_diameter, 1.0)
            s_u = fd.cover_exponent(witness, m)
            profile = witness.profile()
            count = witness.size
            lo = math.log(count) / math.log(s.diameter / profile.diameters[0])
            hi = math.log(count) / math.log(s.diameter / profile.diameters[-1])
            outer_lo = math.log(count) / math.log(s.diameter / s.separation)
            assert outer_lo - 1e-9 <= lo - 1e-9 <= s_u <= hi + 1e-9


class TestDimensionBounds:
    def test_linear_four(self):
        lo, hi = fd.dimension_bounds(L4)
        assert lo == pytest.approx(math.log(2) / math.log(3), abs=1e-12)
        assert hi == pytest.approx(1.0, abs=1e-12)

    def test_triangle(self):
        lo, hi = fd.dimension_bounds(TRI345)
        assert lo == pytest.approx(math.log(2) / math.log(5 / 3), abs=1e-12)
        assert hi == pytest.approx(math.log(2) / math.log(5 / 4), abs=1e-12)

    def test_upper_dominates_box_dimension_when_uniform(self):
        for cloud in (fd.cantor_level(3), fd.sierpinski_level(2)):
            m = fd.from_points(cloud)
            assert fd.dimension_bounds(m)[1] >= fd.box_dimension(m).value - 1e-12

    def test_focal_raises(self):
        with pytest.raises(InfiniteDimensionError):
            fd.dimension_bounds(_space("linf"))


class TestLocallyUniformFastPath:
    def test_cantor_two(self):
        m = fd.from_points(fd.cantor_level(2))
        assert fd.locally_uniform_dimension(m).value == pytest.approx(0.5, abs=1e-12)

    def test_sierpinski_two(self):
        m = fd.from_points(fd.sierpinski_level(2))
        assert fd.locally_uniform_dimension(m).value == pytest.approx(1.0, abs=1e-12)

    def test_linear_six(self):
        m = fd.from_points(fd.linear(6))
        assert fd.locally_uniform_dimension(m).value == pytest.approx(
            math.log(3) / math.log(5), abs=1e-12)

    def test_inapplicable(self):
        with pytest.raises(FastPathInapplicable):
            fd.locally_uniform_dimension(TRI345)

    def test_agrees_with_bisection(self):
        for cloud in (fd.cantor_level(4), fd.sierpinski_level(3), fd.linear(9),
                      fd.fold_level(6), fd.carpet_level(1)):
            m = fd.from_points(cloud)
            fast = fd.locally_uniform_dimension(m).value
            slow = fd.hausdorff_dimension(m).value
            assert abs(fast - slow) <= 1e-9


class TestWitnessBelow:
    def test_four_reals_below_one(self):
        m = fd.from_points(fd.PointCloud(points=[[0.0], [0.9], [2.0], [3.3]]))
        witness = fd.witness_dimension_below(m, 1.0)
        assert witness is not None
        assert witness.weight(1.0) < cached_summary(m).diameter

    def test_three_collinear_none_at_one(self):
        m = fd.from_points(fd.PointCloud(points=[[0.0], [1.0], [3.0]]))
        assert fd.witness_dimension_below(m, 1.0) is None

    def test_linear_four_none_at_half(self):
        assert fd.witness_dimension_below(L4, 0.5) is None

    def test_witness_iff_dimension_below(self):
        for m in random_spaces(10, seed=5, n_range=(4, 8)):
            s = cached_summary(m)
            if s.has_focal:
                continue
            dim = fd.hausdorff_dimension(m).value
            for t in (0.5, 1.0, 2.0):
                w = fd.witness_dimension_below(m, t)
                if abs(dim - t) < 1e-6:
                    continue  # too close to decide by strict comparison
                assert (w is not None) == (dim < t)


class TestMassLowerBound:
    def test_uniform_mass_certifies_dimension(self):
        m = fd.from_points(fd.cantor_level(3))
        s = cached_summary(m)
        dim = fd.locally_uniform_dimension(m).value
        t = 4
        mu = fd.MassDistribution(np.full(m.size, s.diameter ** dim / m.size))
        c = s.diameter ** dim / (t * s.covering_diameter ** dim)
        cert = fd.mass_lower_bound(m, mu, c, dim)
        assert cert.mass_bounded
        assert cert.certifies_dimension_at_least_s

    def test_huge_c_grants_without_claim(self):
        mu = fd.MassDistribution(np.ones(4))
        c = 4.0 * 3.0 ** 1.0
        cert = fd.mass_lower_bound(L4, mu, c, 1.0)
        assert cert.mass_bounded
        assert not cert.certifies_dimension_at_least_s

    def test_zero_mass_trivial(self):
        cert = fd.mass_lower_bound(L4, fd.MassDistribution(np.zeros(4)), 1.0, 1.0)
        assert cert.mass_bounded
        assert not cert.certifies_dimension_at_least_s

    def test_hypothesis_violation_reported(self):
        mu = fd.MassDistribution(np.array([10.0, 0.0, 0.0, 0.0]))
        with pytest.raises(HypothesisViolated) as err:
            fd.mass_lower_bound(L4, mu, 1e-6, 1.0)
        assert err.value.members is not None

    def test_bad_params(self):
        with pytest.raises(BadParameter):
            fd.mass_lower_bound(L4, fd.MassDistribution(np.ones(4)), 0.0, 1.0)
        with pytest.raises(BadParameter):
            fd.mass_lower_bound(L4, fd.MassDistribution(np.ones(3)), 1.0, 1.0)


class TestOracleEquivalence:
    def test_bisection_agrees_with_oracle(self):
        for m in random_spaces(8, seed=42, n_range=(4, 8)):
            if cached_summary(m).has_focal:
                continue
            fast = fd.hausdorff_dimension(m)
            slow = fd.oracle_hausdorff_dimension(m)
            assert abs(fast.value - slow.value) <= 1e-9

    def test_dimension_is_min_cover_exponent(self):
        # exhaustive: over every irredundant fine cover at level nabla, the
        # smallest per-cover exponent is the dimension itself
        for m in random_spaces(8, seed=77, n_range=(4, 7)):
            s = cached_summary(m)
            if s.has_focal:
                continue
            dim = fd.hausdorff_dimension(m).value
            roots = []
            for profile in set(fine_cover_profiles(m, s.covering_diameter)):
                scaled = [a / s.diameter for a in profile]
                lo, hi = 0.0, 64.0
                for _ in range(80):
                    mid = (lo + hi) / 2
                    if sum(a ** mid for a in scaled) > 1.0:
                        lo = mid
                    else:
                        hi = mid
                roots.append((lo + hi) / 2)
            assert min(roots) == pytest.approx(dim, abs=1e-8)


class TestStructuralInvariants:
    def test_order_and_trichotomy(self):
        for m in random_spaces(40, seed=9, n_range=(1, 12), d_range=(1, 4)):
            dh = fd.hausdorff_dimension(m)
            db = fd.box_dimension(m)
            assert dh.kind == db.kind
            if m.size == 1:
                assert dh.kind is fd.DimensionKind.ZERO
                continue
            s = cached_summary(m)
            if s.has_focal:
                assert dh.kind is fd.DimensionKind.INFINITE
                continue
            upper = math.log(m.size - 1) / math.log(s.diameter / s.covering_diameter)
            assert dh.value <= db.value + 1e-9 <= upper + 2e-9
            assert dh.residual <= 1e-8 * s.diameter ** dh.value
            lo, hi = fd.dimension_bounds(m)
            assert lo - 1e-9 <= dh.value <= hi + 1e-9
            assert fd.cover_exponent(dh.witness, m) == pytest.approx(
                dh.value, abs=1e-8)
