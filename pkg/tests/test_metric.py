import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import findim as fd
from findim.errors import (
    BadParameter,
    DegenerateInput,
    MalformedInput,
    NotAMetric,
    SingletonSpace,
)

TRIPLE = [[0.0, 0.0], [0.0, 3.0], [4.0, 0.0]]


def _offdiag(m):
    n = m.size
    return sorted(m.dist[i, j] for i in range(n) for j in range(i + 1, n))


class TestFromPoints:
    def test_triple_l2(self):
        m = fd.from_points(fd.PointCloud(points=TRIPLE, metric="l2"))
        assert _offdiag(m) == [3.0, 4.0, 5.0]

    def test_triple_l1(self):
        m = fd.from_points(fd.PointCloud(points=TRIPLE, metric="l1"))
        assert _offdiag(m) == [3.0, 4.0, 7.0]

    def test_triple_linf(self):
        m = fd.from_points(fd.PointCloud(points=TRIPLE, metric="linf"))
        assert _offdiag(m) == [3.0, 4.0, 4.0]

    def test_singleton(self):
        m = fd.from_points(fd.PointCloud(points=[[5.0]]))
        assert m.size == 1
        assert m.dist[0, 0] == 0.0

    def test_duplicate_points_rejected(self):
        with pytest.raises(DegenerateInput):
            fd.PointCloud(points=[[1.0, 2.0], [1.0, 2.0]])

    def test_ragged_rejected(self):
        with pytest.raises(MalformedInput):
            fd.PointCloud(points=[[1.0, 2.0], [1.0]])

    def test_lp_metric(self):
        m = fd.from_points(fd.PointCloud(points=[[0.0, 0.0], [1.0, 1.0]],
                                         metric="lp:3"))
        assert m.dist[0, 1] == pytest.approx(2.0 ** (1.0 / 3.0))

    def test_bad_metric_tag(self):
        with pytest.raises(MalformedInput):
            fd.PointCloud(points=[[0.0]], metric="chebyshev")


class TestFromMatrix:
    def test_asymmetric_rejected(self):
        with pytest.raises(MalformedInput):
            fd.FiniteMetric.from_matrix([[0, 1], [2, 0]])

    def test_nonzero_diagonal_rejected(self):
        with pytest.raises(MalformedInput):
            fd.FiniteMetric.from_matrix([[1, 1], [1, 0]])

    def test_zero_offdiagonal_rejected(self):
        with pytest.raises(DegenerateInput):
            fd.FiniteMetric.from_matrix([[0, 0], [0, 0]])

    def test_triangle_violation(self):
        bad = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
        with pytest.raises(NotAMetric):
            fd.FiniteMetric.from_matrix(bad)
        m = fd.FiniteMetric.from_matrix(bad, validate_triangle=False)
        assert m.diameter == 5.0

    def test_default_tolerance_scales(self):
        m = fd.FiniteMetric.from_matrix([[0.0, 2e6], [2e6, 0.0]])
        assert m.tolerance == pytest.approx(1e-9 * 2e6)


class TestSummarize:
    def test_cube_spike(self):
        m = fd.from_points(fd.linf_cube_spike(0.5))
        s = fd.summarize(m)
        assert s.separation == 0.5
        assert s.covering_diameter == 1.0
        assert s.diameter == 1.0
        assert s.focal == (0, 1, 2, 3, 4, 5)
        assert not s.locally_uniform

    def test_linear_five(self):
        m = fd.from_points(fd.linear(5))
        s = fd.summarize(m)
        assert (s.separation, s.covering_diameter, s.diameter) == (1.0, 1.0, 4.0)
        assert s.focal == ()
        assert s.locally_uniform

    def test_two_points(self):
        m = fd.FiniteMetric.from_matrix([[0.0, 7.0], [7.0, 0.0]])
        s = fd.summarize(m)
        assert (s.separation, s.covering_diameter, s.diameter) == (7.0, 7.0, 7.0)
        assert s.focal == (0, 1)

    def test_singleton_raises(self):
        with pytest.raises(SingletonSpace):
            fd.summarize(fd.FiniteMetric.from_matrix([[0.0]]))


class TestCollinear:
    def test_line_subset(self):
        assert fd.is_collinear(fd.PointCloud(points=[[0.0], [3.0], [7.0]]))

    def test_right_triangle(self):
        assert not fd.is_collinear(fd.PointCloud(points=TRIPLE))

    def test_diagonal(self):
        assert fd.is_collinear(
            fd.PointCloud(points=[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))

    def test_needs_euclidean(self):
        with pytest.raises(BadParameter):
            fd.is_collinear(fd.PointCloud(points=TRIPLE, metric="l1"))


points_strategy = st.lists(
    st.tuples(st.integers(0, 40), st.integers(0, 40)),
    min_size=2, max_size=9, unique=True,
)


@settings(max_examples=60, deadline=None)
@given(points=points_strategy, metric=st.sampled_from(["l1", "l2", "linf"]))
def test_summary_invariants(points, metric):
    m = fd.from_points(fd.PointCloud(points=np.array(points, float), metric=metric))
    s = fd.summarize(m)
    assert 0 < s.separation <= s.covering_diameter <= s.diameter
    assert s.separation == s.nu.min()
    assert s.covering_diameter == s.nu.max()
    # focal points exist exactly when the covering diameter reaches the diameter
    assert s.has_focal == (s.covering_diameter >= s.diameter - m.tolerance)
    # a point is focal exactly when it has no neighbor below the diameter
    for i in range(m.size):
        others = [m.dist[i, j] for j in range(m.size) if j != i]
        assert (i in s.focal) == all(d >= s.diameter - m.tolerance for d in others)


@settings(max_examples=30, deadline=None)
@given(points=points_strategy, data=st.data())
def test_summary_permutation_invariant(points, data):
    m = fd.from_points(fd.PointCloud(points=np.array(points, float)))
    perm = data.draw(st.permutations(range(m.size)))
    s = fd.summarize(m)
    sp = fd.summarize(m.relabeled(perm))
    assert sp.separation == s.separation
    assert sp.covering_diameter == s.covering_diameter
    assert sp.diameter == s.diameter
    assert sorted(perm.index(i) for i in s.focal) == list(sp.focal)
