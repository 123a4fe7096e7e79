import itertools
import math

import numpy as np
import pytest

import findim as fd
from findim.errors import BadParameter, EmptyApproximation, TooFine
from findim.metric import cached_summary

from conftest import brute_minima


class _MissOracle:
    dimension = 1

    def index_ranges(self, eps):
        return (range(4),)

    def intersects(self, cube, eps):
        return False


class TestLatticeApprox:
    def test_cantor_level_one(self):
        approx = fd.lattice_approx(fd.CantorDustOracle(), 1.0 / 3.0)
        assert approx.cube_count == 2
        assert approx.cubes == ((0,), (2,))
        assert [p[0] for p in approx.cloud.points] == pytest.approx(
            [0.0, 1 / 3, 2 / 3, 1.0])

    def test_unit_square_half(self):
        approx = fd.lattice_approx(fd.FilledBoxOracle(2), 0.5)
        assert approx.cube_count == 4
        assert approx.size == 9

    def test_always_miss(self):
        with pytest.raises(EmptyApproximation):
            fd.lattice_approx(_MissOracle(), 0.25)

    def test_cube_cap(self):
        with pytest.raises(TooFine):
            fd.lattice_approx(fd.FilledBoxOracle(2), 1.0 / 1024, cube_cap=1000)

    def test_locally_uniform_exactly(self):
        for eps in (1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0):
            approx = fd.lattice_approx(fd.CantorDustOracle(), eps)
            s = cached_summary(fd.from_points(approx.cloud))
            assert s.separation == eps
            assert s.covering_diameter == eps
        approx = fd.lattice_approx(fd.FilledBoxOracle(2), 0.25)
        s = cached_summary(fd.from_points(approx.cloud))
        assert s.separation == 0.25 == s.covering_diameter

    def test_corner_count_at_least_cubes(self):
        for oracle, eps in ((fd.CantorDustOracle(), 1.0 / 9.0),
                            (fd.FilledBoxOracle(2), 0.25),
                            (fd.FilledBoxOracle(3), 0.5)):
            approx = fd.lattice_approx(oracle, eps)
            assert approx.size >= approx.cube_count

    def test_triadic_eps_validated(self):
        with pytest.raises(BadParameter):
            fd.lattice_approx(fd.CantorDustOracle(), 0.25)

    def test_digit_test_consistent_under_subdivision(self):
        oracle = fd.CantorDustOracle()
        for a in range(9):
            if not oracle.intersects((a,), 1.0 / 9.0):
                for sub in range(3 * a, 3 * a + 3):
                    assert not oracle.intersects((sub,), 1.0 / 27.0)

    def test_sample_oracle_one_sided(self):
        pts = np.array([[0.1, 0.1], [0.9, 0.85]])
        oracle = fd.PointSampleOracle(pts)
        approx = fd.lattice_approx(oracle, 0.5)
        assert approx.cube_count == 2
        assert fd.hausdorff_distance(approx.cloud.points, pts) <= approx.hausdorff_bound


class TestHausdorffDistance:
    def test_identical(self):
        pts = np.array([[0.0, 0.0], [1.0, 2.0]])
        assert fd.hausdorff_distance(pts, pts) == 0.0

    def test_known_value(self):
        a = np.array([[0.0], [1.0]])
        b = np.array([[0.0], [3.0]])
        assert fd.hausdorff_distance(a, b) == 2.0

    def test_approximation_bound(self):
        for eps in (1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0):
            approx = fd.lattice_approx(fd.CantorDustOracle(), eps)
            # the kept-cube corners sit on the dust grid itself
            dust = fd.lattice_approx(fd.CantorDustOracle(), eps / 3.0)
            d = fd.hausdorff_distance(approx.cloud.points, dust.cloud.points)
            assert d <= approx.hausdorff_bound + 1e-15


class TestTInequalities:
    def test_cantor_level_two(self):
        approx = fd.lattice_approx(fd.CantorDustOracle(), 1.0 / 9.0)
        assert approx.cube_count == 4
        report = fd.check_T_inequalities(approx)
        assert report.ok
        # one dimension: the upper factor collapses, so T <= Tbar
        assert report.t_count <= report.cube_count
        assert report.t_count == 4  # frozen from the 8-point exact solve

    def test_unit_square_half(self):
        approx = fd.lattice_approx(fd.FilledBoxOracle(2), 0.5)
        m = fd.from_points(approx.cloud)
        count, _ = brute_minima(m, 0.5, 0.0)
        report = fd.check_T_inequalities(approx, m)
        assert report.ok
        assert report.t_count == count == 5
        assert 2 <= report.t_count <= 8

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_cantor_chain(self, k):
        approx = fd.lattice_approx(fd.CantorDustOracle(), 1.0 / 3 ** k)
        report = fd.check_T_inequalities(approx)
        assert report.ok

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_square_chain(self, k):
        approx = fd.lattice_approx(fd.FilledBoxOracle(2), 1.0 / 2 ** k)
        report = fd.check_T_inequalities(approx)
        assert report.ok


class TestConvergenceTables:
    def test_cantor_gap_shrinks(self):
        table = fd.family_convergence("cantor", range(2, 7))
        assert table.gap_monotone
        assert table.ratio_ok
        gaps = [row.gap for row in table.rows]
        assert gaps[-1] < 0.06
        assert all(row.method == "exact" for row in table.rows)
        assert table.rows[-1].limit == pytest.approx(math.log(2) / math.log(3))
        # exact solves reproduce the family closed forms
        for row in table.rows:
            assert row.dim_fH == pytest.approx(row.closed_form, abs=1e-9)
            assert row.dim_fB == pytest.approx(row.closed_form, abs=1e-12)

    def test_sierpinski_levels(self):
        table = fd.family_convergence("sierpinski", range(2, 6))
        assert table.gap_monotone
        assert [r.method for r in table.rows] == ["exact"] * 3 + ["closed-form"]
        assert table.rows[-1].limit == pytest.approx(math.log(3) / math.log(2))

    def test_tetra_levels(self):
        table = fd.family_convergence("tetra", range(2, 5))
        assert table.gap_monotone
        assert table.rows[-1].limit == 2.0

    def test_estimator_column(self):
        table = fd.family_convergence("cantor", range(2, 5))
        for row in table.rows:
            assert row.estimator == pytest.approx(
                math.log(row.T) / -math.log(row.nabla))

    def test_oracle_lane(self):
        table = fd.oracle_convergence(fd.CantorDustOracle(),
                                      [1.0 / 3 ** k for k in (1, 2, 3)])
        assert table.ratio == pytest.approx(1 / 3)
        for row in table.rows:
            assert row.Tbar == 2 ** (row.level + 1)
            # locally uniform: the two dimensions coincide (to bisection accuracy)
            assert row.dim_fH == pytest.approx(row.dim_fB, abs=1e-9)
        # refinement: covering diameters shrink, cover counts blow up
        nablas = [row.nabla for row in table.rows]
        counts = [row.T for row in table.rows]
        assert all(b < a for a, b in zip(nablas, nablas[1:]))
        assert all(b >= a for a, b in zip(counts, counts[1:]))
        assert table.rows[-1].limit == pytest.approx(math.log(2) / math.log(3))

    def test_csv_columns_fixed(self):
        table = fd.family_convergence("cantor", range(2, 4))
        lines = fd.lattice.table_csv_lines(table)
        assert lines[0] == ("level,eps,card,delta,nabla,Delta,T,Tbar,"
                            "dim_fH,dim_fB,closed_form,limit")
        assert len(lines) == 3
        # family lane leaves Tbar empty
        assert lines[1].split(",")[7] == ""

    def test_json_payload(self):
        payload = fd.lattice.table_json(fd.family_convergence("cantor", range(2, 4)))
        assert payload["rows"][0]["method"] == "exact"
        assert "estimator" in payload["rows"][0]

    def test_dispatcher(self):
        by_name = fd.convergence_table("cantor", range(2, 4))
        by_oracle = fd.convergence_table(fd.CantorDustOracle(), [1 / 3, 1 / 9])
        assert by_name.rows[0].Tbar is None
        assert by_oracle.rows[0].Tbar == 2
