"""Grid approximation of compact sets and convergence experiments.

A compact X in R^n is approximated by the corners of all side-eps grid cubes
that meet it. The resulting finite set is locally uniform with separation and
covering diameter both exactly eps (every point is a corner of a fully
included cube), sits within eps * sqrt(n) of X in Hausdorff distance, and its
minimal fine-cover count T brackets the plain cube count Tbar:

    Tbar / 2  <=  T  <=  2^(n-1) * Tbar.

Cube membership is delegated to an oracle; digit-test oracles decide the
classical fractal sets exactly, while the point-sample oracle is a generic
fallback with a documented one-sided error (cubes meeting X only in a thin
sliver that contains no sample point are missed).

convergence_table() drives either a generator family or an oracle through a
sequence of levels and reports dimensions next to their closed forms and the
classical limit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Protocol, Sequence, Union, runtime_checkable

import numpy as np

from . import families as _families
from .cover import DEFAULT_MAX_EXACT, min_cover_count
from .dimension import box_dimension, hausdorff_dimension
from .errors import BadParameter, EmptyApproximation, TooFine
from .families import FamilySpec
from .metric import FiniteMetric, LatticeData, PointCloud, cached_summary, from_points


@runtime_checkable
class CubeOracle(Protocol):
    """Decides which side-eps grid cubes meet the target set."""

    dimension: int

    def index_ranges(self, eps: float) -> tuple:
        """Per-axis ranges of cube indices covering the bounding box."""
        ...

    def intersects(self, cube: tuple, eps: float) -> bool:
        """Whether cube [k*eps, (k+1)*eps]^n meets the set."""
        ...


def _triadic_depth(eps: float) -> int:
    n = round(1.0 / eps)
    k = round(math.log(n) / math.log(3.0))
    if 3 ** k != n or not math.isclose(eps, 1.0 / n):
        raise BadParameter(f"eps must be a power of 1/3, got {eps}")
    return k


@dataclass(frozen=True)
class CantorDustOracle:
    """Middle-thirds dust on [0, 1], decided exactly by base-3 digits.

    A level-k cube is kept iff no base-3 digit of its index is 1; removed
    cubes that merely touch the dust at an endpoint are not counted, matching
    the usual box count of 2^k at eps = 3^-k.
    """

    dimension: int = 1
    classical_dimension: float = math.log(2.0) / math.log(3.0)

    def index_ranges(self, eps: float) -> tuple:
        return (range(3 ** _triadic_depth(eps)),)

    def intersects(self, cube: tuple, eps: float) -> bool:
        a = cube[0]
        for _ in range(_triadic_depth(eps)):
            a, digit = divmod(a, 3)
            if digit == 1:
                return False
        return True


@dataclass(frozen=True)
class FilledBoxOracle:
    """The full unit box [0, 1]^n; every cube intersects."""

    dimension: int = 2

    @property
    def classical_dimension(self) -> float:
        return float(self.dimension)

    def index_ranges(self, eps: float) -> tuple:
        n = max(1, round(1.0 / eps))
        return tuple(range(n) for _ in range(self.dimension))

    def intersects(self, cube: tuple, eps: float) -> bool:
        return True


@dataclass
class PointSampleOracle:
    """Generic oracle backed by a finite sample of the target set.

    One-sided error: a cube is kept iff it contains a sample point, so cubes
    meeting the set only where no sample landed are missed. Boundary points
    are assigned to a single cube by floor division.
    """

    sample: np.ndarray
    dimension: int = field(init=False)
    _buckets: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.sample = np.atleast_2d(np.asarray(self.sample, dtype=float))
        self.dimension = self.sample.shape[1]

    def index_ranges(self, eps: float) -> tuple:
        lo = np.floor(self.sample.min(axis=0) / eps).astype(int)
        hi = np.floor(self.sample.max(axis=0) / eps).astype(int)
        return tuple(range(int(a), int(b) + 1) for a, b in zip(lo, hi))

    def intersects(self, cube: tuple, eps: float) -> bool:
        buckets = self._buckets.get(eps)
        if buckets is None:
            buckets = set(map(tuple, np.floor(self.sample / eps).astype(int)))
            self._buckets[eps] = buckets
        return tuple(cube) in buckets


@dataclass(frozen=True)
class LatticeApprox:
    """Corners of the kept cubes: a locally uniform stand-in for the set."""

    eps: float
    cloud: PointCloud
    cube_count: int
    cubes: tuple
    dimension: int

    @property
    def hausdorff_bound(self) -> float:
        """Guaranteed bound on the Hausdorff distance to the target set."""
        return self.eps * math.sqrt(self.dimension)

    @property
    def size(self) -> int:
        return self.cloud.size


@dataclass(frozen=True)
class TInequalityReport:
    t_count: int
    cube_count: int
    point_count: int
    dimension: int
    lower_ok: bool  # cube_count <= 2 * t_count
    upper_ok: bool  # t_count <= 2^(n-1) * cube_count
    corners_ok: bool  # point_count >= cube_count

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok and self.corners_ok


def lattice_approx(oracle: CubeOracle, eps: float,
                   cube_cap: int = 250_000) -> LatticeApprox:
    """All lattice corners of grid cubes the oracle marks as intersecting."""
    if not eps > 0:
        raise BadParameter("eps must be positive")
    ranges = oracle.index_ranges(eps)
    total = math.prod(len(r) for r in ranges)
    if total > cube_cap:
        raise TooFine(f"{total} cubes exceeds cap {cube_cap}")
    cubes = tuple(c for c in itertools.product(*ranges)
                  if oracle.intersects(c, eps))
    if not cubes:
        raise EmptyApproximation("oracle marked no cube as intersecting")
    offsets = list(itertools.product((0, 1), repeat=oracle.dimension))
    corners = {tuple(k + o for k, o in zip(cube, off))
               for cube in cubes for off in offsets}
    coords = np.array(sorted(corners), dtype=np.int64)
    cloud = PointCloud(points=coords * eps, metric="l2",
                       lattice=LatticeData(coords=coords, scale=eps))
    return LatticeApprox(eps=eps, cloud=cloud, cube_count=len(cubes),
                         cubes=cubes, dimension=oracle.dimension)


def check_T_inequalities(approx: LatticeApprox,
                         m: Optional[FiniteMetric] = None,
                         max_exact: Optional[int] = None) -> TInequalityReport:
    """Exact integer check of the cover-count vs cube-count bracket."""
    if m is None:
        m = from_points(approx.cloud)
    t_count, _ = min_cover_count(m, approx.eps, max_exact=max_exact)
    n = approx.dimension
    return TInequalityReport(
        t_count=t_count,
        cube_count=approx.cube_count,
        point_count=approx.size,
        dimension=n,
        lower_ok=approx.cube_count <= 2 * t_count,
        upper_ok=t_count <= 2 ** (n - 1) * approx.cube_count,
        corners_ok=approx.size >= approx.cube_count,
    )


def hausdorff_distance(a, b) -> float:
    """Hausdorff distance between two Euclidean point arrays."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    d = np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass(frozen=True)
class ConvergenceRow:
    level: Union[int, float]
    eps: float
    card: int
    delta: float
    nabla: float
    Delta: float
    T: int
    Tbar: Optional[int]
    dim_fH: float
    dim_fB: float
    closed_form: Optional[float]
    limit: Optional[float]
    estimator: float
    method: str  # "exact" or "closed-form"

    @property
    def gap(self) -> Optional[float]:
        if self.limit is None:
            return None
        return abs(self.dim_fH - self.limit)


@dataclass(frozen=True)
class ConvergenceTable:
    source: str
    rows: tuple
    ratio: Optional[float]
    ratio_ok: Optional[bool]
    gap_monotone: Optional[bool]


CSV_COLUMNS = ("level", "eps", "card", "delta", "nabla", "Delta", "T", "Tbar",
               "dim_fH", "dim_fB", "closed_form", "limit")


def _finish_table(source: str, rows: list, ratio: Optional[float]) -> ConvergenceTable:
    ratio_ok: Optional[bool] = None
    if ratio is not None and len(rows) >= 2:
        ratio_ok = all(b.nabla >= ratio * a.nabla * (1.0 - 1e-12)
                       for a, b in zip(rows, rows[1:]))
    gaps = [r.gap for r in rows]
    gap_monotone: Optional[bool] = None
    if len(rows) >= 2 and all(g is not None for g in gaps):
        gap_monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    return ConvergenceTable(source=source, rows=tuple(rows), ratio=ratio,
                            ratio_ok=ratio_ok, gap_monotone=gap_monotone)


def family_convergence(family: str, levels: Iterable[int],
                       max_exact: Optional[int] = None) -> ConvergenceTable:
    """Family lane: exact solve within budget, labeled closed forms beyond."""
    budget = DEFAULT_MAX_EXACT if max_exact is None else max_exact
    rows = []
    for level in levels:
        cloud = _families.build(FamilySpec(family=family, level=level))
        info = cloud.expected
        if info.size <= budget:
            m = from_points(cloud)
            s = cached_summary(m)
            dh = hausdorff_dimension(m, max_exact=budget)
            db = box_dimension(m, max_exact=budget)
            t_count = db.witness.size
            row = ConvergenceRow(
                level=level, eps=s.covering_diameter, card=info.size,
                delta=s.separation, nabla=s.covering_diameter,
                Delta=s.diameter, T=t_count, Tbar=None,
                dim_fH=dh.value, dim_fB=db.value,
                closed_form=info.dimension, limit=info.limit,
                estimator=math.log(t_count) / -math.log(s.covering_diameter),
                method="exact",
            )
        else:
            row = ConvergenceRow(
                level=level, eps=info.covering_diameter, card=info.size,
                delta=info.separation, nabla=info.covering_diameter,
                Delta=info.diameter, T=info.t_count, Tbar=None,
                dim_fH=info.dimension, dim_fB=info.dimension,
                closed_form=info.dimension, limit=info.limit,
                estimator=math.log(info.t_count)
                / -math.log(info.covering_diameter),
                method="closed-form",
            )
        rows.append(row)
    return _finish_table(family, rows, _families.FAMILY_RATIO.get(family))


def oracle_convergence(oracle: CubeOracle, eps_values: Sequence[float],
                       max_exact: Optional[int] = None,
                       cube_cap: int = 250_000) -> ConvergenceTable:
    """Oracle lane: lattice approximations with exact solves and cube counts."""
    limit = getattr(oracle, "classical_dimension", None)
    rows = []
    for k, eps in enumerate(eps_values):
        approx = lattice_approx(oracle, eps, cube_cap=cube_cap)
        m = from_points(approx.cloud)
        s = cached_summary(m)
        dh = hausdorff_dimension(m, max_exact=max_exact)
        db = box_dimension(m, max_exact=max_exact)
        t_count = db.witness.size
        rows.append(ConvergenceRow(
            level=k, eps=eps, card=approx.size,
            delta=s.separation, nabla=s.covering_diameter, Delta=s.diameter,
            T=t_count, Tbar=approx.cube_count,
            dim_fH=dh.value, dim_fB=db.value,
            closed_form=None, limit=limit,
            estimator=math.log(t_count) / -math.log(s.covering_diameter),
            method="exact",
        ))
    ratio = None
    if len(eps_values) >= 2:
        ratios = [b / a for a, b in zip(eps_values, eps_values[1:])]
        if max(ratios) - min(ratios) < 1e-9:
            ratio = ratios[0]
    return _finish_table(type(oracle).__name__, rows, ratio)


def convergence_table(source, levels, max_exact: Optional[int] = None) -> ConvergenceTable:
    """Dispatch: a family name/spec runs the family lane, an oracle the other."""
    if isinstance(source, FamilySpec):
        source = source.family
    if isinstance(source, str):
        return family_convergence(source, levels, max_exact=max_exact)
    return oracle_convergence(source, list(levels), max_exact=max_exact)


def table_csv_lines(table: ConvergenceTable) -> list:
    """Fixed-column CSV rendering (extra diagnostics live in the JSON form)."""
    lines = [",".join(CSV_COLUMNS)]
    for r in table.rows:
        cells = []
        for col in CSV_COLUMNS:
            v = getattr(r, col)
            cells.append("" if v is None else repr(v) if isinstance(v, float) else str(v))
        lines.append(",".join(cells))
    return lines


def table_json(table: ConvergenceTable) -> dict:
    rows = []
    for r in table.rows:
        d = {col: getattr(r, col) for col in CSV_COLUMNS}
        d["estimator"] = r.estimator
        d["method"] = r.method
        d["gap"] = r.gap
        rows.append(d)
    return {
        "source": table.source,
        "ratio": table.ratio,
        "ratio_ok": table.ratio_ok,
        "gap_monotone": table.gap_monotone,
        "rows": rows,
    }
