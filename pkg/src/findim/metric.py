"""Finite metric spaces as validated distance matrices.

A space is held as a symmetric nonnegative matrix with zero diagonal; the
first-order quantities derived from it are

    separation          delta  = smallest pairwise distance,
    covering diameter   nabla  = largest nearest-neighbor distance,
    diameter            Delta  = largest pairwise distance,

with 0 < delta <= nabla <= Delta whenever the space has two or more points.
A point whose nearest neighbor already sits at full diameter distance is
*focal*; focal points are exactly what makes the finite dimensions infinite,
so summarize() reports them explicitly.

Floating-point policy: every distance-equality decision (focal detection,
local uniformity, threshold membership) uses one absolute tolerance tau,
defaulting to max(1e-12, 1e-9 * Delta). Point clouds built on an integer
lattice carry their exact representation so that equal exact distances stay
bit-equal after conversion to float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from .errors import (
    BadParameter,
    DegenerateInput,
    EmptySpace,
    MalformedInput,
    NotAMetric,
    SingletonSpace,
)

_METRIC_TAGS = ("l1", "l2", "linf")


def _parse_metric(tag: str) -> float:
    """Return the p exponent for a metric tag ('l1', 'l2', 'linf', 'lp:<p>')."""
    if tag == "l1":
        return 1.0
    if tag == "l2":
        return 2.0
    if tag == "linf":
        return math.inf
    if tag.startswith("lp:"):
        try:
            p = float(tag[3:])
        except ValueError:
            raise MalformedInput(f"unparseable metric tag {tag!r}") from None
        if p < 1:
            raise BadParameter(f"lp metric needs p >= 1, got {p}")
        return p
    raise MalformedInput(f"unknown metric tag {tag!r}; expected one of {_METRIC_TAGS} or 'lp:<p>'")


@dataclass(frozen=True)
class LatticeData:
    """Exact integer representation of a point cloud.

    coords holds integer coefficients; the squared Euclidean length of a
    coefficient vector v is (v @ gram @ v) / gram_den (gram defaults to the
    identity), and real distances are sqrt(that integer) * scale. Families
    built on lattices (equally spaced lines, triadic dust, 60-degree meshes)
    use this so that equal exact distances convert to bit-identical floats;
    gram_den = 2 lets half-integer forms stay in integer arithmetic.
    """

    coords: np.ndarray
    scale: float
    gram: Optional[np.ndarray] = None
    gram_den: int = 1

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.int64)
        if coords.ndim != 2:
            raise MalformedInput("lattice coords must be a 2-D integer array")
        object.__setattr__(self, "coords", coords)
        if self.gram is not None:
            gram = np.asarray(self.gram, dtype=np.int64)
            if gram.shape != (coords.shape[1], coords.shape[1]):
                raise MalformedInput("gram shape does not match lattice dimension")
            object.__setattr__(self, "gram", gram)
        if self.gram_den < 1:
            raise BadParameter("gram denominator must be a positive integer")
        if not self.scale > 0:
            raise BadParameter("lattice scale must be positive")


@dataclass(frozen=True)
class PointCloud:
    """Points in R^d together with the norm used to compare them."""

    points: np.ndarray
    metric: str = "l2"
    lattice: Optional[LatticeData] = None
    expected: Any = None  # family invariants attached by generators

    def __post_init__(self):
        try:
            pts = np.asarray(self.points, dtype=float)
        except (ValueError, TypeError) as exc:
            raise MalformedInput(f"points must form an (n, d) array: {exc}") from None
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise MalformedInput("points must form an (n, d) array of coordinates")
        if pts.shape[0] == 0:
            raise EmptySpace("point cloud is empty")
        if not np.all(np.isfinite(pts)):
            raise MalformedInput("points contain non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        _parse_metric(self.metric)
        if len(np.unique(pts, axis=0)) != len(pts):
            raise DegenerateInput("duplicate points in cloud")

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class FiniteMetric:
    """A finite metric space (validated symmetric distance matrix)."""

    dist: np.ndarray
    labels: Optional[tuple] = None
    tolerance: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    @property
    def diameter(self) -> float:
        return float(self.dist.max())

    @classmethod
    def from_matrix(
        cls,
        matrix,
        labels: Optional[Sequence] = None,
        tolerance: Optional[float] = None,
        validate_triangle: bool = True,
    ) -> "FiniteMetric":
        d = np.asarray(matrix, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise MalformedInput(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] == 0:
            raise EmptySpace("empty distance matrix")
        if not np.all(np.isfinite(d)):
            raise MalformedInput("distance matrix contains non-finite entries")
        if np.any(np.diag(d) != 0.0):
            raise MalformedInput("distance matrix diagonal must be zero")
        if not np.array_equal(d, d.T):
            raise MalformedInput("distance matrix must be symmetric")
        n = d.shape[0]
        off = ~np.eye(n, dtype=bool)
        if n > 1 and not np.all(d[off] > 0.0):
            raise DegenerateInput("zero distance between distinct points")
        tau = _default_tolerance(d) if tolerance is None else float(tolerance)
        if tau < 0:
            raise BadParameter("tolerance must be nonnegative")
        if validate_triangle:
            _check_triangle(d, tau)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise MalformedInput("label count does not match matrix size")
        return cls(dist=d, labels=labels, tolerance=tau)

    def relabeled(self, perm: Sequence[int]) -> "FiniteMetric":
        """Space with points permuted; metrically identical."""
        perm = np.asarray(perm, dtype=int)
        d = self.dist[np.ix_(perm, perm)]
        labels = tuple(self.labels[i] for i in perm) if self.labels else None
        return FiniteMetric(dist=d, labels=labels, tolerance=self.tolerance)

    def rescaled(self, factor: float) -> "FiniteMetric":
        """Similarity image: all distances multiplied by factor > 0."""
        if not factor > 0:
            raise BadParameter("scale factor must be positive")
        return FiniteMetric(dist=self.dist * factor, labels=self.labels,
                            tolerance=self.tolerance * factor)


@dataclass(frozen=True)
class MetricSummary:
    """First-order quantities of a space with at least two points."""

    separation: float
    covering_diameter: float
    diameter: float
    nu: np.ndarray  # nearest-neighbor distance per point
    focal: tuple
    locally_uniform: bool

    @property
    def has_focal(self) -> bool:
        return len(self.focal) > 0


def _default_tolerance(dist: np.ndarray) -> float:
    diameter = float(dist.max()) if dist.size else 0.0
    return max(1e-12, 1e-9 * diameter)


def _check_triangle(d: np.ndarray, tau: float) -> None:
    n = d.shape[0]
    for k in range(n):
        slack = d[:, k, None] + d[None, k, :] - d
        if slack.min() < -tau:
            i, j = np.unravel_index(int(np.argmin(slack)), slack.shape)
            raise NotAMetric(
                f"triangle inequality fails: d[{i},{j}]={d[i, j]} > "
                f"d[{i},{k}]+d[{k},{j}]={d[i, k] + d[k, j]}"
            )


def _lattice_distances(lat: LatticeData, p: float) -> np.ndarray:
    coords = lat.coords
    diffs = coords[:, None, :] - coords[None, :, :]
    if p == 2.0:
        if lat.gram is None:
            sq = np.einsum("ijk,ijk->ij", diffs, diffs)
        else:
            sq = np.einsum("ijk,kl,ijl->ij", diffs, lat.gram, diffs)
        if lat.gram_den != 1:
            sq //= lat.gram_den
        return np.sqrt(sq.astype(float)) * lat.scale
    if lat.gram is not None:
        raise MalformedInput("non-Euclidean metrics need an identity lattice form")
    a = np.abs(diffs)
    if p == 1.0:
        return a.sum(axis=2).astype(float) * lat.scale
    if math.isinf(p):
        return a.max(axis=2).astype(float) * lat.scale
    raise MalformedInput("exact lattice path supports l1, l2, linf only")


def _float_distances(pts: np.ndarray, p: float) -> np.ndarray:
    diffs = pts[:, None, :] - pts[None, :, :]
    if p == 2.0:
        # squared sums first, one square root at the end: integer-coordinate
        # inputs then get bit-stable ties
        return np.sqrt(np.einsum("ijk,ijk->ij", diffs, diffs))
    a = np.abs(diffs)
    if p == 1.0:
        return a.sum(axis=2)
    if math.isinf(p):
        return a.max(axis=2)
    return (a ** p).sum(axis=2) ** (1.0 / p)


def from_points(
    cloud: PointCloud,
    tolerance: Optional[float] = None,
    labels: Optional[Sequence] = None,
    validate_triangle: bool = True,
) -> FiniteMetric:
    """Build the distance matrix of a point cloud under its tagged norm."""
    p = _parse_metric(cloud.metric)
    if cloud.lattice is not None:
        if cloud.lattice.coords.shape[0] != cloud.size:
            raise MalformedInput("lattice representation does not match point count")
        d = _lattice_distances(cloud.lattice, p)
    else:
        d = _float_distances(cloud.points, p)
    np.fill_diagonal(d, 0.0)
    d = np.ascontiguousarray(np.minimum(d, d.T))  # symmetrize rounding noise
    return FiniteMetric.from_matrix(
        d, labels=labels, tolerance=tolerance, validate_triangle=validate_triangle
    )


def summarize(m: FiniteMetric) -> MetricSummary:
    """Separation, covering diameter, diameter, nearest distances, focal set."""
    n = m.size
    if n < 2:
        raise SingletonSpace("summary needs at least two points")
    d = m.dist.copy()
    np.fill_diagonal(d, math.inf)
    nu = d.min(axis=1)
    delta = float(nu.min())
    nabla = float(nu.max())
    diameter = m.diameter
    tau = m.tolerance
    focal = tuple(int(i) for i in np.flatnonzero(nu >= diameter - tau))
    return MetricSummary(
        separation=delta,
        covering_diameter=nabla,
        diameter=diameter,
        nu=nu,
        focal=focal,
        locally_uniform=bool(nabla - delta <= tau),
    )


def cached_summary(m: FiniteMetric) -> MetricSummary:
    """summarize() memoized on the (immutable) space."""
    s = m._cache.get("summary")
    if s is None:
        s = summarize(m)
        m._cache["summary"] = s
    return s


def is_collinear(cloud: PointCloud, tolerance: Optional[float] = None) -> bool:
    """True iff all points of a Euclidean cloud lie on one line (within tau)."""
    if _parse_metric(cloud.metric) != 2.0:
        raise BadParameter("collinearity is defined for the Euclidean tag only")
    pts = cloud.points
    if len(pts) <= 2 or pts.shape[1] == 1:
        return True
    rel = pts - pts[0]
    norms = np.sqrt((rel ** 2).sum(axis=1))
    far = int(np.argmax(norms))
    span = norms[far]
    if span == 0.0:
        return True
    tau = max(1e-12, 1e-9 * span) if tolerance is None else tolerance
    axis = rel[far] / span
    perp = rel - np.outer(rel @ axis, axis)
    return bool(np.sqrt((perp ** 2).sum(axis=1)).max() <= tau)
