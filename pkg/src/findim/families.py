"""Example families with closed-form invariants, for golden testing.

Each generator returns a PointCloud whose `expected` field carries the
family's closed-form separation, covering diameter, diameter, minimal
fine-cover count, shared dimension value, and classical limit. All lattice
families keep coordinates as exact integers (with a scale factor applied to
distances once, after integer arithmetic), so equal exact distances convert
to bit-identical floats and local uniformity holds exactly.

Families:
    linear          n equally spaced points on a line
    triangle        isoceles triple with base 1 and legs 1-eps
    cantor          triadic dust: each level appends a copy at offset 2/3^k
    cantor_square   cartesian square of the dust
    sierpinski      60-degree mesh refined by halves (3^n points)
    tetra           the space analog with three 60-degree directions (4^n)
    carpet          square-annulus refinement on the 1/3^n grid
    fold            the linear set bent so consecutive gaps become sqrt(1)
    double          two unit-distance points stacked at offset x
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadParameter, EmptySpace, ExactLimitExceeded
from .metric import FiniteMetric, LatticeData, PointCloud, from_points

_GEN_BUDGET = {
    "linear": 4096,
    "triangle": 1,
    "cantor": 12,
    "cantor_square": 6,
    "sierpinski": 7,
    "tetra": 6,
    "carpet": 6,
    "fold": 256,
    "double": 1,
}
CARPET_CARDINALITY_BUDGET = 8

_LIMITS = {
    "linear": 1.0,
    "cantor": math.log(2.0) / math.log(3.0),
    "cantor_square": 2.0 * math.log(2.0) / math.log(3.0),
    "sierpinski": math.log(3.0) / math.log(2.0),
    "tetra": 2.0,
    "carpet": math.log(8.0) / math.log(3.0),
    "fold": 2.0,
}

# geometric shrink rate of the covering diameter, used by convergence tables
FAMILY_RATIO = {
    "cantor": 1.0 / 3.0,
    "cantor_square": 1.0 / 3.0,
    "carpet": 1.0 / 3.0,
    "sierpinski": 0.5,
    "tetra": 0.5,
}


@dataclass(frozen=True)
class FamilyInfo:
    """Closed-form invariants of a generated space."""

    family: str
    level: int
    size: int
    separation: float
    covering_diameter: float
    diameter: float
    t_count: Optional[int]       # minimal fine-cover count, None if undefined
    dimension: float             # 0.0, math.inf, or the shared finite value
    limit: Optional[float]       # classical limit of the family, if any


@dataclass(frozen=True)
class FamilySpec:
    family: str
    level: int = 0
    spacing: float = 1.0
    epsilon: Optional[float] = None


def _check_level(family: str, n: int, low: int = 0) -> None:
    if n < low:
        raise BadParameter(f"{family} level must be >= {low}, got {n}")
    if n > _GEN_BUDGET[family]:
        raise ExactLimitExceeded(
            f"{family} level {n} above generation budget {_GEN_BUDGET[family]}"
        )


def linear(n: int, x: float = 1.0) -> PointCloud:
    """n equally spaced points on a line, spacing x."""
    if n < 1:
        raise EmptySpace("linear family needs n >= 1")
    _check_level("linear", n)
    if not x > 0:
        raise BadParameter("spacing must be positive")
    coords = np.arange(n, dtype=np.int64).reshape(-1, 1)
    if n == 1:
        dim: float = 0.0
        t_count = None
    elif n == 2:
        dim = math.inf
        t_count = None
    elif n % 2 == 0:
        k = n // 2
        dim = math.log(k) / math.log(2 * k - 1)
        t_count = k
    else:
        k = n // 2
        dim = math.log(k + 1) / math.log(2 * k)
        t_count = k + 1
    info = FamilyInfo(
        family="linear", level=n, size=n,
        separation=x, covering_diameter=x, diameter=(n - 1) * x,
        t_count=t_count, dimension=dim,
        limit=_LIMITS["linear"] if n >= 3 else None,
    )
    return PointCloud(points=coords * x, metric="l2",
                      lattice=LatticeData(coords=coords, scale=x), expected=info)


def triangle(eps: float) -> PointCloud:
    """Base-1 isoceles triple with legs 1 - eps; dimension ln2/ln(1/(1-eps))."""
    if not 0.0 < eps <= 0.5:
        raise BadParameter("eps must lie in (0, 1/2]")
    apex_y = 0.5 * math.sqrt(3.0 - 8.0 * eps + 4.0 * eps * eps)
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, apex_y]])
    leg = 1.0 - eps
    info = FamilyInfo(
        family="triangle", level=0, size=3,
        separation=leg, covering_diameter=leg, diameter=1.0,
        t_count=2, dimension=math.log(2.0) / math.log(1.0 / leg), limit=None,
    )
    return PointCloud(points=pts, metric="l2", expected=info)


def _cantor_ints(n: int) -> list:
    pts = [0]
    for k in range(1, n + 1):
        step = 2 * 3 ** (n - k)
        pts = pts + [p + step for p in pts]
    return sorted(pts)


def cantor_level(n: int) -> PointCloud:
    """Triadic dust: 2^n points, gaps 2/3^n inside pairs."""
    _check_level("cantor", n, low=1)
    scale = 1.0 / 3 ** n
    coords = np.array(_cantor_ints(n), dtype=np.int64).reshape(-1, 1)
    if n == 1:
        t_count, dim = None, math.inf
    else:
        t_count = 2 ** (n - 1)
        dim = math.log(2.0 ** (n - 1)) / math.log((3 ** n - 1) / 2.0)
    info = FamilyInfo(
        family="cantor", level=n, size=2 ** n,
        separation=2 * scale, covering_diameter=2 * scale,
        diameter=(3 ** n - 1) * scale,
        t_count=t_count, dimension=dim,
        limit=_LIMITS["cantor"],
    )
    return PointCloud(points=coords * scale, metric="l2",
                      lattice=LatticeData(coords=coords, scale=scale),
                      expected=info)


def cantor_square_level(n: int) -> PointCloud:
    """Cartesian square of the triadic dust: 4^n points."""
    _check_level("cantor_square", n, low=1)
    scale = 1.0 / 3 ** n
    line = _cantor_ints(n)
    coords = np.array([(a, b) for a in line for b in line], dtype=np.int64)
    size = 4 ** n
    info = FamilyInfo(
        family="cantor_square", level=n, size=size,
        separation=2 * scale, covering_diameter=2 * scale,
        diameter=math.sqrt(2.0 * (3 ** n - 1) ** 2) * scale,
        t_count=2 ** (2 * n - 1),
        dimension=math.log(2.0 ** (2 * n - 1))
        / math.log(math.sqrt(2.0) * (3 ** n - 1) / 2.0),
        limit=_LIMITS["cantor_square"],
    )
    return PointCloud(points=coords * scale, metric="l2",
                      lattice=LatticeData(coords=coords, scale=scale),
                      expected=info)


def _mesh_ints(n: int, directions: int) -> np.ndarray:
    """Refine by halves along `directions` unit vectors at mutual 60 degrees."""
    pts = {(0,) * directions}
    for k in range(1, n + 1):
        step = 2 ** (n - k)
        new = set(pts)
        for j in range(directions):
            for p in pts:
                q = list(p)
                q[j] += step
                new.add(tuple(q))
        pts = new
    return np.array(sorted(pts), dtype=np.int64)


_GRAM60_2 = np.array([[2, 1], [1, 2]], dtype=np.int64)
_GRAM60_3 = np.array([[2, 1, 1], [1, 2, 1], [1, 1, 2]], dtype=np.int64)
_BASIS60_2 = np.array([[1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
_BASIS60_3 = np.array([
    [1.0, 0.0, 0.0],
    [0.5, math.sqrt(3.0) / 2.0, 0.0],
    [0.5, math.sqrt(3.0) / 6.0, math.sqrt(6.0) / 3.0],
])


def _mesh_cloud(family: str, n: int, directions: int, gram: np.ndarray,
                basis: np.ndarray) -> PointCloud:
    _check_level(family, n)
    scale = 1.0 / 2 ** n
    coords = _mesh_ints(n, directions)
    branch = directions + 1
    size = branch ** n
    if coords.shape[0] != size:
        raise RuntimeError(f"{family} level {n}: mesh produced {coords.shape[0]} "
                           f"points, expected {size}")
    if n == 0:
        t_count, dim = None, 0.0
    elif n == 1:
        t_count, dim = None, math.inf  # mutually equidistant: all points focal
    else:
        t_count = branch ** (n - 1)
        dim = math.log(float(branch) ** (n - 1)) / math.log(2.0 ** n - 1.0)
    info = FamilyInfo(
        family=family, level=n, size=size,
        separation=scale, covering_diameter=scale,
        diameter=(2 ** n - 1) * scale,
        t_count=t_count, dimension=dim,
        limit=_LIMITS[family],
    )
    return PointCloud(points=(coords @ basis) * scale, metric="l2",
                      lattice=LatticeData(coords=coords, scale=scale,
                                          gram=gram, gram_den=2),
                      expected=info)


def sierpinski_level(n: int) -> PointCloud:
    """Plane 60-degree mesh: 3^n points, little triangles of side 1/2^n."""
    return _mesh_cloud("sierpinski", n, 2, _GRAM60_2, _BASIS60_2)


def sierpinski_tetra_level(n: int) -> PointCloud:
    """Space analog: 4^n points, little tetrahedra of side 1/2^n."""
    return _mesh_cloud("tetra", n, 3, _GRAM60_3, _BASIS60_3)


_CARPET_STRIDE = 1 << 17
_CARPET_OFFSETS = tuple((ox, oy) for ox in range(3) for oy in range(3)
                        if (ox, oy) != (1, 1))


def carpet_cardinality(n: int) -> int:
    """Point count by the corner-replacement recursion (shared sides counted once)."""
    c = 4
    for k in range(n):
        c = 4 * c + 4 * (c - 2 * (3 ** k + 1))
    return c


def _carpet_packed(n: int) -> np.ndarray:
    """Carpet lattice points at level n, packed as x * stride + y, deduped."""
    pts = np.array([0, 1, _CARPET_STRIDE, _CARPET_STRIDE + 1], dtype=np.int64)
    for k in range(n):
        side = 3 ** k
        shifted = [pts + (ox * side * _CARPET_STRIDE + oy * side)
                   for ox, oy in _CARPET_OFFSETS]
        pts = np.unique(np.concatenate(shifted))
    return pts


def carpet_enumerated_cardinality(n: int) -> int:
    """Point count by direct lattice enumeration (independent of the recursion)."""
    if n > CARPET_CARDINALITY_BUDGET:
        raise ExactLimitExceeded(
            f"carpet enumeration capped at level {CARPET_CARDINALITY_BUDGET}"
        )
    return int(_carpet_packed(n).shape[0])


def carpet_level(n: int) -> PointCloud:
    """Square-annulus refinement on the 1/3^n grid; |L_n|/2 forced pairs."""
    _check_level("carpet", n)
    packed = _carpet_packed(n)
    coords = np.stack([packed // _CARPET_STRIDE, packed % _CARPET_STRIDE],
                      axis=1).astype(np.int64)
    scale = 1.0 / 3 ** n
    size = carpet_cardinality(n)
    if coords.shape[0] != size:
        raise RuntimeError(f"carpet level {n}: enumerated {coords.shape[0]} "
                           f"points, recursion says {size}")
    info = FamilyInfo(
        family="carpet", level=n, size=size,
        separation=scale, covering_diameter=scale,
        diameter=math.sqrt(2.0 * (3 ** n) ** 2) * scale,
        t_count=size // 2,
        dimension=math.log(size / 2.0) / math.log(3 ** n * math.sqrt(2.0)),
        limit=_LIMITS["carpet"],
    )
    return PointCloud(points=coords * scale, metric="l2",
                      lattice=LatticeData(coords=coords, scale=scale),
                      expected=info)


def fold_level(n: int) -> PointCloud:
    """The linear set bent into R^n: gap j becomes sqrt(j); dimension doubles."""
    if n < 1:
        raise EmptySpace("fold family needs n >= 1")
    _check_level("fold", n)
    coords = np.tril(np.ones((n, n), dtype=np.int64), k=-1)
    if n == 1:
        dim: float = 0.0
        t_count = None
    elif n == 2:
        dim = math.inf
        t_count = None
    elif n % 2 == 0:
        k = n // 2
        dim = math.log(float(k) ** 2) / math.log(2 * k - 1)
        t_count = k
    else:
        k = n // 2
        dim = math.log(float(k + 1) ** 2) / math.log(2 * k)
        t_count = k + 1
    info = FamilyInfo(
        family="fold", level=n, size=n,
        separation=1.0, covering_diameter=1.0,
        diameter=math.sqrt(float(n - 1)),
        t_count=t_count, dimension=dim,
        limit=_LIMITS["fold"] if n >= 3 else None,
    )
    return PointCloud(points=coords.astype(float), metric="l2",
                      lattice=LatticeData(coords=coords, scale=1.0),
                      expected=info)


def double_pair(x: float) -> PointCloud:
    """Two unit-distance points stacked at offset x; dimension covers (0, 1)."""
    if not x > 0:
        raise BadParameter("offset x must be positive")
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, x], [1.0, x]])
    diameter = math.sqrt(1.0 + x * x)
    if x < 1.0:
        cov = x
        t_count: Optional[int] = 2
        dim = math.log(2.0) / math.log(diameter / x)
    else:
        cov = 1.0
        t_count = None
        dim = math.nan  # not locally uniform in general; solve it exactly
    info = FamilyInfo(
        family="double", level=0, size=4,
        separation=min(x, 1.0), covering_diameter=cov, diameter=diameter,
        t_count=t_count, dimension=dim, limit=None,
    )
    return PointCloud(points=pts, metric="l2", expected=info)


def linf_cube_spike(t: float) -> PointCloud:
    """Sup-norm unit cube with one corner split at height t.

    All pairwise distances are 1 except the split pair at t, so the distance
    spread t/1 can be made arbitrarily small while six points stay focal:
    the showcase that separation/diameter alone cannot certify meaningful
    nearest neighbors.
    """
    if not 0.0 < t <= 1.0:
        raise BadParameter("t must lie in (0, 1]")
    pts = np.array([
        [1.0, 0.0, 0.0],
        [1.0, 0.0, 1.0],
        [0.0, 1.0, 0.0],
        [0.0, 1.0, 1.0],
        [1.0, 1.0, 0.0],
        [1.0, 1.0, 1.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, t],
    ])
    return PointCloud(points=pts, metric="linf")


def realize_dimension(t: float) -> FiniteMetric:
    """A space whose two dimensions both equal t, for any t in [0, inf]."""
    if isinstance(t, float) and math.isnan(t):
        raise BadParameter("t must be a nonnegative extended real")
    if t < 0:
        raise BadParameter("t must be nonnegative")
    if t == 0:
        return FiniteMetric.from_matrix([[0.0]])
    if math.isinf(t):
        return FiniteMetric.from_matrix([[0.0, 1.0], [1.0, 0.0]])
    if t >= 1:
        return from_points(triangle(1.0 - 2.0 ** (-1.0 / t)))
    x = (4.0 ** (1.0 / t) - 1.0) ** -0.5
    return from_points(double_pair(x))


_BUILDERS = {
    "linear": lambda spec: linear(spec.level, spec.spacing),
    "triangle": lambda spec: triangle(
        spec.epsilon if spec.epsilon is not None else 0.25),
    "cantor": lambda spec: cantor_level(spec.level),
    "cantor_square": lambda spec: cantor_square_level(spec.level),
    "sierpinski": lambda spec: sierpinski_level(spec.level),
    "tetra": lambda spec: sierpinski_tetra_level(spec.level),
    "carpet": lambda spec: carpet_level(spec.level),
    "fold": lambda spec: fold_level(spec.level),
    "double": lambda spec: double_pair(spec.spacing),
}

FAMILY_NAMES = tuple(sorted(_BUILDERS))


def build(spec: FamilySpec) -> PointCloud:
    if spec.family not in _BUILDERS:
        raise BadParameter(
            f"unknown family {spec.family!r}; choose from {FAMILY_NAMES}"
        )
    return _BUILDERS[spec.family](spec)
