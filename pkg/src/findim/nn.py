"""Nearest-point functions and the meaningfulness audit.

Every finite space has a nearest-point function, so its existence says
nothing; what matters is whether the worst nearest distance stays strictly
below the diameter. That single condition is equivalent to seven others
(no focal points, a fine cover exists, covering diameter below diameter,
both dimensions finite, ...), and audit() evaluates all eight independently
so disagreement would expose a bug.

The audit also reports separation/diameter next to covering/diameter: the
former can be tiny while six of eight points are focal (see
families.linf_cube_spike), so it cannot certify that nearest-neighbor
queries are meaningful; the latter can.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cover import CoverClass, CoverSet, TwoCover, classify
from .dimension import DimensionResult, box_dimension, hausdorff_dimension
from .errors import MalformedCover, SingletonSpace
from .metric import FiniteMetric, cached_summary

VERDICT_MEANINGFUL = "MeaningfulNN"
VERDICT_NONE = "NoNN"

OMNIBUS_KEYS = (
    "nearest_neighbor_function",
    "worst_ratio_mnn",
    "some_lambda_mnn",
    "no_focal_points",
    "fine_cover_exists",
    "ratio_below_one",
    "hausdorff_dimension_finite",
    "box_dimension_finite",
)


@dataclass(frozen=True)
class NearestReport:
    nearest: tuple
    lambda_ratio: float  # covering diameter / diameter, the sharp MNN bound
    delta_ratio: float   # separation / diameter, for contrast
    focal: tuple
    verdict: str
    omnibus: dict

    @property
    def meaningful(self) -> bool:
        return self.verdict == VERDICT_MEANINGFUL


def nearest_point_function(m: FiniteMetric) -> np.ndarray:
    """Index of a nearest point for every point; ties go to the lowest index."""
    if m.size < 2:
        raise SingletonSpace("nearest points need at least two points")
    d = m.dist.copy()
    np.fill_diagonal(d, math.inf)
    return d.argmin(axis=1)


def _pair_cover_is_fine(m: FiniteMetric, nearest: np.ndarray) -> bool:
    """Build the {x, nearest(x)} pair cover and check it stays below diameter."""
    sets = {}
    for i, j in enumerate(nearest):
        mask = (1 << i) | (1 << int(j))
        sets[mask] = float(m.dist[i, int(j)])
    cover = TwoCover(
        sets=tuple(CoverSet(mask=mask, diameter=diam)
                   for mask, diam in sorted(sets.items())),
        cover_class=CoverClass.FINE,
    )
    try:
        return classify(cover, m) is CoverClass.FINE
    except MalformedCover:
        return False


def audit(m: FiniteMetric,
          dim_h: Optional[DimensionResult] = None,
          dim_b: Optional[DimensionResult] = None) -> NearestReport:
    """Evaluate the eight equivalent meaningfulness conditions on one space."""
    if m.size < 2:
        raise SingletonSpace("audit needs at least two points")
    summary = cached_summary(m)
    nearest = nearest_point_function(m)
    tau = m.tolerance
    diameter = summary.diameter

    nn_distances = np.array([m.dist[i, int(j)] for i, j in enumerate(nearest)])
    nn_function = bool(np.all(nn_distances < diameter - tau))
    ratio_below_one = bool(summary.covering_diameter < diameter - tau)
    if dim_h is None:
        dim_h = hausdorff_dimension(m)
    if dim_b is None:
        dim_b = box_dimension(m)

    omnibus = dict(zip(OMNIBUS_KEYS, (
        nn_function,
        nn_function and ratio_below_one,
        nn_function and ratio_below_one,
        not summary.has_focal,
        _pair_cover_is_fine(m, nearest),
        ratio_below_one,
        dim_h.is_finite,
        dim_b.is_finite,
    )))
    return NearestReport(
        nearest=tuple(int(j) for j in nearest),
        lambda_ratio=summary.covering_diameter / diameter,
        delta_ratio=summary.separation / diameter,
        focal=summary.focal,
        verdict=VERDICT_MEANINGFUL if not summary.has_focal else VERDICT_NONE,
        omnibus=omnibus,
    )
