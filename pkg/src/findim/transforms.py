"""Distance transforms: power-law rescalings and the two-sheet double.

A transform d' = r * d^beta multiplies both dimensions by 1/beta (similarity
when beta = 1), preserves focal points, and maps covers to covers one-to-one.
verify_scaling() turns those laws into a checkable report. For beta > 1 the
image can leave the metric category; the matrix is still produced (the
scaling laws only need the distance identity) with a warning, or rejected in
strict mode.

Only injective maps are modeled: a map that merges points can *raise* the
dimension of the image (collapse the two far ends of a 4-point line and the
3-point image jumps back to dimension 1), so the monotonicity familiar from
the classical theory fails for collapsing maps and they are out of scope
here. Merged coordinates surface as DegenerateInput at construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .cover import cover_measure
from .dimension import DimensionKind, box_dimension, hausdorff_dimension
from .errors import BadParameter, NotAMetric
from .metric import FiniteMetric, _check_triangle, _default_tolerance, cached_summary


@dataclass(frozen=True)
class HolderParams:
    """Scale r and exponent beta of a power-law distance transform."""

    r: float
    beta: float

    def __post_init__(self):
        if not (self.r > 0 and self.beta > 0):
            raise BadParameter("r and beta must be positive")

    @property
    def is_similarity(self) -> bool:
        return self.beta == 1.0


@dataclass(frozen=True)
class ScalingCheck:
    name: str
    passed: bool
    error: float


@dataclass(frozen=True)
class ScalingReport:
    params: HolderParams
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def holder_transform(m: FiniteMetric, p: HolderParams,
                     strict: bool = False) -> FiniteMetric:
    """Space with distances r * d^beta; warns if the triangle inequality breaks."""
    d = p.r * np.power(m.dist, p.beta)
    np.fill_diagonal(d, 0.0)
    tau = _default_tolerance(d)
    try:
        _check_triangle(d, tau)
    except NotAMetric:
        if strict:
            raise
        warnings.warn(
            f"transform (r={p.r}, beta={p.beta}) broke the triangle inequality; "
            "returning the distance table anyway",
            stacklevel=2,
        )
    return FiniteMetric(dist=d, labels=m.labels, tolerance=tau)


def double(m: FiniteMetric, x: float) -> FiniteMetric:
    """Two stacked copies of the space at mutual offset x.

    d((a,e), (b,e')) = sqrt(d(a,b)^2 + x^2 * [e != e']); for x below the
    separation the result is locally uniform with covering diameter x,
    diameter sqrt(Delta^2 + x^2), and minimal fine-cover count |F|.
    """
    if not x > 0:
        raise BadParameter("offset x must be positive")
    base = m.dist
    cross = np.sqrt(base * base + x * x)
    cross[base == 0.0] = x  # same base point: offset exactly
    d = np.block([[base, cross], [cross, base]])
    if m.labels is not None:
        labels = tuple((lbl, 0) for lbl in m.labels) + tuple(
            (lbl, 1) for lbl in m.labels)
    else:
        labels = None
    return FiniteMetric(dist=d, labels=labels, tolerance=_default_tolerance(d))


def verify_scaling(m: FiniteMetric, p: HolderParams,
                   dim_tol: float = 1e-7, measure_tol: float = 1e-9,
                   s_values: tuple = (0.5, 1.0, 2.0)) -> ScalingReport:
    """Check the dimension and measure scaling laws on one space.

    beta * dim(image) must equal dim(source) for both dimensions (within
    dim_tol), zero/infinite kinds must carry over exactly, and the measure
    identity  measure_image(s) = r^s * measure_source(s * beta)  must hold at
    each s in s_values (within measure_tol, relative).
    """
    image = holder_transform(m, p)
    checks = []

    for name, fn in (("hausdorff", hausdorff_dimension), ("box", box_dimension)):
        src = fn(m)
        dst = fn(image)
        if src.kind is not dst.kind:
            checks.append(ScalingCheck(f"{name}-kind-preserved", False, math.inf))
            continue
        checks.append(ScalingCheck(f"{name}-kind-preserved", True, 0.0))
        if src.kind is DimensionKind.FINITE:
            err = abs(p.beta * dst.value - src.value)
            checks.append(ScalingCheck(f"{name}-scaling", err <= dim_tol, err))

    if m.size >= 2:
        src_sum = cached_summary(m)
        img_sum = cached_summary(image)
        for s in s_values:
            lhs, _ = cover_measure(image, img_sum.covering_diameter, s)
            rhs_base, _ = cover_measure(m, src_sum.covering_diameter, s * p.beta)
            rhs = p.r ** s * rhs_base
            err = abs(lhs - rhs) / max(abs(rhs), 1e-300)
            checks.append(ScalingCheck(f"measure-identity-s={s}",
                                       err <= measure_tol, err))

    return ScalingReport(params=p, checks=tuple(checks))
