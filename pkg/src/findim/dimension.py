"""Dimensions of finite metric spaces via exact cover minimization.

Two dimensions are computed, both defined by equating a cover functional with
diameter^s. The box-counting analog has the closed form

    ln T / ln(Delta / nabla),    T = minimum fine-cover cardinality,

while the Hausdorff analog is the unique root s0 of

    min over fine covers at level nabla of sum(diam(U_i)^s)  =  Delta^s.

Both are 0 exactly on singletons and infinite exactly on spaces with focal
points; otherwise they are positive reals with Hausdorff <= box.

Root finding: distances are rescaled so Delta = 1 (dimensions are invariant
under similarities), which turns the defining equation into g(s) = 0 for a
strictly decreasing, piecewise-smooth g whose kinks are the points where the
optimal cover changes. Bisection is therefore used rather than a derivative
method, over the provable bracket

    ln 2 / ln(Delta/delta)  <=  s0  <=  ln(|F|-1) / ln(Delta/nabla),

widened by 1e-12 with a safety expansion loop in case rounding pushes the
root across an endpoint.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import cover as _cover
from .cover import CoverClass, TwoCover, classify, min_cover_count
from .errors import (
    BadParameter,
    FastPathInapplicable,
    HypothesisViolated,
    InfiniteDimensionError,
    NoUniqueSolution,
    SingletonSpace,
)
from .metric import FiniteMetric, cached_summary

BISECTION_TOL = 1e-10
COVER_EXPONENT_TOL = 1e-12
_BRACKET_PAD = 1e-12


class DimensionKind(enum.Enum):
    ZERO = "zero"
    FINITE = "finite"
    INFINITE = "infinite"


@dataclass(frozen=True)
class DimensionResult:
    kind: DimensionKind
    value: float
    witness: Optional[TwoCover]
    bounds: tuple
    iterations: int
    residual: float
    nodes: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind is DimensionKind.FINITE


@dataclass(frozen=True)
class MassDistribution:
    """Nonnegative mass per point, extended additively to subsets."""

    mass: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.mass, dtype=float)
        if arr.ndim != 1 or np.any(arr < 0) or not np.all(np.isfinite(arr)):
            raise BadParameter("mass must be a 1-D array of nonnegative reals")
        arr.setflags(write=False)
        object.__setattr__(self, "mass", arr)

    def of_mask(self, mask: int) -> float:
        return math.fsum(self.mass[i] for i in _cover._bits(mask))

    @property
    def total(self) -> float:
        return float(math.fsum(self.mass))


@dataclass(frozen=True)
class MassCertificate:
    """Record of a verified mass-distribution lower bound."""

    total_mass: float
    c: float
    s: float
    measure_value: float  # exact cover measure at exponent s
    mass_bounded: bool    # total_mass <= c * measure_value
    certifies_dimension_at_least_s: bool


def _zero_result() -> DimensionResult:
    return DimensionResult(DimensionKind.ZERO, 0.0, None, (0.0, 0.0), 0, 0.0)


def _infinite_result() -> DimensionResult:
    return DimensionResult(DimensionKind.INFINITE, math.inf, None,
                           (math.inf, math.inf), 0, 0.0)


def _normalized(m: FiniteMetric) -> FiniteMetric:
    """Similar copy with diameter 1 (cached); conditions the a^s terms."""
    norm = m._cache.get("normalized")
    if norm is None:
        scale = 1.0 / m.diameter
        norm = FiniteMetric(dist=m.dist * scale, labels=m.labels,
                            tolerance=m.tolerance * scale)
        m._cache["normalized"] = norm
    return norm


def dimension_bounds(m: FiniteMetric) -> tuple:
    """Provable enclosure of the Hausdorff-analog dimension.

    Lower: a fine cover needs at least two sets, none larger than needed.
    Upper: some fine cover with at most |F|-1 sets exists at level nabla.
    """
    if m.size < 2:
        raise SingletonSpace("bounds need at least two points")
    summary = cached_summary(m)
    if summary.has_focal:
        raise InfiniteDimensionError(f"focal points {summary.focal}")
    lo = math.log(2.0) / math.log(summary.diameter / summary.separation)
    hi = math.log(m.size - 1) / math.log(summary.diameter / summary.covering_diameter)
    return (lo, hi)


def box_dimension(m: FiniteMetric, max_exact: Optional[int] = None,
                  force_python: bool = False) -> DimensionResult:
    """Box-counting analog: ln T / ln(Delta/nabla) with the T-witness."""
    if m.size == 1:
        return _zero_result()
    summary = cached_summary(m)
    if summary.has_focal:
        return _infinite_result()
    t_count, witness = min_cover_count(m, summary.covering_diameter,
                                       max_exact=max_exact,
                                       force_python=force_python)
    ratio = summary.diameter / summary.covering_diameter
    value = math.log(t_count) / math.log(ratio)
    bounds = (math.log(2.0) / math.log(ratio),
              math.log(m.size - 1) / math.log(ratio))
    residual = abs(t_count * summary.covering_diameter ** value
                   - summary.diameter ** value)
    return DimensionResult(DimensionKind.FINITE, value, witness, bounds, 0,
                           residual)


def _bisect_root(g, lo: float, hi: float, tol: float):
    """Root of a strictly decreasing g, bracket-expanding on bad endpoints."""
    evals = 0
    glo = g(lo)
    evals += 1
    guard = 0
    while glo < 0.0 and guard < 64:
        hi = lo
        lo = lo / 2.0
        glo = g(lo)
        evals += 1
        guard += 1
    ghi = g(hi)
    evals += 1
    guard = 0
    while ghi > 0.0 and guard < 64:
        lo = hi
        hi = hi * 2.0
        ghi = g(hi)
        evals += 1
        guard += 1
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = g(mid)
        evals += 1
        if gm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), evals


def hausdorff_dimension(m: FiniteMetric, max_exact: Optional[int] = None,
                        force_python: bool = False) -> DimensionResult:
    """Hausdorff analog: the root of the cover-measure equation.

    Rescales to diameter 1, then bisects g(s) = (measure at level nabla) - 1,
    solving one exact weighted cover per evaluation. The witness and residual
    are recomputed on the original space at the returned exponent.
    """
    if m.size == 1:
        return _zero_result()
    summary = cached_summary(m)
    if summary.has_focal:
        return _infinite_result()
    norm = _normalized(m)
    norm_summary = cached_summary(norm)
    level = norm_summary.covering_diameter
    nodes_total = 0

    def g(s: float) -> float:
        nonlocal nodes_total
        value, _, _, nodes = _cover._min_weighted(norm, level, s,
                                                  max_exact=max_exact,
                                                  force_python=force_python)
        nodes_total += nodes
        return value - 1.0

    bounds = dimension_bounds(m)
    lo = max(bounds[0] - _BRACKET_PAD, 0.0)
    hi = bounds[1] + _BRACKET_PAD
    s0, evals = _bisect_root(g, lo, hi, BISECTION_TOL)

    value, sets, pool, nodes = _cover._min_weighted(m, summary.covering_diameter,
                                                    s0, max_exact=max_exact,
                                                    force_python=force_python)
    nodes_total += nodes
    witness = _cover._make_cover(pool, sets)
    residual = abs(value - summary.diameter ** s0)
    return DimensionResult(DimensionKind.FINITE, s0, witness, bounds, evals,
                           residual, nodes=nodes_total)


def oracle_hausdorff_dimension(m: FiniteMetric) -> DimensionResult:
    """Same root, but every measure evaluation uses the brute-force oracle.

    Independent validation path for small spaces: unpruned candidate sets,
    exhaustive cover search. Uses the same bracket and tolerance as
    hausdorff_dimension so agreement is required to bisection accuracy.
    """
    if m.size == 1:
        return _zero_result()
    summary = cached_summary(m)
    if summary.has_focal:
        return _infinite_result()
    norm = _normalized(m)
    level = cached_summary(norm).covering_diameter

    def g(s: float) -> float:
        return _cover.brute_force_oracle(norm, level, s).weighted - 1.0

    bounds = dimension_bounds(m)
    s0, evals = _bisect_root(g, max(bounds[0] - _BRACKET_PAD, 0.0),
                             bounds[1] + _BRACKET_PAD, BISECTION_TOL)
    result = _cover.brute_force_oracle(m, summary.covering_diameter, s0)
    residual = abs(result.weighted - summary.diameter ** s0)
    return DimensionResult(DimensionKind.FINITE, s0, result.weighted_witness,
                           bounds, evals, residual)


def locally_uniform_dimension(m: FiniteMetric, max_exact: Optional[int] = None,
                              force_python: bool = False) -> DimensionResult:
    """Shared dimension value on locally uniform spaces, skipping bisection.

    When separation equals covering diameter, every admissible set at level
    nabla has diameter exactly nabla, so both dimension equations collapse to
    T * nabla^s = Delta^s.
    """
    if m.size == 1:
        return _zero_result()
    summary = cached_summary(m)
    if summary.has_focal:
        raise InfiniteDimensionError(f"focal points {summary.focal}")
    if not summary.locally_uniform:
        raise FastPathInapplicable(
            f"separation {summary.separation} != covering diameter "
            f"{summary.covering_diameter}"
        )
    return box_dimension(m, max_exact=max_exact, force_python=force_python)


def cover_exponent(cover: TwoCover, m: FiniteMetric) -> float:
    """The unique s with sum(diam(U_i)^s) = Delta^s for a fine cover."""
    if classify(cover, m) is not CoverClass.FINE:
        raise NoUniqueSolution(
            "only covers strictly below the space diameter have a unique exponent"
        )
    diameter = m.diameter
    profile = cover.profile()
    scaled = [a / diameter for a in profile.diameters]
    mults = profile.multiplicities

    def f(s: float) -> float:
        return math.fsum(mu * a ** s for a, mu in zip(scaled, mults)) - 1.0

    count = cover.size
    lo = math.log(count) / math.log(diameter / profile.diameters[0])
    hi = math.log(count) / math.log(diameter / profile.diameters[-1])
    s_u, _ = _bisect_root(f, max(lo - _BRACKET_PAD, 0.0), hi + _BRACKET_PAD,
                          COVER_EXPONENT_TOL)
    return s_u


def witness_dimension_below(m: FiniteMetric, t: float,
                            max_exact: Optional[int] = None) -> Optional[TwoCover]:
    """A fine cover with sum(diam^t) < Delta^t, iff the dimension is below t."""
    if t <= 0:
        raise BadParameter("threshold exponent must be positive")
    if m.size < 3:
        raise BadParameter("needs at least three points")
    summary = cached_summary(m)
    if summary.has_focal:
        raise InfiniteDimensionError(f"focal points {summary.focal}")
    value, witness = _cover.min_weighted_cover(m, summary.covering_diameter, t,
                                               max_exact=max_exact)
    if value < summary.diameter ** t:
        return witness
    return None


def mass_lower_bound(m: FiniteMetric, mu: MassDistribution, c: float,
                     s: float, max_exact: Optional[int] = None) -> MassCertificate:
    """Certify total mass <= c * (cover measure at s); maybe bound the dimension.

    The hypothesis mu(U) <= c * diam(U)^s is checked over the candidate pool
    at level nabla, which contains every set an optimal cover can use. If in
    addition c * Delta^s <= mu(F), the measure at s is at least Delta^s, so
    s is a certified lower bound for the Hausdorff-analog dimension.
    Comparisons allow 1e-9 relative slack for rounding.
    """
    if c <= 0 or s <= 0:
        raise BadParameter("c and s must be positive")
    if len(mu.mass) != m.size:
        raise BadParameter("mass vector length does not match the space")
    summary = cached_summary(m)
    if summary.has_focal:
        raise InfiniteDimensionError(f"focal points {summary.focal}")
    slack = 1.0 + 1e-9
    for cs in _cover.candidates(m, summary.covering_diameter):
        bound = c * cs.diameter ** s
        if mu.of_mask(cs.mask) > bound * slack + 1e-300:
            raise HypothesisViolated(
                f"mass {mu.of_mask(cs.mask)} exceeds {bound} on set "
                f"{cs.indices()}",
                members=cs.indices(),
            )
    measure, _ = _cover.min_weighted_cover(m, summary.covering_diameter, s,
                                           max_exact=max_exact)
    total = mu.total
    return MassCertificate(
        total_mass=total,
        c=c,
        s=s,
        measure_value=measure,
        mass_bounded=bool(total <= c * measure * slack + 1e-300),
        certifies_dimension_at_least_s=bool(
            c * summary.diameter ** s <= total * slack + 1e-300
        ),
    )
