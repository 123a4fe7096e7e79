"""Exact two-cover solving over threshold-graph cliques.

A *two-cover* of a finite metric space is a family of subsets, each with at
least two points, whose union is the whole space. A subset has diameter at
most delta exactly when it is a clique of the threshold graph at level delta,
so candidate covering sets are cliques. Two exact objectives are solved over
covers whose sets all stay strictly below the space diameter ("fine" covers):

    min_cover_count    minimum number of sets (the box-count analog), and
    min_weighted_cover minimum of sum(diam(U_i)^s) (the measure analog).

Both run branch-and-bound over a dominance-pruned candidate pool: a clique is
kept only if no strict clique superset has diameter <= its own, a replacement
that can only improve either objective. brute_force_oracle() re-solves small
instances from the unpruned clique set with plain incumbent pruning and no
heuristics; the two routes must agree exactly, and the test suite holds them
to that.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import _kernel
from .errors import (
    ExactLimitExceeded,
    InfiniteDimensionError,
    MalformedCover,
    NoCoverExists,
    OracleTooLarge,
    SingletonSpace,
)
from .metric import FiniteMetric, cached_summary

DEFAULT_MAX_EXACT = 128
ORACLE_MAX_POINTS = 10


class CoverClass(enum.Enum):
    """Three-way classification of a two-cover."""

    TRIVIAL = "trivial"  # the single whole-space set
    FINE = "fine"        # >= 2 sets, all strictly below the space diameter
    COARSE = "coarse"    # >= 2 sets, some set attains the space diameter


@dataclass(frozen=True)
class CoverSet:
    """One covering set: a bitmask over point indices plus its diameter."""

    mask: int
    diameter: float

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def indices(self) -> tuple:
        return tuple(_bits(self.mask))


@dataclass(frozen=True)
class TwoCover:
    sets: tuple
    cover_class: CoverClass

    @property
    def size(self) -> int:
        return len(self.sets)

    def point_mask(self) -> int:
        u = 0
        for cs in self.sets:
            u |= cs.mask
        return u

    def max_diameter(self) -> float:
        return max(cs.diameter for cs in self.sets)

    def profile(self) -> "CoverProfile":
        counts: dict = {}
        for cs in self.sets:
            counts[cs.diameter] = counts.get(cs.diameter, 0) + 1
        diams = tuple(sorted(counts))
        return CoverProfile(diameters=diams,
                            multiplicities=tuple(counts[a] for a in diams))

    def weight(self, s: float) -> float:
        """sum(diam(U_i)^s) over the cover's sets."""
        return math.fsum(cs.diameter ** s for cs in self.sets)


@dataclass(frozen=True)
class CoverProfile:
    """Distinct set diameters a_1 < ... < a_k with their multiplicities."""

    diameters: tuple
    multiplicities: tuple

    @property
    def set_count(self) -> int:
        return sum(self.multiplicities)

    def weight(self, s: float) -> float:
        return math.fsum(m * a ** s
                         for a, m in zip(self.diameters, self.multiplicities))


@dataclass(frozen=True)
class ThresholdGraph:
    """Graph with an edge wherever the distance is at most `level` + tau."""

    level: float
    adjacency: np.ndarray

    def degree(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass(frozen=True)
class OracleResult:
    count: int
    weighted: float
    count_witness: TwoCover
    weighted_witness: TwoCover


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def threshold_graph(m: FiniteMetric, level: float) -> ThresholdGraph:
    adj = m.dist <= level + m.tolerance
    np.fill_diagonal(adj, False)
    return ThresholdGraph(level=float(level), adjacency=adj)


def _adj_masks(m: FiniteMetric, delta: float, cap_below_diameter: bool) -> list:
    """Row bitmasks of the admissible-edge graph at level delta.

    With the cap, edges at (or within tau of) the space diameter are dropped,
    which restricts cliques to sets usable in fine covers.
    """
    ok = m.dist <= delta + m.tolerance
    if cap_below_diameter:
        ok &= m.dist < m.diameter - m.tolerance
    np.fill_diagonal(ok, False)
    masks = []
    for row in ok:
        mask = 0
        for j in np.flatnonzero(row):
            mask |= 1 << int(j)
        masks.append(mask)
    return masks


def _enumerate_cliques(adj: list, dist: list) -> list:
    """All cliques of size >= 2 as (mask, diameter), each exactly once."""
    n = len(adj)
    out = []
    members: list = []

    def grow(mask: int, cand: int, diam: float) -> None:
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            row = dist[v]
            nd = diam
            for u in members:
                if row[u] > nd:
                    nd = row[u]
            members.append(v)
            nm = mask | low
            if len(members) >= 2:
                out.append((nm, nd))
            grow(nm, c & adj[v], nd)
            members.pop()

    for v in range(n):
        members.append(v)
        grow(1 << v, adj[v] >> (v + 1) << (v + 1), 0.0)
        members.pop()
    return out


def _dominated(mask: int, diam: float, adj: list, dist: list, n: int) -> bool:
    # a strict superset of equal-or-smaller diameter makes this set redundant
    idx = list(_bits(mask))
    for v in range(n):
        if (mask >> v) & 1:
            continue
        if (adj[v] & mask) != mask:
            continue
        row = dist[v]
        if max(row[u] for u in idx) <= diam:
            return True
    return False


@dataclass(frozen=True)
class _Pool:
    n: int
    universe: int
    masks: list
    diams: list
    indptr: list
    indices: list
    max_size: int
    masks_u64: Optional[np.ndarray]
    indptr_i64: np.ndarray
    indices_i64: np.ndarray


def _build_pool(m: FiniteMetric, delta: float, pruned: bool,
                cap_below_diameter: bool) -> _Pool:
    n = m.size
    adj = _adj_masks(m, delta, cap_below_diameter)
    dist = m.dist.tolist()
    cliques = _enumerate_cliques(adj, dist)
    if pruned:
        cliques = [(mask, diam) for mask, diam in cliques
                   if not _dominated(mask, diam, adj, dist, n)]
    cliques.sort(key=lambda md: (md[1], md[0]))
    masks = [mask for mask, _ in cliques]
    diams = [diam for _, diam in cliques]
    universe = (1 << n) - 1
    covered = 0
    for mask in masks:
        covered |= mask
    if covered != universe:
        raise NoCoverExists(
            f"no two-cover at level {delta}: some point has no admissible set"
        )
    indptr = [0]
    indices: list = []
    for p in range(n):
        for ci, mask in enumerate(masks):
            if (mask >> p) & 1:
                indices.append(ci)
        indptr.append(len(indices))
    return _Pool(
        n=n,
        universe=universe,
        masks=masks,
        diams=diams,
        indptr=indptr,
        indices=indices,
        max_size=max(mask.bit_count() for mask in masks),
        masks_u64=np.array(masks, dtype=np.uint64) if n <= 64 else None,
        indptr_i64=np.array(indptr, dtype=np.int64),
        indices_i64=np.array(indices, dtype=np.int64),
    )


def _pool_for(m: FiniteMetric, delta: float, pruned: bool,
              cap_below_diameter: bool) -> _Pool:
    key = ("pool", float(delta), pruned, cap_below_diameter)
    pool = m._cache.get(key)
    if pool is None:
        pool = _build_pool(m, delta, pruned, cap_below_diameter)
        m._cache[key] = pool
    return pool


def _greedy(pool: _Pool, weights: list):
    covered = 0
    chosen = []
    total = 0.0
    while covered != pool.universe:
        best_ci = -1
        best_score = math.inf
        for ci, mask in enumerate(pool.masks):
            new = (mask & ~covered).bit_count()
            if new == 0:
                continue
            score = weights[ci] / new
            if score < best_score:
                best_score = score
                best_ci = ci
        covered |= pool.masks[best_ci]
        total += weights[best_ci]
        chosen.append(best_ci)
    return total, chosen


def _solve_pool(pool: _Pool, weights: list, force_python: bool = False):
    """Exact solve; returns (canonical value, sorted set indices, nodes)."""
    ub_value, ub_sets = _greedy(pool, weights)
    min_weight = min(weights)
    if pool.masks_u64 is not None and _kernel.use_compiled(pool.n) and not force_python:
        value, sets, nodes = _kernel._cy.search(
            pool.universe, pool.masks_u64, np.asarray(weights, dtype=np.float64),
            pool.indptr_i64, pool.indices_i64, pool.max_size, min_weight,
            ub_value, ub_sets)
    else:
        value, sets, nodes = _kernel._py.search(
            pool.universe, pool.masks, weights, pool.indptr, pool.indices,
            pool.max_size, min_weight, ub_value, ub_sets)
    sets = tuple(int(i) for i in sets)
    return math.fsum(weights[i] for i in sets), sets, nodes


def _make_cover(pool: _Pool, sets, cover_class: CoverClass = CoverClass.FINE) -> TwoCover:
    members = sorted(((pool.diams[i], pool.masks[i]) for i in sets))
    return TwoCover(
        sets=tuple(CoverSet(mask=mask, diameter=diam) for diam, mask in members),
        cover_class=cover_class,
    )


def _require_solvable(m: FiniteMetric, delta: float, max_exact: Optional[int]) -> None:
    if m.size < 2:
        raise SingletonSpace("covers need at least two points")
    limit = DEFAULT_MAX_EXACT if max_exact is None else max_exact
    if m.size > limit:
        raise ExactLimitExceeded(f"{m.size} points exceeds exact budget {limit}")
    summary = cached_summary(m)
    if summary.has_focal:
        raise InfiniteDimensionError(
            f"focal points {summary.focal}: no fine cover exists"
        )
    if delta < summary.covering_diameter - m.tolerance:
        raise NoCoverExists(
            f"level {delta} below the covering diameter {summary.covering_diameter}"
        )


def candidates(m: FiniteMetric, delta: float) -> list:
    """Dominance-pruned admissible sets at level delta, by (diameter, mask).

    Every clique of the threshold graph with at least two points is either in
    the pool or has a pool superset of no larger diameter, so restricting
    cover search to the pool loses nothing in either objective.
    """
    if m.size < 2:
        raise SingletonSpace("covers need at least two points")
    summary = cached_summary(m)
    if delta < summary.covering_diameter - m.tolerance:
        raise NoCoverExists(
            f"level {delta} below the covering diameter {summary.covering_diameter}"
        )
    adj = _adj_masks(m, delta, cap_below_diameter=False)
    dist = m.dist.tolist()
    cliques = _enumerate_cliques(adj, dist)
    kept = [(mask, diam) for mask, diam in cliques
            if not _dominated(mask, diam, adj, dist, m.size)]
    kept.sort(key=lambda md: (md[1], md[0]))
    return [CoverSet(mask=mask, diameter=diam) for mask, diam in kept]


def min_cover_count(m: FiniteMetric, delta: float,
                    max_exact: Optional[int] = None,
                    force_python: bool = False):
    """Minimum number of sets in a fine cover at level delta, with witness."""
    _require_solvable(m, delta, max_exact)
    pool = _pool_for(m, delta, pruned=True, cap_below_diameter=True)
    value, sets, _ = _solve_pool(pool, [1.0] * len(pool.masks), force_python)
    return int(round(value)), _make_cover(pool, sets)


def min_weighted_cover(m: FiniteMetric, delta: float, s: float,
                       max_exact: Optional[int] = None,
                       force_python: bool = False):
    """Minimum of sum(diam(U_i)^s) over fine covers at level delta."""
    value, sets, pool, _ = _min_weighted(m, delta, s, max_exact, force_python)
    return value, _make_cover(pool, sets)


def _min_weighted(m: FiniteMetric, delta: float, s: float,
                  max_exact: Optional[int] = None,
                  force_python: bool = False):
    if s < 0:
        raise ValueError("exponent s must be nonnegative")
    _require_solvable(m, delta, max_exact)
    pool = _pool_for(m, delta, pruned=True, cap_below_diameter=True)
    weights = [d ** s for d in pool.diams]
    value, sets, nodes = _solve_pool(pool, weights, force_python)
    return value, sets, pool, nodes


def cover_measure(m: FiniteMetric, delta: float, s: float,
                  max_exact: Optional[int] = None):
    """Minimal total s-weight of an admissible cover at level delta.

    On spaces without focal points this is min_weighted_cover. With focal
    points no fine cover exists and the minimum over all two-covers is
    attained by the single whole-space set, giving diameter^s.
    """
    if m.size < 2:
        raise SingletonSpace("covers need at least two points")
    summary = cached_summary(m)
    if summary.has_focal:
        if delta < summary.covering_diameter - m.tolerance:
            raise NoCoverExists(
                f"level {delta} below the covering diameter "
                f"{summary.covering_diameter}"
            )
        whole = CoverSet(mask=(1 << m.size) - 1, diameter=m.diameter)
        return m.diameter ** s, TwoCover(sets=(whole,),
                                         cover_class=CoverClass.TRIVIAL)
    return min_weighted_cover(m, delta, s, max_exact)


def classify(cover: TwoCover, m: FiniteMetric) -> CoverClass:
    """Validate a cover against its space and classify it."""
    n = m.size
    universe = (1 << n) - 1
    if not cover.sets:
        raise MalformedCover("empty cover")
    union = 0
    recomputed = []
    for cs in cover.sets:
        if cs.mask <= 0 or cs.mask > universe:
            raise MalformedCover(f"set mask {cs.mask:#x} out of range")
        if cs.mask.bit_count() < 2:
            raise MalformedCover("covering sets need at least two points")
        idx = list(_bits(cs.mask))
        diam = max(m.dist[i, j] for k, i in enumerate(idx) for j in idx[k + 1:])
        if abs(diam - cs.diameter) > m.tolerance:
            raise MalformedCover(
                f"stated diameter {cs.diameter} differs from actual {diam}"
            )
        recomputed.append(diam)
        union |= cs.mask
    if union != universe:
        raise MalformedCover("sets do not cover the space")
    if len(cover.sets) == 1:
        return CoverClass.TRIVIAL  # single set covering everything is the whole space
    if all(d < m.diameter - m.tolerance for d in recomputed):
        return CoverClass.FINE
    return CoverClass.COARSE


def _oracle_pool(m: FiniteMetric, delta: float) -> _Pool:
    """Unpruned pool: every clique of size >= 2, found by full subset scan."""
    key = ("oracle-pool", float(delta))
    pool = m._cache.get(key)
    if pool is not None:
        return pool
    n = m.size
    summary = cached_summary(m)
    # fine covers when they exist; otherwise all admissible sets compete
    adj = _adj_masks(m, delta, cap_below_diameter=not summary.has_focal)
    dist = m.dist.tolist()
    cliques = []
    for mask in range(3, 1 << n):
        if mask.bit_count() < 2:
            continue
        idx = list(_bits(mask))
        if any((adj[i] & mask) != mask ^ (1 << i) for i in idx):
            continue
        diam = max(dist[i][j] for k, i in enumerate(idx) for j in idx[k + 1:])
        cliques.append((mask, diam))
    masks = [mask for mask, _ in cliques]
    diams = [diam for _, diam in cliques]
    universe = (1 << n) - 1
    covered = 0
    for mask in masks:
        covered |= mask
    if covered != universe:
        raise NoCoverExists(f"no two-cover at level {delta}")
    indptr = [0]
    indices: list = []
    for p in range(n):
        for ci, mask in enumerate(masks):
            if (mask >> p) & 1:
                indices.append(ci)
        indptr.append(len(indices))
    pool = _Pool(n=n, universe=universe, masks=masks, diams=diams,
                 indptr=indptr, indices=indices,
                 max_size=max(mask.bit_count() for mask in masks),
                 masks_u64=None, indptr_i64=np.array(indptr, dtype=np.int64),
                 indices_i64=np.array(indices, dtype=np.int64))
    m._cache[key] = pool
    return pool


def brute_force_oracle(m: FiniteMetric, delta: float, s: float) -> OracleResult:
    """Exhaustive minima over covers built from every clique of size >= 2.

    No dominance pruning and no bounds heuristics; branches are cut only when
    they provably cannot improve either incumbent. Validation oracle for the
    optimized solvers on spaces of at most ORACLE_MAX_POINTS points.
    """
    if m.size < 2:
        raise SingletonSpace("covers need at least two points")
    if m.size > ORACLE_MAX_POINTS:
        raise OracleTooLarge(f"oracle capped at {ORACLE_MAX_POINTS} points")
    summary = cached_summary(m)
    if delta < summary.covering_diameter - m.tolerance:
        raise NoCoverExists(
            f"level {delta} below the covering diameter {summary.covering_diameter}"
        )
    pool = _oracle_pool(m, delta)
    weights = [d ** s for d in pool.diams]

    best_count = math.inf
    best_value = math.inf
    bc_sets: tuple = ()
    bv_sets: tuple = ()

    def dfs(covered: int, count: int, value: float, chosen: list) -> None:
        nonlocal best_count, best_value, bc_sets, bv_sets
        if covered == pool.universe:
            if count < best_count:
                best_count = count
                bc_sets = tuple(chosen)
            if value < best_value:
                best_value = value
                bv_sets = tuple(chosen)
            return
        if count + 1 >= best_count and value >= best_value:
            return
        rem = pool.universe & ~covered
        p = (rem & -rem).bit_length() - 1
        for ci in pool.indices[pool.indptr[p]:pool.indptr[p + 1]]:
            chosen.append(ci)
            dfs(covered | pool.masks[ci], count + 1, value + weights[ci], chosen)
            chosen.pop()

    dfs(0, 0, 0.0, [])
    trivial = len(bv_sets) == 1 and pool.masks[bv_sets[0]] == pool.universe
    return OracleResult(
        count=int(best_count),
        weighted=math.fsum(weights[i] for i in bv_sets),
        count_witness=_make_cover(pool, bc_sets,
                                  CoverClass.TRIVIAL if len(bc_sets) == 1
                                  and pool.masks[bc_sets[0]] == pool.universe
                                  else CoverClass.FINE),
        weighted_witness=_make_cover(pool, bv_sets,
                                     CoverClass.TRIVIAL if trivial
                                     else CoverClass.FINE),
    )


def fine_cover_profiles(m: FiniteMetric, delta: float):
    """Profiles (sorted diameter tuples) of every irredundant fine cover.

    Exhaustive; intended for validation on tiny spaces only.
    """
    if m.size > ORACLE_MAX_POINTS:
        raise OracleTooLarge(f"enumeration capped at {ORACLE_MAX_POINTS} points")
    if cached_summary(m).has_focal:
        raise InfiniteDimensionError("no fine covers on spaces with focal points")
    pool = _oracle_pool(m, delta)
    seen = set()
    out = []

    def dfs(covered: int, chosen: list) -> None:
        if covered == pool.universe:
            key = frozenset(chosen)
            if key in seen:
                return
            for ci in chosen:
                others = 0
                for cj in chosen:
                    if cj != ci:
                        others |= pool.masks[cj]
                if pool.masks[ci] & ~others == 0:
                    return  # redundant set
            seen.add(key)
            out.append(tuple(sorted(pool.diams[i] for i in chosen)))
            return
        rem = pool.universe & ~covered
        p = (rem & -rem).bit_length() - 1
        for ci in pool.indices[pool.indptr[p]:pool.indptr[p + 1]]:
            if ci in chosen:
                continue
            chosen.append(ci)
            dfs(covered | pool.masks[ci], chosen)
            chosen.pop()

    dfs(0, [])
    return out
