"""Shared helpers: seeded random spaces and tiny independent brute forces."""

import itertools
import math

import numpy as np
import pytest

import findim as fd

METRICS = ("l1", "l2", "linf")


def random_cloud(rng, n, d=2, metric="l2"):
    return fd.PointCloud(points=rng.uniform(size=(n, d)), metric=metric)


def random_space(rng, n, d=2, metric="l2"):
    return fd.from_points(random_cloud(rng, n, d, metric))


def random_spaces(count, seed, n_range=(4, 9), d_range=(1, 4), metrics=METRICS):
    """Deterministic stream of (metric space, summary) pairs."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(*n_range))
        d = int(rng.integers(*d_range))
        pts = rng.uniform(size=(n, d))
        metric = metrics[len(out) % len(metrics)]
        m = fd.from_points(fd.PointCloud(points=pts, metric=metric))
        out.append(m)
    return out


def subsets_with_diameter(m, delta, fine=True):
    """Independent enumeration of admissible sets: plain combinations scan."""
    n = m.size
    d = m.dist
    tau = m.tolerance
    cap = m.diameter - tau
    out = []
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(n), size):
            diam = max(d[i, j] for i, j in itertools.combinations(combo, 2))
            if diam > delta + tau:
                continue
            if fine and diam >= cap:
                continue
            out.append((combo, float(diam)))
    return out


def brute_minima(m, delta, s, fine=True):
    """Independent exhaustive cover minima: (min count, min weight).

    Recursion over the full admissible-set list, no pruning beyond incumbent
    cost; usable up to ~7 points.
    """
    sets = subsets_with_diameter(m, delta, fine=fine)
    if not fine:
        sets = sets  # includes diameter-sized sets; whole space may be present
    full = frozenset(range(m.size))
    best = [math.inf, math.inf]

    def rec(covered, count, weight):
        if covered == full:
            best[0] = min(best[0], count)
            best[1] = min(best[1], weight)
            return
        if count + 1 >= best[0] and weight >= best[1]:
            return
        p = min(set(range(m.size)) - covered)
        for combo, diam in sets:
            if p in combo:
                rec(covered | frozenset(combo), count + 1, weight + diam ** s)

    rec(frozenset(), 0, 0.0)
    return int(best[0]) if math.isfinite(best[0]) else None, best[1]


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
