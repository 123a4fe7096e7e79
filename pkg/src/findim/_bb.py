"""Pure-Python branch-and-bound kernel for exact minimum-weight covers.

This is the reference implementation; _bbx.pyx is a line-for-line compiled
twin restricted to 64-bit masks. Both must explore nodes in the same order
and therefore return bit-identical (value, witness, nodes) triples; a test
asserts the parity. Keep the two in sync.

Branching rule: pick the lowest-index uncovered point and try the candidate
sets containing it in pool order (increasing diameter, ties by mask value).
Lower bound: ceil(uncovered / max_set_size) * min_weight. Improvements are
strict, so with a deterministic incumbent the returned witness is unique.
"""

from __future__ import annotations


def search(universe, masks, weights, indptr, indices, max_size, min_weight,
           ub_value, ub_sets):
    """Exact minimum-weight cover of `universe` by the candidate `masks`.

    indptr/indices list, per point, the candidates containing it (in pool
    order). (ub_value, ub_sets) is a feasible incumbent. Returns
    (best_value, sorted tuple of candidate indices, nodes explored).
    """
    best_value = ub_value
    best_sets = list(ub_sets)
    nodes = 0
    chosen = []

    def dfs(covered, value):
        nonlocal best_value, best_sets, nodes
        nodes += 1
        rem_mask = universe & ~covered
        if rem_mask == 0:
            if value < best_value:
                best_value = value
                best_sets = chosen.copy()
            return
        rem = rem_mask.bit_count()
        need = -(-rem // max_size)
        if value + need * min_weight >= best_value:
            return
        p = (rem_mask & -rem_mask).bit_length() - 1
        for ci in indices[indptr[p]:indptr[p + 1]]:
            chosen.append(ci)
            dfs(covered | masks[ci], value + weights[ci])
            chosen.pop()
            if value + need * min_weight >= best_value:
                return

    dfs(0, 0.0)
    return best_value, tuple(sorted(best_sets)), nodes
