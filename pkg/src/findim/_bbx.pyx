# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _bb.search for spaces of at most 64 points.

Same branching order, same bound, same strict-improvement rule as the pure
kernel, so results are bit-identical. Dispatch lives in _kernel.py.
"""

from libc.stdint cimport int64_t, uint64_t

import numpy as np

cdef extern from *:
    """
    #define FD_POPCOUNT(x) __builtin_popcountll((unsigned long long)(x))
    #define FD_CTZ(x) __builtin_ctzll((unsigned long long)(x))
    """
    int FD_POPCOUNT(uint64_t x) nogil
    int FD_CTZ(uint64_t x) nogil


cdef struct BBState:
    uint64_t universe
    const uint64_t *masks
    const double *weights
    const int64_t *indptr
    const int64_t *indices
    int max_size
    double min_weight
    double best_value
    int64_t *best_sets
    int best_len
    int64_t *chosen
    long nodes


cdef void _dfs(BBState *st, uint64_t covered, double value, int depth) noexcept nogil:
    cdef uint64_t rem_mask
    cdef int rem, need, p
    cdef int64_t ci, k
    st.nodes += 1
    rem_mask = st.universe & ~covered
    if rem_mask == 0:
        if value < st.best_value:
            st.best_value = value
            st.best_len = depth
            for k in range(depth):
                st.best_sets[k] = st.chosen[k]
        return
    rem = FD_POPCOUNT(rem_mask)
    need = (rem + st.max_size - 1) // st.max_size
    if value + need * st.min_weight >= st.best_value:
        return
    p = FD_CTZ(rem_mask)
    for k in range(st.indptr[p], st.indptr[p + 1]):
        ci = st.indices[k]
        st.chosen[depth] = ci
        _dfs(st, covered | st.masks[ci], value + st.weights[ci], depth + 1)
        if value + need * st.min_weight >= st.best_value:
            return


def search(universe, masks, weights, indptr, indices, max_size, min_weight,
           ub_value, ub_sets):
    """See _bb.search; masks must fit in 64 bits."""
    cdef uint64_t[::1] masks_mv = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef double[::1] weights_mv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef int64_t[::1] indptr_mv = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[::1] indices_mv = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[::1] best_buf = np.empty(65, dtype=np.int64)
    cdef int64_t[::1] chosen_buf = np.empty(65, dtype=np.int64)

    cdef BBState st
    st.universe = <uint64_t> universe
    st.masks = &masks_mv[0]
    st.weights = &weights_mv[0]
    st.indptr = &indptr_mv[0]
    st.indices = &indices_mv[0] if indices_mv.shape[0] > 0 else NULL
    st.max_size = max_size
    st.min_weight = min_weight
    st.best_value = ub_value
    st.best_len = len(ub_sets)
    st.best_sets = &best_buf[0]
    st.chosen = &chosen_buf[0]
    st.nodes = 0

    cdef int i
    for i in range(st.best_len):
        best_buf[i] = ub_sets[i]

    with nogil:
        _dfs(&st, 0, 0.0, 0)

    best = [int(best_buf[i]) for i in range(st.best_len)]
    return st.best_value, tuple(sorted(best)), int(st.nodes)
