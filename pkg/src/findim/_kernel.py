"""Backend selection for the cover-search kernel.

The compiled kernel (_bbx, built from _bbx.pyx) handles spaces of up to 64
points; larger masks and installs without the extension fall back to the
pure-Python kernel. FINDIM_PURE_PYTHON=1 forces the fallback, which the
parity tests and the benchmark use.
"""

from __future__ import annotations

import os

from . import _bb as _py

try:
    from . import _bbx as _cy
except ImportError:  # extension not built
    _cy = None

FORCE_PURE = bool(os.environ.get("FINDIM_PURE_PYTHON"))
HAVE_COMPILED = _cy is not None


def use_compiled(n_points: int) -> bool:
    return _cy is not None and not FORCE_PURE and n_points <= 64


def backend_name(n_points: int = 0) -> str:
    return "compiled" if use_compiled(n_points) else "python"


def search(universe, masks, weights, indptr, indices, max_size, min_weight,
           ub_value, ub_sets, force_python: bool = False):
    """Dispatching wrapper used by tests and the benchmark."""
    if force_python or not use_compiled(universe.bit_length()):
        return _py.search(universe, list(masks), list(weights), list(indptr),
                          list(indices), max_size, min_weight, ub_value, ub_sets)
    import numpy as np

    return _cy.search(universe, np.asarray(masks, dtype=np.uint64),
                      np.asarray(weights, dtype=np.float64),
                      np.asarray(indptr, dtype=np.int64),
                      np.asarray(indices, dtype=np.int64),
                      max_size, min_weight, ub_value, ub_sets)
