"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  Set ``PICOD_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("PICOD_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.NAME
# widest GF(2) search the compiled kernel accepts; the Python twin has no cap
COMPILED_SEARCH_COLS = getattr(_impl, "MAX_SEARCH_COLS", 0)

make_tables = _impl.make_tables
gf_rref = _impl.gf_rref


def gf2_subspace_search(m, beta, t, side_info, sequential, max_level, prune):
    if m * beta <= COMPILED_SEARCH_COLS:
        return _impl.gf2_subspace_search(m, beta, t, side_info, sequential, max_level, prune)
    return _kernels_py.gf2_subspace_search(m, beta, t, side_info, sequential, max_level, prune)
