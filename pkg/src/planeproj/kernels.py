"""Kernel dispatch: the compiled core when it imports, the pure-Python twin otherwise.

Set ``PLANEPROJ_PURE=1`` to force the fallback.
"""
import os

from . import _pure as pure

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and not os.environ.get("PLANEPROJ_PURE"):
    BACKEND = "cython"
    _impl = compiled
else:
    BACKEND = "python"
    _impl = pure

rank_mod_p = _impl.rank_mod_p
count_identity_tuples = _impl.count_identity_tuples

__all__ = ["BACKEND", "compiled", "pure", "rank_mod_p", "count_identity_tuples"]
