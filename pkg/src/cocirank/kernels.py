"""Kernel backend selection.

The compiled extension is used when importable; otherwise the pure-Python
module is. Set ``COCIRANK_PURE=1`` to force the pure-Python backend.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("COCIRANK_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

power_iteration = _impl.power_iteration
cocitation_counts = _impl.cocitation_counts
brandes = _impl.brandes

__all__ = ["BACKEND", "power_iteration", "cocitation_counts", "brandes"]
