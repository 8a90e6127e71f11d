"""Select the compiled kernels when available, else the numpy fallback.

Set ``GRIGSHIFT_BACKEND=python`` to force the fallback.
"""
import os

from . import _pure

BACKEND = "python"
if os.environ.get("GRIGSHIFT_BACKEND", "").lower() not in ("python", "pure", "numpy"):
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
else:
    _impl = _pure

sturm_counts = _impl.sturm_counts
bisect_all = _impl.bisect_all
longest_period_runs = _impl.longest_period_runs

__all__ = ["BACKEND", "sturm_counts", "bisect_all", "longest_period_runs"]
