"""Kernel backend selection.

The numba kernels are used unless ``TQCSIM_DISABLE_NUMBA`` is set to a true
value (``1``, ``true``, ``yes``) or numba cannot be imported.  Both backends
return identical results; the numba one is just faster.
"""

import os

_FLAG = os.environ.get("TQCSIM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

if _FLAG:
    from . import numpy_kernels as _impl

    BACKEND = "numpy"
else:
    try:
        import numba

        # the TBB layer probes the system library and warns when it is old
        if numba.config.THREADING_LAYER == "default":
            numba.config.THREADING_LAYER = "workqueue"
        from . import numba_kernels as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        from . import numpy_kernels as _impl

        BACKEND = "numpy"

state_sum_histogram = _impl.state_sum_histogram
search_words = _impl.search_words
phase_min_norm = _impl.phase_min_norm
leakage_of = _impl.leakage_of


def set_threads(n: int | None) -> int:
    """Set the kernel thread count; returns the count actually in effect."""
    if BACKEND != "numba" or n is None:
        return 1 if BACKEND != "numba" else _numba_threads()
    import numba

    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n


def _numba_threads() -> int:
    import numba

    return numba.get_num_threads()
