"""Scoring kernels: numba-compiled fast path with a pure-numpy fallback.

Backend selection is controlled by the AQGR_KERNELS environment variable:
``auto`` (default) picks numba when importable, ``numba`` requires it,
``numpy`` forces the fallback. Both backends implement the same two
functions and must agree to float64 round-off:

- ``bm25_scores(...)``  -- accumulate BM25 contributions over packed postings
- ``dense_scores(...)`` -- float64 dot products of a query against a matrix
"""

import os
from types import ModuleType

ENV_VAR = "AQGR_KERNELS"
_VALID = ("auto", "numba", "numpy")

_backend: ModuleType | None = None
_backend_name: str | None = None


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _load(mode: str) -> tuple[ModuleType, str]:
    if mode not in _VALID:
        raise RuntimeError(f"{ENV_VAR} must be one of {_VALID}, got {mode!r}")
    if mode == "numpy" or (mode == "auto" and not _numba_available()):
        from . import np_backend
        return np_backend, "numpy"
    if mode == "numba" and not _numba_available():
        raise RuntimeError("AQGR_KERNELS=numba but numba is not importable")
    from . import nb_backend
    return nb_backend, "numba"


def get_backend() -> ModuleType:
    """Return the active kernel module, loading it on first use."""
    global _backend, _backend_name
    if _backend is None:
        mode = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
        _backend, _backend_name = _load(mode)
    return _backend


def active_backend_name() -> str:
    get_backend()
    assert _backend_name is not None
    return _backend_name


def reload_backend() -> ModuleType:
    """Re-read the environment flag; used by tests and benchmarks."""
    global _backend, _backend_name
    _backend = None
    _backend_name = None
    return get_backend()


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs so query paths never pay it."""
    import numpy as np

    backend = get_backend()
    backend.dense_scores(np.zeros((1, 2), dtype=np.float32), np.zeros(2, dtype=np.float64))
    backend.bm25_scores(
        1,
        np.ones(1, dtype=np.float64),
        np.zeros(1, dtype=np.int64),
        np.ones(1, dtype=np.float64),
        np.array([0, 1], dtype=np.int64),
        np.ones(1, dtype=np.float64),
        1.2,
    )
