"""Hot loops, compiled when the extension is built and numpy otherwise.

``PLATEAU_PURE=1`` forces the numpy versions; ``PLATEAU_THREADS`` caps the
worker count used by the compiled loops.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("PLATEAU_PURE") == "1":
        raise ImportError("pure mode requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "numpy"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PLATEAU_THREADS", "1")))
    except ValueError:
        return 1


def _u8(a):
    return np.ascontiguousarray(a, dtype=np.uint8)


def walsh_counts(values, tm, p: int, backend: str | None = None) -> np.ndarray:
    if _use_c(backend):
        return _ckernels.walsh_counts(_u8(values), _u8(tm), p, _threads())
    return _pykernels.walsh_counts(np.asarray(values), tm, p)


# numpy's BLAS route costs about p^2 times the compiled loop's work but runs
# faster per operation; it wins only for p = 3 on large batches (see benchmarks/)
_BLAS_BATCH_CELLS = 64 * 243


def walsh_counts_batch(values, tm, p: int, backend: str | None = None) -> np.ndarray:
    if backend is None and p == 3 and len(values) * tm.shape[0] >= _BLAS_BATCH_CELLS:
        backend = "numpy"
    if _use_c(backend):
        return _ckernels.walsh_counts_batch(_u8(values), _u8(tm), p, _threads())
    return _pykernels.walsh_counts_batch(np.asarray(values), tm, p)


def hyperplane_census(values, tm, p: int, backend: str | None = None) -> np.ndarray:
    if _use_c(backend):
        return _ckernels.hyperplane_census(_u8(values), _u8(tm), p, _threads())
    return _pykernels.hyperplane_census(np.asarray(values), tm, p)


def weight_counts(tm, columns, backend: str | None = None) -> np.ndarray:
    cols = np.ascontiguousarray(columns, dtype=np.int64)
    if _use_c(backend):
        return _ckernels.weight_counts(_u8(tm), cols, _threads())
    return _pykernels.weight_counts(tm, cols)


def find_covering_pair(supports, backend: str | None = None) -> tuple[int, int]:
    if _use_c(backend):
        return _ckernels.find_covering_pair(supports)
    return _pykernels.find_covering_pair(supports)


def _use_c(backend) -> bool:
    if backend == "numpy":
        return False
    if backend == "cython" and _ckernels is None:
        raise ImportError("compiled kernels are not built")
    return _ckernels is not None
