"""Exact arithmetic kernels with a compiled fast path.

The Cython extension ``_ckernels`` is used when it was built; otherwise the
numpy/pure-Python reference ``_pykernels`` is used.  Setting the environment
variable ``GASSMANN_PURE_PYTHON=1`` forces the reference implementation.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("GASSMANN_PURE_PYTHON"):
        raise ImportError
    from . import _ckernels as _fast
    BACKEND = "cython"
except ImportError:
    _fast = _pykernels
    BACKEND = "python"


def det_mod_p(a, p):
    return int(_fast.det_mod_p(a, p))


def rank_mod_p(a, p):
    return int(_fast.rank_mod_p(a, p))


def charpoly_mod_p(a, p):
    return [int(c) for c in _fast.charpoly_mod_p(a, p)]


def _to_object(rows, shape):
    out = np.empty(shape, dtype=object)
    if shape[0] and shape[1]:
        out[:, :] = [[int(x) for x in r] for r in (rows.tolist() if isinstance(rows, np.ndarray) else rows)]
    return out


def snf(a, transforms=True, backend=None):
    """Smith form of an integer matrix; see ``_pykernels.snf``.

    ``transforms`` is True, False, "left" (U, U^-1 only) or "right" (V, V^-1
    only).  Results are object arrays of Python ints.  The int64 kernel is tried
    first and silently replaced by the arbitrary-precision one on overflow.
    """
    a = np.asarray(a, dtype=object)
    m, n = a.shape
    impl = {"python": _pykernels, "cython": _fast, None: _fast}[backend]
    try:
        res = impl.snf(a, transforms)
    except OverflowError:
        res = _pykernels.snf(a, transforms)
    D = _to_object(res[0], (m, n))

    def conv(x, k):
        return None if x is None else _to_object(x, (k, k))

    return D, conv(res[1], m), conv(res[2], n), conv(res[3], m), conv(res[4], n)
