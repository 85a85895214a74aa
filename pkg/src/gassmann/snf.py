"""Smith normal form front end: dense with transforms, sparse for invariant factors."""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from . import _kernels, exact


def smith_normal_form(A):
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` and U, V unimodular."""
    D, U, V, _, _ = _kernels.snf(exact.obj(A))
    return U, D, V


def smith_with_inverses(A, transforms=True):
    """``(D, U, V, U^-1, V^-1)`` as object arrays of Python ints.

    With ``transforms="left"`` or ``"right"`` only one side is built (the
    other entries are None); the unused side can be far larger.
    """
    return _kernels.snf(exact.obj(A), transforms)


def diagonal(D) -> list[int]:
    return [int(D[i, i]) for i in range(min(D.shape))]


def _rows_from(A):
    if sp.issparse(A):
        A = sp.csr_array(A)
        rows = []
        for i in range(A.shape[0]):
            lo, hi = A.indptr[i], A.indptr[i + 1]
            rows.append({int(c): int(v) for c, v in zip(A.indices[lo:hi], A.data[lo:hi]) if v})
        return rows, A.shape
    A = np.asarray(A, dtype=object)
    return [{j: int(v) for j, v in enumerate(row) if v} for row in A.tolist()], A.shape


def invariant_factors(A) -> list[int]:
    """Nonzero invariant factors of an integer matrix (sparse or dense).

    Unit pivots are eliminated sparsely first, always taking the shortest
    remaining row; whatever survives goes through the dense Smith kernel.
    """
    rows, (m, n) = _rows_from(A)
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            cols.setdefault(j, set()).add(i)
    alive = {i for i, r in enumerate(rows) if r}
    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(alive, key=lambda i: len(rows[i])):
            r = rows[i]
            cand = [j for j, v in r.items() if v in (1, -1)]
            if not cand:
                continue
            j = min(cand, key=lambda j: (len(cols[j]), j))
            piv = r[j]
            for k in list(cols[j]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[j] * piv  # piv = +-1 so rk[j]/piv == rk[j]*piv
                for c, v in r.items():
                    nv = rk.get(c, 0) - f * v
                    if nv:
                        if c not in rk:
                            cols.setdefault(c, set()).add(k)
                        rk[c] = nv
                    elif c in rk:
                        del rk[c]
                        cols[c].discard(k)
                if not rk:
                    alive.discard(k)
            for c in r:
                cols[c].discard(i)
            rows[i] = {}
            alive.discard(i)
            units += 1
            progress = True
            break
    rest_rows = sorted(alive)
    rest_cols = sorted({c for i in rest_rows for c in rows[i]})
    factors = [1] * units
    if rest_rows:
        cidx = {c: k for k, c in enumerate(rest_cols)}
        dense = exact.zeros((len(rest_rows), len(rest_cols)))
        for a, i in enumerate(rest_rows):
            for c, v in rows[i].items():
                dense[a, cidx[c]] = v
        D = _kernels.snf(dense, transforms=False)[0]
        factors += [d for d in diagonal(D) if d]
    return sorted(factors)
