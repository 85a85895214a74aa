"""Reference (pure Python / numpy) implementations of the exact kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and bit-identical results.  Modular kernels require p < 2^31, and the
charpoly kernel also n p 2^16 < 2^63.
"""
import numpy as np


def det_mod_p(a, p):
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if len(nz) == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            det = -det
        piv = int(a[c, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        f = a[c + 1:, c] * inv % p
        a[c + 1:, c:] = (a[c + 1:, c:] - np.outer(f, a[c, c:]) % p) % p
    return det % p


def rank_mod_p(a, p):
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    rank = 0
    for c in range(n):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if len(nz) == 0:
            continue
        r = rank + int(nz[0])
        if r != rank:
            a[[rank, r]] = a[[r, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        f = a[rank + 1:, c] * inv % p
        a[rank + 1:, c:] = (a[rank + 1:, c:] - np.outer(f, a[rank, c:]) % p) % p
        rank += 1
    return rank


def charpoly_mod_p(a, p):
    """Coefficients (constant term first, monic) of det(xI - A) mod p.

    Reduces to upper Hessenberg form by similarity, then expands the
    Hessenberg determinant with the usual three-term recurrence.
    """
    h = np.array(a, dtype=np.int64) % p
    n = h.shape[0]
    for m in range(1, n - 1):
        col = m - 1
        nz = np.nonzero(h[m:, col])[0]
        if len(nz) == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            h[[m, i]] = h[[i, m]]
            h[:, [m, i]] = h[:, [i, m]]
        inv = pow(int(h[m, col]), -1, p)
        u = h[m + 1:, col] * inv % p
        if not u.any():
            continue
        h[m + 1:, :] = (h[m + 1:, :] - np.outer(u, h[m, :]) % p) % p
        # split u into 16-bit limbs so the matrix-vector products stay in int64
        lo, hi = u & 0xFFFF, u >> 16
        rest = h[:, m + 1:]
        h[:, m] = (h[:, m] + (rest @ lo) % p + ((rest @ hi) % p << 16) % p) % p
    # polys[k] holds the characteristic polynomial of the leading k x k block
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = (cur - h[m - 1, m - 1] * prev % p) % p
        t = 1
        acc = np.zeros(n + 1, dtype=np.int64)
        for i in range(m - 1, 0, -1):
            t = t * int(h[i, i - 1]) % p
            if t == 0:
                break
            c = t * int(h[i - 1, m - 1]) % p
            if c:
                acc = (acc + c * polys[i - 1] % p) % p
        polys[m] = (cur - acc) % p
    return polys[n]


def snf(a, transforms=True):
    """Smith normal form over the integers.

    Returns ``(D, U, V, Uinv, Vinv)`` as lists of lists with ``U A V = D``.
    ``transforms`` is True, False, "left" (U only) or "right" (V only);
    transforms not computed are ``None``.
    """
    arr = np.asarray(a, dtype=object)
    m, n = arr.shape
    A = [[int(x) for x in row] for row in arr.tolist()]
    trl = transforms is True or transforms == "left"
    trc = transforms is True or transforms == "right"
    U = Ui = V = Vi = None
    if trl:
        U = [[int(i == j) for j in range(m)] for i in range(m)]
        Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    if trc:
        V = [[int(i == j) for j in range(n)] for i in range(n)]
        Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, c):
        # R_i += c R_j
        Ai, Aj = A[i], A[j]
        A[i] = [x + c * y for x, y in zip(Ai, Aj)]
        if trl:
            U[i] = [x + c * y for x, y in zip(U[i], U[j])]
            for r in Ui:
                r[j] -= c * r[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        if trl:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        if trl:
            U[i] = [-x for x in U[i]]
            for r in Ui:
                r[i] = -r[i]

    def col_add(j, i, c):
        # C_j += c C_i
        for r in A:
            r[j] += c * r[i]
        if trc:
            for r in V:
                r[j] += c * r[i]
            Vi[i] = [x - c * y for x, y in zip(Vi[i], Vi[j])]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if trc:
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    q = v // piv
                    if q:
                        row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            if dirty:
                k = min((i for i in range(t + 1, m) if A[i][t]), key=lambda i: (abs(A[i][t]), i))
                row_swap(t, k)
                continue
            for j in range(t + 1, n):
                v = A[t][j]
                if v:
                    q = v // piv
                    if q:
                        col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                k = min((j for j in range(t + 1, n) if A[t][j]), key=lambda j: (abs(A[t][j]), j))
                col_swap(t, k)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    return A, U, V, Ui, Vi
