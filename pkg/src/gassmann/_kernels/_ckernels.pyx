# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Integer kernels run on int64 with explicit overflow detection; on overflow
they raise ``OverflowError`` and the caller re-runs the Python version on
arbitrary-precision integers.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef extern from *:
    """
    static inline int gt_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int gt_add_ovf(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int gt_mul_ovf(i64 a, i64 b, i64 *r) nogil
    int gt_add_ovf(i64 a, i64 b, i64 *r) nogil

cdef i64 LIMIT = (<i64>1) << 62


cdef inline i64 modp(i64 a, i64 p) nogil:
    cdef i64 r = a % p
    if r < 0:
        r += p
    return r


cdef inline i64 mulmod(i64 a, i64 b, i64 p, double pinv) nogil:
    # a, b in [0, p) with p < 2^31; quotient estimated in floating point
    cdef i64 t = a * b
    cdef i64 r = t - (<i64>(<double>t * pinv)) * p
    while r < 0:
        r += p
    while r >= p:
        r -= p
    return r


cdef inline i64 submul(i64 x, i64 u, i64 y, i64 p, double pinv) nogil:
    cdef i64 r = x - mulmod(u, y, p, pinv)
    return r + p if r < 0 else r


cdef inline i64 addmul(i64 x, i64 u, i64 y, i64 p, double pinv) nogil:
    cdef i64 r = x + mulmod(u, y, p, pinv)
    return r - p if r >= p else r


cdef i64 inv_mod(i64 a, i64 p):
    return pow(int(a), -1, int(p))


def det_mod_p(a, i64 p):
    cdef i64[:, ::1] h = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef double pinv = 1.0 / <double>p
    cdef Py_ssize_t n = h.shape[0], c, r, i, j
    cdef i64 det = 1, inv, f, tmp
    for c in range(n):
        r = -1
        for i in range(c, n):
            if h[i, c] != 0:
                r = i
                break
        if r < 0:
            return 0
        if r != c:
            for j in range(n):
                tmp = h[c, j]; h[c, j] = h[r, j]; h[r, j] = tmp
            det = modp(-det, p)
        det = det * h[c, c] % p
        inv = inv_mod(h[c, c], p)
        for i in range(c + 1, n):
            if h[i, c] == 0:
                continue
            f = h[i, c] * inv % p
            for j in range(c, n):
                h[i, j] = submul(h[i, j], f, h[c, j], p, pinv)
    return int(det % p)


def rank_mod_p(a, i64 p):
    cdef i64[:, ::1] h = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef double pinv = 1.0 / <double>p
    cdef Py_ssize_t m = h.shape[0], n = h.shape[1], c, r, i, j, rank = 0
    cdef i64 inv, f, tmp
    for c in range(n):
        if rank == m:
            break
        r = -1
        for i in range(rank, m):
            if h[i, c] != 0:
                r = i
                break
        if r < 0:
            continue
        if r != rank:
            for j in range(n):
                tmp = h[rank, j]; h[rank, j] = h[r, j]; h[r, j] = tmp
        inv = inv_mod(h[rank, c], p)
        for i in range(rank + 1, m):
            if h[i, c] == 0:
                continue
            f = h[i, c] * inv % p
            for j in range(c, n):
                h[i, j] = submul(h[i, j], f, h[rank, j], p, pinv)
        rank += 1
    return int(rank)


def charpoly_mod_p(a, i64 p):
    cdef i64[:, ::1] h = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef double pinv = 1.0 / <double>p
    cdef Py_ssize_t n = h.shape[0], m, col, i, j, k
    cdef i64 inv, u, tmp, t, c
    cdef i64[::1] mult = np.zeros(max(n, 1), dtype=np.int64)
    for m in range(1, n - 1):
        col = m - 1
        k = -1
        for i in range(m, n):
            if h[i, col] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != m:
            for j in range(n):
                tmp = h[m, j]; h[m, j] = h[k, j]; h[k, j] = tmp
            for j in range(n):
                tmp = h[j, m]; h[j, m] = h[j, k]; h[j, k] = tmp
        inv = inv_mod(h[m, col], p)
        # all multipliers first so the column pass can walk rows contiguously
        for i in range(m + 1, n):
            mult[i] = mulmod(h[i, col], inv, p, pinv)
            if mult[i]:
                for j in range(n):
                    h[i, j] = submul(h[i, j], mult[i], h[m, j], p, pinv)
        for j in range(n):
            t = h[j, m]
            for i in range(m + 1, n):
                if mult[i]:
                    t = addmul(t, mult[i], h[j, i], p, pinv)
            h[j, m] = t
    polys_np = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef i64[:, ::1] polys = polys_np
    polys[0, 0] = 1
    for m in range(1, n + 1):
        for j in range(1, n + 1):
            polys[m, j] = polys[m - 1, j - 1]
        for j in range(n + 1):
            polys[m, j] = submul(polys[m, j], h[m - 1, m - 1], polys[m - 1, j], p, pinv)
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * h[i, i - 1] % p
            if t == 0:
                break
            c = t * h[i - 1, m - 1] % p
            if c:
                for j in range(n + 1):
                    polys[m, j] = submul(polys[m, j], c, polys[i - 1, j], p, pinv)
    return polys_np[n].copy()


cdef inline i64 axpy(i64 x, i64 c, i64 y) except? -1:
    # x + c*y, refusing to leave the safe range
    cdef i64 prod, s
    if gt_mul_ovf(c, y, &prod) or gt_add_ovf(x, prod, &s) or s >= LIMIT or s <= -LIMIT:
        raise OverflowError("int64 overflow in Smith form")
    return s


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 iabs(i64 a) nogil:
    return -a if a < 0 else a


cdef class _SNF:
    cdef i64[:, ::1] A, U, V, Ui, Vi
    cdef Py_ssize_t m, n
    cdef bint trl, trc  # row-side (U) and column-side (V) transforms

    cdef void row_add(self, Py_ssize_t i, Py_ssize_t j, i64 c) except *:
        cdef Py_ssize_t k
        for k in range(self.n):
            self.A[i, k] = axpy(self.A[i, k], c, self.A[j, k])
        if self.trl:
            for k in range(self.m):
                self.U[i, k] = axpy(self.U[i, k], c, self.U[j, k])
            for k in range(self.m):
                self.Ui[k, j] = axpy(self.Ui[k, j], -c, self.Ui[k, i])

    cdef void row_swap(self, Py_ssize_t i, Py_ssize_t j):
        cdef Py_ssize_t k
        cdef i64 tmp
        for k in range(self.n):
            tmp = self.A[i, k]; self.A[i, k] = self.A[j, k]; self.A[j, k] = tmp
        if self.trl:
            for k in range(self.m):
                tmp = self.U[i, k]; self.U[i, k] = self.U[j, k]; self.U[j, k] = tmp
            for k in range(self.m):
                tmp = self.Ui[k, i]; self.Ui[k, i] = self.Ui[k, j]; self.Ui[k, j] = tmp

    cdef void row_neg(self, Py_ssize_t i):
        cdef Py_ssize_t k
        for k in range(self.n):
            self.A[i, k] = -self.A[i, k]
        if self.trl:
            for k in range(self.m):
                self.U[i, k] = -self.U[i, k]
            for k in range(self.m):
                self.Ui[k, i] = -self.Ui[k, i]

    cdef void col_add(self, Py_ssize_t j, Py_ssize_t i, i64 c) except *:
        cdef Py_ssize_t k
        for k in range(self.m):
            self.A[k, j] = axpy(self.A[k, j], c, self.A[k, i])
        if self.trc:
            for k in range(self.n):
                self.V[k, j] = axpy(self.V[k, j], c, self.V[k, i])
            for k in range(self.n):
                self.Vi[i, k] = axpy(self.Vi[i, k], -c, self.Vi[j, k])

    cdef void col_swap(self, Py_ssize_t i, Py_ssize_t j):
        cdef Py_ssize_t k
        cdef i64 tmp
        for k in range(self.m):
            tmp = self.A[k, i]; self.A[k, i] = self.A[k, j]; self.A[k, j] = tmp
        if self.trc:
            for k in range(self.n):
                tmp = self.V[k, i]; self.V[k, i] = self.V[k, j]; self.V[k, j] = tmp
            for k in range(self.n):
                tmp = self.Vi[i, k]; self.Vi[i, k] = self.Vi[j, k]; self.Vi[j, k] = tmp

    cdef void run(self) except *:
        cdef Py_ssize_t t = 0, i, j, bi, bj, k, bad
        cdef i64 best, v, piv, q
        cdef bint dirty, found
        cdef Py_ssize_t lim = self.m if self.m < self.n else self.n
        while t < lim:
            best = 0
            bi = -1
            bj = -1
            for i in range(t, self.m):
                for j in range(t, self.n):
                    v = iabs(self.A[i, j])
                    if v and (bi < 0 or v < best):
                        best = v; bi = i; bj = j
                        if best == 1:
                            break
                if bi >= 0 and best == 1:
                    break
            if bi < 0:
                break
            if bi != t:
                self.row_swap(t, bi)
            if bj != t:
                self.col_swap(t, bj)
            while True:
                piv = self.A[t, t]
                dirty = False
                for i in range(t + 1, self.m):
                    v = self.A[i, t]
                    if v:
                        q = floordiv(v, piv)
                        if q:
                            self.row_add(i, t, -q)
                        if self.A[i, t]:
                            dirty = True
                if dirty:
                    k = -1
                    for i in range(t + 1, self.m):
                        v = iabs(self.A[i, t])
                        if v and (k < 0 or v < best):
                            best = v; k = i
                    self.row_swap(t, k)
                    continue
                for j in range(t + 1, self.n):
                    v = self.A[t, j]
                    if v:
                        q = floordiv(v, piv)
                        if q:
                            self.col_add(j, t, -q)
                        if self.A[t, j]:
                            dirty = True
                if dirty:
                    k = -1
                    for j in range(t + 1, self.n):
                        v = iabs(self.A[t, j])
                        if v and (k < 0 or v < best):
                            best = v; k = j
                    self.col_swap(t, k)
                    continue
                bad = -1
                for i in range(t + 1, self.m):
                    for j in range(t + 1, self.n):
                        if self.A[i, j] % piv:
                            bad = i
                            break
                    if bad >= 0:
                        break
                if bad < 0:
                    break
                self.row_add(t, bad, 1)
            if self.A[t, t] < 0:
                self.row_neg(t)
            t += 1


def snf(a, transforms=True):
    # transforms: True, False, "left" (U only) or "right" (V only)
    arr = np.asarray(a, dtype=object)
    m, n = arr.shape
    if m and n and max(abs(int(x)) for x in arr.flat) >= LIMIT:
        raise OverflowError("entries too large for int64 kernel")
    cdef _SNF s = _SNF()
    A = np.array(arr, dtype=np.int64).reshape(m, n)
    s.A = A
    s.m = m
    s.n = n
    s.trl = transforms is True or transforms == "left"
    s.trc = transforms is True or transforms == "right"
    empty = np.zeros((1, 1), dtype=np.int64)
    U = np.eye(m, dtype=np.int64) if s.trl else empty
    Ui = np.eye(m, dtype=np.int64) if s.trl else empty
    V = np.eye(n, dtype=np.int64) if s.trc else empty
    Vi = np.eye(n, dtype=np.int64) if s.trc else empty
    s.U = U; s.Ui = Ui; s.V = V; s.Vi = Vi
    s.run()
    return (A, U if s.trl else None, V if s.trc else None, Ui if s.trl else None, Vi if s.trc else None)
