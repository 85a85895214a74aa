"""Exact rational and integer linear algebra on numpy object arrays.

Nothing in here touches floating point.  Dense matrices are numpy arrays with
``dtype=object`` holding Python ``int`` or ``fractions.Fraction`` entries.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm

import numpy as np

from . import _kernels


def obj(a) -> np.ndarray:
    """Copy ``a`` into an object array of Python ints/Fractions."""
    arr = np.asarray(a)
    out = np.empty(arr.shape, dtype=object)
    flat = out.reshape(-1)
    if arr.dtype.kind in "iub":
        flat[:] = [int(x) for x in arr.reshape(-1).tolist()]
        return out
    # exact type checks first: isinstance against Fraction goes through the ABC machinery
    flat[:] = [x if type(x) is int or type(x) is Fraction or isinstance(x, Fraction) else int(x)
               for x in arr.reshape(-1).tolist()]
    return out


def frac(a) -> np.ndarray:
    arr = np.asarray(a)
    out = np.empty(arr.shape, dtype=object)
    flat = out.reshape(-1)
    for k, x in enumerate(arr.reshape(-1).tolist()):
        flat[k] = Fraction(x)
    return out


def normalize(a) -> np.ndarray:
    """Demote integral Fractions to ints so integer kernels accept the result."""
    out = np.empty(np.shape(a), dtype=object)
    src = np.asarray(a, dtype=object).reshape(-1)
    flat = out.reshape(-1)
    flat[:] = [x.numerator if type(x) is Fraction and x.denominator == 1 else x for x in src.tolist()]
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def is_zero(a) -> bool:
    return all(x == 0 for x in np.asarray(a, dtype=object).reshape(-1))


def _denominator(x) -> int:
    return 1 if isinstance(x, (int, np.integer)) else Fraction(x).denominator


def denominator_lcm(a) -> int:
    return reduce(lcm, map(_denominator, np.asarray(a, dtype=object).reshape(-1)), 1)


def content(vec) -> Fraction:
    """Positive rational c with vec / c primitive integral (1 for the zero vector)."""
    vals = [Fraction(x) for x in vec]
    d = reduce(lcm, (v.denominator for v in vals), 1)
    g = reduce(gcd, (int(v * d) for v in vals), 0)
    return Fraction(g, d) if g else Fraction(1)


def primitive(vec) -> list[int]:
    c = content(vec)
    return [int(Fraction(x) / c) for x in vec]


def det_bareiss(a) -> int:
    """Fraction-free Gaussian elimination determinant of an integer matrix."""
    m = [[int(x) for x in row] for row in np.asarray(a, dtype=object).tolist()]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * m[n - 1][n - 1]


def _prime_stream(limit: int):
    """Primes below ``limit`` in decreasing order."""
    def is_prime(q):
        if q < 2:
            return False
        for s in (2, 3, 5, 7, 11, 13):
            if q % s == 0:
                return q == s
        r = isqrt(q)
        f = 17
        while f <= r:
            if q % f == 0 or q % (f + 2) == 0:
                return False
            f += 6
        return True

    q = limit - 1
    while q > 2:
        if is_prime(q):
            yield q
        q -= 1


def modular_primes(n: int):
    """Primes small enough that the modular kernels stay inside int64.

    Elimination needs p^2 < 2^63; the charpoly column pass accumulates n
    products of a residue and a 16-bit limb, so n p 2^16 < 2^63 as well.
    """
    cap = min(1 << 31, (1 << 47) // max(n, 1))
    return _prime_stream(cap)


def crt_symmetric(residues, moduli) -> int:
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    return x - m if x > m // 2 else x


def _int_matrix(a):
    """Integer matrix and the scalar d with a = int_matrix / d."""
    a = np.asarray(a, dtype=object)
    d = denominator_lcm(a)
    if d == 1:
        return obj(a), 1
    return obj([[int(Fraction(x) * d) for x in row] for row in a.tolist()]).reshape(a.shape), d


def _reduce_mod(a_int, p):
    try:
        return np.asarray(a_int, dtype=np.int64) % p
    except OverflowError:
        pass
    return np.array([[x % p for x in row] for row in a_int.tolist()], dtype=np.int64).reshape(a_int.shape)


def det_modular(a_int) -> int:
    """Determinant by CRT over primes, bounded by Hadamard's inequality."""
    n = a_int.shape[0]
    if n == 0:
        return 1
    rows = a_int.tolist()
    by_rows = by_cols = 1
    for row in rows:
        by_rows *= sum(int(x) * int(x) for x in row)
    for col in zip(*rows):
        by_cols *= sum(int(x) * int(x) for x in col)
    bound2 = min(by_rows, by_cols)
    if bound2 == 0:
        return 0
    target = 2 * isqrt(bound2) + 2
    residues, moduli, prod = [], [], 1
    for p in modular_primes(n):
        residues.append(_kernels.det_mod_p(_reduce_mod(a_int, p), p))
        moduli.append(p)
        prod *= p
        if prod > target:
            break
    return crt_symmetric(residues, moduli)


def det(a):
    """Exact determinant of a rational or integer matrix."""
    a_int, d = _int_matrix(a)
    n = a_int.shape[0]
    dd = det_bareiss(a_int) if n <= 40 else det_modular(a_int)
    r = Fraction(dd, d ** n)
    return r.numerator if r.denominator == 1 else r


def nonzero_det_certificate(a_int, tries: int = 2) -> bool:
    """True if det is provably nonzero from a nonzero residue; False is inconclusive."""
    n = a_int.shape[0]
    for p, _ in zip(modular_primes(n), range(tries)):
        if _kernels.det_mod_p(_reduce_mod(a_int, p), p):
            return True
    return False


def rank_exact(a) -> int:
    a_int, _ = _int_matrix(a)
    if 0 in a_int.shape:
        return 0
    return len(rref(a_int)[1])


def rref(a):
    """Reduced row echelon form over Q; returns (R, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in np.asarray(a, dtype=object).tolist()]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    if rows and cols:
        out[:, :] = m
    return out, pivots


def inverse(a) -> np.ndarray:
    """Exact inverse over Q (raises ZeroDivisionError if singular)."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    aug = np.concatenate([frac(a), frac(identity(n))], axis=1)
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return normalize(r[:, n:])


_I64_SAFE = (1 << 63) - 1
_F64_EXACT = 1 << 53


def _as_int64(a):
    try:
        a64 = a.astype(np.int64)
    except (OverflowError, TypeError, ValueError):
        return None
    # astype truncates Fractions silently; only accept exact round trips
    return a64 if bool((a64.astype(object) == a).all()) else None


def dot(a, b) -> np.ndarray:
    """Exact product of integer object arrays.

    Uses a float64 BLAS product when every partial sum stays below 2^53, int64
    when it stays below 2^63, and Python ints otherwise.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    a64, b64 = _as_int64(a), _as_int64(b)
    if a64 is None or b64 is None or a.size == 0 or b.size == 0:
        return a.dot(b)
    bound = int(np.abs(a64).max()) * int(np.abs(b64).max()) * max(a.shape[-1], 1)
    if bound < _F64_EXACT:
        return obj(np.rint(a64.astype(np.float64) @ b64.astype(np.float64)).astype(np.int64))
    if bound < _I64_SAFE:
        return obj(a64 @ b64)
    return a.dot(b)


def matmul(a, b) -> np.ndarray:
    return normalize(np.asarray(a, dtype=object).dot(np.asarray(b, dtype=object)))


def sparse_nullspace(equations, ncols: int) -> list[list[Fraction]]:
    """Basis of {x : eq . x = 0 for every eq} over Q.

    ``equations`` is an iterable of dicts ``{column: coefficient}``.  The
    basis is the canonical one attached to the reduced echelon form (one
    vector per free column, free coordinate equal to one).
    """
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    # which pivot rows mention a given non-pivot column
    users: dict[int, set[int]] = {}
    for eq in equations:
        row = {c: Fraction(v) for c, v in eq.items() if v}
        for c in [c for c in row if c in pivot_rows]:
            f = row.get(c)
            if not f:
                continue
            for k, v in pivot_rows[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        pc = min(row)
        pv = row[pc]
        row = {k: v / pv for k, v in row.items()}
        for other in list(users.get(pc, ())):
            orow = pivot_rows[other]
            f = orow.pop(pc)
            for k, v in row.items():
                if k == pc:
                    continue
                nv = orow.get(k, 0) - f * v
                if nv:
                    if k not in orow:
                        users.setdefault(k, set()).add(other)
                    orow[k] = nv
                else:
                    if k in orow:
                        del orow[k]
                        users[k].discard(other)
        users.pop(pc, None)
        pivot_rows[pc] = row
        for k in row:
            if k != pc:
                users.setdefault(k, set()).add(pc)
    basis = []
    for f in range(ncols):
        if f in pivot_rows:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p in users.get(f, ()):
            v[p] = -pivot_rows[p][f]
        basis.append(v)
    return basis


def charpoly_int(a_int) -> list[int]:
    """Characteristic polynomial det(xI - A) of an integer matrix.

    Coefficients (constant term first) are recovered by CRT from Hessenberg
    reductions modulo primes.  The coefficient of x^k is a signed sum of
    principal minors of size n - k; Hadamard's inequality on each minor gives
    sum_k |c_k| <= prod_i (1 + |row_i|_2).
    """
    a_int = np.asarray(a_int, dtype=object)
    n = a_int.shape[0]
    if n == 0:
        return [1]
    target = 2
    for row in a_int.tolist():
        target *= 2 + isqrt(sum(int(x) * int(x) for x in row))
    residues, moduli, prod = [], [], 1
    for p in modular_primes(n):
        residues.append(_kernels.charpoly_mod_p(_reduce_mod(a_int, p), p))
        moduli.append(p)
        prod *= p
        if prod > target:
            break
    return [crt_symmetric([res[k] for res in residues], moduli) for k in range(n + 1)]


def charpoly(a) -> list:
    """Exact characteristic polynomial of a rational matrix, constant term first."""
    a_int, d = _int_matrix(a)
    n = a_int.shape[0]
    coeffs = charpoly_int(a_int)
    # det(xI - M/d) = d^-n det((dx) I - M)
    out = []
    for k, c in enumerate(coeffs):
        v = Fraction(c, d ** (n - k))
        out.append(v.numerator if v.denominator == 1 else v)
    return out

