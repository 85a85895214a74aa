"""Combinatorial Laplacians on quotients of free G-complexes and exact
spectral comparison through characteristic polynomials."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import exact
from .complex import GComplex, QuotientComplex, exact_sparse_product, quotient, sparse_equal, transplant_chains
from .errors import SizeBound
from .groups import Subgroup

CAYLEY_HAMILTON_MAX = 24
DENSE_CHARPOLY_MAX = 2000


@dataclass
class LaplacianOperator:
    matrix: sp.csr_array
    q: int

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        return exact.obj(self.matrix.toarray())

    def is_symmetric(self) -> bool:
        return sparse_equal(self.matrix, self.matrix.T)


def _upstairs_laplacian(X: GComplex, q: int) -> sp.csr_array:
    L = sp.csr_array((X.count(q), X.count(q)), dtype=np.int64)
    if q + 1 <= X.dim:
        d = X.boundary(q + 1)
        L = L + exact_sparse_product(d, d.T)
    if q > 0:
        d = X.boundary(q)
        L = L + exact_sparse_product(d.T, d)
    return sp.csr_array(L)


def _quotient_chain_laplacian(C: QuotientComplex, q: int) -> sp.csr_array:
    n = C.count(q)
    L = sp.csr_array((n, n), dtype=np.int64)
    if q + 1 <= C.dim:
        d = C.boundary(q + 1)
        L = L + exact_sparse_product(d, d.T)
    if q > 0:
        d = C.boundary(q)
        L = L + exact_sparse_product(d.T, d)
    return sp.csr_array(L)


def invariant_restriction(X: GComplex, C: QuotientComplex, q: int) -> sp.csr_array:
    """Upstairs Laplacian on Gamma-invariant cochains, orbit-indicator basis.

    The indicator of an orbit carries the sign with which each simplex
    represents it, so an invariant cochain is determined by its values on the
    orbit representatives.
    """
    L = _upstairs_laplacian(X, q)
    n = X.count(q)
    S = sp.csr_array((C.orbit_sign[q], (np.arange(n), C.orbit_of[q])), shape=(n, C.count(q)), dtype=np.int64)
    return exact_sparse_product(L[C.reps[q]], S)


def quotient_laplacian(X: GComplex, H: Subgroup, q: int, C: QuotientComplex | None = None) -> LaplacianOperator:
    if C is None:
        C = quotient(X, H)
    restricted = invariant_restriction(X, C, q)
    downstairs = _quotient_chain_laplacian(C, q)
    if not sparse_equal(restricted, downstairs):
        raise ArithmeticError("restricted Laplacian differs from the quotient Laplacian")
    return LaplacianOperator(restricted, q)


@dataclass(frozen=True)
class CharPoly:
    coefficients: tuple  # constant term first

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def psd_sign_pattern(self) -> bool:
        # real-rooted with nonnegative roots <=> coefficients alternate in sign
        n = self.degree
        return all(((-1) ** (n - k)) * c >= 0 for k, c in enumerate(self.coefficients))

    def kernel_dimension(self) -> int:
        """Multiplicity of the root 0 (geometric = algebraic for symmetric matrices)."""
        k = 0
        while self.coefficients[k] == 0:
            k += 1
        return k

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                coef = ""
            else:
                coef = str(abs(c)) + ("*" if mono else "")
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + mono))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in terms[1:]])


def _cayley_hamilton_zero(a: np.ndarray, coeffs) -> bool:
    n = a.shape[0]
    acc = exact.zeros((n, n))
    for c in reversed(coeffs):
        acc = acc.dot(a) + c * exact.identity(n)
    return exact.is_zero(acc)


def char_poly(L, max_size: int = DENSE_CHARPOLY_MAX) -> CharPoly:
    n = L.size if isinstance(L, LaplacianOperator) else np.shape(L)[0]
    if n > max_size:
        raise SizeBound(f"characteristic polynomial of a {n}x{n} matrix exceeds the size bound {max_size}")
    if isinstance(L, LaplacianOperator):
        a = L.dense()
    elif sp.issparse(L):
        a = exact.obj(L.toarray())
    else:
        a = exact.obj(L)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("characteristic polynomial of a non-square matrix")
    coeffs = exact.charpoly(a)
    if a.shape[0] <= CAYLEY_HAMILTON_MAX and not _cayley_hamilton_zero(a, coeffs):
        raise ArithmeticError("Cayley-Hamilton check failed")
    return CharPoly(tuple(coeffs))


@dataclass
class SpectralCertificate:
    q: int
    poly1: CharPoly
    poly2: CharPoly
    residual_zero: bool | None  # None when no intertwiner was supplied
    first_nonzero: tuple | None  # (row, col, value) of the first nonzero residual entry

    @property
    def isospectral(self) -> bool:
        return self.poly1 == self.poly2

    @property
    def consistent(self) -> bool:
        # an invertible intertwiner forces equal spectra
        return self.isospectral or not self.residual_zero

    def __bool__(self):
        return self.isospectral and self.residual_zero is not False


def intertwining_residual(T: sp.csr_array, L1: LaplacianOperator, L2: LaplacianOperator) -> sp.csr_array:
    """tau^# L2 - L1 tau^#, where tau^# on invariant cochains is the transpose
    of the chain transplantation."""
    Tt = sp.csr_array(T.T)
    R = exact_sparse_product(Tt, L2.matrix) - exact_sparse_product(L1.matrix, Tt)
    R = sp.csr_array(R)
    R.eliminate_zeros()
    return R


def certify_isospectral(X: GComplex, H1: Subgroup, H2: Subgroup, pair, q: int,
                        Q1: QuotientComplex | None = None, Q2: QuotientComplex | None = None,
                        max_size: int = DENSE_CHARPOLY_MAX) -> SpectralCertificate:
    Q1 = Q1 if Q1 is not None else quotient(X, H1)
    Q2 = Q2 if Q2 is not None else quotient(X, H2)
    L1 = quotient_laplacian(X, H1, q, Q1)
    L2 = quotient_laplacian(X, H2, q, Q2)
    first = None
    if pair is None:
        # nothing to intertwine with; compare the polynomials only
        return SpectralCertificate(q, char_poly(L1, max_size), char_poly(L2, max_size), None, None)
    T = transplant_chains(pair, X, q, Q1, Q2)
    R = intertwining_residual(T, L1, L2)
    if R.nnz:
        coo = R.tocoo()
        k = np.lexsort((coo.col, coo.row))[0]
        first = (int(coo.row[k]), int(coo.col[k]), int(coo.data[k]))
    cert = SpectralCertificate(q, char_poly(L1, max_size), char_poly(L2, max_size), R.nnz == 0, first)
    if not cert.consistent:
        raise ArithmeticError("zero intertwining residual but different characteristic polynomials")
    return cert
