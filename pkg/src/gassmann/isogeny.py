"""Lattice-level isogeny certificates: injectivity and finite cokernel of
integer maps via Smith normal form, plus compatibility with complex
structures on the ambient real vector spaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from . import exact
from .errors import BadComplexStructure, RankMismatch
from .snf import diagonal, invariant_factors, smith_with_inverses


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__


INFINITE = _Infinite()


@dataclass
class IntegerMatrixMap:
    """Integer matrix acting on column vectors, Z^domain -> Z^codomain."""
    entries: np.ndarray
    domain_labels: list | None = None
    codomain_labels: list | None = None

    def __post_init__(self):
        a = exact.normalize(exact.obj(self.entries))
        if a.ndim != 2:
            raise ValueError("need a 2-dimensional matrix")
        if any(not isinstance(x, int) for x in a.reshape(-1)):
            raise ValueError("integer matrix expected")
        self.entries = a

    @property
    def domain_rank(self) -> int:
        return self.entries.shape[1]

    @property
    def codomain_rank(self) -> int:
        return self.entries.shape[0]

    def transpose(self) -> "IntegerMatrixMap":
        """The dual map Hom(codomain, Z) -> Hom(domain, Z) in dual bases."""
        return IntegerMatrixMap(self.entries.T.copy(), self.codomain_labels, self.domain_labels)

    def compose(self, other: "IntegerMatrixMap") -> "IntegerMatrixMap":
        """self after other."""
        return IntegerMatrixMap(self.entries.dot(other.entries), other.domain_labels, self.codomain_labels)


def _as_map(A) -> IntegerMatrixMap:
    return A if isinstance(A, IntegerMatrixMap) else IntegerMatrixMap(A)


def smith_normal_form(A):
    """``(U, D, V)`` with U A V = D, re-verified: the product, integer inverses
    of U and V (so det U, det V = +-1), and the divisibility chain of D."""
    a = _as_map(A).entries
    D, U, V, Ui, Vi = smith_with_inverses(a)
    if not np.array_equal(U.dot(a).dot(V), D):
        raise ArithmeticError("U A V != D")
    for W, Wi in ((U, Ui), (V, Vi)):
        if not np.array_equal(W.dot(Wi), exact.identity(W.shape[0])):
            raise ArithmeticError("transform is not unimodular")
    d = diagonal(D)
    off = D.copy()
    for i in range(len(d)):
        off[i, i] = 0
    if not exact.is_zero(off):
        raise ArithmeticError("D is not diagonal")
    nz = [x for x in d if x]
    if any(x < 0 for x in nz) or any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)) or 0 in d[:len(nz)]:
        raise ArithmeticError("invariant factors out of order")
    return U, D, V


@dataclass
class IsogenyCertificate:
    injective: bool
    cokernel_order: object  # int or INFINITE
    invariant_factors: list
    domain_rank: int
    codomain_rank: int
    commutes_with_J: bool | None = None
    degree: int | None = None  # n of the companion map when known
    notes: list = field(default_factory=list)

    @property
    def finite_cokernel(self) -> bool:
        return self.cokernel_order is not INFINITE

    @property
    def isogeny(self) -> bool:
        ok = self.injective and self.finite_cokernel
        if self.commutes_with_J is not None:
            ok = ok and self.commutes_with_J
        return ok

    def divides_degree_power(self) -> bool | None:
        """Cokernel order divides n^rank when the companion degree n is known."""
        if self.degree is None or not self.finite_cokernel:
            return None
        return self.degree ** self.domain_rank % self.cokernel_order == 0

    def report(self) -> str:
        lines = [
            f"domain rank: {self.domain_rank}",
            f"codomain rank: {self.codomain_rank}",
            f"invariant factors: {' '.join(map(str, self.invariant_factors)) or '(none)'}",
            f"injective: {'yes' if self.injective else 'no'}",
            f"cokernel order: {self.cokernel_order}",
        ]
        if self.degree is not None:
            lines.append(f"companion degree n: {self.degree}")
            div = self.divides_degree_power()
            if div is not None:
                lines.append(f"cokernel order divides n^rank: {'yes' if div else 'no'}")
        if self.commutes_with_J is not None:
            lines.append(f"commutes with complex structures: {'yes' if self.commutes_with_J else 'no'}")
        lines += self.notes
        lines.append(f"ISOGENY: {'yes' if self.isogeny else 'no'}")
        return "\n".join(lines)


def lattice_isogeny_check(A, degree: int | None = None) -> IsogenyCertificate:
    A = _as_map(A)
    m, k = A.codomain_rank, A.domain_rank
    d = invariant_factors(A.entries) if m and k else []
    r = len(d)
    injective = r == k
    if r == m:
        order = prod(d)
        if m == k and m and order != abs(exact.det(A.entries)):
            raise ArithmeticError("cokernel order disagrees with |det|")
    else:
        order = INFINITE
    return IsogenyCertificate(injective, order, d, k, m, degree=degree)


@dataclass
class ComplexTorusData:
    """A lattice Z^{2m} with a rational complex structure J, J^2 = -Id."""
    J: np.ndarray

    def __post_init__(self):
        J = exact.normalize(exact.frac(self.J))
        if J.ndim != 2 or J.shape[0] != J.shape[1]:
            raise BadComplexStructure("complex structure must be square")
        if J.shape[0] % 2:
            raise BadComplexStructure("lattice rank must be even")
        if not np.array_equal(J.dot(J), -exact.identity(J.shape[0])):
            raise BadComplexStructure("J^2 != -Id")
        self.J = J

    @property
    def rank(self) -> int:
        return self.J.shape[0]


def torus_isogeny_check(A, T1: ComplexTorusData, T2: ComplexTorusData, degree: int | None = None) -> IsogenyCertificate:
    A = _as_map(A)
    if A.domain_rank != T1.rank or A.codomain_rank != T2.rank:
        raise RankMismatch(f"map is {A.codomain_rank}x{A.domain_rank} but tori have ranks {T1.rank}, {T2.rank}")
    cert = lattice_isogeny_check(A, degree)
    a = A.entries
    cert.commutes_with_J = bool(np.array_equal(exact.normalize(a.dot(T1.J)), exact.normalize(T2.J.dot(a))))
    return cert


def standard_complex_structure(m: int) -> np.ndarray:
    """Block matrix [[0, -I], [I, 0]] on Z^{2m}."""
    J = exact.zeros((2 * m, 2 * m))
    for i in range(m):
        J[i, m + i] = -1
        J[m + i, i] = 1
    return J


def rational_inverse_exists(A) -> bool:
    a = _as_map(A).entries
    return a.shape[0] == a.shape[1] and exact.det(a) != 0


__all__ = [
    "INFINITE", "IntegerMatrixMap", "IsogenyCertificate", "ComplexTorusData", "smith_normal_form",
    "lattice_isogeny_check", "torus_isogeny_check", "standard_complex_structure", "rational_inverse_exists",
]
