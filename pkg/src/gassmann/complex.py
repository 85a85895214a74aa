"""Finite simplicial complexes with simplicial G-actions, their quotients,
integral homology, and transplantation of chains and homology classes.

Simplices are stored as sorted vertex tuples; the orientation of a simplex
is the order of its vertices under the global vertex order (vertex ordinal).
G acts on the left on vertices, ``rho[g][v] = g.v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np
import scipy.sparse as sp

from . import exact
from .errors import InputError, NotFree, SizeBound
from .groups import FiniteGroup, Subgroup
from .snf import invariant_factors, smith_with_inverses

DEFAULT_SIMPLEX_BUDGET = 10 ** 6
_INT64_SAFE = 1 << 62


def _keys(simps: np.ndarray, base: int) -> np.ndarray:
    k = np.zeros(len(simps), dtype=np.int64)
    for c in range(simps.shape[1]):
        k = k * base + simps[:, c]
    return k


def _sorted_with_parity(images: np.ndarray):
    srt = np.sort(images, axis=1)
    inv = np.zeros(len(images), dtype=np.int64)
    w = images.shape[1]
    for a in range(w):
        for b in range(a + 1, w):
            inv += images[:, a] > images[:, b]
    return srt, np.where(inv % 2 == 0, 1, -1)


class GComplex:
    def __init__(self, group: FiniteGroup, simplices: dict, vertex_action, budget=DEFAULT_SIMPLEX_BUDGET,
                 labels=None):
        """``vertex_action`` is either one vertex permutation per generator of
        ``group`` (images ``g.v``) or a full ``(|G|, nverts)`` array."""
        self.group = group
        self.budget = budget
        self.labels = labels
        simplices = {q: s for q, s in simplices.items() if len(s)}
        if not simplices:
            raise InputError("empty complex")
        self.dim = max(simplices)
        self.simplices: list[np.ndarray] = []
        for q in range(self.dim + 1):
            arr = np.array(sorted(tuple(sorted(map(int, s))) for s in simplices.get(q, ())), dtype=np.int64)
            arr = arr.reshape(-1, q + 1)
            if len(arr) > budget:
                raise SizeBound(f"{len(arr)} simplices in dimension {q} exceeds budget {budget}")
            self.simplices.append(arr)
        self.nverts = int(self.simplices[0].max()) + 1 if len(self.simplices[0]) else 0
        if len(self.simplices[0]) != self.nverts or not np.array_equal(self.simplices[0][:, 0], np.arange(self.nverts)):
            raise InputError("vertices must be 0..n-1")
        if self.nverts ** (self.dim + 1) >= _INT64_SAFE:
            raise SizeBound("vertex count too large for simplex keys")
        self._keys = [_keys(s, self.nverts) for s in self.simplices]
        for q in range(1, self.dim + 1):
            for i in range(q + 1):
                face = np.delete(self.simplices[q], i, axis=1)
                if not np.all(np.isin(_keys(face, self.nverts), self._keys[q - 1])):
                    raise InputError(f"complex is not closed under faces in dimension {q}")
        self.rho = self._vertex_action(vertex_action)
        for q in range(self.dim + 1):
            for g in group.generator_ordinals():
                img = np.sort(self.rho[g][self.simplices[q]], axis=1)
                if not np.all(np.isin(_keys(img, self.nverts), self._keys[q])):
                    raise InputError(f"action does not map {q}-simplices to simplices")
        check_free(self, range(group.order))

    def _vertex_action(self, va) -> np.ndarray:
        G = self.group
        va = np.asarray([getattr(p, "images", p) for p in va], dtype=np.int64) if not isinstance(va, np.ndarray) else va
        if va.shape == (G.order, self.nverts):
            return va
        if va.shape != (len(G.generators), self.nverts):
            raise InputError("need one vertex permutation per group generator")
        rho = np.empty((G.order, self.nverts), dtype=np.int64)
        rho[0] = np.arange(self.nverts)
        for k in range(1, G.order):
            p, j = G.factor[k]
            rho[k] = rho[p][va[j]]
        gens = G.generator_ordinals()
        for k in range(G.order):
            for j, g in enumerate(gens):
                if not np.array_equal(rho[G.mul(k, g)], rho[k][va[j]]):
                    raise InputError("vertex permutations do not define a G-action")
        return rho

    def count(self, q: int) -> int:
        return len(self.simplices[q]) if 0 <= q <= self.dim else 0

    def index(self, q: int, simps) -> np.ndarray:
        simps = np.asarray(simps, dtype=np.int64).reshape(-1, q + 1)
        keys = _keys(np.sort(simps, axis=1), self.nverts)
        pos = np.searchsorted(self._keys[q], keys)
        if np.any(pos >= len(self._keys[q])) or np.any(self._keys[q][np.minimum(pos, len(self._keys[q]) - 1)] != keys):
            raise InputError("not a simplex of the complex")
        return pos

    def act(self, g: int, q: int):
        """Indices and orientation signs of ``g.s`` for every q-simplex s."""
        images = self.rho[g][self.simplices[q]]
        srt, sign = _sorted_with_parity(images)
        pos = np.searchsorted(self._keys[q], _keys(srt, self.nverts))
        return pos, sign

    def boundary(self, q: int) -> sp.csr_array:
        """Integer boundary matrix C_q -> C_{q-1} (shape count(q-1) x count(q))."""
        n = self.count(q)
        if q <= 0 or q > self.dim:
            return sp.csr_array((self.count(q - 1) if q > 0 else 0, n), dtype=np.int64)
        rows, cols, vals = [], [], []
        for i in range(q + 1):
            face = np.delete(self.simplices[q], i, axis=1)
            rows.append(np.searchsorted(self._keys[q - 1], _keys(face, self.nverts)))
            cols.append(np.arange(n))
            vals.append(np.full(n, -1 if i % 2 else 1))
        return sp.csr_array((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                            shape=(self.count(q - 1), n), dtype=np.int64)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.count(q) for q in range(self.dim + 1))

    def describe(self, q: int, i: int) -> str:
        verts = self.simplices[q][i]
        if self.labels:
            return "(" + ", ".join(self.labels(v) for v in verts) + ")"
        return "(" + " ".join(map(str, verts)) + ")"


def check_free(X: GComplex, elements):
    for q in range(X.dim + 1):
        idx = np.arange(X.count(q))
        for g in elements:
            if g == 0:
                continue
            pos, _ = X.act(g, q)
            fixed = np.nonzero(pos == idx)[0]
            if len(fixed):
                s = X.describe(q, int(fixed[0]))
                raise NotFree(f"element {X.group.element(g)} fixes the {q}-simplex {s}",
                              simplex=tuple(int(v) for v in X.simplices[q][fixed[0]]), element=g)


def join_complex(G: FiniteGroup, k: int, budget: int = DEFAULT_SIMPLEX_BUDGET) -> GComplex:
    """k-fold join of G with itself; vertex (copy i, element x) has ordinal i|G| + x.

    A simplex is a set of vertices in distinct copies; G acts diagonally by
    left translation, g.(i, x) = (i, g x), which is free.
    """
    if k < 1:
        raise InputError("need at least one copy")
    N = G.order
    for q in range(k):
        if N ** (q + 1) * comb(k, q + 1) > budget:
            raise SizeBound(f"join of {k} copies of a group of order {N} exceeds budget {budget}")
    simplices = {}
    import itertools
    for q in range(k):
        blocks = []
        for copies in itertools.combinations(range(k), q + 1):
            grids = np.meshgrid(*[np.arange(N) + c * N for c in copies], indexing="ij")
            blocks.append(np.stack([g.reshape(-1) for g in grids], axis=1))
        simplices[q] = np.concatenate(blocks)
    t = G.table
    if t is None:
        left = np.array([[G.mul(g, x) for x in range(N)] for g in range(N)], dtype=np.int64)
    else:
        left = t
    rho = np.concatenate([left + c * N for c in range(k)], axis=1)

    def label(v):
        return f"{v // N}:{v % N}"

    return GComplex(G, simplices, rho, budget=budget, labels=label)


@dataclass
class QuotientComplex:
    """Gamma\\X with orbit bases.  ``orbit_of[q][s]`` and ``orbit_sign[q][s]``
    record that the q-simplex s equals ``orbit_sign * [orbit]`` in the
    coinvariants; ``reps[q]`` are the lexicographically minimal simplices."""
    complex: GComplex = field(repr=False)
    subgroup: Subgroup = field(repr=False)
    reps: list
    orbit_of: list
    orbit_sign: list

    def count(self, q: int) -> int:
        return len(self.reps[q]) if 0 <= q <= self.complex.dim else 0

    @property
    def dim(self) -> int:
        return self.complex.dim

    @cached_property
    def _boundaries(self):
        X = self.complex
        out = [sp.csr_array((0, self.count(0)), dtype=np.int64)]
        for q in range(1, X.dim + 1):
            n = self.count(q)
            reps = X.simplices[q][self.reps[q]]
            rows, vals = [], []
            for i in range(q + 1):
                face_idx = X.index(q - 1, np.delete(reps, i, axis=1))
                rows.append(self.orbit_of[q - 1][face_idx])
                vals.append((-1 if i % 2 else 1) * self.orbit_sign[q - 1][face_idx])
            out.append(sp.csr_array((np.concatenate(vals), (np.concatenate(rows), np.tile(np.arange(n), q + 1))),
                                    shape=(self.count(q - 1), n), dtype=np.int64))
        return out

    def boundary(self, q: int) -> sp.csr_array:
        if q < 0 or q > self.dim + 1:
            raise InputError(f"no boundary in degree {q}")
        if q == self.dim + 1:
            return sp.csr_array((self.count(q - 1), 0), dtype=np.int64)
        return self._boundaries[q]

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.count(q) for q in range(self.dim + 1))

    def coinvariant_class(self, q: int, chain) -> np.ndarray:
        """Image of an upstairs q-chain in Z[Gamma\\Delta_q]."""
        out = np.zeros(self.count(q), dtype=object)
        for s, c in enumerate(chain):
            if c:
                out[self.orbit_of[q][s]] += c * int(self.orbit_sign[q][s])
        return out


def quotient(X: GComplex, H: Subgroup) -> QuotientComplex:
    check_free(X, H.elements)
    reps, orbit_of, orbit_sign = [], [], []
    for q in range(X.dim + 1):
        n = X.count(q)
        images = [X.act(g, q) for g in H.elements]
        pos = np.stack([p for p, _ in images])
        sgn = np.stack([s for _, s in images])
        best = np.argmin(pos, axis=0)
        rep_of = pos[best, np.arange(n)]
        rep_ids = np.unique(rep_of)
        if len(rep_ids) * H.order != n:
            raise NotFree("orbit sizes are not all equal to the subgroup order")
        reps.append(rep_ids)
        orbit_of.append(np.searchsorted(rep_ids, rep_of))
        orbit_sign.append(sgn[best, np.arange(n)])
    return QuotientComplex(X, H, reps, orbit_of, orbit_sign)


def exact_sparse_product(A, B) -> sp.csr_array:
    """Sparse integer product, refusing if int64 could overflow."""
    A, B = sp.csr_array(A), sp.csr_array(B)
    ma = int(abs(A).max()) if A.nnz else 0
    mb = int(abs(B).max()) if B.nnz else 0
    width = int(np.diff(A.indptr).max()) if A.shape[0] and A.nnz else 0
    if ma * mb * width >= _INT64_SAFE:
        raise OverflowError("sparse product could overflow int64")
    return sp.csr_array(A @ B)


def sparse_equal(A, B) -> bool:
    D = sp.csr_array(A) - sp.csr_array(B)
    D.eliminate_zeros()
    return D.nnz == 0


@dataclass
class HomologyGroup:
    betti: int
    torsion: list[int]
    rank_in: int  # rank of the boundary out of degree q
    rank_out: int  # rank of the boundary into degree q

    def __str__(self):
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(C: QuotientComplex, q: int) -> HomologyGroup:
    n = C.count(q)
    f_q = invariant_factors(C.boundary(q)) if q > 0 else []
    f_up = invariant_factors(C.boundary(q + 1))
    betti = n - len(f_q) - len(f_up)
    return HomologyGroup(betti, [d for d in f_up if d > 1], len(f_q), len(f_up))


def transplant_chains(pair, X: GComplex, q: int, Q1: QuotientComplex, Q2: QuotientComplex) -> sp.csr_array:
    """Matrix of tau_#: C_q(Gamma1\\X) -> C_q(Gamma2\\X) in the orbit bases.

    The Gamma1-orbit with representative s goes to
    sum_j c_j [x_j . s] where tau(Gamma1) = sum_j c_j Gamma2 x_j.
    """
    n1, n2 = Q1.count(q), Q2.count(q)
    rows, cols, vals = [], [], []
    reps = Q1.reps[q]
    for c, x in pair.tau_at_base:
        pos, sgn = X.act(x, q)
        img = pos[reps]
        rows.append(Q2.orbit_of[q][img])
        cols.append(np.arange(n1))
        vals.append(c * sgn[reps] * Q2.orbit_sign[q][img])
    if not rows:
        return sp.csr_array((n2, n1), dtype=np.int64)
    return sp.csr_array((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                        shape=(n2, n1), dtype=np.int64)


class HomologyBasis:
    """Z-bases for H_q(C) mod torsion from two Smith forms.

    With U d_q V = D (rank r), cycles are spanned by the columns of V[:, r:]
    and a cycle z has cycle coordinates (V^-1 z)[r:].  A second Smith form
    U' B V' = D' of the boundaries in cycle coordinates (rank r') splits off
    the free part: coordinates i >= r' of U' (V^-1 z)[r:].
    """

    def __init__(self, C: QuotientComplex, q: int, max_dense: int = 4000):
        n = C.count(q)
        n_up = C.count(q + 1)
        if n > max_dense or n_up > 4 * max_dense:
            raise SizeBound(f"dense homology basis in degree {q} needs {n} x {n_up} matrices")
        if q > 0:
            d = exact.obj(C.boundary(q).toarray())
            D, _, V, _, Vi = smith_with_inverses(d, "right")
            r = sum(1 for i in range(min(D.shape)) if D[i, i])
        else:
            V = Vi = exact.identity(n)
            r = 0
        up = exact.obj(C.boundary(q + 1).toarray()) if q + 1 <= C.dim else exact.zeros((n, 0))
        B = exact.dot(Vi, up)
        if not exact.is_zero(B[:r]):
            raise ArithmeticError("boundary of a boundary is not zero")
        B = B[r:]
        D2, U2, _, U2i, _ = smith_with_inverses(B, "left")
        r2 = sum(1 for i in range(min(D2.shape)) if D2[i, i])
        self.q = q
        self.rank = B.shape[0] - r2
        self.torsion = [int(D2[i, i]) for i in range(r2) if D2[i, i] > 1]
        self._proj = exact.dot(U2[r2:], Vi[r:])
        self.lifts = exact.dot(V[:, r:], U2i[:, r2:]) if self.rank else exact.zeros((n, 0))

    def coordinates(self, z) -> np.ndarray:
        return exact.dot(self._proj, np.asarray(z, dtype=object))


def transplant_homology(pair, X: GComplex, q: int, Q1: QuotientComplex, Q2: QuotientComplex,
                        chain_map=None, bases=None) -> np.ndarray:
    """Induced map H_q(Gamma1\\X)/tors -> H_q(Gamma2\\X)/tors in Smith-adapted bases."""
    T = chain_map if chain_map is not None else transplant_chains(pair, X, q, Q1, Q2)
    if bases is None:
        h1, h2 = homology(Q1, q), homology(Q2, q)
        if h1.betti == 0 or h2.betti == 0:
            return exact.zeros((h2.betti, h1.betti))
        bases = HomologyBasis(Q1, q), HomologyBasis(Q2, q)
    b1, b2 = bases
    if b1.rank == 0 or b2.rank == 0:
        return exact.zeros((b2.rank, b1.rank))
    Tobj = exact.obj(T.toarray()) if sp.issparse(T) else exact.obj(T)
    images = exact.dot(Tobj, b1.lifts)
    return exact.normalize(b2.coordinates(images))


def act_on_chain(X: GComplex, g: int, q: int, v) -> np.ndarray:
    """g.v for an upstairs q-chain (coefficients per simplex)."""
    pos, sgn = X.act(g, q)
    v = np.asarray(v, dtype=object)
    out = np.zeros(len(v), dtype=object)
    out[pos] = sgn.astype(object) * v
    return out


def act_on_cochain(X: GComplex, g: int, q: int, w) -> np.ndarray:
    """w.g for an upstairs q-cochain, (w.g)(s) = w(g.s)."""
    pos, sgn = X.act(g, q)
    w = np.asarray(w, dtype=object)
    return sgn.astype(object) * w[pos]


def invariant_cochain(C: QuotientComplex, q: int, values) -> np.ndarray:
    """Upstairs Gamma-invariant cochain with the given value on each orbit representative."""
    values = np.asarray(values, dtype=object)
    return C.orbit_sign[q].astype(object) * values[C.orbit_of[q]]


def transplant_cochain(pair, X: GComplex, q: int, w) -> np.ndarray:
    """tau^#(w) = sum_j c_j w.x_j on an upstairs Gamma2-invariant cochain."""
    out = np.zeros(X.count(q), dtype=object)
    for c, x in pair.tau_at_base:
        out = out + c * act_on_cochain(X, x, q, w)
    return out


def transplant_chain(pair, X: GComplex, q: int, v) -> np.ndarray:
    """sum_j c_j x_j.v on an upstairs chain; its class in the Gamma2-coinvariants is tau_#[v]."""
    out = np.zeros(X.count(q), dtype=object)
    for c, x in pair.tau_at_base:
        out = out + c * act_on_chain(X, x, q, v)
    return out
