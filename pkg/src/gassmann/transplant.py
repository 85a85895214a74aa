"""Intertwiners of coset modules and transplantation of (co)invariants.

Conventions
-----------
Coset modules ``Z[Gamma\\G]`` use column vectors and the matrices of
``CosetSpace.action_matrix``.  A G-map ``tau: Z[Gamma1\\G] -> Z[Gamma2\\G]`` is an
``index2 x index1`` matrix whose column ``c`` is ``tau(Gamma1 x_c)``, so
equivariance reads ``tau @ M1(g) == M2(g) @ tau``.  Column 0 is
``tau(Gamma1)`` itself.

A right module acts on row vectors, ``w.g = w @ A(g)``; a left module on
column vectors, ``g.v = B(g) @ v``.  In both cases the representing matrices
multiply in the order of the group law.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact
from .equivalence import character_inner_product, permutation_character, representation_equivalent
from .errors import InputError, NotBalanced, NotEquivalent, NotInvariant, SearchExhausted, Singular
from .groups import CosetSpace, FiniteGroup, Subgroup

DEFAULT_SEED = 0
RANDOM_ATTEMPTS = 1000


class GModule:
    def __init__(self, group: FiniteGroup, generator_matrices, side: str = "right", validate: bool = True):
        if side not in ("left", "right"):
            raise InputError("side must be 'left' or 'right'")
        self.group = group
        self.side = side
        mats = [exact.normalize(exact.obj(m)) for m in generator_matrices]
        if len(mats) != len(group.generators):
            raise InputError("need one matrix per group generator")
        if mats:
            self.dim = mats[0].shape[0]
        else:
            raise InputError("the trivial group has no generators; give a dimension via GModule.trivial")
        self.generator_matrices = mats
        if validate:
            self.validate()

    @classmethod
    def trivial(cls, group, dim=1, side="right"):
        return cls(group, [exact.identity(dim) for _ in group.generators], side=side)

    @cached_property
    def matrices(self) -> list[np.ndarray]:
        return [exact.normalize(m) for m in self.group.represent(self.generator_matrices)]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def validate(self):
        """Check that the generator images extend to a homomorphism."""
        G = self.group
        mats = self.matrices
        gens = G.generator_ordinals()
        for k in range(G.order):
            for j, g in enumerate(gens):
                if not np.array_equal(mats[G.mul(k, g)], exact.matmul(mats[k], self.generator_matrices[j])):
                    raise InputError("generator matrices do not define a group action")

    def act(self, vec, g: int) -> np.ndarray:
        v = np.asarray(vec, dtype=object)
        if self.side == "right":
            return exact.normalize(v.dot(self.matrices[g]))
        return exact.normalize(self.matrices[g].dot(v))

    def is_invariant(self, vec, elements) -> bool:
        v = exact.normalize(np.asarray(vec, dtype=object))
        return all(np.array_equal(self.act(v, g), v) for g in elements)


def permutation_module(G: FiniteGroup, C: CosetSpace, side="right") -> GModule:
    """The coset module Z[Gamma\\G] as a right (row) or left (column) G-module.

    For permutation matrices the two conventions share the same matrices:
    ``A(g)[c, c.g] = 1``.
    """
    mats = [C.action_matrix(g).T for g in G.generator_ordinals()]
    return GModule(G, mats, side=side, validate=False)


@dataclass
class TransplantationPair:
    group: FiniteGroup = field(repr=False)
    sub1: Subgroup = field(repr=False)
    sub2: Subgroup = field(repr=False)
    cosets1: CosetSpace = field(repr=False)
    cosets2: CosetSpace = field(repr=False)
    tau: np.ndarray
    sigma: np.ndarray
    n: int

    @property
    def tau_at_base(self) -> list[tuple[int, int]]:
        """Nonzero terms ``(coefficient, representative of Gamma2 x_j)`` of tau(Gamma1)."""
        col = self.tau[:, 0]
        return [(int(col[j]), self.cosets2.reps[j]) for j in range(len(col)) if col[j] != 0]

    @property
    def sigma_at_base(self) -> list[tuple[int, int]]:
        col = self.sigma[:, 0]
        return [(int(col[j]), self.cosets1.reps[j]) for j in range(len(col)) if col[j] != 0]

    def reversed(self) -> "TransplantationPair":
        return TransplantationPair(self.group, self.sub2, self.sub1, self.cosets2, self.cosets1,
                                   self.sigma, self.tau, self.n)

    def equivariance_residual(self, elements=None) -> int:
        """Largest |entry| of tau M1(g) - M2(g) tau over the given elements (all by default)."""
        G = self.group
        elements = range(G.order) if elements is None else elements
        worst = 0
        t = self.tau
        a1, a2 = self.cosets1.action_table, self.cosets2.action_table
        for g in elements:
            # (tau M1(g))[:, c] = tau[:, c.g];  (M2(g) tau)[r.g, :] = tau[r, :]
            lhs = t[:, a1[g]]
            rhs = exact.zeros(t.shape)
            rhs[a2[g], :] = t
            d = lhs - rhs
            worst = max(worst, max((abs(x) for x in d.reshape(-1)), default=0))
        return worst

    def check(self, elements=None) -> bool:
        n1, n2 = len(self.cosets1), len(self.cosets2)
        st = exact.matmul(self.sigma, self.tau)
        ts = exact.matmul(self.tau, self.sigma)
        return (self.equivariance_residual(elements) == 0
                and np.array_equal(st, self.n * exact.identity(n1))
                and np.array_equal(ts, self.n * exact.identity(n2)))


def _stacked_equations(mats1, mats2, n1, n2):
    # unknown T[r, c] sits at r * n1 + c; equation: (T M1 - M2 T)[r, c] = 0
    for M1, M2 in zip(mats1, mats2):
        nz1 = [(b, c, M1[b, c]) for b in range(n1) for c in range(n1) if M1[b, c] != 0]
        nz2 = [(r, a, M2[r, a]) for r in range(n2) for a in range(n2) if M2[r, a] != 0]
        by_c1: dict[int, list] = {}
        for b, c, v in nz1:
            by_c1.setdefault(c, []).append((b, v))
        by_r2: dict[int, list] = {}
        for r, a, v in nz2:
            by_r2.setdefault(r, []).append((a, v))
        for r in range(n2):
            for c in range(n1):
                eq: dict[int, Fraction] = {}
                for b, v in by_c1.get(c, ()):
                    k = r * n1 + b
                    eq[k] = eq.get(k, 0) + v
                for a, v in by_r2.get(r, ()):
                    k = a * n1 + c
                    eq[k] = eq.get(k, 0) - v
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    yield eq


def intertwiner_space(G: FiniteGroup, H1: Subgroup, H2: Subgroup,
                      cosets1: CosetSpace | None = None, cosets2: CosetSpace | None = None) -> list[np.ndarray]:
    """Basis of {T : T M1(g) = M2(g) T for all generators g} by exact nullspace.

    Basis matrices are scaled to primitive integer matrices and sorted by the
    row-major position of their first nonzero entry.
    """
    C1 = cosets1 or CosetSpace(G, H1)
    C2 = cosets2 or CosetSpace(G, H2)
    n1, n2 = len(C1), len(C2)
    gens = G.generator_ordinals()
    mats1 = [C1.action_matrix(g) for g in gens]
    mats2 = [C2.action_matrix(g) for g in gens]
    vecs = exact.sparse_nullspace(_stacked_equations(mats1, mats2, n1, n2), n1 * n2)
    basis = []
    for v in vecs:
        p = exact.primitive(v)
        first = next(i for i, x in enumerate(p) if x)
        if p[first] < 0:
            p = [-x for x in p]
        basis.append((first, exact.obj(np.array(p, dtype=object).reshape(n2, n1))))
    basis.sort(key=lambda t: t[0])
    return [b for _, b in basis]


def expected_intertwiner_dimension(G, H1, H2) -> int:
    return int(character_inner_product(G, permutation_character(G, H1), permutation_character(G, H2)))


def _is_invertible(T) -> bool:
    if T.shape[0] != T.shape[1]:
        return False
    if exact.nonzero_det_certificate(T):
        return True
    return exact.det(T) != 0


def _candidates(basis, seed):
    k = len(basis)
    for b in basis:
        yield b
    for size in (2, 3):
        for idx in itertools.combinations(range(k), size):
            for signs in itertools.product((1, -1), repeat=size):
                yield sum((s * basis[i] for s, i in zip(signs, idx)), exact.zeros(basis[0].shape))
    rng = random.Random(seed)
    for _ in range(RANDOM_ATTEMPTS):
        coeffs = [rng.randint(-10, 10) for _ in range(k)]
        yield sum((c * b for c, b in zip(coeffs, basis)), exact.zeros(basis[0].shape))


def find_invertible_intertwiner(basis, seed: int = DEFAULT_SEED) -> np.ndarray:
    """First invertible matrix in the span of ``basis``.

    Search order: the basis elements, then every +-1 combination of two and
    then three basis elements, then ``RANDOM_ATTEMPTS`` integer combinations
    with coefficients in [-10, 10] drawn from ``random.Random(seed)``.
    """
    if not basis or basis[0].shape[0] != basis[0].shape[1]:
        raise NotEquivalent("the coset modules are not equivalent")
    for T in _candidates(basis, seed):
        if _is_invertible(T):
            return exact.normalize(T)
    raise SearchExhausted("no invertible intertwiner found in the search budget")


def clear_denominators(T, G=None, H1=None, H2=None, cosets1=None, cosets2=None) -> TransplantationPair:
    T = exact.normalize(exact.obj(T))
    if T.shape[0] != T.shape[1] or exact.det(T) == 0:
        raise Singular("intertwiner is singular")
    d1 = exact.denominator_lcm(T)
    Tinv = exact.inverse(T)
    d2 = exact.denominator_lcm(Tinv)
    tau = exact.normalize(d1 * T)
    sigma = exact.normalize(d2 * Tinv)
    return TransplantationPair(G, H1, H2, cosets1, cosets2, tau, sigma, d1 * d2)


def transplantation_pair(G: FiniteGroup, H1: Subgroup, H2: Subgroup, seed: int = DEFAULT_SEED) -> TransplantationPair:
    """Integer G-maps tau, sigma between the coset modules with sigma tau = n Id."""
    if not representation_equivalent(G, H1, H2):
        raise NotEquivalent("subgroups are not representation equivalent")
    C1, C2 = CosetSpace(G, H1), CosetSpace(G, H2)
    basis = intertwiner_space(G, H1, H2, C1, C2)
    T = find_invertible_intertwiner(basis, seed)
    return clear_denominators(T, G, H1, H2, C1, C2)


def transplant_invariants(pair: TransplantationPair, W: GModule, w) -> np.ndarray:
    """tau^#(w) = w . tau(Gamma1) for a Gamma2-invariant row vector w."""
    if W.side != "right":
        raise InputError("invariants are transplanted in right modules")
    w = exact.normalize(np.asarray(w, dtype=object))
    if not W.is_invariant(w, pair.sub2.elements):
        raise NotInvariant("vector is not invariant under the second subgroup")
    out = exact.zeros(W.dim)
    for c, x in pair.tau_at_base:
        out = out + c * W.act(w, x)
    out = exact.normalize(out)
    if not W.is_invariant(out, pair.sub1.elements):
        raise NotInvariant("transplanted vector is not invariant; tau is not a G-map")
    return out


class Coinvariants:
    """V_Gamma = V / span{gamma v - v}, with canonical representatives.

    A class is represented by the unique lift whose coordinates vanish on
    the pivot columns of the reduced echelon basis of the relation space.
    """

    def __init__(self, V: GModule, H: Subgroup):
        if V.side != "left":
            raise InputError("coinvariants are formed in left modules")
        self.module = V
        self.subgroup = H
        gens = H.generators or H.elements
        rel = []
        for g in gens:
            M = V.matrix(g)
            D = M - exact.identity(V.dim)
            rel.extend(D.T.tolist())
        R, piv = exact.rref(np.array(rel, dtype=object).reshape(-1, V.dim)) if rel else (exact.zeros((0, V.dim)), [])
        self.relations = R[: len(piv)]
        self.pivots = piv

    @property
    def dim(self) -> int:
        return self.module.dim - len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        v = exact.frac(np.asarray(v, dtype=object))
        for row, c in zip(self.relations, self.pivots):
            if v[c] != 0:
                v = v - v[c] * row
        return exact.normalize(v)

    def equal(self, u, v) -> bool:
        return np.array_equal(self.reduce(u), self.reduce(v))


def transplant_coinvariants(pair: TransplantationPair, V: GModule, v, target: Coinvariants | None = None) -> np.ndarray:
    """tau_#(class of v) = class of tau(Gamma1).v in V_Gamma2 (canonical lift)."""
    if V.side != "left":
        raise InputError("coinvariants are transplanted in left modules")
    target = target or Coinvariants(V, pair.sub2)
    out = exact.zeros(V.dim)
    for c, x in pair.tau_at_base:
        out = out + c * V.act(v, x)
    return target.reduce(out)


def check_pairing_duality(pair: TransplantationPair, W: GModule, V: GModule, pairing, w, v):
    """<<tau^# w, [v]>>_1 - <<w, tau_#[v]>>_2 for a G-balanced pairing.

    ``pairing`` is the matrix P with <w, v> = w @ P @ v.
    """
    P = exact.normalize(exact.obj(pairing))
    G = pair.group
    for g in G.generator_ordinals():
        if not np.array_equal(exact.matmul(P, V.matrix(g)), exact.matmul(W.matrix(g), P)):
            raise NotBalanced("pairing is not G-balanced")
    lhs = exact.normalize(transplant_invariants(pair, W, w).dot(P).dot(np.asarray(v, dtype=object)))
    pushed = transplant_coinvariants(pair, V, v)
    rhs = exact.normalize(np.asarray(w, dtype=object).dot(P).dot(pushed))
    return lhs - rhs


def reynolds_gmap(W: GModule, X: GModule, R) -> np.ndarray:
    """Average a matrix into a G-map between two modules of the same side.

    Right modules (rows): ``A_W(g) Psi = Psi A_X(g)``.  Left modules
    (columns): ``Psi B_W(g) = B_X(g) Psi``.
    """
    G = W.group
    R = exact.obj(R)
    total = exact.zeros(R.shape)
    for g in range(G.order):
        gi = G.inv(g)
        if W.side == "right":
            total = total + W.matrix(gi).dot(R).dot(X.matrix(g))
        else:
            total = total + X.matrix(g).dot(R).dot(W.matrix(gi))
    return exact.normalize(total)
