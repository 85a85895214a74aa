"""Finite permutation groups, subgroups, right cosets and conjugacy classes.

Elements are addressed by their ordinal in a breadth-first enumeration from
the identity, trying generators in input order.  Ordinal 0 is the identity.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ClosureBoundExceeded, DegreeMismatch, NotASubgroup
from .perm import Permutation

DEFAULT_CLOSURE_BOUND = 20000
# multiplication tables are cached only below this order
TABLE_LIMIT = 2048


class FiniteGroup:
    def __init__(self, generators, degree=None, bound=DEFAULT_CLOSURE_BOUND):
        generators = list(generators)
        degrees = {g.degree for g in generators}
        if len(degrees) > 1:
            raise DegreeMismatch(f"generators have degrees {sorted(degrees)}")
        if degree is None:
            degree = degrees.pop() if degrees else 1
        elif degrees and degrees != {degree}:
            raise DegreeMismatch(f"generators do not have degree {degree}")
        self.generators = generators
        self.degree = degree
        self.bound = bound

        gens = np.array([g.images for g in generators], dtype=np.int64).reshape(len(generators), degree)
        ident = np.arange(degree, dtype=np.int64)
        rows = [ident]
        self.index = {ident.tobytes(): 0}
        # factor[k] = (parent ordinal, generator index); element k = parent * gen
        factor = [(-1, -1)]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(len(gens)):
                new = gens[j][rows[i]]
                key = new.tobytes()
                if key not in self.index:
                    if len(rows) >= bound:
                        raise ClosureBoundExceeded(f"group closure exceeds {bound} elements")
                    self.index[key] = len(rows)
                    rows.append(new)
                    factor.append((i, j))
                    queue.append(len(rows) - 1)
        self.array = np.array(rows, dtype=np.int64)
        self.factor = factor
        self._table = None

    @property
    def order(self) -> int:
        return len(self.array)

    def __len__(self):
        return self.order

    def element(self, i: int) -> Permutation:
        return Permutation(self.array[i])

    @cached_property
    def elements(self) -> list[Permutation]:
        return [Permutation(r) for r in self.array]

    def ordinal(self, p) -> int:
        images = p.images if isinstance(p, Permutation) else p
        key = np.asarray(images, dtype=np.int64).tobytes()
        try:
            return self.index[key]
        except KeyError:
            raise NotASubgroup(f"{p} is not an element of the group") from None

    def generator_ordinals(self) -> list[int]:
        return [self.ordinal(g) for g in self.generators]

    @property
    def table(self):
        """``table[i, j]`` is the ordinal of ``e_i * e_j`` (or None if too big)."""
        if self._table is None and self.order <= TABLE_LIMIT:
            n = self.order
            t = np.empty((n, n), dtype=np.int64)
            for j in range(n):
                prods = self.array[j][self.array]
                t[:, j] = [self.index[r.tobytes()] for r in prods]
            self._table = t
        return self._table

    def mul(self, i: int, j: int) -> int:
        t = self.table
        if t is not None:
            return int(t[i, j])
        return self.index[self.array[j][self.array[i]].tobytes()]

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for i, row in enumerate(self.array):
            r = np.empty_like(row)
            r[row] = np.arange(self.degree)
            inv[i] = self.index[r.tobytes()]
        return inv

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def conj(self, x: int, g: int) -> int:
        """``g^-1 x g``."""
        return self.mul(self.mul(self.inv(g), x), g)

    def word(self, i: int) -> list[int]:
        """Generator indices whose left-to-right product is element ``i``."""
        out = []
        while i > 0:
            i, j = self.factor[i]
            out.append(j)
        return out[::-1]

    def represent(self, images):
        """Extend generator images to every element along the BFS factorization.

        ``images[j]`` is the image of generator ``j`` in any monoid whose
        product is ``@`` and which satisfies ``rho(g h) = rho(g) @ rho(h)``.
        Returns the list of images of all elements in ordinal order.
        """
        images = list(images)
        first = images[0] if images else None
        if first is None:
            raise ValueError("need at least one generator image (or use identity)")
        out = [None] * self.order
        out[0] = _identity_like(first)
        for k in range(1, self.order):
            p, j = self.factor[k]
            out[k] = out[p] @ images[j]
        return out

    @cached_property
    def element_orders(self) -> list[int]:
        return [Permutation(r).order() for r in self.array]

    def order_statistics(self) -> dict[int, int]:
        stats: dict[int, int] = {}
        for o in self.element_orders:
            stats[o] = stats.get(o, 0) + 1
        return dict(sorted(stats.items()))

    def is_abelian(self) -> bool:
        gens = self.generator_ordinals()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def subgroup(self, generators) -> "Subgroup":
        """Subgroup generated by Permutations or element ordinals."""
        ords = [g if isinstance(g, (int, np.integer)) else self.ordinal(g) for g in generators]
        return Subgroup(self, closure(self, ords), tuple(int(o) for o in ords))

    def subgroup_from_elements(self, elements) -> "Subgroup":
        elems = sorted({int(e) for e in elements})
        s = set(elems)
        if 0 not in s or any(self.mul(a, b) not in s for a in elems for b in elems):
            raise NotASubgroup("element set is not closed under multiplication")
        return Subgroup(self, tuple(elems))

    @cached_property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> np.ndarray:
        lab = np.empty(self.order, dtype=np.int64)
        for c, cls in enumerate(self.conjugacy_classes):
            lab[list(cls)] = c
        return lab

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, degree={self.degree})"


def _identity_like(m):
    if isinstance(m, Permutation):
        return Permutation.identity(m.degree)
    a = np.asarray(m)
    out = np.zeros(a.shape, dtype=a.dtype)
    for i in range(a.shape[0]):
        out[i, i] = 1
    return out


def enumerate_group(generators, degree=None, bound=DEFAULT_CLOSURE_BOUND) -> FiniteGroup:
    return FiniteGroup(generators, degree=degree, bound=bound)


def closure(G: FiniteGroup, ordinals) -> tuple[int, ...]:
    seen = {0}
    frontier = [0]
    gens = [int(g) for g in ordinals]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False, compare=False)
    elements: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, x):
        return int(x) in self.element_set

    def conjugate(self, g: int) -> frozenset:
        """``g Gamma g^-1`` as a set of ordinals."""
        G = self.parent
        gi = G.inv(g)
        return frozenset(G.mul(G.mul(g, x), gi) for x in self.elements)

    def is_abelian(self) -> bool:
        G = self.parent
        gens = self.generators or self.elements
        return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Classes ordered by their smallest ordinal; the identity class comes first."""
    gens = G.generator_ordinals()
    label = [-1] * G.order
    classes = []
    for x in range(G.order):
        if label[x] >= 0:
            continue
        label[x] = len(classes)
        orbit = [x]
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = G.conj(y, g)
                    if label[z] < 0:
                        label[z] = len(classes)
                        orbit.append(z)
                        nxt.append(z)
            frontier = nxt
        classes.append(tuple(sorted(orbit)))
    return classes


class CosetSpace:
    """Right cosets ``Gamma x`` with the right action ``Gamma x . g = Gamma x g``.

    Matrix convention (column vectors): ``action_matrix(g)[act(c, g), c] = 1``.
    With this convention ``M(g h) = M(h) @ M(g)``: acting by ``g`` then by
    ``h`` is the product with ``M(g)`` applied first.
    """

    def __init__(self, G: FiniteGroup, S: Subgroup):
        if S.parent is not G:
            raise NotASubgroup("subgroup belongs to a different group")
        self.parent = G
        self.subgroup = S
        lookup = np.full(G.order, -1, dtype=np.int64)
        reps = []
        for x in range(G.order):
            if lookup[x] >= 0:
                continue
            c = len(reps)
            reps.append(x)
            for s in S.elements:
                y = G.mul(s, x)
                if lookup[y] >= 0:
                    raise NotASubgroup("cosets overlap; element set is not a subgroup")
                lookup[y] = c
        if len(reps) * S.order != G.order:
            raise NotASubgroup("cosets do not partition the group")
        self.reps = reps
        self.lookup = lookup

    def __len__(self):
        return len(self.reps)

    def act(self, c: int, g: int) -> int:
        return int(self.lookup[self.parent.mul(self.reps[c], g)])

    @cached_property
    def action_table(self) -> np.ndarray:
        """``action_table[g, c] = act(c, g)`` for every element ordinal g."""
        G = self.parent
        t = G.table
        if t is not None:
            return self.lookup[t[self.reps, :]].T.copy()
        return np.array([[self.act(c, g) for c in range(len(self))] for g in range(G.order)],
                        dtype=np.int64)

    def action_matrix(self, g: int) -> np.ndarray:
        n = len(self)
        m = np.zeros((n, n), dtype=np.int64)
        m[self.action_table[g], np.arange(n)] = 1
        return m

    def fixed_count(self, g: int) -> int:
        return int(np.sum(self.action_table[g] == np.arange(len(self))))


def right_cosets(G: FiniteGroup, S: Subgroup) -> CosetSpace:
    return CosetSpace(G, S)


def coset_action_matrix(C: CosetSpace, g: int) -> np.ndarray:
    return C.action_matrix(g)


def subgroups(G: FiniteGroup, max_generators: int | None = None) -> list[Subgroup]:
    """Subgroups generated by at most ``max_generators`` elements (all of them
    when None), found by joining cyclic subgroups one at a time.

    Ordered by (order, element tuple) for determinism.
    """
    cyclic: dict[tuple, int] = {}
    for x in range(G.order):
        key = closure(G, [x])
        if key not in cyclic:
            cyclic[key] = x
    found: dict[tuple, tuple] = {k: (x,) for k, x in cyclic.items()}
    found[(0,)] = ()
    layer = dict(found)
    depth = 1
    while layer and (max_generators is None or depth < max_generators):
        nxt = {}
        for elems, gens in layer.items():
            s = set(elems)
            for x in cyclic.values():
                if x in s:
                    continue
                key = closure(G, gens + (x,))
                if key not in found and key not in nxt:
                    nxt[key] = gens + (x,)
        found.update(nxt)
        layer = nxt
        depth += 1
    return [Subgroup(G, k, v) for k, v in sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0]))]


def conjugacy_class_representatives(G: FiniteGroup, subs) -> list[Subgroup]:
    """One subgroup per G-conjugacy class, keeping the first seen."""
    seen: set[frozenset] = set()
    reps = []
    for S in subs:
        key = frozenset(S.elements)
        if key in seen:
            continue
        reps.append(S)
        for g in range(G.order):
            seen.add(S.conjugate(g))
    return reps
