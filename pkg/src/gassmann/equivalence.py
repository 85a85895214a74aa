"""Almost conjugacy, conjugacy and permutation-character equivalence of subgroups."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OrderMismatch
from .groups import CosetSpace, FiniteGroup, Subgroup


@dataclass(frozen=True)
class ClassRow:
    representative: int
    size: int
    count1: int
    count2: int


@dataclass(frozen=True)
class ClassIntersectionProfile:
    rows: tuple[ClassRow, ...]

    @property
    def agree(self) -> bool:
        return all(r.count1 == r.count2 for r in self.rows)


def class_profile(G: FiniteGroup, H1: Subgroup, H2: Subgroup) -> ClassIntersectionProfile:
    lab = G.class_of
    c1 = [0] * len(G.conjugacy_classes)
    c2 = [0] * len(G.conjugacy_classes)
    for x in H1.elements:
        c1[lab[x]] += 1
    for x in H2.elements:
        c2[lab[x]] += 1
    rows = tuple(ClassRow(cls[0], len(cls), a, b)
                 for cls, a, b in zip(G.conjugacy_classes, c1, c2))
    return ClassIntersectionProfile(rows)


def almost_conjugate(G, H1, H2) -> tuple[bool, ClassIntersectionProfile]:
    prof = class_profile(G, H1, H2)
    return prof.agree, prof


def conjugate_subgroups(G: FiniteGroup, H1: Subgroup, H2: Subgroup):
    """Return ``(True, g)`` with ``g H1 g^-1 = H2``, or ``(False, None)``."""
    if H1.order != H2.order:
        return False, None
    target = H2.element_set
    gens = H1.generators or H1.elements
    for g in range(G.order):
        gi = G.inv(g)
        if all(G.mul(G.mul(g, x), gi) in target for x in gens):
            return True, g
    return False, None


def permutation_character(G: FiniteGroup, H: Subgroup, cosets: CosetSpace | None = None) -> tuple[int, ...]:
    """Number of fixed right cosets, one value per conjugacy class."""
    C = cosets or CosetSpace(G, H)
    return tuple(C.fixed_count(cls[0]) for cls in G.conjugacy_classes)


def representation_equivalent(G, H1, H2) -> bool:
    if H1.index != H2.index:
        return False
    return permutation_character(G, H1) == permutation_character(G, H2)


def character_inner_product(G: FiniteGroup, chi1, chi2) -> Fraction:
    """<chi1, chi2> for real-valued class functions given per class."""
    total = sum(len(cls) * a * b for cls, a, b in zip(G.conjugacy_classes, chi1, chi2))
    return Fraction(total, G.order)


def cayley_gassmann_check(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Whether the left-regular images of A and B in Sym(|A|) are almost conjugate.

    An element of order k acts on the group by left translation with |A|/k
    cycles of length k, so the cycle types of both images match exactly when
    the multisets of element orders do.
    """
    if A.order != B.order:
        raise OrderMismatch(f"groups have orders {A.order} and {B.order}")
    return A.order_statistics() == B.order_statistics()
