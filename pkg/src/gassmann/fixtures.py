"""Shipped group files and constructors for small permutation groups."""
from __future__ import annotations

import itertools
from importlib import resources

from .groups import FiniteGroup
from .io import GroupFile, parse_group
from .perm import Permutation

SHIPPED = ("psl32", "affine8", "z3cubed", "heisenberg3")


def load(name: str) -> GroupFile:
    """One of the group files in ``gassmann/data`` by stem."""
    text = resources.files("gassmann").joinpath("data").joinpath(f"{name}.grp").read_text()
    return parse_group(text)


def data_path(name: str):
    return resources.files("gassmann").joinpath("data").joinpath(f"{name}.grp")


def _perm(images) -> Permutation:
    return Permutation(list(images))


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([_perm([(i + 1) % n for i in range(n)])], degree=n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (n >= 3)."""
    return FiniteGroup([_perm([(i + 1) % n for i in range(n)]), _perm([(-i) % n for i in range(n)])], degree=n)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([], degree=1)
    return FiniteGroup([_perm([(i + 1) % n for i in range(n)]), Permutation.from_cycles([(0, 1)], n)], degree=n)


def alternating(n: int) -> FiniteGroup:
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return FiniteGroup(gens, degree=n)


def quaternion() -> FiniteGroup:
    """Q8 acting on itself by right multiplication (points 0..7 = 1,-1,i,-i,j,-j,k,-k)."""
    # unit quaternions as (sign, axis) with axis in 1,i,j,k
    table = {("1", "1"): (1, "1")}
    axes = "1ijk"
    prod = {
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    for a in axes:
        for b in axes:
            if a == "1":
                table[(a, b)] = (1, b)
            elif b == "1":
                table[(a, b)] = (1, a)
            elif a == b:
                table[(a, b)] = (-1, "1")
            else:
                table[(a, b)] = prod[(a, b)]
    elems = [(s, a) for a in axes for s in (1, -1)]
    pos = {e: k for k, e in enumerate(elems)}

    def right(y):
        out = []
        for s, a in elems:
            t, c = table[(a, y[1])]
            out.append(pos[(s * y[0] * t, c)])
        return _perm(out)

    return FiniteGroup([right((1, "i")), right((1, "j"))], degree=8)


def _matrix_group_mod3(mats) -> FiniteGroup:
    vecs = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]
    pos = {v: k for k, v in enumerate(vecs)}
    gens = []
    for (a, b), (c, d) in mats:
        gens.append(_perm([pos[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs]))
    return FiniteGroup(gens, degree=len(vecs))


def sl2_3() -> FiniteGroup:
    return _matrix_group_mod3([((1, 1), (0, 1)), ((1, 0), (1, 1))])


def gl2_3() -> FiniteGroup:
    return _matrix_group_mod3([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))])


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """A x B acting on the disjoint union of the two point sets."""
    da, db = A.degree, B.degree
    gens = [_perm(list(g.images) + list(range(da, da + db))) for g in A.generators]
    gens += [_perm(list(range(da)) + [da + x for x in g.images]) for g in B.generators]
    return FiniteGroup(gens, degree=da + db)


def small_corpus() -> dict[str, FiniteGroup]:
    """Groups of order at most 48 used for exhaustive pair checks."""
    z2 = cyclic(2)
    corpus = {
        "C2": z2,
        "C4": cyclic(4),
        "C2xC2": direct_product(z2, z2),
        "S3": symmetric(3),
        "C6": cyclic(6),
        "D8": dihedral(4),
        "Q8": quaternion(),
        "C2^3": direct_product(direct_product(z2, z2), z2),
        "D10": dihedral(5),
        "A4": alternating(4),
        "D12": dihedral(6),
        "D16": dihedral(8),
        "C4xC4": direct_product(cyclic(4), cyclic(4)),
        "C2xD8": direct_product(z2, dihedral(4)),
        "C2xQ8": direct_product(z2, quaternion()),
        "S4": symmetric(4),
        "SL(2,3)": sl2_3(),
        "C2xA4": direct_product(z2, alternating(4)),
        "D24": dihedral(12),
        "C3^3": load("z3cubed").group,
        "Heis(3)": load("heisenberg3").group,
        "AGL(1,Z/8)": load("affine8").group,
        "S3xS3": direct_product(symmetric(3), symmetric(3)),
        "GL(2,3)": gl2_3(),
        "C2xS4": direct_product(z2, symmetric(4)),
    }
    return corpus
