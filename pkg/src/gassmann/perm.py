"""Permutations on ``{0, ..., degree-1}`` acting on the right.

Products compose left to right: ``(p * q)`` first applies ``p`` and then
``q``, so that ``x^(pq) = (x^p)^q``.  This is the convention under which the
right coset action ``Gamma x . g = Gamma (x g)`` is an honest right action.
"""
from __future__ import annotations

import re


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a < 0 or a >= degree:
                    raise ValueError(f"point {a} outside degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycle notation")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse disjoint-cycle notation such as ``(0 1 2)(3 4)``.

        ``()`` is the identity.  Without an explicit degree the smallest one
        containing every mentioned point is used.
        """
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            if pts:
                cycles.append(pts)
        top = max((max(c) for c in cycles), default=-1) + 1
        if degree is None:
            degree = max(top, 1)
        elif top > degree:
            raise ValueError(f"point {top - 1} outside degree {degree}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        b = other.images
        return Permutation([b[a] for a in self.images])

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, a in enumerate(self.images):
            inv[a] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            a = self.images[start]
            while a != start:
                cyc.append(a)
                seen[a] = True
                a = self.images[a]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        from math import lcm
        return lcm(*self.cycle_type()) if self.degree else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self})"
