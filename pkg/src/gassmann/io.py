"""Plain-text formats: group files, matrix files and complex files.

Group file::

    # comments and blank lines are ignored
    a = (0 1 2 3 4 5 6)        # named generator (default names g0, g1, ...)
    (2 4)(5 6)

    [subgroup point]
    (2 4)(5 6)                 # a permutation in cycle notation, or
    a * b^-1                   # a word in generator names / 0-based indices

An empty ``[subgroup NAME]`` block is the trivial subgroup.

Matrix file: an optional ``# name`` line, then a ``rows cols`` header, then
``rows`` lines of space-separated integers or fractions ``p/q``.  Several
matrices may follow each other in one file.

Complex file: ``[dim q]`` blocks with one simplex per line as vertex
ordinals, and an ``[action]`` block with one vertex permutation per group
generator in cycle notation.  Missing faces are added automatically.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InputError
from .groups import DEFAULT_CLOSURE_BOUND, FiniteGroup, Subgroup
from .perm import Permutation


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


@dataclass
class GroupFile:
    group: FiniteGroup
    names: list[str]
    subgroup_gens: dict[str, list[Permutation]] = field(default_factory=dict)

    def subgroup(self, name: str) -> Subgroup:
        if name not in self.subgroup_gens:
            raise InputError(f"no subgroup named {name!r}; have {sorted(self.subgroup_gens)}")
        return self.group.subgroup(self.subgroup_gens[name])


def _parse_word(word, names, gens, degree):
    lookup = {n: i for i, n in enumerate(names)}
    result = Permutation.identity(degree)
    for tok in re.split(r"[\s*]+", word.strip()):
        if not tok:
            continue
        m = re.fullmatch(r"([A-Za-z_]\w*|\d+)(?:\^(-?\d+))?", tok)
        if not m:
            raise InputError(f"bad word token {tok!r}")
        name, power = m.group(1), int(m.group(2) or 1)
        idx = int(name) if name.isdigit() else lookup.get(name)
        if idx is None or idx >= len(gens):
            raise InputError(f"unknown generator {name!r}")
        result = result * gens[idx] ** power
    return result


def parse_group(text: str, bound: int = DEFAULT_CLOSURE_BOUND) -> GroupFile:
    gen_lines: list[tuple[str | None, str]] = []
    subs: dict[str, list[str]] = {}
    current = None
    degree = None
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        m = re.fullmatch(r"\[subgroup\s+(\S+)\s*\]", line)
        if m:
            current = m.group(1)
            if current in subs:
                raise InputError(f"subgroup {current!r} defined twice")
            subs[current] = []
            continue
        if line.startswith("["):
            raise InputError(f"unknown section header {line!r}")
        m = re.fullmatch(r"degree\s+(\d+)", line)
        if m and current is None:
            degree = int(m.group(1))
            continue
        if current is None:
            m = re.fullmatch(r"([A-Za-z_]\w*)\s*[=:]\s*(.*)", line)
            gen_lines.append((m.group(1), m.group(2)) if m else (None, line))
        else:
            subs[current].append(line)
    cycle_texts = [t for _, t in gen_lines] + [t for v in subs.values() for t in v if t.startswith("(")]
    if degree is None:
        top = 0
        for t in cycle_texts:
            pts = [int(x) for x in re.findall(r"\d+", t)]
            top = max(top, max(pts, default=-1) + 1)
        degree = max(top, 1)
    try:
        gens = [Permutation.parse(t, degree) for _, t in gen_lines]
    except ValueError as e:
        raise InputError(str(e)) from None
    names = [n or f"g{i}" for i, (n, _) in enumerate(gen_lines)]
    G = FiniteGroup(gens, degree=degree, bound=bound)
    sub_gens = {}
    for name, lines in subs.items():
        perms = []
        for t in lines:
            try:
                p = Permutation.parse(t, degree) if t.startswith("(") else _parse_word(t, names, gens, degree)
            except ValueError as e:
                raise InputError(str(e)) from None
            if np.asarray(p.images, dtype=np.int64).tobytes() not in G.index:
                raise InputError(f"subgroup {name!r}: {p} is not in the group")
            perms.append(p)
        sub_gens[name] = perms
    return GroupFile(G, names, sub_gens)


def read_group(path, bound: int = DEFAULT_CLOSURE_BOUND) -> GroupFile:
    return parse_group(Path(path).read_text(), bound=bound)


def format_group(generators, subgroups=None, names=None, comment=None) -> str:
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    for i, g in enumerate(generators):
        out.append(f"{names[i]} = {g}" if names else str(g))
    for name, gens in (subgroups or {}).items():
        out.append("")
        out.append(f"[subgroup {name}]")
        out += [str(g) for g in gens]
    return "\n".join(out) + "\n"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(int(x))


def format_matrix(a, name: str | None = None) -> str:
    a = np.asarray(a, dtype=object)
    rows, cols = a.shape
    out = [f"# {name}"] if name else []
    out.append(f"{rows} {cols}")
    out += [" ".join(_fmt(x) for x in row) for row in a.tolist()]
    return "\n".join(out) + "\n"


def parse_matrices(text: str) -> list[tuple[str | None, np.ndarray]]:
    lines = text.splitlines()
    out = []
    name = None
    i = 0
    while i < len(lines):
        raw = lines[i].strip()
        i += 1
        if not raw:
            continue
        if raw.startswith("#"):
            name = raw[1:].strip() or None
            continue
        head = raw.split()
        if len(head) != 2 or not all(h.isdigit() for h in head):
            raise InputError(f"expected 'rows cols' header, got {raw!r}")
        r, c = int(head[0]), int(head[1])
        mat = np.empty((r, c), dtype=object)
        for k in range(r):
            while i < len(lines) and not _strip(lines[i]):
                i += 1
            if i >= len(lines):
                raise InputError("matrix file ends early")
            toks = _strip(lines[i]).split()
            i += 1
            if len(toks) != c:
                raise InputError(f"row {k} has {len(toks)} entries, expected {c}")
            for j, t in enumerate(toks):
                try:
                    v = Fraction(t)
                except ValueError:
                    raise InputError(f"bad matrix entry {t!r}") from None
                mat[k, j] = v.numerator if v.denominator == 1 else v
        out.append((name, mat))
        name = None
    return out


def read_matrix(path) -> np.ndarray:
    mats = parse_matrices(Path(path).read_text())
    if not mats:
        raise InputError(f"{path}: no matrix found")
    return mats[0][1]


@dataclass
class ComplexSpec:
    simplices: dict[int, list[tuple[int, ...]]]
    action: list[Permutation]


def parse_complex(text: str, n_generators: int | None = None) -> ComplexSpec:
    simplices: dict[int, set] = {}
    action_lines: list[str] = []
    section = None
    for raw in text.splitlines():
        line = _strip(raw)
        if not line:
            continue
        m = re.fullmatch(r"\[dim\s+(\d+)\s*\]", line)
        if m:
            section = int(m.group(1))
            simplices.setdefault(section, set())
            continue
        if line == "[action]":
            section = "action"
            continue
        if section is None:
            raise InputError(f"line outside any section: {line!r}")
        if section == "action":
            action_lines.append(line)
        else:
            verts = tuple(sorted(int(t) for t in re.split(r"[\s,()]+", line) if t))
            if len(verts) != section + 1 or len(set(verts)) != len(verts):
                raise InputError(f"{line!r} is not a {section}-simplex")
            simplices[section].add(verts)
    nverts = 1 + max((max(s) for ss in simplices.values() for s in ss), default=-1)
    # downward closure
    top = max(simplices, default=-1)
    for q in range(top, 0, -1):
        lower = simplices.setdefault(q - 1, set())
        for s in simplices.get(q, ()):
            for i in range(len(s)):
                lower.add(s[:i] + s[i + 1:])
    try:
        action = [Permutation.parse(t, nverts) for t in action_lines]
    except ValueError as e:
        raise InputError(str(e)) from None
    if n_generators is not None and len(action) != n_generators:
        raise InputError(f"action block has {len(action)} lines, group has {n_generators} generators")
    return ComplexSpec({q: sorted(s) for q, s in sorted(simplices.items())}, action)


def format_complex(simplices, action) -> str:
    out = []
    for q in sorted(simplices):
        out.append(f"[dim {q}]")
        out += [" ".join(map(str, s)) for s in simplices[q]]
    out.append("[action]")
    out += [str(p) for p in action]
    return "\n".join(out) + "\n"
