from fractions import Fraction

import numpy as np
import pytest

from gassmann import fixtures
from gassmann.errors import ClosureBoundExceeded, InputError
from gassmann.io import (
    format_complex, format_group, format_matrix, parse_complex, parse_group, parse_matrices, read_group,
)
from gassmann.perm import Permutation


def test_shipped_group_files_load():
    orders = {"psl32": 168, "affine8": 32, "z3cubed": 27, "heisenberg3": 27}
    for name in fixtures.SHIPPED:
        gf = read_group(fixtures.data_path(name))
        assert gf.group.order == orders[name]
        if "trivial" in gf.subgroup_gens:
            assert gf.subgroup("trivial").order == 1


def test_group_round_trip(psl):
    G = psl.group
    subs = {k: v for k, v in psl.subgroup_gens.items()}
    text = format_group(G.generators, subs, names=psl.names, comment="round trip")
    again = parse_group(text)
    assert again.group.order == 168
    assert again.names == psl.names
    for k in subs:
        assert again.subgroup(k).elements == psl.subgroup(k).elements


def test_words_and_named_generators():
    text = """
    a = (0 1 2 3)
    b = (0 2)
    [subgroup rot]
    a^2
    [subgroup mixed]
    a * b
    1 0^-1
    """
    gf = parse_group(text)
    assert gf.group.order == 8
    assert gf.subgroup("rot").order == 2
    assert gf.subgroup("mixed").order == 2


def test_explicit_degree_adds_fixed_points():
    gf = parse_group("degree 6\n(0 1)\n")
    assert gf.group.degree == 6 and gf.group.order == 2


@pytest.mark.parametrize("text", [
    "(0 1)\n[subgroup s]\n(0 2)\n",         # not in the group
    "(0 1)\n[subgroup s]\nc\n",             # unknown generator
    "(0 1)\n[subgroup s]\n[subgroup s]\n",  # defined twice
    "(0 1)\n[strange]\n",                   # unknown section
    "(0 1 1)\n",                            # bad cycle
])
def test_group_input_errors(text):
    with pytest.raises(InputError):
        parse_group(text)


def test_missing_subgroup_name(psl):
    with pytest.raises(InputError, match="no subgroup"):
        psl.subgroup("plane")


def test_closure_bound():
    with pytest.raises(ClosureBoundExceeded):
        parse_group("(0 1 2 3 4 5 6)\n(0 1)\n", bound=100)


def test_matrix_round_trip():
    a = np.array([[1, Fraction(-2, 3)], [0, 10 ** 30]], dtype=object)
    text = format_matrix(a, "m") + format_matrix(np.eye(2, dtype=int).astype(object))
    mats = parse_matrices(text)
    assert mats[0][0] == "m" and mats[1][0] is None
    assert mats[0][1].tolist() == a.tolist()
    assert isinstance(mats[0][1][1, 1], int)


@pytest.mark.parametrize("text", ["2 2\n1 2\n", "1 2\n1\n", "1 1\nx\n", "a b\n1\n"])
def test_matrix_input_errors(text):
    with pytest.raises(InputError):
        parse_matrices(text)


def test_complex_round_trip_and_face_closure():
    parsed = parse_complex("[dim 2]\n0 1 2\n3 4 5\n[action]\n(0 3)(1 4)(2 5)\n")
    assert parsed.simplices[0] == [(i,) for i in range(6)]
    assert len(parsed.simplices[1]) == 6
    again = parse_complex(format_complex(parsed.simplices, parsed.action))
    assert again.simplices == parsed.simplices
    assert [p.images for p in again.action] == [p.images for p in parsed.action]
    assert again.action[0] == Permutation.parse("(0 3)(1 4)(2 5)", 6)


@pytest.mark.parametrize("text", [
    "0 1\n",                             # outside any section
    "[dim 1]\n0 1 2\n[action]\n",        # wrong arity
    "[dim 1]\n0 0\n[action]\n",          # repeated vertex
    "[dim 0]\n0\n1\n[action]\n(0 5)\n",  # action beyond the vertex set
])
def test_complex_input_errors(text):
    with pytest.raises(InputError):
        parse_complex(text)


def test_complex_generator_count():
    with pytest.raises(InputError, match="generators"):
        parse_complex("[dim 0]\n0\n1\n[action]\n(0 1)\n", n_generators=2)
