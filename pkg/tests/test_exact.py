import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gassmann import _kernels, exact
from gassmann._kernels import _pykernels

PRIMES = [7, 101, 65537, 2147483629]


def sym(a):
    return sympy.Matrix(a.tolist() if hasattr(a, "tolist") else a)


small_int_matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(small_int_matrices)
def test_det_and_charpoly_against_sympy(rows):
    a = exact.obj(rows)
    assert exact.det(a) == sym(rows).det()
    assert exact.det_bareiss(a) == exact.det_modular(a)
    coeffs = [int(c) for c in reversed(sym(rows).charpoly().all_coeffs())]
    assert exact.charpoly(a) == coeffs


def test_large_det_uses_modular_path():
    rng = np.random.default_rng(3)
    a = rng.integers(-5, 6, (45, 45))
    assert exact.det(exact.obj(a)) == sym(a).det(method="bareiss")


def test_charpoly_rational():
    a = exact.frac([[Fraction(1, 2), 1], [0, Fraction(-1, 3)]])
    # (x - 1/2)(x + 1/3) = x^2 - x/6 - 1/6
    assert exact.charpoly(a) == [Fraction(-1, 6), Fraction(-1, 6), 1]


def test_charpoly_zero_and_diagonal():
    assert exact.charpoly(exact.zeros((3, 3))) == [0, 0, 0, 1]
    assert exact.charpoly(np.diag([1, 2, 3])) == [-6, 11, -6, 1]


def test_rank_rref_inverse():
    rng = random.Random(1)
    for _ in range(30):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)], dtype=object)
        assert exact.rank_exact(a) == sym(a).rank()
        R, piv = exact.rref(a)
        sR, spiv = sym(a).rref()
        assert tuple(piv) == tuple(spiv)
        assert sym(R) == sR
    a = exact.obj([[2, 1], [1, 1]])
    assert np.array_equal(exact.inverse(a), exact.obj([[1, -1], [-1, 2]]))
    with pytest.raises(ZeroDivisionError):
        exact.inverse(exact.obj([[1, 2], [2, 4]]))


def test_sparse_nullspace_matches_sympy():
    rng = random.Random(5)
    for _ in range(20):
        m, n = rng.randint(1, 5), rng.randint(2, 7)
        a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        eqs = [{j: v for j, v in enumerate(row) if v} for row in a]
        basis = exact.sparse_nullspace([e for e in eqs if e], n)
        assert len(basis) == n - sym(a).rank()
        for v in basis:
            assert all(sum(Fraction(a[i][j]) * v[j] for j in range(n)) == 0 for i in range(m))


def test_content_primitive():
    assert exact.primitive([Fraction(1, 2), Fraction(-3, 4), 0]) == [2, -3, 0]
    assert exact.primitive([0, 0]) == [0, 0]


@pytest.mark.parametrize("p", PRIMES)
def test_kernel_backends_agree(p):
    rng = np.random.default_rng(p)
    for _ in range(40):
        n = int(rng.integers(1, 9))
        a = rng.integers(-50, 51, (n, n))
        ref = sym(a)
        assert _kernels.det_mod_p(a, p) == _pykernels.det_mod_p(a, p) == int(ref.det()) % p
        assert _kernels.rank_mod_p(a, p) == _pykernels.rank_mod_p(a, p)
        cp = [int(c) % p for c in reversed(ref.charpoly().all_coeffs())]
        assert list(_kernels.charpoly_mod_p(a, p)) == list(_pykernels.charpoly_mod_p(a, p)) == cp


def test_kernel_backends_agree_large():
    rng = np.random.default_rng(11)
    a = rng.integers(-1000, 1000, (120, 120))
    p = PRIMES[-1]
    assert list(_kernels.charpoly_mod_p(a, p)) == list(_pykernels.charpoly_mod_p(a, p))


def test_backend_flag():
    assert _kernels.BACKEND in ("cython", "python")
