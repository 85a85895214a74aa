import numpy as np
import pytest
import scipy.sparse as sp

from gassmann import exact, fixtures
from gassmann.complex import (
    GComplex, HomologyBasis, exact_sparse_product, homology, join_complex, quotient, sparse_equal,
    transplant_chains, transplant_homology,
)
from gassmann.errors import InputError, NotFree, SizeBound
from gassmann.transplant import transplantation_pair


def rank_mod2(A) -> int:
    a = (np.abs(np.asarray(A.toarray() if sp.issparse(A) else A)) % 2).astype(bool)
    r = 0
    for c in range(a.shape[1]):
        rows = np.nonzero(a[r:, c])[0]
        if not len(rows):
            continue
        p = r + rows[0]
        a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        r += 1
        if r == a.shape[0]:
            break
    return r


def rank_q(A) -> int:
    return int(np.linalg.matrix_rank(A.toarray().astype(float))) if A.shape[0] and A.shape[1] else 0


@pytest.fixture(scope="module")
def affine_join3(affine):
    G = affine.group
    X = join_complex(G, 3)
    return X, quotient(X, affine.subgroup("units")), quotient(X, affine.subgroup("twisted"))


def test_join_of_z2_is_a_square():
    G = fixtures.cyclic(2)
    X = join_complex(G, 2)
    assert [X.count(q) for q in (0, 1)] == [4, 4]
    Q = quotient(X, G.subgroup(range(G.order)))
    assert [Q.count(q) for q in (0, 1)] == [2, 2]
    assert str(homology(Q, 0)) == "Z^1"
    assert str(homology(Q, 1)) == "Z^1"
    Qe = quotient(X, G.trivial_subgroup())
    assert str(homology(Qe, 1)) == "Z^1"


def test_join_counts(affine_join3):
    X, Q1, Q2 = affine_join3
    assert [X.count(q) for q in range(3)] == [96, 3072, 32768]
    assert [Q1.count(q) for q in range(3)] == [24, 768, 8192]
    assert [Q2.count(q) for q in range(3)] == [24, 768, 8192]


def test_boundary_squares_to_zero(affine_join3):
    X, Q1, _ = affine_join3
    for C in (X, Q1):
        dd = exact_sparse_product(C.boundary(1), C.boundary(2))
        assert sparse_equal(dd, sp.csr_array(dd.shape, dtype=np.int64))


def test_trivial_subgroup_quotient_is_the_complex(affine):
    G = affine.group
    X = join_complex(G, 2)
    Q = quotient(X, G.trivial_subgroup())
    for q in (0, 1):
        assert np.array_equal(Q.reps[q], np.arange(X.count(q)))
        assert np.all(Q.orbit_sign[q] == 1)
    assert sparse_equal(Q.boundary(1), X.boundary(1))


def test_euler_characteristic_divides(affine_join3):
    X, Q1, Q2 = affine_join3
    assert X.euler_characteristic() == Q1.subgroup.order * Q1.euler_characteristic()
    assert Q1.euler_characteristic() == Q2.euler_characteristic() == 7448


def test_homology_of_join3_quotient_against_rank_oracles(affine_join3):
    _, Q1, _ = affine_join3
    d1, d2 = Q1.boundary(1), Q1.boundary(2)
    r1, r2 = rank_q(d1), rank_q(d2)
    h = [homology(Q1, q) for q in range(3)]
    assert h[0].betti == 24 - r1
    assert h[1].betti == 768 - r1 - r2
    assert h[2].betti == 8192 - r2
    # mod 2 Betti numbers see every Z/2^k summand once
    s1, s2 = rank_mod2(d1), rank_mod2(d2)
    assert (768 - s1 - s2) - h[1].betti == sum(1 for t in h[1].torsion if t % 2 == 0)
    assert [str(x) for x in h] == ["Z^1", "Z/2 + Z/2", "Z^7447"]


def test_rank_nullity(affine_join3):
    _, Q1, Q2 = affine_join3
    for C in (Q1, Q2):
        for q in range(3):
            h = homology(C, q)
            assert h.betti + h.rank_in + h.rank_out == C.count(q)


def test_betti_numbers_agree(affine_join3):
    _, Q1, Q2 = affine_join3
    for q in range(3):
        a, b = homology(Q1, q), homology(Q2, q)
        assert a.betti == b.betti


def test_chain_map_identities(affine, affine_pair, affine_join3):
    X, Q1, Q2 = affine_join3
    back = affine_pair.reversed()
    n = affine_pair.n
    for q in range(3):
        T = transplant_chains(affine_pair, X, q, Q1, Q2)
        S = transplant_chains(back, X, q, Q2, Q1)
        assert sparse_equal(exact_sparse_product(S, T), n * sp.identity(Q1.count(q), dtype=np.int64, format="csr"))
        assert sparse_equal(exact_sparse_product(T, S), n * sp.identity(Q2.count(q), dtype=np.int64, format="csr"))
        if q:
            Tm = transplant_chains(affine_pair, X, q - 1, Q1, Q2)
            assert sparse_equal(exact_sparse_product(Tm, Q1.boundary(q)),
                                exact_sparse_product(Q2.boundary(q), T))


def test_same_subgroup_gives_identity_map(affine):
    G = affine.group
    H = affine.subgroup("units")
    pair = transplantation_pair(G, H, H)
    X = join_complex(G, 2)
    Q = quotient(X, H)
    T = transplant_chains(pair, X, 1, Q, Q)
    assert sparse_equal(T, sp.identity(Q.count(1), dtype=np.int64, format="csr"))


def test_degree_zero_map_is_column_sum(affine, affine_pair):
    X = join_complex(affine.group, 2)
    Q1, Q2 = quotient(X, affine_pair.sub1), quotient(X, affine_pair.sub2)
    F = transplant_homology(affine_pair, X, 0, Q1, Q2)
    colsum = int(sum(affine_pair.tau[:, 0]))
    assert colsum == 2
    assert F.tolist() == [[colsum]]


def test_homology_map_composes_to_degree(affine, affine_pair):
    X = join_complex(affine.group, 2)
    Q1, Q2 = quotient(X, affine_pair.sub1), quotient(X, affine_pair.sub2)
    b1, b2 = HomologyBasis(Q1, 1), HomologyBasis(Q2, 1)
    assert b1.rank == b2.rank == 241
    F = transplant_homology(affine_pair, X, 1, Q1, Q2, bases=(b1, b2))
    Fb = transplant_homology(affine_pair.reversed(), X, 1, Q2, Q1, bases=(b2, b1))
    assert np.array_equal(exact.dot(Fb, F), affine_pair.n * exact.identity(241))


def test_homology_basis_coordinates_of_lifts(affine):
    X = join_complex(affine.group, 2)
    Q = quotient(X, affine.subgroup("units"))
    b = HomologyBasis(Q, 1)
    assert np.array_equal(b.coordinates(b.lifts), exact.identity(b.rank))


def _reflected_triangle():
    # C2 swapping vertices 1 and 2 of the boundary of a triangle fixes vertex 0
    G = fixtures.cyclic(2)
    simplices = {0: [(0,), (1,), (2,)], 1: [(0, 1), (0, 2), (1, 2)]}
    return G, simplices, [[0, 2, 1]]


def test_non_free_action_names_the_simplex():
    G, simplices, action = _reflected_triangle()
    with pytest.raises(NotFree) as e:
        GComplex(G, simplices, action)
    assert "(0)" in str(e.value)
    assert e.value.simplex == (0,)


def test_free_user_complex():
    # hexagon with the rotation by three steps
    G = fixtures.cyclic(2)
    simplices = {0: [(i,) for i in range(6)], 1: [tuple(sorted((i, (i + 1) % 6))) for i in range(6)]}
    X = GComplex(G, simplices, [[3, 4, 5, 0, 1, 2]])
    Q = quotient(X, G.subgroup(range(2)))
    assert [Q.count(q) for q in (0, 1)] == [3, 3]
    assert str(homology(Q, 1)) == "Z^1"


def test_bad_complexes():
    G = fixtures.cyclic(2)
    with pytest.raises(InputError):
        GComplex(G, {0: [(0,), (1,)], 1: [(0, 2)]}, [[1, 0]])
    with pytest.raises(InputError):
        GComplex(G, {0: [(0,), (1,), (2,)]}, [[1, 2, 0]])
    with pytest.raises(InputError):
        GComplex(G, {0: [(0,), (1,)]}, [[0, 1], [1, 0], [0, 1]])


def test_budget():
    G = fixtures.symmetric(4)
    with pytest.raises(SizeBound):
        join_complex(G, 3, budget=1000)
