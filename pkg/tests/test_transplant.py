import random

import numpy as np
import pytest

from gassmann import exact, fixtures
from gassmann.errors import NotBalanced, NotEquivalent, NotInvariant, Singular
from gassmann.groups import CosetSpace
from gassmann.transplant import (
    Coinvariants, GModule, check_pairing_duality, clear_denominators, expected_intertwiner_dimension,
    find_invertible_intertwiner, intertwiner_space, permutation_module, reynolds_gmap, transplant_coinvariants,
    transplant_invariants, transplantation_pair,
)

from _modules import invariant_vector, random_generator_matrices, random_matrix, random_module, random_vector


def test_intertwiner_dimension_matches_characters(psl, affine):
    for gf, a, b in ((psl, "point", "line"), (affine, "units", "twisted")):
        G = gf.group
        H1, H2 = gf.subgroup(a), gf.subgroup(b)
        basis = intertwiner_space(G, H1, H2)
        assert len(basis) == expected_intertwiner_dimension(G, H1, H2)
    assert len(intertwiner_space(psl.group, psl.subgroup("point"), psl.subgroup("line"))) == 2
    assert len(intertwiner_space(affine.group, affine.subgroup("units"), affine.subgroup("twisted"))) == 4


def test_intertwiner_dimension_regular():
    # End of the regular module has dimension |G|
    G = fixtures.symmetric(3)
    t = G.trivial_subgroup()
    assert len(intertwiner_space(G, t, t)) == 6 == expected_intertwiner_dimension(G, t, t)


def test_same_subgroup_gives_identity(psl):
    G = psl.group
    H = psl.subgroup("point")
    pair = transplantation_pair(G, H, H)
    assert pair.n == 1
    assert np.array_equal(pair.tau, exact.identity(7))


def test_psl_pair(psl_pair):
    pair = psl_pair
    assert pair.check()
    assert pair.n == 6
    # tau is a 0/1 incidence-type matrix with three ones per column
    assert set(pair.tau.reshape(-1).tolist()) == {0, 1}
    assert all(sum(pair.tau[:, c]) == 3 for c in range(7))
    assert np.array_equal(pair.sigma.dot(pair.tau), 6 * exact.identity(7))


def test_affine_pair(affine_pair):
    assert affine_pair.check()
    assert affine_pair.n == 16


def test_pair_is_deterministic(psl):
    G = psl.group
    a = transplantation_pair(G, psl.subgroup("point"), psl.subgroup("line"), seed=0)
    b = transplantation_pair(G, psl.subgroup("point"), psl.subgroup("line"), seed=0)
    assert np.array_equal(a.tau, b.tau) and a.n == b.n


def test_non_equivalent_raises(psl):
    G = psl.group
    with pytest.raises(NotEquivalent):
        transplantation_pair(G, psl.subgroup("point"), G.trivial_subgroup())
    with pytest.raises(NotEquivalent):
        find_invertible_intertwiner([])


def test_clear_denominators():
    T = exact.frac([[1, 1], [1, -1]])
    pair = clear_denominators(T)
    assert pair.n == 2
    assert np.array_equal(pair.sigma.dot(pair.tau), 2 * exact.identity(2))
    with pytest.raises(Singular):
        clear_denominators(exact.obj([[1, 1], [1, 1]]))


def test_gmodule_validation():
    G = fixtures.symmetric(3)
    with pytest.raises(Exception):
        GModule(G, [exact.identity(2), exact.obj([[2, 0], [0, 1]])])


def test_permutation_module_invariants(psl_pair):
    pair = psl_pair
    G = pair.group
    W = permutation_module(G, pair.cosets2)
    w = exact.zeros(7)
    w[0] = 1
    w = exact.normalize(sum((W.act(w, g) for g in pair.sub2.elements), exact.zeros(7)))
    out = transplant_invariants(pair, W, w)
    assert W.is_invariant(out, pair.sub1.elements)


def test_non_invariant_input_rejected(psl_pair):
    G = psl_pair.group
    W = permutation_module(G, psl_pair.cosets2)
    with pytest.raises(NotInvariant):
        transplant_invariants(psl_pair, W, np.array([0, 1, 0, 0, 0, 0, 0], dtype=object))


def test_coinvariants_dimension():
    # coinvariants of the regular module under the whole group are one-dimensional
    G = fixtures.symmetric(3)
    V = permutation_module(G, CosetSpace(G, G.trivial_subgroup()), side="left")
    assert Coinvariants(V, G.whole()).dim == 1
    assert Coinvariants(V, G.trivial_subgroup()).dim == 6


def _pairs():
    return ["psl_pair", "affine_pair"]


@pytest.mark.parametrize("pair_name", _pairs())
def test_random_modules_invariants_natural(pair_name, request):
    pair = request.getfixturevalue(pair_name)
    G = pair.group
    rng = random.Random(20)
    for _ in range(10):
        W = random_module(G, "right", rng)
        X = random_module(G, "right", rng)
        psi = reynolds_gmap(W, X, random_matrix(W.dim, X.dim, rng))
        w = invariant_vector(W, pair.sub2, rng)
        tw = transplant_invariants(pair, W, w)
        assert W.is_invariant(tw, pair.sub1.elements)
        # naturality: psi after tau^# equals tau^# after psi
        assert np.array_equal(exact.normalize(tw.dot(psi)), transplant_invariants(pair, X, exact.normalize(w.dot(psi))))


@pytest.mark.parametrize("pair_name", _pairs())
def test_random_modules_coinvariants_natural(pair_name, request):
    pair = request.getfixturevalue(pair_name)
    G = pair.group
    rng = random.Random(21)
    for _ in range(10):
        V = random_module(G, "left", rng)
        Y = random_module(G, "left", rng)
        psi = reynolds_gmap(V, Y, random_matrix(Y.dim, V.dim, rng))
        v = random_vector(V.dim, rng)
        tv = transplant_coinvariants(pair, V, v)
        # independent of the lift
        gamma = rng.choice(pair.sub1.elements)
        u = random_vector(V.dim, rng)
        lifted = exact.normalize(v + V.act(u, gamma) - u)
        assert np.array_equal(transplant_coinvariants(pair, V, lifted), tv)
        target = Coinvariants(Y, pair.sub2)
        lhs = target.reduce(exact.normalize(psi.dot(tv)))
        rhs = transplant_coinvariants(pair, Y, exact.normalize(psi.dot(v)))
        assert np.array_equal(lhs, rhs)


def test_pairing_duality_random(affine_pair):
    pair = affine_pair
    G = pair.group
    rng = random.Random(30)
    for _ in range(10):
        mats, _ = random_generator_matrices(G, rng)
        W = GModule(G, mats, "right", validate=False)
        V = GModule(G, mats, "left", validate=False)
        w = invariant_vector(W, pair.sub2, rng)
        v = random_vector(V.dim, rng)
        assert check_pairing_duality(pair, W, V, exact.identity(W.dim), w, v) == 0


def test_unbalanced_pairing_rejected(affine_pair):
    G = affine_pair.group
    rng = random.Random(31)
    mats, _ = random_generator_matrices(G, rng)
    W = GModule(G, mats, "right", validate=False)
    V = GModule(G, mats, "left", validate=False)
    bad = exact.identity(W.dim)
    bad[0, 0] = 2
    if all(np.array_equal(bad.dot(V.matrix(g)), W.matrix(g).dot(bad)) for g in G.generator_ordinals()):
        pytest.skip("random module happens to commute with the perturbation")
    with pytest.raises(NotBalanced):
        check_pairing_duality(affine_pair, W, V, bad, invariant_vector(W, affine_pair.sub2, rng), random_vector(W.dim, rng))
