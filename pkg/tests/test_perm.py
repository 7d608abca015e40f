import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from onecomm.group import center, center_naive, conjugacy_classes, conjugacy_classes_naive
from onecomm.perm import (GroupTooLarge, Permutation, PermutationError, compose, generate,
                          inverse)
from onecomm.semidirect import ETA, SIGMA

from conftest import CORPUS, is_even, py_classes, py_closure, py_compose

EPS6 = Permutation.identity(6)
perms6 = st.permutations(range(1, 7)).map(lambda p: Permutation(tuple(p)))


def test_compose_right_factor_first():
    p = Permutation.from_cycles(3, (1, 2))
    q = Permutation.from_cycles(3, (2, 3))
    # q first: 2 -> 3 -> 3, then p fixes 3
    assert compose(p, q)(2) == 3
    assert compose(EPS6, SIGMA) == SIGMA
    assert compose(SIGMA, inverse(SIGMA)) == EPS6
    assert compose(ETA, compose(ETA, ETA)) == EPS6


def test_inverse_examples():
    assert inverse(EPS6) == EPS6
    assert inverse(Permutation.from_cycles(5, (1, 2, 3, 4, 5))) == Permutation.from_cycles(5, (1, 5, 4, 3, 2))


@given(perms6, perms6, perms6)
def test_compose_associative(p, q, r):
    assert compose(p, compose(q, r)) == compose(compose(p, q), r)
    assert inverse(inverse(p)) == p
    assert compose(p, inverse(p)) == EPS6


def test_rejects_bad_input():
    with pytest.raises(PermutationError):
        Permutation((1, 1, 2))
    with pytest.raises(PermutationError):
        compose(EPS6, Permutation.identity(5))
    with pytest.raises(PermutationError):
        generate([Permutation.identity(3), Permutation.identity(4)])


def test_generate_orders():
    assert generate([SIGMA, ETA]).order == 360
    assert generate([Permutation.from_cycles(3, (1, 2, 3))]).order == 3
    assert generate([Permutation.from_cycles(3, (1, 2)), Permutation.from_cycles(3, (1, 2, 3))]).order == 6


def test_a6_is_the_even_permutations():
    a6 = generate([SIGMA, ETA])
    elems = {a6.element(i).images for i in range(a6.order)}
    assert elems == {p for p in itertools.permutations(range(1, 7)) if is_even(p)}


def test_size_cap():
    with pytest.raises(GroupTooLarge):
        generate([SIGMA, ETA], size_cap=100)


@pytest.mark.parametrize("name", CORPUS)
def test_table_invariants(corpus, name):
    G = corpus[name]
    n = G.order
    rows_ok = all(len(set(G.table[i])) == n for i in range(n))
    cols_ok = all(len(set(G.table[:, j])) == n for j in range(n))
    assert rows_ok and cols_ok
    assert (G.table[0] == np.arange(n)).all() and (G.table[:, 0] == np.arange(n)).all()
    assert (G.table[np.arange(n), G.inverse] == 0).all()
    assert G.element(0) == Permutation.identity(G.degree)


@pytest.mark.parametrize("name", CORPUS)
def test_words_reproduce_elements(corpus, name):
    G = corpus[name]
    for i in range(G.order):
        assert G.word_product(G.words[i]) == i
    lengths = [len(w) for w in G.words]
    assert lengths == sorted(lengths)


@pytest.mark.parametrize("name", CORPUS)
def test_table_matches_composition(corpus, name):
    G = corpus[name]
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, G.order, size=(50, 2)):
        assert G.element(G.mul(a, b)) == compose(G.element(a), G.element(b))


@pytest.mark.parametrize("name", CORPUS)
def test_closure_matches_oracle(corpus, name):
    G = corpus[name]
    gens = [G.element(g).images for g in G.generators]
    assert {G.element(i).images for i in range(G.order)} == py_closure(gens)


@pytest.mark.parametrize("name", CORPUS)
def test_classes_generator_vs_all_elements(corpus, name):
    G = corpus[name]
    P, Q = conjugacy_classes(G), conjugacy_classes_naive(G)
    assert (P.class_id == Q.class_id).all()
    assert P.sizes.sum() == G.order
    assert all(G.order % s == 0 for s in P.sizes)
    for c, r in enumerate(P.reps):
        assert r == P.members(c).min()
    # invariant under conjugation by generators
    for g in G.generators:
        assert (P.class_id[G.conjugate(g, G.elements())] == P.class_id).all()


@pytest.mark.parametrize("name", CORPUS)
def test_classes_match_bruteforce_oracle(corpus, name):
    G = corpus[name]
    elems = [G.element(i).images for i in range(G.order)]
    oracle = sorted(sorted(len(c) for c in py_classes(elems)))
    assert sorted(conjugacy_classes(G).sizes.tolist()) == oracle


def test_class_examples(corpus):
    assert conjugacy_classes(corpus["z2xz2"]).sizes.tolist() == [1, 1, 1, 1]
    assert sorted(conjugacy_classes(corpus["s3"]).sizes.tolist()) == [1, 2, 3]
    assert conjugacy_classes(corpus["a6"]).count == 7


@pytest.mark.parametrize("name", CORPUS)
def test_center_generators_vs_all(corpus, name):
    G = corpus[name]
    assert center(G) == center_naive(G)


def test_center_examples(corpus):
    assert center(corpus["a6"]) == [0]
    assert center(corpus["z2xz2"]) == [0, 1, 2, 3]
    q8 = corpus["q8"]
    elems = [q8.element(i).images for i in range(8)]
    oracle = [x for x in elems if all(py_compose(x, y) == py_compose(y, x) for y in elems)]
    assert len(center(q8)) == len(oracle) == 2
