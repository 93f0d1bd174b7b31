import numpy as np
import pytest
from conftest import chain2_plus_point
from hypothesis import given, settings
from hypothesis import strategies as st

from _strategies import posets
from posetlevels.levels import EmbeddingKind
from posetlevels.lifts import lift_width2
from posetlevels.oracle import (
    canonical_form,
    count_posets_bruteforce,
    enumerate_posets,
    enumerate_unlabeled,
    is_isomorphic,
    oracle_find,
    oracle_find_bruteforce,
    random_poset,
)
from posetlevels.poset import Poset


def test_identity_first(n_poset):
    emb = oracle_find(n_poset, n_poset, EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED)
    assert emb.mapping == {e: e for e in n_poset.elements}


def test_no_antichain_in_chain():
    assert oracle_find(Poset.antichain(3), Poset.chain(9)) is None


def test_chain_point_survives_width2_lift():
    p = chain2_plus_point()
    assert oracle_find(p, lift_width2(p), EmbeddingKind.LEVEL_INDUCED) is not None


def test_pattern_larger_than_host():
    assert oracle_find(Poset.chain(3), Poset.chain(2)) is None
    assert oracle_find(Poset.empty(), Poset.chain(2)).mapping == {}


@given(posets(max_size=4), posets(max_size=5), st.sampled_from(list(EmbeddingKind)))
@settings(max_examples=200, deadline=None)
def test_two_oracles_agree(pattern, host, kind):
    a = oracle_find(pattern, host, kind)
    b = oracle_find_bruteforce(pattern, host, kind)
    assert (a is None) == (b is None)
    if a is not None:
        # both walk injective maps in lexicographic host order
        assert a.mapping == b.mapping


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)])
def test_labeled_counts(n, count):
    posets_ = list(enumerate_posets(n))
    assert len(posets_) == count == count_posets_bruteforce(n)
    assert len(set(posets_)) == count


def test_enumeration_guard():
    with pytest.raises(ValueError):
        next(enumerate_posets(8))
    with pytest.raises(ValueError):
        count_posets_bruteforce(6)


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16), (5, 63), (6, 318)])
def test_unlabeled_counts(n, count):
    assert len(enumerate_unlabeled(n)) == count


def test_unlabeled_covers_labeled():
    forms = {canonical_form(p) for p in enumerate_unlabeled(4)}
    assert {canonical_form(p) for p in enumerate_posets(4)} == forms


@given(posets(max_size=7), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(p, rnd):
    order = list(p.elements)
    rnd.shuffle(order)
    q = p.reordered(order).renamed({e: e.upper() for e in order})
    assert is_isomorphic(p, q)


def test_canonical_form_separates(n_poset, obs1):
    assert not is_isomorphic(n_poset, obs1)


def test_random_poset_is_seeded():
    a = random_poset(10, np.random.default_rng(3))
    b = random_poset(10, np.random.default_rng(3))
    assert a == b and a.n == 10
