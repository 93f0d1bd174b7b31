import functools

import pytest
from conftest import chain2_plus_point, rel
from hypothesis import given

from _strategies import posets
from posetlevels.levels import (
    Embedding,
    EmbeddingKind,
    LevelDecomposition,
    NotInduced,
    classify_embedding,
    gap,
    set_gap,
)
from posetlevels.poset import Poset, PosetError, UnknownElementError


def test_n_poset_levels(n_poset):
    l = LevelDecomposition.of(n_poset)
    assert l.level == {"a": 0, "b": 0, "c": 1, "d": 1}
    assert l.height == 2
    assert l.levels == (("a", "b"), ("c", "d"))
    # last predecessor seen on the level below wins
    assert l.pred_ref == {"a": None, "b": None, "c": "b", "d": "b"}


def test_chain_levels():
    l = LevelDecomposition.of(Poset.chain(5))
    assert [l[f"c{i}"] for i in range(5)] == list(range(5))
    assert l.chain_down("c4", 4) == ["c4", "c3", "c2", "c1", "c0"]
    with pytest.raises(ValueError):
        l.chain_down("c1", 2)


def test_empty_levels():
    l = LevelDecomposition.of(Poset.empty())
    assert l.height == 0 and l.levels == () and l.width == 0


def test_gap_examples(n_poset):
    l = LevelDecomposition.of(n_poset)
    assert gap(l, "a", "a") == 0
    assert gap(l, "a", "d") == 1
    assert gap(LevelDecomposition.of(Poset.chain(5)), "c0", "c4") == 4
    with pytest.raises(UnknownElementError):
        gap(l, "a", "zz")


def test_set_gap_examples(n_poset):
    l = LevelDecomposition.of(n_poset)
    assert set_gap(l, ["a", "b"]) == 0
    assert set_gap(LevelDecomposition.of(Poset.chain(5)), [f"c{i}" for i in range(5)]) == 4
    assert set_gap(l, {"a", "b", "d"}) == 1
    with pytest.raises(ValueError):
        set_gap(l, ["a"])


def _longest_below(p, x):
    @functools.lru_cache(None)
    def depth(e):
        return max((depth(y) + 1 for y in p.elements if p.less(y, e)), default=0)

    return depth(x)


@given(posets(max_size=6))
def test_level_is_longest_chain_below(p):
    l = LevelDecomposition.of(p)
    for x in p.elements:
        assert l[x] == _longest_below(p, x)
        if l[x] > 0:
            y = l.pred_ref[x]
            assert p.less(y, x) and l[y] == l[x] - 1
        else:
            assert l.pred_ref[x] is None


@given(posets(max_size=8))
def test_levels_are_antichains(p):
    for level in LevelDecomposition.of(p).levels:
        for i, x in enumerate(level):
            assert not any(p.comparable(x, y) for y in level[i + 1 :])


def test_identity_is_consecutive(n_poset):
    mapping = {e: e for e in n_poset.elements}
    assert classify_embedding(n_poset, n_poset, mapping) is EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED


def test_chain_point_into_small_host():
    host = rel("x<y", "x<z", "t<z")
    pattern = chain2_plus_point()
    kind = classify_embedding(pattern, host, {"0.c0": "x", "0.c1": "y", "1.z0": "t"})
    assert kind is EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED


def test_rejection_witness():
    with pytest.raises(NotInduced) as err:
        classify_embedding(Poset.antichain(2), Poset.chain(2), {"a0": "c0", "a1": "c1"})
    assert err.value.witness == ("a0", "a1")
    assert (err.value.pattern_rel, err.value.host_rel) == ("~", "<")


def test_level_induced_but_not_consecutive():
    host = rel("x<y", "y<z", extra="w")
    pattern = rel("a<b", extra="p")
    # chain on levels 0 and 2, point on level 0
    assert classify_embedding(pattern, host, {"a": "x", "b": "z", "p": "w"}) is EmbeddingKind.LEVEL_INDUCED
    # chain bottom on level 1 while the point sits on level 0
    assert classify_embedding(pattern, host, {"a": "y", "b": "z", "p": "w"}) is EmbeddingKind.INDUCED


@pytest.mark.parametrize(
    "mapping",
    [{"a": "x"}, {"a": "x", "b": "x"}, {"a": "x", "b": "nope"}],
)
def test_bad_maps(mapping):
    with pytest.raises(PosetError):
        classify_embedding(rel("a<b"), rel("x<y"), mapping)


def test_kind_names():
    assert [k.cli_name for k in EmbeddingKind] == ["induced", "level", "consecutive"]
    assert EmbeddingKind.from_name("Level") is EmbeddingKind.LEVEL_INDUCED
    with pytest.raises(ValueError):
        EmbeddingKind.from_name("strong")


def test_embedding_json_round_trip(n_poset):
    emb = Embedding.verified(rel("p<q"), n_poset, {"p": "b", "q": "d"})
    again = Embedding.from_json_dict(emb.to_json_dict(), n_poset)
    assert again == emb and again.kind is EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED
    assert emb.image == ("b", "d")
