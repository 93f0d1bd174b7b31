import pytest
from conftest import based, rel
from hypothesis import given, settings

from _strategies import posets
from posetlevels import finders
from posetlevels.finders import PatternError, PatternSpec, compute_slc, find_pattern
from posetlevels.levels import EmbeddingKind, LevelDecomposition
from posetlevels.lifts import lift_gap, lift_scatter, lift_width2
from posetlevels.oracle import oracle_find
from posetlevels.poset import Poset, disjoint_sum, induced

CHAIN2_POINT = disjoint_sum([Poset.chain(2), Poset.antichain(1)])


def test_slc_examples(n_poset):
    assert compute_slc(Poset.chain(4)).slc["c0"] == 4
    t = compute_slc(Poset.antichain(3))
    assert set(t.slc.values()) == {1} and set(t.succ_ref.values()) == {None}
    assert compute_slc(n_poset).slc["b"] == 2
    assert compute_slc(Poset.chain(4)).chain_up("c1", 2) == ["c1", "c2", "c3"]


def test_find_chain_examples(obs1):
    assert finders.find_chain(Poset.chain(5), 3).image == ("c0", "c1", "c2")
    assert finders.find_chain(Poset.antichain(4), 2) is None
    assert finders.find_chain(obs1, 2).image == ("a", "b")
    with pytest.raises(PatternError):
        finders.find_chain(obs1, 0)


def test_chain_plus_point_examples():
    emb = finders.find_chain_plus_point(CHAIN2_POINT, 2)
    assert set(emb.image) == set(CHAIN2_POINT.elements)
    assert finders.find_chain_plus_point(Poset.chain(6), 2) is None
    host = lift_width2(Poset.antichain(2))
    emb = finders.find_chain_plus_point(host, 1)
    l = LevelDecomposition.of(host)
    x, y = emb.image
    assert l[x] == l[y] and not host.comparable(x, y)


def test_based11_examples():
    whole = based(Poset.antichain(2), Poset.chain(2))
    assert set(finders.find_based11(whole, 4).image) == set(whole.elements)
    assert finders.find_based11(Poset.chain(10), 4) is None
    host = disjoint_sum([whole, Poset.chain(4)])
    emb = finders.find_based11(host, 4)
    assert all(e.startswith("0.") for e in emb.image)
    assert emb.kind >= EmbeddingKind.LEVEL_INDUCED


def test_based21_examples():
    whole = based(CHAIN2_POINT, Poset.chain(1))
    assert set(finders.find_based21(whole, 4).image) == set(whole.elements)
    assert finders.find_based21(Poset.antichain(6), 4) is None
    pattern = PatternSpec("based21", 5).poset
    host = disjoint_sum([lift_scatter(pattern), Poset.antichain(3), Poset.chain(2)])
    emb = finders.find_based21(host, 5)
    assert emb is not None and emb.kind >= EmbeddingKind.LEVEL_INDUCED
    assert oracle_find(pattern, host) is not None


def test_ended_examples():
    whole = based(Poset.chain(2), Poset.antichain(2))
    emb = finders.find_ended(whole, 4, 11)
    assert set(emb.image) == set(whole.elements) and emb.kind >= EmbeddingKind.INDUCED
    assert finders.find_ended(Poset.chain(8), 4, 11) is None
    with pytest.raises(PatternError):
        finders.find_ended(whole, 4, 12)


def test_nacli_examples():
    host = based(Poset.antichain(4), Poset.chain(1))
    emb = finders.find_nacli(host, 1, 3)
    assert set(emb.image) <= set(LevelDecomposition.of(host).levels[0])
    assert finders.find_nacli(Poset.chain(5), 3, 0).image == ("c0", "c1", "c2")
    lifted = lift_gap(disjoint_sum([Poset.chain(2), Poset.antichain(2)]), 7)
    emb = finders.find_nacli(lifted, 2, 2)
    assert emb.kind is EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED


@pytest.mark.parametrize(
    "text, spec",
    [
        ("chain:5", PatternSpec("chain", 5)),
        (" nacli : 3 + 4 ", PatternSpec("nacli", 3, 4)),
        ("based21:6", PatternSpec("based21", 6)),
        ("ended11:3", PatternSpec("ended11", 3)),
        ("chainpoint:2", PatternSpec("chainpoint", 2)),
    ],
)
def test_spec_parse(text, spec):
    assert PatternSpec.parse(text) == spec
    assert PatternSpec.parse(str(spec)) == spec


@pytest.mark.parametrize("bad", ["chain", "chain:x", "chain:3+1", "nacli:3", "blob:3", "based11:2", "based21:3", "chainpoint:3", "chain:0"])
def test_spec_errors(bad):
    with pytest.raises(PatternError):
        PatternSpec.parse(bad)


def test_pattern_shapes():
    assert PatternSpec("based11", 4).poset.relations >= {("a", "c0"), ("b", "c0"), ("c0", "c1")}
    assert PatternSpec("ended21", 4).poset.relations == {("c0", "b"), ("b", "a"), ("c0", "a"), ("c0", "w")}
    assert PatternSpec("nacli", 2, 2).total == 4
    assert PatternSpec("chainpoint", 2).poset.n == 3


def test_spec_lists():
    assert [str(s) for s in finders.ali_specs(4)] == [
        "chain:1", "chain:2", "chain:3", "chain:4", "chainpoint:1", "chainpoint:2",
        "based11:3", "based11:4", "based21:4",
    ]
    assert all(s.is_nacli for s in finders.nacli_specs(4))
    assert not any(s.is_ali for s in finders.ended_specs(5))


@given(posets(max_size=7))
@settings(max_examples=120, deadline=None)
def test_finders_complete_and_sound(p):
    l = LevelDecomposition.of(p)
    for spec in finders.ali_specs(p.n) + finders.ended_specs(p.n) + finders.nacli_specs(p.n):
        got = find_pattern(p, spec, l)
        weakest = EmbeddingKind.LEVEL_INDUCED if spec.kind == "nacli" else EmbeddingKind.INDUCED
        exists = oracle_find(spec.poset, p, weakest, host_levels=l) is not None
        assert (got is not None) == exists, spec
        if got is not None:
            assert got.kind >= spec.guaranteed_kind
            assert induced(p, got.image).n == spec.total


def test_finders_are_deterministic(n_poset):
    a = find_pattern(n_poset, "chainpoint:1")
    b = find_pattern(n_poset.reordered(n_poset.elements), "chainpoint:1")
    assert a.mapping == b.mapping
