import itertools

import pytest
from conftest import based, rel
from hypothesis import given, settings

from _strategies import posets
from posetlevels.oracle import oracle_find
from posetlevels.poset import Poset, disjoint_sum, induced, order_composition
from posetlevels.recognition import (
    ALI_FORBIDDEN,
    EMPTY_ATTRIBUTES,
    LEAF_ATTRIBUTES,
    NACLI_FORBIDDEN,
    ForbiddenPattern,
    ForbiddenWitness,
    Leaf,
    Prime,
    Series,
    StructuralClass,
    Sum,
    binarize,
    compute_attributes,
    evaluate,
    find_forbidden,
    has_forbidden,
    is_ali_finite,
    is_grouped,
    is_nacli_finite,
    leaves,
    modular_decomposition,
    nacli_structure,
    root_attributes,
    structural_class,
)


def test_obs1_finds_itself(obs1):
    emb = find_forbidden(obs1, ForbiddenPattern.OBS1)
    assert emb is not None and set(emb.image) == set(obs1.elements)


@pytest.mark.parametrize("tag", list(ForbiddenPattern))
def test_chain_has_no_forbidden(tag):
    assert find_forbidden(Poset.chain(10), tag) is None


def test_obs3_in_antichain_under_point():
    p = order_composition([Poset.antichain(2), Poset.antichain(1, "t")])
    emb = find_forbidden(p, ForbiddenPattern.OBS3)
    assert emb.mapping["a"] == "1.t0"  # the pattern's top


@given(posets(max_size=7))
@settings(max_examples=150)
def test_forbidden_search_matches_oracle(p):
    for tag in ForbiddenPattern:
        fast = find_forbidden(p, tag)
        slow = oracle_find(tag.poset, p)
        assert (fast is None) == (slow is None)
        assert has_forbidden(p, [tag]) == (slow is not None)


def test_ali_examples():
    ok, cert = is_ali_finite(Poset.antichain(2))
    assert ok and cert.kind == "antichain2"
    ok, cert = is_ali_finite(disjoint_sum([Poset.chain(3), Poset.antichain(1)]))
    assert not ok and cert.tag is ForbiddenPattern.CHAIN3_PLUS_POINT
    ok, cert = is_ali_finite(Poset.antichain(3))
    assert not ok and cert.to_json_dict()["pattern"] == "antichain3"


def test_nacli_examples():
    assert is_nacli_finite(disjoint_sum([Poset.chain(4), Poset.antichain(3)]))[0]
    ok, cert = is_nacli_finite(based(Poset.antichain(2), Poset.chain(2)))
    assert not ok and cert.tag is ForbiddenPattern.OBS3
    ok, cert = is_nacli_finite(Poset.antichain(1))
    assert ok and cert.kind == "chain"


def test_empty_order_is_ali_and_nacli():
    assert is_ali_finite(Poset.empty())[0]
    assert is_nacli_finite(Poset.empty())[0]
    assert root_attributes(Poset.empty()) == EMPTY_ATTRIBUTES


@pytest.mark.parametrize(
    "p, kind",
    [
        (Poset.chain(4), "chain"),
        (Poset.antichain(2), "antichain2"),
        (disjoint_sum([Poset.chain(2), Poset.antichain(1)]), "chain_plus_point"),
        (based(Poset.antichain(2), Poset.chain(3)), "based11"),
        (based(disjoint_sum([Poset.chain(2), Poset.antichain(1)]), Poset.chain(3)), "based21"),
    ],
)
def test_structural_classes(p, kind):
    cls = structural_class(p)
    assert cls.kind == kind
    assert cls.rebuild().same_order(p)
    assert cls.to_json_dict()["class"] == kind


def test_obs2_has_no_structure():
    assert structural_class(ForbiddenPattern.OBS2.poset) is None
    ok, cert = is_ali_finite(ForbiddenPattern.OBS2.poset)
    assert not ok and isinstance(cert, ForbiddenWitness) and cert.tag is ForbiddenPattern.OBS2


def test_nacli_structure_rebuilds():
    p = disjoint_sum([Poset.chain(3), Poset.antichain(2)])
    s = nacli_structure(p)
    assert s.kind == "chain_plus_antichain" and s.rebuild().same_order(p)
    assert isinstance(s, StructuralClass)


def test_decomposition_shapes(obs1, n_poset):
    assert modular_decomposition(Poset.chain(3)) == Series((Leaf("c0"), Leaf("c1"), Leaf("c2")))
    t = modular_decomposition(obs1)
    assert t == Sum((Series((Leaf("a"), Leaf("b"))), Series((Leaf("c"), Leaf("d")))))
    assert isinstance(modular_decomposition(n_poset), Prime)
    with pytest.raises(ValueError):
        modular_decomposition(Poset.empty())


def test_n_poset_has_no_split(n_poset):
    # no bipartition into a disjoint sum or an order composition
    els = n_poset.elements
    for r in range(1, len(els)):
        for left in itertools.combinations(els, r):
            right = [e for e in els if e not in left]
            cross = [n_poset.comparable(x, y) for x in left for y in right]
            assert any(cross)
            assert not all(n_poset.less(x, y) for x in left for y in right)


@given(posets(min_size=1, max_size=8))
def test_decomposition_evaluates_back(p):
    t = modular_decomposition(p)
    assert is_grouped(t)
    assert sorted(leaves(t)) == sorted(p.elements)
    assert evaluate(t).same_order(p)
    assert evaluate(binarize(t)).same_order(p)


@given(posets(min_size=1, max_size=8))
def test_strong_modules_are_modules(p):
    def check(node):
        if isinstance(node, Leaf):
            return
        inside = set(leaves(node))
        for x in set(p.elements) - inside:
            assert len({p.order_function(x, y) for y in inside}) == 1
        for c in node.children:
            check(c)

    check(modular_decomposition(p))


def test_automaton_examples():
    chain2_leaf = Sum((Series((Leaf("a"), Leaf("b"))), Leaf("c")))
    assert compute_attributes(chain2_leaf)[chain2_leaf].is_ali
    based11 = Series((Sum((Leaf("a"), Leaf("b"))), Leaf("c"), Leaf("d")))
    att = compute_attributes(based11)[based11]
    assert att.is_11_based and att.is_ali and not att.is_nacli
    assert LEAF_ATTRIBUTES.is_chain and LEAF_ATTRIBUTES.longest_chain == 1
    assert LEAF_ATTRIBUTES.is_ali and LEAF_ATTRIBUTES.is_ali_inverse and LEAF_ATTRIBUTES.is_nacli
    assert not LEAF_ATTRIBUTES.is_disjoint_ali


def test_unknown_variant():
    with pytest.raises(ValueError):
        compute_attributes(Leaf("a"), "ternary")


@given(posets(max_size=8))
def test_automaton_longest_chain_is_height(p):
    from posetlevels.levels import LevelDecomposition

    h = LevelDecomposition.of(p).height
    for variant in ("grouped", "binary"):
        att = root_attributes(p, variant)
        assert att.longest_chain == h
        assert att.height_1_2_more == min(h, 3)


@given(posets(max_size=8))
def test_methods_agree(p):
    ali = not has_forbidden(p, ALI_FORBIDDEN)
    nacli = not has_forbidden(p, NACLI_FORBIDDEN)
    assert is_ali_finite(p)[0] == ali == root_attributes(p).is_ali == root_attributes(p, "binary").is_ali
    assert is_nacli_finite(p)[0] == nacli == root_attributes(p).is_nacli == root_attributes(p, "binary").is_nacli
    assert root_attributes(p) == root_attributes(p, "binary")


@given(posets(max_size=8))
def test_ali_closed_under_induced_suborders(p):
    if p.n and is_ali_finite(p)[0]:
        assert is_ali_finite(induced(p, p.elements[1:]))[0]
