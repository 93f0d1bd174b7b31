"""Ali / nacli recognition.

Two independent routes: a search for the forbidden induced suborders, and a
bottom-up automaton over the modular decomposition (disjoint sums, order
compositions and prime quotients).  Certificates are either a structural
decomposition that rebuilds the input or an embedded forbidden pattern.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

from posetlevels.levels import Embedding, LevelDecomposition
from posetlevels.poset import Poset, disjoint_sum, induced, order_composition


class CharacterizationMismatch(AssertionError):
    """The forbidden-pattern and structural characterizations disagreed."""


# -- forbidden patterns ------------------------------------------------------


class ForbiddenPattern(enum.Enum):
    OBS1 = "obs1"
    OBS2 = "obs2"
    OBS3 = "obs3"
    ANTICHAIN3 = "antichain3"
    CHAIN3_PLUS_POINT = "chain3_plus_point"

    @property
    def poset(self) -> Poset:
        return _PATTERNS[self]


_PATTERNS = {
    ForbiddenPattern.OBS1: Poset.from_relations("abcd", [("a", "b"), ("c", "d")]),
    ForbiddenPattern.OBS2: Poset.from_relations("abc", [("a", "b"), ("a", "c")]),
    ForbiddenPattern.OBS3: Poset.from_relations("abc", [("b", "a"), ("c", "a")]),
    ForbiddenPattern.ANTICHAIN3: Poset.from_relations("abc"),
    ForbiddenPattern.CHAIN3_PLUS_POINT: Poset.from_relations("abcd", [("a", "b"), ("a", "c"), ("b", "c")]),
}

ALI_FORBIDDEN = (
    ForbiddenPattern.OBS1,
    ForbiddenPattern.OBS2,
    ForbiddenPattern.ANTICHAIN3,
    ForbiddenPattern.CHAIN3_PLUS_POINT,
)
NACLI_FORBIDDEN = (ForbiddenPattern.OBS1, ForbiddenPattern.OBS2, ForbiddenPattern.OBS3)


def _first_pair(sub: np.ndarray, upper: bool = False):
    if upper:
        sub = np.triu(sub, 1)
    hits = np.argwhere(sub)
    return (int(hits[0][0]), int(hits[0][1])) if len(hits) else None


def _search_indices(p: Poset, tag: ForbiddenPattern):
    lt = p.matrix
    comp = p.comparability
    n = p.n
    inc = ~comp
    np.fill_diagonal(inc, False)
    # elements comparable to everything never take part in these patterns
    free = inc.any(axis=1)
    if tag is ForbiddenPattern.OBS1:
        for a, b in np.argwhere(lt & free[:, None] & free[None, :]):
            others = np.flatnonzero(inc[a] & inc[b])
            hit = _first_pair(lt[np.ix_(others, others)])
            if hit:
                return a, b, others[hit[0]], others[hit[1]]
    elif tag in (ForbiddenPattern.OBS2, ForbiddenPattern.OBS3):
        rel = lt if tag is ForbiddenPattern.OBS2 else lt.T
        for a in range(n):
            side = np.flatnonzero(rel[a] & free)
            hit = _first_pair(inc[np.ix_(side, side)], upper=True)
            if hit:
                return a, side[hit[0]], side[hit[1]]
    elif tag is ForbiddenPattern.ANTICHAIN3:
        for a in np.flatnonzero(free):
            rest = np.flatnonzero(inc[a])
            rest = rest[rest > a]
            hit = _first_pair(inc[np.ix_(rest, rest)], upper=True)
            if hit:
                return a, rest[hit[0]], rest[hit[1]]
    elif tag is ForbiddenPattern.CHAIN3_PLUS_POINT:
        for d in np.flatnonzero(free):
            side = np.flatnonzero(inc[d])
            sub = lt[np.ix_(side, side)]
            middle = np.flatnonzero(sub.any(axis=0) & sub.any(axis=1))
            if middle.size:
                j = middle[0]
                i = np.flatnonzero(sub[:, j])[0]
                k = np.flatnonzero(sub[j])[0]
                return side[i], side[j], side[k], d
    return None


def find_forbidden(p: Poset, tag: ForbiddenPattern, host_levels: LevelDecomposition | None = None) -> Embedding | None:
    """First induced copy of a forbidden pattern, or None.

    Loop orders (all by element index): pairs a<b then c<d for OBS1; the
    shared bottom (OBS2) or top (OBS3) element, then the incomparable pair;
    the lowest-index element of an antichain of three; the isolated point
    then the middle of the chain for CHAIN3_PLUS_POINT.
    """
    hit = _search_indices(p, tag)
    if hit is None:
        return None
    names = tag.poset.elements
    mapping = {name: p.elements[int(i)] for name, i in zip(names, hit)}
    return Embedding.verified(tag.poset, p, mapping, host_levels=host_levels)


def first_forbidden(p: Poset, tags) -> Embedding | None:
    for tag in tags:
        emb = find_forbidden(p, tag)
        if emb is not None:
            return emb
    return None


# -- structural classes ------------------------------------------------------


@dataclass(frozen=True)
class StructuralClass:
    """Which finite structural case an order falls in, with its parts.

    ``parts`` maps a role (``chain``, ``point``, ``base``, ``base_chain``,
    ``base_point``, ``antichain``) to element ids; chains are listed bottom up.
    """

    kind: str
    parts: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def rebuild(self) -> Poset:
        part = self.parts
        if self.kind == "chain":
            return _chain_of(part["chain"])
        if self.kind in ("antichain2", "antichain"):
            return _antichain_of(part["antichain"])
        if self.kind == "chain_plus_point":
            return _named_sum([_chain_of(part["chain"]), _antichain_of(part["point"])])
        if self.kind == "chain_plus_antichain":
            return _named_sum([_chain_of(part["chain"]), _antichain_of(part["antichain"])])
        if self.kind == "based11":
            return _named_composition([_antichain_of(part["base"]), _chain_of(part["chain"])])
        if self.kind == "based21":
            base = _named_sum([_chain_of(part["base_chain"]), _antichain_of(part["base_point"])])
            return _named_composition([base, _chain_of(part["chain"])])
        raise ValueError(f"unknown structural class {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {"type": "structure", "class": self.kind, "parts": {k: list(v) for k, v in self.parts.items()}}

    def __hash__(self) -> int:
        return hash((self.kind, tuple(sorted(self.parts.items()))))


@dataclass(frozen=True)
class ForbiddenWitness:
    tag: ForbiddenPattern
    embedding: Embedding

    def to_json_dict(self) -> dict:
        return {"type": "forbidden", "pattern": self.tag.value, "mapping": dict(self.embedding.mapping)}


Certificate = Union[StructuralClass, ForbiddenWitness]


def _chain_of(names) -> Poset:
    names = tuple(names)
    return Poset.from_relations(names, zip(names, names[1:]))


def _antichain_of(names) -> Poset:
    return Poset.from_relations(tuple(names))


def _named_sum(parts) -> Poset:
    return disjoint_sum(parts).renamed(_unprefix(parts))


def _named_composition(parts) -> Poset:
    return order_composition(parts).renamed(_unprefix(parts))


def _unprefix(parts) -> dict[str, str]:
    return {f"{k}.{e}": e for k, part in enumerate(parts) for e in part.elements}


def _components(adj: np.ndarray, idx: list[int]) -> list[list[int]]:
    """Connected components of ``adj`` restricted to ``idx``, each sorted, ordered by minimum."""
    todo = set(idx)
    allowed = np.zeros(adj.shape[0], dtype=bool)
    allowed[idx] = True
    comps = []
    for start in idx:
        if start not in todo:
            continue
        comp = {start}
        frontier = [start]
        todo.discard(start)
        while frontier:
            x = frontier.pop()
            for y in np.flatnonzero(adj[x] & allowed):
                y = int(y)
                if y in todo:
                    todo.discard(y)
                    comp.add(y)
                    frontier.append(y)
        comps.append(sorted(comp))
    return comps


def _bottom_up(p: Poset, idx) -> tuple[str, ...]:
    below = p.matrix[np.ix_(idx, idx)].sum(axis=0)
    return tuple(p.elements[i] for _, i in sorted(zip(below, idx)))


def structural_class(p: Poset) -> StructuralClass | None:
    """Finite ali cases: chain, antichain of two, chain of height <= 2 plus a
    point, and a (1,1)- or (2,1)-base below a nonempty chain.
    """
    n = p.n
    everything = list(range(n))
    if p.is_chain():
        return StructuralClass("chain", {"chain": _bottom_up(p, everything)})
    if n == 2:
        return StructuralClass("antichain2", {"antichain": p.elements})
    comps = _components(p.comparability, everything)
    if len(comps) == 2:
        small, big = sorted(comps, key=len)
        if len(small) == 1 and len(big) == 2:
            return StructuralClass(
                "chain_plus_point", {"chain": _bottom_up(p, big), "point": (p.elements[small[0]],)}
            )
        return None
    inc = ~p.comparability
    np.fill_diagonal(inc, False)
    universal = [i for i in everything if not inc[i].any()]
    base = [i for i in everything if inc[i].any()]
    if not universal or not p.matrix[np.ix_(base, universal)].all():
        return None
    chain = _bottom_up(p, universal)
    sub = induced(p, [p.elements[i] for i in base])
    if sub.n == 2 and sub.is_antichain():
        return StructuralClass("based11", {"base": sub.elements, "chain": chain})
    if sub.n == 3:
        inner = structural_class(sub)
        if inner is not None and inner.kind == "chain_plus_point":
            return StructuralClass(
                "based21",
                {"base_chain": inner.parts["chain"], "base_point": inner.parts["point"], "chain": chain},
            )
    return None


def nacli_structure(p: Poset) -> StructuralClass | None:
    """Chain, antichain, or a chain plus an antichain; None otherwise."""
    n = p.n
    if p.is_chain():
        return StructuralClass("chain", {"chain": _bottom_up(p, list(range(n)))})
    if p.is_antichain():
        return StructuralClass("antichain", {"antichain": p.elements})
    comps = _components(p.comparability, list(range(n)))
    big = [c for c in comps if len(c) > 1]
    if len(big) != 1:
        return None
    chain_idx = big[0]
    sub = p.matrix[np.ix_(chain_idx, chain_idx)]
    k = len(chain_idx)
    if int(sub.sum()) != k * (k - 1) // 2:
        return None
    rest = tuple(p.elements[c[0]] for c in comps if len(c) == 1)
    return StructuralClass("chain_plus_antichain", {"chain": _bottom_up(p, chain_idx), "antichain": rest})


def is_ali_finite(p: Poset) -> tuple[bool, Certificate]:
    """Ali iff no induced OBS1, OBS2, antichain of three, or chain of three plus a point."""
    for tag in ALI_FORBIDDEN:
        emb = find_forbidden(p, tag)
        if emb is not None:
            return False, ForbiddenWitness(tag, emb)
    cls = structural_class(p)
    if cls is None:
        raise CharacterizationMismatch(f"no forbidden pattern but no ali structure: {p!r}")
    return True, cls


def is_nacli_finite(p: Poset) -> tuple[bool, Certificate]:
    """Nacli iff no induced OBS1, OBS2 or OBS3; cross-checked against the chain/antichain split."""
    structure = nacli_structure(p)
    for tag in NACLI_FORBIDDEN:
        emb = find_forbidden(p, tag)
        if emb is not None:
            if structure is not None:
                raise CharacterizationMismatch(f"{tag.value} found in a chain plus antichain: {p!r}")
            return False, ForbiddenWitness(tag, emb)
    if structure is None:
        raise CharacterizationMismatch(f"no forbidden pattern but no nacli structure: {p!r}")
    return True, structure


def has_forbidden(p: Poset, tags) -> bool:
    return any(_search_indices(p, tag) is not None for tag in tags)


# -- modular decomposition -------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    element: str


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Series:
    children: tuple


@dataclass(frozen=True)
class Prime:
    children: tuple
    quotient: Poset


MDTree = Union[Leaf, Sum, Series, Prime]


def leaves(t: MDTree) -> list[str]:
    if isinstance(t, Leaf):
        return [t.element]
    return [e for c in t.children for e in leaves(c)]


def evaluate(t: MDTree) -> Poset:
    """The order a decomposition tree denotes; elements in leaf order."""
    if isinstance(t, Leaf):
        return Poset.from_relations((t.element,))
    parts = [evaluate(c) for c in t.children]
    if isinstance(t, Sum):
        return _named_sum(parts)
    if isinstance(t, Series):
        return _named_composition(parts)
    names = [e for part in parts for e in part.elements]
    n = len(names)
    m = np.zeros((n, n), dtype=bool)
    spans = []
    start = 0
    for part in parts:
        spans.append(slice(start, start + part.n))
        m[spans[-1], spans[-1]] = part.matrix
        start += part.n
    q = t.quotient
    for i, j in np.argwhere(q.matrix):
        m[spans[i], spans[j]] = True
    return Poset(tuple(names), m)


def _splits(codes: np.ndarray, module: np.ndarray, within: np.ndarray) -> np.ndarray:
    """Elements of ``within`` outside ``module`` that see ``module`` non-uniformly."""
    outside = within & ~module
    cols = np.flatnonzero(module)
    rows = np.flatnonzero(outside)
    if rows.size == 0:
        return rows
    sub = codes[np.ix_(rows, cols)]
    return rows[(sub != sub[:, :1]).any(axis=1)]


def _minimal_module(codes: np.ndarray, seed: list[int], within: np.ndarray) -> np.ndarray:
    module = np.zeros(codes.shape[0], dtype=bool)
    module[seed] = True
    while True:
        add = _splits(codes, module, within)
        if add.size == 0:
            return module
        module[add] = True


def _maximal_modules(codes: np.ndarray, idx: list[int]) -> list[list[int]]:
    """Partition of a prime node into its maximal strong modules."""
    within = np.zeros(codes.shape[0], dtype=bool)
    within[idx] = True
    size = len(idx)
    assigned: set[int] = set()
    parts = []
    for x in idx:
        if x in assigned:
            continue
        part = {x}
        for y in idx:
            if y == x or y in part:
                continue
            m = _minimal_module(codes, [x, y], within)
            if int(m.sum()) < size:
                part.update(int(v) for v in np.flatnonzero(m))
        assigned |= part
        parts.append(sorted(part))
    return sorted(parts, key=lambda c: c[0])


def modular_decomposition(p: Poset) -> MDTree:
    """Grouped modular decomposition tree (naive recursive splitter)."""
    if p.n == 0:
        raise ValueError("the empty order has no modular decomposition")
    codes = np.full((p.n, p.n), 3, dtype=np.int8)
    codes[p.matrix.T] = 2
    codes[p.matrix] = 1
    np.fill_diagonal(codes, 0)
    inc = ~p.comparability
    np.fill_diagonal(inc, False)
    return _decompose(p, list(range(p.n)), codes, inc)


def _decompose(p: Poset, idx: list[int], codes, inc) -> MDTree:
    if len(idx) == 1:
        return Leaf(p.elements[idx[0]])
    comps = _components(p.comparability, idx)
    if len(comps) > 1:
        return Sum(tuple(_decompose(p, c, codes, inc) for c in comps))
    blocks = _components(inc, idx)
    if len(blocks) > 1:
        # blocks are totally ordered; rank them by how much lies below
        blocks.sort(key=lambda b: int(p.matrix[idx, b[0]].sum()))
        return Series(tuple(_decompose(p, b, codes, inc) for b in blocks))
    parts = _maximal_modules(codes, idx)
    reps = [c[0] for c in parts]
    names = tuple(str(i) for i in range(len(parts)))
    quotient = Poset(names, p.matrix[np.ix_(reps, reps)])
    return Prime(tuple(_decompose(p, c, codes, inc) for c in parts), quotient)


def binarize(t: MDTree) -> MDTree:
    """Left-fold every grouped sum / composition into binary nodes."""
    if isinstance(t, Leaf):
        return t
    kids = [binarize(c) for c in t.children]
    if isinstance(t, Prime):
        return Prime(tuple(kids), t.quotient)
    node_type = type(t)
    acc = kids[0]
    for c in kids[1:]:
        acc = node_type((acc, c))
    return acc


def is_grouped(t: MDTree) -> bool:
    if isinstance(t, Leaf):
        return True
    for c in t.children:
        if type(c) is type(t) and not isinstance(t, Prime):
            return False
    return all(is_grouped(c) for c in t.children)


# -- tree automaton ------------------------------------------------------------


@dataclass(frozen=True)
class NodeAttributes:
    is_leaf: bool
    is_chain: bool
    height_1_2_more: int
    longest_chain: int
    is_ali: bool
    is_ali_inverse: bool
    is_disjoint_ali: bool
    is_11_based: bool
    is_21_based: bool
    is_11_ended: bool
    is_21_ended: bool
    is_antichain: bool
    is_nacli: bool

    def to_json_dict(self) -> dict:
        return dict(self.__dict__)


LEAF_ATTRIBUTES = NodeAttributes(
    is_leaf=True,
    is_chain=True,
    height_1_2_more=1,
    longest_chain=1,
    is_ali=True,
    is_ali_inverse=True,
    is_disjoint_ali=False,
    is_11_based=False,
    is_21_based=False,
    is_11_ended=False,
    is_21_ended=False,
    is_antichain=True,
    is_nacli=True,
)

# vacuous verdicts for the empty order
EMPTY_ATTRIBUTES = replace(LEAF_ATTRIBUTES, is_leaf=False, height_1_2_more=0, longest_chain=0)

_ALL_FALSE = dict(
    is_leaf=False,
    is_chain=False,
    is_ali=False,
    is_ali_inverse=False,
    is_disjoint_ali=False,
    is_11_based=False,
    is_21_based=False,
    is_11_ended=False,
    is_21_ended=False,
    is_antichain=False,
    is_nacli=False,
)


def _sum_attributes(kids: list[NodeAttributes], binary: bool) -> NodeAttributes:
    def small_chain_and_leaf(a, b):
        return a.is_chain and a.height_1_2_more in (1, 2) and b.is_leaf

    ali = len(kids) == 2 and (small_chain_and_leaf(kids[0], kids[1]) or small_chain_and_leaf(kids[1], kids[0]))
    exceptions = [k for k in kids if not k.is_antichain]
    if binary:
        nacli = len(exceptions) <= 1 and all(k.is_chain or k.is_nacli for k in exceptions)
    else:
        nacli = len(exceptions) <= 1 and all(k.is_chain for k in exceptions)
    return NodeAttributes(
        **{
            **_ALL_FALSE,
            "height_1_2_more": max(k.height_1_2_more for k in kids),
            "longest_chain": max(k.longest_chain for k in kids),
            "is_ali": ali,
            "is_ali_inverse": ali,
            "is_disjoint_ali": ali,
            "is_antichain": all(k.is_antichain for k in kids),
            "is_nacli": nacli,
        }
    )


def _series_attributes(kids: list[NodeAttributes], binary: bool) -> NodeAttributes:
    first, last = kids[0], kids[-1]
    rest_chain = all(k.is_chain for k in kids[1:])
    init_chain = all(k.is_chain for k in kids[:-1])
    if binary:
        height = 2 if len(kids) == 2 and all(k.height_1_2_more == 1 for k in kids) else 3
        b11 = (first.is_11_based or (first.is_disjoint_ali and first.height_1_2_more == 1)) and kids[1].is_chain
        b21 = (first.is_21_based or (first.is_disjoint_ali and first.height_1_2_more == 2)) and kids[1].is_chain
        e11 = (last.is_11_ended or (last.is_disjoint_ali and last.height_1_2_more == 1)) and kids[0].is_chain
        e21 = (last.is_21_ended or (last.is_disjoint_ali and last.height_1_2_more == 2)) and kids[0].is_chain
    else:
        height = min(3, sum(k.height_1_2_more for k in kids))
        b11 = first.is_disjoint_ali and first.height_1_2_more == 1 and rest_chain
        b21 = first.is_disjoint_ali and first.height_1_2_more == 2 and rest_chain
        e11 = last.is_disjoint_ali and last.height_1_2_more == 1 and init_chain
        e21 = last.is_disjoint_ali and last.height_1_2_more == 2 and init_chain
    all_chain = all(k.is_chain for k in kids)
    return NodeAttributes(
        **{
            **_ALL_FALSE,
            "is_chain": all_chain,
            "height_1_2_more": height,
            "longest_chain": sum(k.longest_chain for k in kids),
            "is_ali": first.is_ali and rest_chain,
            "is_ali_inverse": last.is_ali_inverse and init_chain,
            "is_11_based": b11,
            "is_21_based": b21,
            "is_11_ended": e11,
            "is_21_ended": e21,
            "is_nacli": all_chain,
        }
    )


def _prime_attributes(t: Prime) -> NodeAttributes:
    longest = LevelDecomposition.of(evaluate(t)).height
    return NodeAttributes(**{**_ALL_FALSE, "height_1_2_more": min(3, longest), "longest_chain": longest})


def compute_attributes(t: MDTree, variant: str = "grouped") -> dict[MDTree, NodeAttributes]:
    """Automaton state of every node, bottom up.

    ``variant="binary"`` first left-folds the tree; the returned map is then
    keyed by the binary tree's nodes.
    """
    if variant not in ("grouped", "binary"):
        raise ValueError(f"unknown variant {variant!r}")
    binary = variant == "binary"
    if binary:
        t = binarize(t)
    out: dict[MDTree, NodeAttributes] = {}

    def visit(node):
        if isinstance(node, Leaf):
            att = LEAF_ATTRIBUTES
        else:
            kids = [visit(c) for c in node.children]
            if isinstance(node, Sum):
                att = _sum_attributes(kids, binary)
            elif isinstance(node, Series):
                att = _series_attributes(kids, binary)
            else:
                att = _prime_attributes(node)
        out[node] = att
        return att

    visit(t)
    return out


def root_attributes(p: Poset, variant: str = "grouped") -> NodeAttributes:
    if p.n == 0:
        return EMPTY_ATTRIBUTES
    tree = modular_decomposition(p)
    atts = compute_attributes(tree, variant)
    return atts[binarize(tree) if variant == "binary" else tree]
