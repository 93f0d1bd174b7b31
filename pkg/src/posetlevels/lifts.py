"""Host orders that raise the elements of a given order to new levels.

These are finite versions of chain-lifting constructions: each adds fresh
chain elements below the original ones so that the original order survives
as an induced (or level-induced) suborder while some stronger embedding
kind becomes impossible.  The effect on any particular input is certified
by the oracle in the test-suite, not assumed here.
"""
from __future__ import annotations

import numpy as np

from posetlevels.levels import LevelDecomposition
from posetlevels.poset import Poset, PosetError, transitive_closure


def level_linear_extension(p: Poset) -> list[int]:
    """Element indices sorted by (level, index): a linear extension respecting levels."""
    return [int(i) for i in LevelDecomposition.of(p).order]


def _fresh(p: Poset, stem: str):
    taken = set(p.elements)
    prefix = stem
    while any(e.startswith(prefix) for e in taken):
        prefix = "_" + prefix
    return lambda *ix: prefix + "_".join(str(i) for i in ix)


def _assemble(p: Poset, extra_names: list[str], extra_lt, cross) -> Poset:
    """Fresh elements first, then the originals; ``cross[i, j]`` = fresh i below original j."""
    k, n = len(extra_names), p.n
    m = np.zeros((k + n, k + n), dtype=bool)
    m[:k, :k] = extra_lt
    m[:k, k:] = cross
    m[k:, k:] = p.matrix
    return Poset(tuple(extra_names) + p.elements, transitive_closure(m))


def lift_width2(p: Poset) -> Poset:
    """Chain c0 < ... < c(n-1) with c_i below the j-th element of a level order iff i < j.

    The j-th element lands on level j next to c_j, so the result has level
    width at most 2 and keeps ``p`` as an induced suborder.
    """
    if p.n == 0:
        raise PosetError("lift needs a nonempty order")
    n = p.n
    f = level_linear_extension(p)
    name = _fresh(p, "c")
    chain = [name(i) for i in range(n)]
    cross = np.zeros((n, n), dtype=bool)
    for j, orig in enumerate(f):
        cross[:j, orig] = True
    return _assemble(p, chain, np.triu(np.ones((n, n), dtype=bool), 1), cross)


def _private_chains(p: Poset, lengths: list[int], stem: str) -> Poset:
    """Chain of ``lengths[x]`` fresh elements under each original x and everything above x."""
    name = _fresh(p, stem)
    names: list[str] = []
    owner: list[int] = []
    for x, length in enumerate(lengths):
        for t in range(length):
            names.append(name(x, t))
            owner.append(x)
    k = len(names)
    extra = np.zeros((k, k), dtype=bool)
    cross = np.zeros((k, p.n), dtype=bool)
    start = 0
    for x, length in enumerate(lengths):
        block = slice(start, start + length)
        extra[block, block] = np.triu(np.ones((length, length), dtype=bool), 1)
        cross[block, x] = True
        cross[block] |= p.matrix[x]
        start += length
    return _assemble(p, names, extra, cross)


def lift_scatter(p: Poset) -> Poset:
    """The i-th element of a level order gets a private chain of i elements below it.

    Every original element ends up alone on its own level.
    """
    if p.n == 0:
        raise PosetError("lift needs a nonempty order")
    f = level_linear_extension(p)
    lengths = [0] * p.n
    for i, orig in enumerate(f):
        lengths[orig] = i
    return _private_chains(p, lengths, "s")


def lift_gap(p: Poset, gamma: int | None = None) -> Poset:
    """Private chains of ``gamma * level(x)`` elements, so levels become multiples of gamma.

    ``p`` stays level-induced; consecutive levels of ``p`` end up ``gamma``
    levels apart.  Default ``gamma`` is ``len(p) + 1``.
    """
    if gamma is None:
        gamma = p.n + 1
    if gamma < 1:
        raise PosetError("gamma must be at least 1")
    lv = LevelDecomposition.of(p).level_array
    return _private_chains(p, [gamma * int(v) for v in lv], "g")


def lift_single_chain(p: Poset, gamma: int) -> Poset:
    """One shared chain of ``gamma * height(p)`` elements; an element on level l
    sits above the first ``gamma * l`` of them.
    """
    if gamma < 2:
        raise PosetError("gamma must be at least 2")
    ld = LevelDecomposition.of(p)
    length = gamma * ld.height
    name = _fresh(p, "k")
    chain = [name(i) for i in range(length)]
    cross = np.zeros((length, p.n), dtype=bool)
    for x, lvl in enumerate(ld.level_array):
        cross[: gamma * int(lvl), x] = True
    return _assemble(p, chain, np.triu(np.ones((length, length), dtype=bool), 1), cross)


def lift_split_tail(chain_size: int) -> Poset:
    """Host for a chain of ``chain_size >= 3`` plus a point with no level-induced copy.

    A main chain x0 < ... < x(s-1) and a side chain z0 < ... < z(s-2); z_i lies
    below x_j for i < j except that the top side element z(s-2) is below nothing.
    The only point beside the full main chain is z(s-2), on level s-2, while the
    chain bottom x0 is on level 0.
    """
    s = chain_size
    if s < 3:
        raise PosetError("chain must have at least 3 elements")
    main = [f"x{i}" for i in range(s)]
    side = [f"z{i}" for i in range(s - 1)]
    rels = [(main[i], main[i + 1]) for i in range(s - 1)] + [(side[i], side[i + 1]) for i in range(s - 2)]
    rels += [(side[i], main[j]) for i in range(s - 2) for j in range(i + 1, s)]
    return Poset.from_relations(main + side, rels)
