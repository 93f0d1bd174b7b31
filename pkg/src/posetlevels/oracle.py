"""Brute-force ground truth: embedding search, poset enumeration, canonical forms."""
from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from posetlevels import _backend
from posetlevels.levels import Embedding, EmbeddingKind, LevelDecomposition, try_classify
from posetlevels.poset import Poset, transitive_closure

MAX_ENUMERATION_SIZE = 7
_NAMES = "abcdefghijklmnopqrstuvwxyz"


def order_codes(p: Poset) -> np.ndarray:
    """Order function as int8 codes: 0 '=', 1 '<', 2 '>', 3 '~'."""
    m = p.matrix
    codes = np.full(m.shape, 3, dtype=np.int8)
    codes[m.T] = 2
    codes[m] = 1
    np.fill_diagonal(codes, 0)
    return codes


def oracle_find(
    pattern: Poset,
    host: Poset,
    kind: EmbeddingKind = EmbeddingKind.INDUCED,
    host_levels: LevelDecomposition | None = None,
    kernels=None,
) -> Embedding | None:
    """Lexicographically first injective map realising at least ``kind``.

    Exhaustive backtracking over host elements in index order, pruned by the
    pairwise order function (and level equality / level differences for the
    stronger kinds, which are pairwise conditions as well).
    """
    kernels = kernels or _backend.kernels
    kind = EmbeddingKind(kind)
    hl = host_levels or LevelDecomposition.of(host)
    pl = LevelDecomposition.of(pattern)
    res = kernels.oracle_search(
        order_codes(pattern),
        order_codes(host),
        pl.level_array,
        hl.level_array,
        int(kind),
        pattern.matrix.sum(axis=0).astype(np.int64),
        pattern.matrix.sum(axis=1).astype(np.int64),
        host.matrix.sum(axis=0).astype(np.int64),
        host.matrix.sum(axis=1).astype(np.int64),
    )
    if res is None:
        return None
    mapping = {pattern.elements[i]: host.elements[j] for i, j in enumerate(res)}
    emb = Embedding.verified(pattern, host, mapping, host_levels=hl)
    if emb.kind < kind:
        raise RuntimeError("oracle search returned a map weaker than requested")
    return emb


def oracle_find_bruteforce(pattern: Poset, host: Poset, kind: EmbeddingKind) -> Embedding | None:
    """Second oracle: every injective map in lexicographic order, judged by classify_embedding."""
    hl = LevelDecomposition.of(host)
    pl = LevelDecomposition.of(pattern)
    for image in itertools.permutations(host.elements, pattern.n):
        mapping = dict(zip(pattern.elements, image))
        got = try_classify(pattern, host, mapping, host_levels=hl, pattern_levels=pl)
        if got is not None and got >= kind:
            return Embedding(pattern, host, mapping, got)
    return None


# -- enumeration -------------------------------------------------------------


def _names(n: int) -> tuple[str, ...]:
    return tuple(_NAMES[:n]) if n <= len(_NAMES) else tuple(f"e{i}" for i in range(n))


def _down_closed_sets(m: np.ndarray) -> list[int]:
    """All down-closed subsets of the order ``m`` as bitmasks."""
    n = m.shape[0]
    below = [sum(1 << j for j in range(n) if m[j, i]) for i in range(n)]
    out = []
    for mask in range(1 << n):
        ok = True
        rest = mask
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if below[i] & ~mask:
                ok = False
                break
        if ok:
            out.append(mask)
    return out


def _extensions(m: np.ndarray) -> Iterator[np.ndarray]:
    """Every way to add element n to the order on 0..n-1 without changing it."""
    n = m.shape[0]
    downs = _down_closed_sets(m)
    full = (1 << n) - 1
    above_of = [sum(1 << j for j in range(n) if m[i, j]) for i in range(n)]
    for d in downs:
        # every element of the up-set must be above every element of d
        allowed = full & ~d
        rest = d
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            allowed &= above_of[i]
        for u_comp in downs:
            u = full & ~u_comp
            if u & ~allowed or u & d:
                continue
            new = np.zeros((n + 1, n + 1), dtype=bool)
            new[:n, :n] = m
            for i in range(n):
                if d >> i & 1:
                    new[i, n] = True
                if u >> i & 1:
                    new[n, i] = True
            yield new


def enumerate_posets(n: int) -> Iterator[Poset]:
    """Every labeled poset on ``n`` elements (ids ``a``, ``b``, ...), each exactly once.

    Each (n-1)-poset is extended by a new element with a down-set D and an
    up-set U (complement of a down-set) such that D is entirely below U.
    """
    if n < 0 or n > MAX_ENUMERATION_SIZE:
        raise ValueError(f"enumeration limited to 0 <= n <= {MAX_ENUMERATION_SIZE}")
    names = _names(n)
    for m in _enumerate_matrices(n):
        yield Poset(names, m)


def _enumerate_matrices(n: int) -> Iterator[np.ndarray]:
    if n == 0:
        yield np.zeros((0, 0), dtype=bool)
        return
    for m in _enumerate_matrices(n - 1):
        yield from _extensions(m)


def count_posets_bruteforce(n: int) -> int:
    """Independent count: test every relation on n points for being a strict order.

    Relations are bitmasks over the n(n-1) off-diagonal pairs, checked for
    antisymmetry and transitivity with vectorised bit tests.
    """
    if n > 5:
        raise ValueError("brute-force count is limited to n <= 5")
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    bit = {p: k for k, p in enumerate(pairs)}
    rel = np.arange(1 << len(pairs), dtype=np.int64)
    ok = np.ones(rel.shape, dtype=bool)

    def has(i, j):
        return (rel >> bit[(i, j)]) & 1 == 1

    for i, j in itertools.combinations(range(n), 2):
        ok &= ~(has(i, j) & has(j, i))
    for i, j, k in itertools.permutations(range(n), 3):
        ok &= ~(has(i, j) & has(j, k)) | has(i, k)
    return int(ok.sum())


# -- isomorphism -------------------------------------------------------------


def _refined_colors(m: np.ndarray) -> list[int]:
    n = m.shape[0]
    colors = [0] * n
    while True:
        sig = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in range(n) if m[j, i])),
                tuple(sorted(colors[j] for j in range(n) if m[i, j])),
            )
            for i in range(n)
        ]
        table = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [table[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(p: Poset) -> tuple[int, bytes]:
    """Isomorphism invariant that is complete: equal iff the orders are isomorphic.

    Colour refinement orders the elements coarsely; the minimum packed matrix
    over all orderings consistent with the colour classes is returned.
    """
    n = p.n
    m = p.matrix
    colors = _refined_colors(m)
    classes = [[i for i in range(n) if colors[i] == c] for c in sorted(set(colors))]
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [i for part in parts for i in part]
        key = np.packbits(m[np.ix_(perm, perm)]).tobytes()
        if best is None or key < best:
            best = key
    return n, best or b""


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return p.n == q.n and canonical_form(p) == canonical_form(q)


def enumerate_unlabeled(n: int) -> list[Poset]:
    """One representative per isomorphism class on ``n`` elements.

    Built by adding a new maximal element (any down-closed set below it) to
    every representative on n-1 elements, deduplicated by canonical form.
    """
    if n < 0 or n > MAX_ENUMERATION_SIZE:
        raise ValueError(f"enumeration limited to 0 <= n <= {MAX_ENUMERATION_SIZE}")
    return list(_unlabeled(n))


_UNLABELED_CACHE: dict[int, list[Poset]] = {}


def _unlabeled(n: int) -> list[Poset]:
    if n in _UNLABELED_CACHE:
        return _UNLABELED_CACHE[n]
    if n == 0:
        reps = [Poset.empty()]
    else:
        names = _names(n)
        seen: dict[tuple[int, bytes], Poset] = {}
        for rep in _unlabeled(n - 1):
            for d in _down_closed_sets(rep.matrix):
                new = np.zeros((n, n), dtype=bool)
                new[: n - 1, : n - 1] = rep.matrix
                for i in range(n - 1):
                    if d >> i & 1:
                        new[i, n - 1] = True
                q = Poset(names, new)
                seen.setdefault(canonical_form(q), q)
        reps = list(seen.values())
    _UNLABELED_CACHE[n] = reps
    return reps


# -- random orders -------------------------------------------------------------


def random_poset(n: int, rng: np.random.Generator, density: float | None = None) -> Poset:
    """Random graph order: edges i<j of a random permutation kept with probability ``density``."""
    if density is None:
        density = rng.uniform(0.05, 0.6)
    perm = rng.permutation(n)
    upper = np.triu(rng.random((n, n)) < density, 1)
    m = np.zeros((n, n), dtype=bool)
    m[np.ix_(perm, perm)] = upper
    return Poset(tuple(f"v{i}" for i in range(n)), transitive_closure(m))
