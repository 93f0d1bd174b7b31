"""Level decomposition, gaps, and the three suborder kinds."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from posetlevels import _backend
from posetlevels.poset import Poset, PosetError, UnknownElementError, parse_json, to_json_dict


@dataclass(frozen=True, eq=False)
class LevelDecomposition:
    """Level of every element plus a predecessor witness one level down.

    ``pred_ref[x]`` is below ``x`` on level ``level[x] - 1`` (None on level 0);
    following it yields a longest chain ending at ``x``.
    """

    poset: Poset
    level_array: np.ndarray = field(repr=False)
    pred_array: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, p: Poset) -> "LevelDecomposition":
        level, pred = _backend.kernels.level_sweep(p.kernel_matrix)
        level.setflags(write=False)
        pred.setflags(write=False)
        return cls(p, level, pred)

    @cached_property
    def level(self) -> dict[str, int]:
        return dict(zip(self.poset.elements, map(int, self.level_array)))

    @cached_property
    def pred_ref(self) -> dict[str, str | None]:
        e = self.poset.elements
        return {e[i]: (e[j] if j >= 0 else None) for i, j in enumerate(self.pred_array)}

    @property
    def height(self) -> int:
        return int(self.level_array.max()) + 1 if self.poset.n else 0

    @cached_property
    def order(self) -> np.ndarray:
        """Element indices sorted by (level, index)."""
        o = np.lexsort((np.arange(self.poset.n), self.level_array)).astype(np.int64)
        o.setflags(write=False)
        return o

    @cached_property
    def starts(self) -> np.ndarray:
        s = np.searchsorted(self.level_array[self.order], np.arange(self.height + 1)).astype(np.int64)
        s.setflags(write=False)
        return s

    @cached_property
    def levels(self) -> tuple[tuple[str, ...], ...]:
        e = self.poset.elements
        o, s = self.order, self.starts
        return tuple(tuple(e[i] for i in o[s[l] : s[l + 1]]) for l in range(self.height))

    @property
    def width(self) -> int:
        return max((len(l) for l in self.levels), default=0)

    def __getitem__(self, element: str) -> int:
        try:
            return self.level[element]
        except KeyError:
            raise UnknownElementError(f"unknown element {element!r}") from None

    def chain_down(self, element: str, steps: int) -> list[str]:
        """``element`` followed by ``steps`` predecessor references."""
        out = [element]
        for _ in range(steps):
            nxt = self.pred_ref[out[-1]]
            if nxt is None:
                raise ValueError(f"{element!r} has no chain of {steps + 1} elements below it")
            out.append(nxt)
        return out


def level_decomposition(p: Poset) -> LevelDecomposition:
    return LevelDecomposition.of(p)


def gap(l: LevelDecomposition, x: str, y: str) -> int:
    return abs(l[x] - l[y])


def set_gap(l: LevelDecomposition, xs: Iterable[str]) -> int:
    xs = list(dict.fromkeys(xs))
    if len(xs) < 2:
        raise ValueError("set gap needs at least two elements")
    values = [l[x] for x in xs]
    return max(values) - min(values)


class EmbeddingKind(enum.IntEnum):
    INDUCED = 1
    LEVEL_INDUCED = 2
    CONSECUTIVE_LEVEL_INDUCED = 3

    @property
    def cli_name(self) -> str:
        return {1: "induced", 2: "level", 3: "consecutive"}[self.value]

    @classmethod
    def from_name(cls, name: str) -> "EmbeddingKind":
        table = {
            "induced": cls.INDUCED,
            "level": cls.LEVEL_INDUCED,
            "level-induced": cls.LEVEL_INDUCED,
            "consecutive": cls.CONSECUTIVE_LEVEL_INDUCED,
        }
        try:
            return table[name.lower()]
        except KeyError:
            raise ValueError(f"unknown embedding kind {name!r}") from None


class NotInduced(ValueError):
    """The map changes the order function on ``witness``."""

    def __init__(self, witness: tuple[str, str], pattern_rel: str, host_rel: str):
        self.witness = witness
        self.pattern_rel = pattern_rel
        self.host_rel = host_rel
        super().__init__(
            f"not an induced embedding: {witness[0]} {pattern_rel} {witness[1]} in the pattern "
            f"but images are {host_rel}"
        )


def _check_map(pattern: Poset, host: Poset, mapping: Mapping[str, str]) -> None:
    if set(mapping) != set(pattern.elements):
        raise PosetError("map must be total on the pattern elements")
    images = list(mapping.values())
    for im in images:
        host.index(im)
    if len(set(images)) != len(images):
        raise PosetError("map is not injective")


def _induced_witness(pattern: Poset, host: Poset, mapping: Mapping[str, str]):
    for x, y in itertools.combinations(pattern.elements, 2):
        a, b = pattern.order_function(x, y), host.order_function(mapping[x], mapping[y])
        if a != b:
            return (x, y), a, b
    return None


def level_equality_preserved(pl, hl, mapping) -> bool:
    keys = list(mapping)
    return all(
        (pl[x] == pl[y]) == (hl[mapping[x]] == hl[mapping[y]]) for x, y in itertools.combinations(keys, 2)
    )


def gaps_preserved(pl, hl, mapping) -> bool:
    keys = list(mapping)
    return all(
        abs(pl[x] - pl[y]) == abs(hl[mapping[x]] - hl[mapping[y]]) for x, y in itertools.combinations(keys, 2)
    )


def successor_levels_preserved(pl, hl, mapping) -> bool:
    """Finite two-condition form: level equality and ``+1`` steps both carried over."""
    if not level_equality_preserved(pl, hl, mapping):
        return False
    keys = list(mapping)
    return all(
        (pl[x] + 1 == pl[y]) == (hl[mapping[x]] + 1 == hl[mapping[y]]) for x, y in itertools.permutations(keys, 2)
    )


def classify_embedding(
    pattern: Poset,
    host: Poset,
    mapping: Mapping[str, str],
    host_levels: LevelDecomposition | None = None,
    pattern_levels: LevelDecomposition | None = None,
) -> EmbeddingKind:
    """Strongest suborder kind realised by ``mapping``.

    Raises :class:`NotInduced` when the order function is not preserved.
    The consecutive check is computed both from gap equality and from the
    finite level/successor criterion; a disagreement is a bug and raises.
    """
    _check_map(pattern, host, mapping)
    bad = _induced_witness(pattern, host, mapping)
    if bad is not None:
        raise NotInduced(*bad)
    pl = (pattern_levels or LevelDecomposition.of(pattern)).level
    hl = (host_levels or LevelDecomposition.of(host)).level
    if not level_equality_preserved(pl, hl, mapping):
        return EmbeddingKind.INDUCED
    by_gaps = gaps_preserved(pl, hl, mapping)
    by_steps = successor_levels_preserved(pl, hl, mapping)
    if by_gaps != by_steps:
        raise RuntimeError("gap-equality and successor-level criteria disagree")
    return EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED if by_gaps else EmbeddingKind.LEVEL_INDUCED


def try_classify(pattern: Poset, host: Poset, mapping: Mapping[str, str], **kw) -> EmbeddingKind | None:
    try:
        return classify_embedding(pattern, host, mapping, **kw)
    except NotInduced:
        return None


@dataclass(frozen=True)
class Embedding:
    pattern: Poset
    host: Poset
    mapping: dict[str, str]
    kind: EmbeddingKind

    @classmethod
    def verified(
        cls, pattern: Poset, host: Poset, mapping: Mapping[str, str], host_levels: LevelDecomposition | None = None
    ) -> "Embedding":
        mapping = {e: mapping[e] for e in pattern.elements}
        kind = classify_embedding(pattern, host, mapping, host_levels=host_levels)
        return cls(pattern, host, mapping, kind)

    @property
    def image(self) -> tuple[str, ...]:
        return tuple(self.mapping[e] for e in self.pattern.elements)

    def to_json_dict(self) -> dict:
        return {
            "pattern": to_json_dict(self.pattern),
            "mapping": dict(self.mapping),
            "kind": self.kind.cli_name,
        }

    @staticmethod
    def from_json_dict(data: dict, host: Poset) -> "Embedding":
        """Rebuild and re-verify; the stored ``kind`` is not trusted."""
        return Embedding.verified(parse_json(data["pattern"]), host, data["mapping"])

    def __hash__(self) -> int:
        return hash((self.pattern, self.host, tuple(sorted(self.mapping.items()))))
