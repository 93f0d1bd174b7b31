"""Polynomial-time search for ali and nacli pattern families inside a host order.

Every finder returns a verified :class:`Embedding` (pattern element -> host
element) or None.  Loop orders are fixed: levels ascending and, inside a
level, host element order, so results are reproducible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from posetlevels import _backend
from posetlevels.levels import Embedding, EmbeddingKind, LevelDecomposition
from posetlevels.poset import Poset, inverse

KINDS = ("chain", "chainpoint", "based11", "based21", "ended11", "ended21", "nacli")


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class PatternSpec:
    """A member of one of the searchable pattern families.

    ``size`` is the chain size for ``chain``/``chainpoint``/``nacli`` and the
    total element count for the based/ended families; ``extra`` is the number
    of antichain elements beside the chain bottom for ``nacli``.
    """

    kind: str
    size: int
    extra: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PatternError(f"unknown pattern family {self.kind!r}")
        if self.size < 1 or self.extra < 0:
            raise PatternError("pattern parameters must be positive")
        if self.kind == "chainpoint" and self.size > 2:
            raise PatternError("chain plus point is only searchable for chains of 1 or 2 elements")
        if self.kind in ("based11", "ended11") and self.size < 3:
            raise PatternError("(1,1) families need at least 3 elements")
        if self.kind in ("based21", "ended21") and self.size < 4:
            raise PatternError("(2,1) families need at least 4 elements")

    @classmethod
    def parse(cls, text: str) -> "PatternSpec":
        m = re.fullmatch(r"\s*([a-z0-9]+)\s*:\s*(\d+)(?:\s*\+\s*(\d+))?\s*", text)
        if not m:
            raise PatternError(f"cannot parse pattern {text!r}; expected e.g. chain:5 or nacli:3+4")
        kind, size, extra = m.group(1), int(m.group(2)), m.group(3)
        if (extra is not None) != (kind == "nacli"):
            raise PatternError("only nacli patterns take a '+r' suffix, and they require it")
        return cls(kind, size, int(extra or 0))

    def __str__(self) -> str:
        return f"{self.kind}:{self.size}" + (f"+{self.extra}" if self.kind == "nacli" else "")

    @property
    def total(self) -> int:
        if self.kind == "chainpoint":
            return self.size + 1
        if self.kind == "nacli":
            return self.size + self.extra
        return self.size

    @property
    def guaranteed_kind(self) -> EmbeddingKind:
        if self.kind in ("based11", "based21"):
            return EmbeddingKind.LEVEL_INDUCED
        if self.kind in ("ended11", "ended21"):
            return EmbeddingKind.INDUCED
        return EmbeddingKind.CONSECUTIVE_LEVEL_INDUCED

    @property
    def is_ali(self) -> bool:
        return self.kind in ("chain", "chainpoint", "based11", "based21")

    @property
    def is_nacli(self) -> bool:
        return self.kind in ("chain", "chainpoint", "nacli")

    @cached_property
    def poset(self) -> Poset:
        """The pattern order; chain elements are ``c0 < c1 < ...`` bottom up."""
        k, s = self.kind, self.size
        if k == "chain":
            return _build([f"c{i}" for i in range(s)], _chain_pairs(s))
        if k == "chainpoint":
            return _build([f"c{i}" for i in range(s)] + ["p"], _chain_pairs(s))
        if k == "nacli":
            return _build([f"c{i}" for i in range(s)] + [f"y{i}" for i in range(1, self.extra + 1)], _chain_pairs(s))
        if k in ("based11", "ended11"):
            top = s - 2
            names = ["a", "b"] + [f"c{i}" for i in range(top)]
            rels = _chain_pairs(top) + [(base, "c0") for base in ("a", "b")]
            p = _build(names, rels)
        else:
            top = s - 3
            names = ["a", "b", "w"] + [f"c{i}" for i in range(top)]
            rels = [("a", "b"), ("b", "c0"), ("w", "c0")] + _chain_pairs(top)
            p = _build(names, rels)
        return inverse(p) if k.startswith("ended") else p


def _chain_pairs(s: int) -> list[tuple[str, str]]:
    return [(f"c{i}", f"c{i + 1}") for i in range(s - 1)]


def _build(names, rels) -> Poset:
    return Poset.from_relations(names, rels)


# -- longest chains upward ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SlcTable:
    """Size of the longest chain starting at each element, with a successor witness."""

    poset: Poset
    slc_array: np.ndarray
    succ_array: np.ndarray

    @cached_property
    def slc(self) -> dict[str, int]:
        return dict(zip(self.poset.elements, map(int, self.slc_array)))

    @cached_property
    def succ_ref(self) -> dict[str, str | None]:
        e = self.poset.elements
        return {e[i]: (e[j] if j >= 0 else None) for i, j in enumerate(self.succ_array)}

    def chain_up(self, element: str, steps: int) -> list[str]:
        out = [element]
        for _ in range(steps):
            nxt = self.succ_ref[out[-1]]
            if nxt is None:
                raise ValueError(f"{element!r} starts no chain of {steps + 1} elements")
            out.append(nxt)
        return out


def compute_slc(p: Poset, l: LevelDecomposition | None = None) -> SlcTable:
    l = l or LevelDecomposition.of(p)
    slc, succ = _backend.kernels.slc_sweep(p.kernel_matrix, l.order)
    return SlcTable(p, slc, succ)


# -- finders -------------------------------------------------------------------


def _finish(spec: PatternSpec, host: Poset, mapping: dict, l: LevelDecomposition) -> Embedding:
    emb = Embedding.verified(spec.poset, host, mapping, host_levels=l)
    if emb.kind < spec.guaranteed_kind:
        raise RuntimeError(f"{spec} finder produced a {emb.kind.name} embedding")
    return emb


def find_chain(p: Poset, s: int, l: LevelDecomposition | None = None) -> Embedding | None:
    if s < 1:
        raise PatternError("chain size must be positive")
    l = l or LevelDecomposition.of(p)
    if l.height < s:
        return None
    top = l.levels[s - 1][0]
    chain = l.chain_down(top, s - 1)[::-1]
    return _finish(PatternSpec("chain", s), p, {f"c{i}": e for i, e in enumerate(chain)}, l)


def _chain_antichain(p: Poset, spec: PatternSpec, s: int, r: int, point_names, l) -> Embedding | None:
    l = l or LevelDecomposition.of(p)
    if l.height < s:
        return None
    hit = _backend.kernels.scan_chain_antichain(p.kernel_matrix, l.order, l.starts, s, r)
    if hit is None:
        return None
    x, ys = hit
    e = p.elements
    chain = l.chain_down(e[x], s - 1)[::-1]
    mapping = {f"c{i}": v for i, v in enumerate(chain)}
    mapping.update({name: e[y] for name, y in zip(point_names, ys)})
    return _finish(spec, p, mapping, l)


def find_chain_plus_point(p: Poset, s: int, l: LevelDecomposition | None = None) -> Embedding | None:
    """Chain of ``s`` (1 or 2) elements plus a point incomparable to it."""
    spec = PatternSpec("chainpoint", s)
    return _chain_antichain(p, spec, s, 1, ["p"], l)


def find_nacli(p: Poset, s: int, r: int, l: LevelDecomposition | None = None) -> Embedding | None:
    """Chain of ``s`` elements plus ``r`` elements level with its bottom, as a consecutive copy."""
    spec = PatternSpec("nacli", s, r)
    return _chain_antichain(p, spec, s, r, [f"y{i}" for i in range(1, r + 1)], l)


def _based11_mapping(p, k, l, slc):
    hit = _backend.kernels.scan_based11(p.kernel_matrix, l.level_array, l.order, l.starts, slc.slc_array, k)
    if hit is None:
        return None
    x, a, b = (p.elements[i] for i in hit)
    mapping = {"a": a, "b": b}
    mapping.update({f"c{i}": v for i, v in enumerate(slc.chain_up(x, k - 3))})
    return mapping


def _based21_mapping(p, k, l, slc):
    hit = _backend.kernels.scan_based21(p.kernel_matrix, l.level_array, l.order, l.starts, slc.slc_array, k)
    if hit is None:
        return None
    x, y, below_y, beside_y = (p.elements[i] for i in hit)
    mapping = {"a": below_y, "b": y, "w": beside_y}
    mapping.update({f"c{i}": v for i, v in enumerate(slc.chain_up(x, k - 4))})
    return mapping


def find_based11(p: Poset, k: int, l: LevelDecomposition | None = None) -> Embedding | None:
    """Two incomparable elements below a chain, ``k`` elements in total."""
    spec = PatternSpec("based11", k)
    l = l or LevelDecomposition.of(p)
    mapping = _based11_mapping(p, k, l, compute_slc(p, l))
    return None if mapping is None else _finish(spec, p, mapping, l)


def find_based21(p: Poset, k: int, l: LevelDecomposition | None = None) -> Embedding | None:
    """A two-chain plus a point below a chain, ``k`` elements in total."""
    spec = PatternSpec("based21", k)
    l = l or LevelDecomposition.of(p)
    mapping = _based21_mapping(p, k, l, compute_slc(p, l))
    return None if mapping is None else _finish(spec, p, mapping, l)


def find_ended(p: Poset, k: int, variant: int, l: LevelDecomposition | None = None) -> Embedding | None:
    """Inverse families: search the based family in the inverse order, map back.

    The copy is induced in ``p``; level conditions are only guaranteed with
    respect to the inverse order's levels.
    """
    if variant not in (11, 21):
        raise PatternError("ended variant must be 11 or 21")
    spec = PatternSpec(f"ended{variant}", k)
    q = inverse(p)
    lq = LevelDecomposition.of(q)
    search = _based11_mapping if variant == 11 else _based21_mapping
    mapping = search(q, k, lq, compute_slc(q, lq))
    if mapping is None:
        return None
    return _finish(spec, p, mapping, l or LevelDecomposition.of(p))


def find_pattern(p: Poset, spec: PatternSpec | str, l: LevelDecomposition | None = None) -> Embedding | None:
    if isinstance(spec, str):
        spec = PatternSpec.parse(spec)
    k = spec.kind
    if k == "chain":
        return find_chain(p, spec.size, l)
    if k == "chainpoint":
        return find_chain_plus_point(p, spec.size, l)
    if k == "nacli":
        return find_nacli(p, spec.size, spec.extra, l)
    if k == "based11":
        return find_based11(p, spec.size, l)
    if k == "based21":
        return find_based21(p, spec.size, l)
    return find_ended(p, spec.size, int(k[-2:]), l)


def ali_specs(max_total: int) -> list[PatternSpec]:
    """Every searchable ali pattern with at most ``max_total`` elements."""
    specs = [PatternSpec("chain", s) for s in range(1, max_total + 1)]
    specs += [PatternSpec("chainpoint", s) for s in (1, 2) if s + 1 <= max_total]
    specs += [PatternSpec("based11", k) for k in range(3, max_total + 1)]
    specs += [PatternSpec("based21", k) for k in range(4, max_total + 1)]
    return specs


def ended_specs(max_total: int) -> list[PatternSpec]:
    return [PatternSpec("ended11", k) for k in range(3, max_total + 1)] + [
        PatternSpec("ended21", k) for k in range(4, max_total + 1)
    ]


def nacli_specs(max_total: int) -> list[PatternSpec]:
    return [PatternSpec("nacli", s, r) for s in range(1, max_total + 1) for r in range(0, max_total - s + 1)]
