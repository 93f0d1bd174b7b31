"""Finite strict partial orders.

A :class:`Poset` is an ordered tuple of element ids plus a dense boolean
matrix ``matrix[i, j]`` meaning ``elements[i] < elements[j]``.  The matrix is
always transitively closed; every constructor that accepts user relations
closes them and rejects cycles.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np


class PosetError(ValueError):
    """Base class for malformed order input."""


class PosetSyntaxError(PosetError):
    pass


class CycleError(PosetError):
    pass


class DuplicateElementError(PosetError):
    pass


class UnknownElementError(PosetError, KeyError):
    def __str__(self) -> str:
        return ValueError.__str__(self)


# order function values
EQ, LT, GT, INC = "=", "<", ">", "~"


def transitive_closure(matrix: np.ndarray) -> np.ndarray:
    """Reachability closure (Warshall), vectorised over rows."""
    m = np.array(matrix, dtype=bool, copy=True)
    for k in range(m.shape[0]):
        col = m[:, k]
        if col.any():
            m[col] |= m[k]
    return m


@dataclass(frozen=True, eq=False)
class Poset:
    elements: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=bool)
        n = len(self.elements)
        if m.shape != (n, n):
            raise PosetError(f"matrix shape {m.shape} does not match {n} elements")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "matrix", m)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_relations(
        cls, elements: Iterable[str], relations: Iterable[tuple[str, str]] = ()
    ) -> "Poset":
        elements = tuple(elements)
        index: dict[str, int] = {}
        for i, e in enumerate(elements):
            if e in index:
                raise DuplicateElementError(f"duplicate element {e!r}")
            index[e] = i
        m = np.zeros((len(elements), len(elements)), dtype=bool)
        for x, y in relations:
            for e in (x, y):
                if e not in index:
                    raise UnknownElementError(f"relation mentions unknown element {e!r}")
            m[index[x], index[y]] = True
        m = transitive_closure(m)
        diag = np.flatnonzero(np.diag(m))
        if diag.size:
            raise CycleError(
                f"relations contain a cycle through {elements[diag[0]]!r}; not a partial order"
            )
        return cls(elements, m)

    @classmethod
    def chain(cls, size: int, prefix: str = "c") -> "Poset":
        names = [f"{prefix}{i}" for i in range(size)]
        return cls(tuple(names), np.triu(np.ones((size, size), dtype=bool), 1))

    @classmethod
    def antichain(cls, size: int, prefix: str = "a") -> "Poset":
        return cls(tuple(f"{prefix}{i}" for i in range(size)), np.zeros((size, size), dtype=bool))

    @classmethod
    def empty(cls) -> "Poset":
        return cls((), np.zeros((0, 0), dtype=bool))

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self._index

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, element: str) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElementError(f"unknown element {element!r}") from None

    def less(self, x: str, y: str) -> bool:
        return bool(self.matrix[self.index(x), self.index(y)])

    def comparable(self, x: str, y: str) -> bool:
        i, j = self.index(x), self.index(y)
        return bool(self.matrix[i, j] or self.matrix[j, i])

    def order_function(self, x: str, y: str) -> str:
        i, j = self.index(x), self.index(y)
        if i == j:
            return EQ
        if self.matrix[i, j]:
            return LT
        if self.matrix[j, i]:
            return GT
        return INC

    @cached_property
    def relations(self) -> frozenset[tuple[str, str]]:
        e = self.elements
        return frozenset((e[i], e[j]) for i, j in zip(*np.nonzero(self.matrix)))

    @cached_property
    def comparability(self) -> np.ndarray:
        c = self.matrix | self.matrix.T
        c.setflags(write=False)
        return c

    @cached_property
    def kernel_matrix(self) -> np.ndarray:
        """C-contiguous uint8 copy of the relation, the layout the kernels take."""
        return np.ascontiguousarray(self.matrix, dtype=np.uint8)

    def is_chain(self) -> bool:
        n = self.n
        return int(self.matrix.sum()) == n * (n - 1) // 2

    def is_antichain(self) -> bool:
        return not self.matrix.any()

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.elements, np.packbits(self.matrix).tobytes()))

    def same_order(self, other: "Poset") -> bool:
        """Equal as labeled orders, ignoring element sequence."""
        return set(self.elements) == set(other.elements) and self.relations == other.relations

    def __repr__(self) -> str:
        rels = ", ".join(f"{x}<{y}" for x, y in sorted(covers(self)))
        return f"Poset([{', '.join(self.elements)}]; {rels})"

    # -- reshaping ---------------------------------------------------------

    def reordered(self, order: Sequence[str]) -> "Poset":
        if sorted(order) != sorted(self.elements):
            raise PosetError("reordering must be a permutation of the elements")
        idx = [self.index(e) for e in order]
        return Poset(tuple(order), self.matrix[np.ix_(idx, idx)])

    def renamed(self, mapping: Mapping[str, str]) -> "Poset":
        names = tuple(mapping.get(e, e) for e in self.elements)
        if len(set(names)) != len(names):
            raise DuplicateElementError("renaming collapses distinct elements")
        return Poset(names, self.matrix)


# -- operations ----------------------------------------------------------------


def inverse(p: Poset) -> Poset:
    return Poset(p.elements, p.matrix.T)


def induced(p: Poset, subset: Iterable[str]) -> Poset:
    """Restriction of ``p`` to ``subset``; element order follows ``p``."""
    wanted = set(subset)
    for e in wanted:
        p.index(e)
    idx = [i for i, e in enumerate(p.elements) if e in wanted]
    return Poset(tuple(p.elements[i] for i in idx), p.matrix[np.ix_(idx, idx)])


def _combine(parts: Sequence[Poset], ordered: bool) -> Poset:
    if not parts:
        raise PosetError("need at least one part")
    names: list[str] = []
    sizes = []
    for k, part in enumerate(parts):
        names.extend(f"{k}.{e}" for e in part.elements)
        sizes.append(part.n)
    n = len(names)
    m = np.zeros((n, n), dtype=bool)
    start = 0
    for part, size in zip(parts, sizes):
        stop = start + size
        m[start:stop, start:stop] = part.matrix
        if ordered:
            m[start:stop, stop:] = True
        start = stop
    return Poset(tuple(names), m)


def disjoint_sum(parts: Sequence[Poset]) -> Poset:
    """Parallel composition; ids become ``"<part index>.<id>"``."""
    return _combine(parts, ordered=False)


def order_composition(parts: Sequence[Poset]) -> Poset:
    """Series composition: every element of part i is below every element of part j > i."""
    return _combine(parts, ordered=True)


def covers(p: Poset) -> set[tuple[str, str]]:
    m = p.matrix.astype(np.uint8)
    # x<y is a cover iff no z with x<z<y
    through = (m @ m) > 0
    cov = p.matrix & ~through
    e = p.elements
    return {(e[i], e[j]) for i, j in zip(*np.nonzero(cov))}


# -- parsing / serialisation ---------------------------------------------------


def parse_text(text: str) -> Poset:
    """One ``x < y`` per line; a line holding a single id declares an element.

    Blank lines and ``#`` comments are ignored.
    """
    elements: dict[str, None] = {}
    relations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<" in line:
            parts = [s.strip() for s in line.split("<")]
            if len(parts) != 2 or not all(parts) or any(len(s.split()) != 1 for s in parts):
                raise PosetSyntaxError(f"line {lineno}: expected 'x < y', got {raw!r}")
            x, y = parts
            elements.setdefault(x)
            elements.setdefault(y)
            relations.append((x, y))
        else:
            tokens = line.split()
            if len(tokens) != 1 or ">" in line:
                raise PosetSyntaxError(f"line {lineno}: expected 'x < y', got {raw!r}")
            elements.setdefault(tokens[0])
    return Poset.from_relations(elements, relations)


def parse_json(text: str | dict) -> Poset:
    if isinstance(text, str):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PosetSyntaxError(f"invalid JSON: {exc}") from None
    else:
        data = text
    if not isinstance(data, dict) or "elements" not in data:
        raise PosetSyntaxError("JSON poset must be an object with an 'elements' list")
    elements = data["elements"]
    relations = data.get("relations", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise PosetSyntaxError("'elements' must be a list of strings")
    if not isinstance(relations, list) or not all(
        isinstance(r, list) and len(r) == 2 and all(isinstance(e, str) for e in r) for r in relations
    ):
        raise PosetSyntaxError("'relations' must be a list of [x, y] string pairs")
    return Poset.from_relations(elements, [tuple(r) for r in relations])


def parse_poset(text: str, fmt: str | None = None) -> Poset:
    """Parse text or JSON; ``fmt=None`` autodetects (JSON iff it starts with ``{``)."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "text"
    if fmt == "json":
        return parse_json(text)
    if fmt == "text":
        return parse_text(text)
    raise PosetSyntaxError(f"unknown format {fmt!r}")


def to_json_dict(p: Poset) -> dict:
    idx = p._index
    rels = sorted(covers(p), key=lambda r: (idx[r[0]], idx[r[1]]))
    return {"elements": list(p.elements), "relations": [list(r) for r in rels]}


def to_text(p: Poset) -> str:
    idx = p._index
    lines = [f"{x} < {y}" for x, y in sorted(covers(p), key=lambda r: (idx[r[0]], idx[r[1]]))]
    touched = {e for r in covers(p) for e in r}
    lines.extend(e for e in p.elements if e not in touched)
    return "\n".join(lines) + ("\n" if lines else "")


def to_dot(p: Poset, levels: Sequence[Sequence[str]] | None = None, name: str = "poset") -> str:
    """Hasse diagram in DOT, bottom-up, one ``rank=same`` group per level."""
    def node(e: str) -> str:
        return json.dumps(e)

    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    if levels is not None:
        for k, level in enumerate(levels):
            lines.append(f"  {{ rank=same; /* level {k} */ " + " ".join(node(e) + ";" for e in level) + " }")
    else:
        lines.extend(f"  {node(e)};" for e in p.elements)
    idx = p._index
    for x, y in sorted(covers(p), key=lambda r: (idx[r[0]], idx[r[1]])):
        lines.append(f"  {node(x)} -> {node(y)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
