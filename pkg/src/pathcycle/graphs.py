"""Graphs whose connected components are paths or cycles.

A graph is written in word notation: components separated by ``|``, a bare
word for a path and a parenthesized word for a cycle, e.g.
``4|567|(1)|(23)|(890)``.  Labels are opaque string tokens.  A word without
commas is read one character per label; a word containing a comma is split on
commas (``10,11,12``), and a single multi-character label is written with a
trailing comma (``10,``).

Cycles on one and two vertices are not simple graphs (a loop and a double
edge) and are distinct from the paths on the same vertex sets.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Iterable, Iterator, Mapping

from .errors import DuplicateLabel, LabelClash, LabelNotPresent, ParseError

PATH = "path"
CYCLE = "cycle"
_KIND_ORDER = {PATH: 0, CYCLE: 1}
_RESERVED = set("|(),")

IsoClass = tuple  # sorted tuple of (kind, size) pairs


def _check_label(label: str) -> str:
    if not isinstance(label, str):
        label = str(label)
    if not label or any(ch in _RESERVED or ch.isspace() for ch in label):
        raise ParseError(f"invalid label {label!r}")
    return label


def as_label_set(labels: Iterable) -> frozenset[str]:
    """Coerce an iterable of labels (strings or ints) to a frozenset of str."""
    if isinstance(labels, str):
        labels = [labels]
    return frozenset(str(x) for x in labels)


class Component:
    """A connected path or cycle, stored in canonical orientation.

    Paths read from their smaller endpoint.  Cycles start at their smallest
    label and run in the direction whose second label is smaller.
    """

    __slots__ = ("kind", "vertices", "_hash")

    def __init__(self, kind: str, vertices: Iterable[str]):
        if kind not in _KIND_ORDER:
            raise ValueError(f"unknown component kind {kind!r}")
        vs = tuple(_check_label(v) for v in vertices)
        if not vs:
            raise ParseError("a component needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise DuplicateLabel(f"repeated label in component {vs}")
        if kind == PATH:
            if vs[-1] < vs[0]:
                vs = vs[::-1]
        else:
            i = vs.index(min(vs))
            vs = vs[i:] + vs[:i]
            if len(vs) > 2 and vs[-1] < vs[1]:
                vs = (vs[0],) + vs[:0:-1]
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "_hash", hash((kind, vs)))

    @classmethod
    def _trusted(cls, kind: str, vertices) -> "Component":
        """Build from labels already known to be valid and distinct."""
        self = object.__new__(cls)
        vs = tuple(vertices)
        if kind == PATH:
            if vs[-1] < vs[0]:
                vs = vs[::-1]
        else:
            i = vs.index(min(vs))
            vs = vs[i:] + vs[:i]
            if len(vs) > 2 and vs[-1] < vs[1]:
                vs = (vs[0],) + vs[:0:-1]
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "_hash", hash((kind, vs)))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Component is immutable")

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_path(self) -> bool:
        return self.kind == PATH

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE

    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def num_edges(self) -> int:
        return self.size if self.is_cycle else self.size - 1

    def sort_key(self):
        first = self.vertices[0] if self.is_cycle else min(self.vertices[0], self.vertices[-1])
        return (self.size, _KIND_ORDER[self.kind], first)

    def word(self) -> str:
        vs = self.vertices
        if all(len(v) == 1 for v in vs):
            body = "".join(vs)
        elif len(vs) == 1:
            body = vs[0] + ","
        else:
            body = ",".join(vs)
        return f"({body})" if self.is_cycle else body

    def __eq__(self, other):
        if not isinstance(other, Component):
            return NotImplemented
        return self._hash == other._hash and self.kind == other.kind and self.vertices == other.vertices

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Component({self.kind!r}, {self.vertices!r})"


class LabeledGraph:
    """An element of the species of sets of paths and cycles on a label set."""

    __slots__ = ("components", "_ground", "_hash")

    def __init__(self, components: Iterable[Component] = ()):
        comps = tuple(sorted(components, key=Component.sort_key))
        seen: set[str] = set()
        for c in comps:
            for v in c.vertices:
                if v in seen:
                    raise DuplicateLabel(f"label {v!r} appears twice")
                seen.add(v)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_ground", frozenset(seen))
        object.__setattr__(self, "_hash", hash(comps))

    def __setattr__(self, name, value):
        raise AttributeError("LabeledGraph is immutable")

    @property
    def ground_set(self) -> frozenset[str]:
        return self._ground

    def __len__(self) -> int:
        return len(self._ground)

    def __iter__(self) -> Iterator[Component]:
        return iter(self.components)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def is_empty(self) -> bool:
        return not self.components

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def is_path(self) -> bool:
        return len(self.components) == 1 and self.components[0].is_path

    def is_cycle(self) -> bool:
        return len(self.components) == 1 and self.components[0].is_cycle

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self._hash == other._hash and self.components == other.components

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "LabeledGraph") -> bool:
        return str(self) < str(other)

    def __str__(self) -> str:
        return "|".join(c.word() for c in self.components)

    def __repr__(self) -> str:
        return f"LabeledGraph({str(self)!r})"

    def to_json(self) -> dict:
        return {"components": [{"kind": c.kind, "vertices": list(c.vertices)} for c in self.components]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "LabeledGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            comps = [Component(c["kind"], c["vertices"]) for c in data["components"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed graph JSON: {exc}") from exc
        return cls(comps)


EMPTY = LabeledGraph()


def _tokens(word: str) -> list[str]:
    if "," in word:
        parts = [t.strip() for t in word.split(",")]
        if parts[-1] == "":
            parts.pop()
        if not parts or any(p == "" for p in parts):
            raise ParseError(f"empty token in {word!r}")
        return parts
    if any(ch.isspace() for ch in word):
        raise ParseError(f"whitespace inside word {word!r}")
    return list(word)


def parse_graph(text: str) -> LabeledGraph:
    """Parse word notation into a :class:`LabeledGraph`.

    >>> str(parse_graph("765|4|(32)|(1)|(908)"))
    '4|(1)|(23)|567|(089)'
    """
    text = text.strip()
    if not text:
        return EMPTY
    comps = []
    for raw in text.split("|"):
        w = raw.strip()
        if not w:
            raise ParseError(f"empty component in {text!r}")
        if w[0] == "(":
            if w[-1] != ")" or len(w) < 2:
                raise ParseError(f"unbalanced parentheses in {w!r}")
            kind, inner = CYCLE, w[1:-1].strip()
        else:
            kind, inner = PATH, w
        if "(" in inner or ")" in inner:
            raise ParseError(f"malformed parentheses in {w!r}")
        if not inner:
            raise ParseError(f"empty component in {text!r}")
        comps.append(Component(kind, _tokens(inner)))
    counts = Counter(v for c in comps for v in c.vertices)
    dups = sorted(v for v, k in counts.items() if k > 1)
    if dups:
        raise DuplicateLabel(f"repeated labels {dups} in {text!r}")
    return LabeledGraph(comps)


def as_graph(g: LabeledGraph | str) -> LabeledGraph:
    return parse_graph(g) if isinstance(g, str) else g


def path_graph(n: int, start: int = 1) -> LabeledGraph:
    """The standard path ``12...n`` on labels ``start..start+n-1``."""
    if n == 0:
        return EMPTY
    return LabeledGraph([Component(PATH, [str(i) for i in range(start, start + n)])])


def cycle_graph(n: int, start: int = 1) -> LabeledGraph:
    """The standard cycle ``(12...n)``."""
    if n == 0:
        return EMPTY
    return LabeledGraph([Component(CYCLE, [str(i) for i in range(start, start + n)])])


def iso_class(g: LabeledGraph) -> IsoClass:
    """Sorted multiset of ``(kind, size)``; equal iff the graphs are isomorphic."""
    return tuple(sorted((c.kind, c.size) for c in g.components))


def _subset(g: LabeledGraph, S) -> frozenset[str]:
    S = as_label_set(S)
    missing = S - g.ground_set
    if missing:
        raise LabelNotPresent(f"labels {sorted(missing)} not in ground set of {g}")
    return S


def restrict(g: LabeledGraph, S) -> LabeledGraph:
    """``g|_S``: join retained vertices along threads through removed ones.

    A path keeps its retained vertices in order.  A cycle keeps them in cyclic
    order and stays a cycle, so one survivor carries a loop and two survivors
    a double edge.
    """
    S = _subset(g, S)
    out = []
    for c in g.components:
        kept = [v for v in c.vertices if v in S]
        if not kept:
            continue
        out.append(c if len(kept) == c.size else Component._trusted(c.kind, kept))
    return LabeledGraph(out)


def _runs(vertices: tuple[str, ...], keep, cyclic: bool) -> list[list[str]]:
    if cyclic:
        # start right after a removed vertex so no run wraps around
        i = next(i for i, v in enumerate(vertices) if v not in keep)
        vertices = vertices[i + 1:] + vertices[: i + 1]
    runs, cur = [], []
    for v in vertices:
        if v in keep:
            cur.append(v)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def contract(g: LabeledGraph, S) -> LabeledGraph:
    """``g/_S``: the induced subgraph on the complement of ``S``."""
    S = _subset(g, S)
    out = []
    for c in g.components:
        if S.isdisjoint(c.vertices):
            out.append(c)
            continue
        keep = c.vertex_set() - S
        if not keep:
            continue
        out.extend(Component._trusted(PATH, r) for r in _runs(c.vertices, keep, c.is_cycle))
    return LabeledGraph(out)


def induced_subgraph(g: LabeledGraph, T) -> LabeledGraph:
    """``g:T``, the same operation as contracting the complement of ``T``."""
    T = _subset(g, T)
    return contract(g, g.ground_set - T)


def disjoint_union(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    clash = g1.ground_set & g2.ground_set
    if clash:
        raise LabelClash(f"labels {sorted(clash)} appear in both factors")
    return LabeledGraph(g1.components + g2.components)


def relabel(g: LabeledGraph, mapping: Mapping[str, str]) -> LabeledGraph:
    return LabeledGraph(Component(c.kind, [mapping[v] for v in c.vertices]) for c in g.components)


def standard_form(g: LabeledGraph) -> tuple[LabeledGraph, dict[str, str]]:
    """Relabel ``g`` onto ``0..n-1`` in a way that depends only on its iso class.

    Returns the standard graph and the map from standard labels back to the
    labels of ``g``.
    """
    back: dict[str, str] = {}
    comps = []
    for c in sorted(g.components, key=lambda c: (c.size, _KIND_ORDER[c.kind], c.vertices)):
        new = []
        for v in c.vertices:
            lab = str(len(back))
            back[lab] = v
            new.append(lab)
        comps.append(Component(c.kind, new))
    return LabeledGraph(comps), back
