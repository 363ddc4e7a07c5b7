"""Linear combinations of graphs and the Hopf operations on them.

The antipode here is computed straight from the Milnor-Moore recursion

    s(x) = - sum_{S nonempty} x|_S . s(x/_S),    s(empty) = empty,

and serves as the brute-force reference for the closed formulas in
:mod:`pathcycle.tubings` and :mod:`pathcycle.noncrossing`.
"""

from __future__ import annotations

import json
import threading
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import LabelClash
from .graphs import (
    EMPTY,
    LabeledGraph,
    as_graph,
    contract,
    disjoint_union,
    iso_class,
    relabel,
    restrict,
    standard_form,
    _subset,
)

Scalar = Union[int, Fraction]


class LinearCombination:
    """Formal sum of labeled graphs on one ground set with rational coefficients.

    Zero coefficients are never stored.  The zero combination has no ground
    set of its own and is compatible with any other.
    """

    __slots__ = ("_terms", "_ground")

    def __init__(self, terms: Mapping[LabeledGraph, Scalar] | Iterable[tuple[LabeledGraph, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[LabeledGraph, Fraction] = {}
        for g, c in items:
            acc[g] = acc.get(g, 0) + Fraction(c)
        self._terms = {g: c for g, c in acc.items() if c != 0}
        grounds = {g.ground_set for g in self._terms}
        if len(grounds) > 1:
            raise ValueError("all terms of a linear combination must share one ground set")
        self._ground = grounds.pop() if grounds else None

    @classmethod
    def of(cls, g: LabeledGraph | str, coeff: Scalar = 1) -> "LinearCombination":
        return cls({as_graph(g): coeff})

    @property
    def ground_set(self) -> frozenset[str] | None:
        return self._ground

    def terms(self) -> dict[LabeledGraph, Fraction]:
        return dict(self._terms)

    def __getitem__(self, g: LabeledGraph | str) -> Fraction:
        return self._terms.get(as_graph(g), Fraction(0))

    def __iter__(self) -> Iterator[tuple[LabeledGraph, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: str(kv[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        out = dict(self._terms)
        for g, c in other._terms.items():
            out[g] = out.get(g, 0) + c
        return LinearCombination(out)

    def __neg__(self) -> "LinearCombination":
        return LinearCombination({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LinearCombination):
            return lc_product(self, other)
        if isinstance(other, (int, Fraction)):
            return LinearCombination({g: c * other for g, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def relabel(self, mapping: Mapping[str, str]) -> "LinearCombination":
        return LinearCombination({relabel(g, mapping): c for g, c in self._terms.items()})

    def map_graphs(self, f: Callable[[LabeledGraph], object]) -> dict:
        """Push coefficients forward along ``f`` (e.g. :func:`iso_class`)."""
        out: dict = {}
        for g, c in self._terms.items():
            k = f(g)
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c != 0}

    def by_iso_class(self) -> dict:
        return self.map_graphs(iso_class)

    def to_json(self) -> list[dict]:
        return [{"coeff": _fraction_str(c), "graph": str(g)} for g, c in self]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "LinearCombination":
        from .graphs import parse_graph

        if isinstance(data, str):
            data = json.loads(data)
        return cls([(parse_graph(t["graph"]), Fraction(t["coeff"])) for t in data])

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for g, c in self:
            name = str(g) or "()"
            parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{name!r}" if abs(c) != 1 else f"{'+' if c > 0 else '-'} {name!r}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


UNIT = LinearCombination({EMPTY: 1})


def lc_product(x: LinearCombination, y: LinearCombination) -> LinearCombination:
    """Bilinear extension of disjoint union."""
    if x._ground is not None and y._ground is not None and x._ground & y._ground:
        raise LabelClash(f"labels {sorted(x._ground & y._ground)} appear in both factors")
    out: dict[LabeledGraph, Fraction] = {}
    for g1, c1 in x._terms.items():
        for g2, c2 in y._terms.items():
            g = disjoint_union(g1, g2)
            out[g] = out.get(g, 0) + c1 * c2
    return LinearCombination(out)


class CoproductTerm(NamedTuple):
    restriction: LabeledGraph
    contraction: LabeledGraph


def coproduct(g: LabeledGraph | str, S) -> CoproductTerm:
    g = as_graph(g)
    S = _subset(g, S)
    return CoproductTerm(restrict(g, S), contract(g, S))


def nonempty_subsets(labels) -> Iterator[frozenset[str]]:
    items = sorted(labels)
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def all_subsets(labels) -> Iterator[frozenset[str]]:
    yield frozenset()
    yield from nonempty_subsets(labels)


class _Memo:
    """Cache of antipodes of standard graphs; inserts are idempotent."""

    def __init__(self):
        self._data: dict[LabeledGraph, LinearCombination] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()


_MM_MEMO = _Memo()


def _antipode_mm_standard(g: LabeledGraph) -> LinearCombination:
    hit = _MM_MEMO.get(g)
    if hit is not None:
        return hit
    if g.is_empty():
        return _MM_MEMO.put(g, UNIT)
    acc: dict[LabeledGraph, Fraction] = {}
    for S in nonempty_subsets(g.ground_set):
        r = restrict(g, S)
        for h, c in antipode_mm(contract(g, S))._terms.items():
            term = disjoint_union(r, h)
            acc[term] = acc.get(term, 0) - c
    return _MM_MEMO.put(g, LinearCombination(acc))


def antipode_mm(g: LabeledGraph | str) -> LinearCombination:
    """Antipode by the Milnor-Moore recursion, memoized per isomorphism class."""
    g = as_graph(g)
    std, back = standard_form(g)
    res = _antipode_mm_standard(std)
    return res.relabel(back)


def antipode_of_product(x: LabeledGraph | str, y: LabeledGraph | str,
                        antipode: Callable[[LabeledGraph], LinearCombination] = antipode_mm) -> LinearCombination:
    """``s(x.y) = s(y).s(x)`` for graphs on disjoint label sets."""
    x, y = as_graph(x), as_graph(y)
    if x.ground_set & y.ground_set:
        raise LabelClash(f"labels {sorted(x.ground_set & y.ground_set)} appear in both factors")
    return lc_product(antipode(y), antipode(x))


def antipode_by_components(g: LabeledGraph | str,
                           connected: Callable[[LabeledGraph], LinearCombination]) -> LinearCombination:
    """Extend an antipode formula for connected graphs to all graphs.

    Uses that the antipode reverses products; since disjoint union is
    commutative the order of the factors is immaterial.
    """
    g = as_graph(g)
    parts = [connected(LabeledGraph([c])) for c in g.components]
    return reduce(lc_product, parts, UNIT)
