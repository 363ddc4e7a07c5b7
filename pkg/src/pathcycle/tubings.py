"""Tubes, tubings and the tubing formulas for the antipode of paths and cycles.

Tubings are enumerated as cliques of the pairwise compatibility relation on
proper tubes.  Two tubes are compatible when they are nested, or disjoint with
no edge between them.  The pairwise form of the "no union of disjoint tubes is
a tube" axiom is exact: a union of pairwise disjoint tubes is connected iff
some two of them are joined by an edge.

Also here: the interval-counting formulas for cycles and their brute-force
counterparts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, prod
from typing import Iterable, Iterator, Mapping

from .errors import InvalidMultiset, NotATubing, NotConnected
from .graphs import CYCLE, PATH, Component, LabeledGraph, _tokens, as_graph, as_label_set
from .hopf import LinearCombination

Tube = frozenset


# ---------------------------------------------------------------------------
# bitmask view of a graph


class _Index:
    """Vertex numbering and neighbour masks for one graph."""

    def __init__(self, g: LabeledGraph):
        self.graph = g
        self.labels: list[str] = []
        for c in g.components:
            self.labels.extend(c.vertices)
        self.pos = {v: i for i, v in enumerate(self.labels)}
        self.nbr = [0] * len(self.labels)
        self.component_masks: list[int] = []
        for c in g.components:
            idx = [self.pos[v] for v in c.vertices]
            self.component_masks.append(sum(1 << i for i in idx))
            m = len(idx)
            pairs = zip(idx, idx[1:]) if c.is_path else ((idx[i], idx[(i + 1) % m]) for i in range(m))
            for a, b in pairs:
                self.nbr[a] |= 1 << b
                self.nbr[b] |= 1 << a

    def mask(self, labels: Iterable[str]) -> int:
        try:
            return sum(1 << self.pos[v] for v in labels)
        except KeyError as exc:
            raise NotATubing(f"label {exc.args[0]!r} not in the graph") from None

    def labelset(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in _bits(mask))

    def neighbourhood(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.nbr[i]
        return out

    def connected(self, mask: int) -> bool:
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            grow = self.neighbourhood(frontier) & mask & ~seen
            seen |= grow
            frontier = grow
        return seen == mask

    def compatible(self, a: int, b: int) -> bool:
        inter = a & b
        if inter:
            return inter == a or inter == b
        return not (self.neighbourhood(a) & b)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _tube_masks(ix: _Index) -> list[int]:
    out: list[int] = []
    for c, full in zip(ix.graph.components, ix.component_masks):
        idx = [ix.pos[v] for v in c.vertices]
        m = len(idx)
        if c.is_path:
            for i in range(m):
                for j in range(i, m):
                    out.append(sum(1 << idx[p] for p in range(i, j + 1)))
        else:
            out.append(full)
            for i in range(m):
                for length in range(1, m):
                    out.append(sum(1 << idx[(i + p) % m] for p in range(length)))
    return sorted(set(out), key=lambda t: (_popcount(t), t))


# ---------------------------------------------------------------------------
# tubes and tubings


def _sorted_tubes(tubes: Iterable[frozenset[str]]) -> list[list[str]]:
    return sorted((sorted(t) for t in tubes), key=lambda t: (len(t), t))


@dataclass(frozen=True)
class Tubing:
    tubes: frozenset[frozenset[str]]

    def __len__(self) -> int:
        return len(self.tubes)

    def __iter__(self):
        return iter(self.tubes)

    def __contains__(self, tube) -> bool:
        return as_label_set(tube) in self.tubes

    def depth(self, label: str) -> int:
        """Number of tubes containing ``label``."""
        return sum(1 for t in self.tubes if label in t)

    def to_json(self) -> dict:
        return {"tubes": _sorted_tubes(self.tubes)}

    @classmethod
    def from_json(cls, data: Mapping) -> "Tubing":
        return cls(frozenset(frozenset(str(v) for v in t) for t in data["tubes"]))

    def __repr__(self) -> str:
        return "Tubing({" + ", ".join("".join(t) if all(len(v) == 1 for v in t) else ",".join(t)
                                       for t in _sorted_tubes(self.tubes)) + "})"


def make_tubing(tubes: Iterable[Iterable]) -> Tubing:
    """Build a tubing from label collections; a string is read as a word (``"123"``)."""
    return Tubing(frozenset(frozenset(_tokens(t)) if isinstance(t, str) else as_label_set(t) for t in tubes))


def enumerate_tubes(g: LabeledGraph | str) -> list[frozenset[str]]:
    """All nonempty vertex sets inducing a connected subgraph, by size."""
    g = as_graph(g)
    ix = _Index(g)
    return [ix.labelset(m) for m in _tube_masks(ix)]


def _tubing_masks(ix: _Index) -> Iterator[tuple[int, ...]]:
    comps = set(ix.component_masks)
    proper = [t for t in _tube_masks(ix) if t not in comps]
    n = len(proper)
    compat = []
    for i, a in enumerate(proper):
        row = 0
        for j, b in enumerate(proper):
            if i != j and ix.compatible(a, b):
                row |= 1 << j
        compat.append(row)
    base = tuple(sorted(comps))

    def extend(chosen: tuple[int, ...], candidates: int):
        yield base + chosen
        while candidates:
            low = candidates & -candidates
            j = low.bit_length() - 1
            candidates ^= low
            yield from extend(chosen + (proper[j],), candidates & compat[j])

    yield from extend((), (1 << n) - 1)


def enumerate_tubings(g: LabeledGraph | str) -> list[Tubing]:
    """Every tubing of ``g``; the first one is the minimum tubing of components."""
    g = as_graph(g)
    ix = _Index(g)
    names: dict[int, frozenset[str]] = {}
    out = []
    for masks in _tubing_masks(ix):
        tubes = []
        for m in masks:
            t = names.get(m)
            if t is None:
                t = names[m] = ix.labelset(m)
            tubes.append(t)
        out.append(Tubing(frozenset(tubes)))
    return out


def _validated_masks(ix: _Index, t: Tubing | Iterable) -> list[int]:
    tubes = t.tubes if isinstance(t, Tubing) else [as_label_set(x) for x in t]
    masks = [ix.mask(x) for x in tubes]
    if len(set(masks)) != len(masks):
        raise NotATubing("repeated tube")
    for m in masks:
        if not ix.connected(m):
            raise NotATubing(f"{sorted(ix.labelset(m))} is not a tube")
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not ix.compatible(a, b):
                raise NotATubing(f"tubes {sorted(ix.labelset(a))} and {sorted(ix.labelset(b))} are incompatible")
    missing = set(ix.component_masks) - set(masks)
    if missing:
        raise NotATubing("a tubing must contain every connected component")
    return masks


def is_tubing(g: LabeledGraph | str, t: Tubing | Iterable) -> bool:
    try:
        _validated_masks(_Index(as_graph(g)), t)
    except NotATubing:
        return False
    return True


def is_maximal_tubing(g: LabeledGraph | str, t: Tubing) -> bool:
    g = as_graph(g)
    return is_tubing(g, t) and len(t) == len(g)


# ---------------------------------------------------------------------------
# partition and graph of a tubing


@dataclass(frozen=True)
class TubingDecomposition:
    partition: frozenset[frozenset[str]]
    graph: LabeledGraph
    zero_block: frozenset[str] | None = None

    @property
    def nonzero_blocks(self) -> frozenset[frozenset[str]]:
        return frozenset(b for b in self.partition if b != self.zero_block)


def _block_masks(masks) -> list[int]:
    """Blocks of a tubing: classes of vertices lying in exactly the same tubes."""
    whole = 0
    for m in masks:
        whole |= m
    blocks = [whole] if whole else []
    for m in masks:
        nxt = []
        for b in blocks:
            inside, outside = b & m, b & ~m
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        blocks = nxt
    return blocks


def _decompose_masks(ix: _Index, masks: Iterable[int]):
    """Blocks and components of ``g(t)`` for a connected host, from tube masks."""
    comp = ix.graph.components[0]
    seq = [ix.pos[v] for v in comp.vertices]
    n = len(seq)
    cyclic = comp.is_cycle
    full = ix.component_masks[0]
    masks = sorted(set(masks) | {full}, key=_popcount)
    at = {bit: p for p, bit in enumerate(seq)}

    def run_between(a: int, b: int) -> int:
        run, q = 0, (a + 1) % n
        while q != b:
            run |= 1 << seq[q]
            q = (q + 1) % n
        return run

    out = []
    for block in _block_masks(masks):
        host_tube = next(m for m in masks if m & block == block)
        inner = [m for m in masks if m != host_tube and m & host_tube == m]
        order = sorted(at[i] for i in _bits(block))
        pairs = list(zip(order, order[1:]))
        if cyclic:
            pairs.append((order[-1], order[0]))
        edges = []
        for a, b in pairs:
            run = run_between(a, b)
            if run == 0:
                edges.append(cyclic or b == a + 1)
            else:
                edges.append(any(run & t == run for t in inner))
        labels = [ix.labels[seq[p]] for p in order]
        missing = [i for i, ok in enumerate(edges) if not ok]
        if cyclic and not missing:
            c = Component._trusted(CYCLE, labels)
        elif cyclic and len(missing) == 1:
            cut = missing[0] + 1
            c = Component._trusted(PATH, labels[cut:] + labels[:cut])
        elif not cyclic and not missing:
            c = Component._trusted(PATH, labels)
        else:
            raise NotATubing("tubing produced a disconnected block")
        out.append((block, host_tube == full, c))
    return out


def decompose_tubing(g: LabeledGraph | str, t: Tubing | Iterable) -> TubingDecomposition:
    """Partition ``pi(t)`` and graph ``g(t)`` of a tubing of a path or cycle.

    Vertices share a block when they lie in the same set of tubes.  Inside a
    block, two vertices are joined when they are adjacent in ``g`` or linked
    by a thread through a tube strictly inside the block's smallest tube.  For
    a cycle the block lying only in the maximal tube is the zero block.
    """
    g = as_graph(g)
    if not g.is_connected():
        raise NotConnected(f"{g} is not a single path or cycle")
    ix = _Index(g)
    masks = _validated_masks(ix, t)
    parts = _decompose_masks(ix, masks)
    partition = frozenset(ix.labelset(b) for b, _, _ in parts)
    zero = None
    if g.is_cycle():
        zero = next(ix.labelset(b) for b, top, _ in parts if top)
    return TubingDecomposition(partition, LabeledGraph(c for _, _, c in parts), zero)


def antipode_tubings(g: LabeledGraph | str) -> LinearCombination:
    """Antipode of a path or cycle as a signed sum over its tubings."""
    g = as_graph(g)
    if g.is_empty():
        return LinearCombination({g: 1})
    if not g.is_connected():
        raise NotConnected(f"{g} is not a single path or cycle; use antipode_by_components")
    ix = _Index(g)
    acc: dict[LabeledGraph, int] = {}
    for masks in _tubing_masks(ix):
        h = LabeledGraph(c for _, _, c in _decompose_masks(ix, masks))
        acc[h] = acc.get(h, 0) + (-1) ** len(masks)
    return LinearCombination(acc)


def tubing_terms(g: LabeledGraph | str) -> Iterator[tuple[Tubing, TubingDecomposition]]:
    """Each tubing of a path or cycle with its decomposition."""
    g = as_graph(g)
    for t in enumerate_tubings(g):
        yield t, decompose_tubing(g, t)


# ---------------------------------------------------------------------------
# interval counting on a cycle


def _multiplicities(lengths: Mapping[int, int] | Iterable[int]) -> Counter:
    if isinstance(lengths, Mapping):
        m = Counter({int(k): int(v) for k, v in lengths.items() if v})
    else:
        m = Counter(int(x) for x in lengths)
    if any(k < 1 for k in m) or any(v < 0 for v in m.values()):
        raise InvalidMultiset(f"interval lengths must be positive: {dict(m)}")
    return m


def count_interval_partitions(n: int, lengths: Mapping[int, int] | Iterable[int]) -> int:
    """Partitions of an ``n``-cycle into intervals with the given lengths.

    ``lengths`` is either the list of lengths or a map ``length -> count``.
    Equals ``n (k-1)! / prod j_i!`` with ``k`` the number of intervals.
    """
    j = _multiplicities(lengths)
    k = sum(j.values())
    if k < 2:
        raise InvalidMultiset("at least two intervals are required")
    if sum(i * c for i, c in j.items()) != n:
        raise InvalidMultiset(f"lengths {dict(j)} do not sum to {n}")
    num = n * factorial(k - 1)
    den = prod(factorial(c) for c in j.values())
    q, r = divmod(num, den)
    assert r == 0
    return q


def count_decompositions(n: int, k: int, lengths: Mapping[int, int] | Iterable[int]) -> int:
    """Subsets ``S`` of an ``n``-cycle with ``|S| = k`` whose complement has the given
    maximal-interval lengths.

    With ``r`` intervals, ``j_1 = k - r`` and ``j_{l+1}`` counts intervals of
    length ``l``; the count is ``n (k-1)! / prod j_i!``.
    """
    if k < 1 or n < k:
        raise InvalidMultiset(f"need 1 <= k <= n, got n={n}, k={k}")
    gaps = _multiplicities(lengths)
    r = sum(gaps.values())
    if r > k:
        raise InvalidMultiset(f"{r} intervals cannot be separated by {k} points")
    if k + sum(i * c for i, c in gaps.items()) != n:
        raise InvalidMultiset(f"k + sum of lengths must equal n={n}")
    if k == n:
        return 1
    j = Counter({i + 1: c for i, c in gaps.items()})
    j[1] = k - r
    num = n * factorial(k - 1)
    den = prod(factorial(c) for c in j.values())
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def cycle_intervals(n: int) -> list[tuple[int, ...]]:
    """Proper intervals of the cycle ``0 -> 1 -> ... -> n-1 -> 0``, each listed in order."""
    return [tuple((i + p) % n for p in range(length)) for i in range(n) for length in range(1, n)]


def interval_partitions(n: int) -> list[frozenset[tuple[int, ...]]]:
    """Brute force: all partitions of the ``n``-cycle into at least two intervals."""
    intervals = cycle_intervals(n)
    full = (1 << n) - 1
    masks = [(sum(1 << v for v in iv), iv) for iv in intervals]
    out = []

    def grow(covered: int, chosen: list):
        if covered == full:
            if len(chosen) >= 2:
                out.append(frozenset(chosen))
            return
        first = (~covered & -~covered).bit_length() - 1
        for m, iv in masks:
            if m >> first & 1 and not m & covered:
                grow(covered | m, chosen + [iv])

    grow(0, [])
    return out


def complement_runs(n: int, S: Iterable[int]) -> list[tuple[int, ...]]:
    """Maximal intervals of the cycle induced on the complement of ``S``."""
    S = set(S)
    if not S:
        raise ValueError("S must be nonempty")
    start = next(iter(sorted(S)))
    runs, cur = [], []
    for q in range(1, n + 1):
        v = (start + q) % n
        if v in S:
            if cur:
                runs.append(tuple(cur))
                cur = []
        else:
            cur.append(v)
    return runs


def right_endpoints(intervals: Iterable[tuple[int, ...]]) -> frozenset[int]:
    """Map a partition into intervals to the set of their last elements."""
    return frozenset(iv[-1] for iv in intervals)


def intervals_from_endpoints(n: int, S: Iterable[int]) -> frozenset[tuple[int, ...]]:
    """Inverse of :func:`right_endpoints`: attach to each run of the complement
    the point of ``S`` that follows it."""
    S = frozenset(S)
    out = set()
    used = set()
    for run in complement_runs(n, S):
        nxt = (run[-1] + 1) % n
        out.add(run + (nxt,))
        used.add(nxt)
    out.update((s,) for s in S - used)
    return frozenset(out)


def multiset_key(lengths: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(lengths))


def brute_interval_counts(n: int) -> Counter:
    """``(sorted lengths) -> number of interval partitions`` by enumeration."""
    return Counter(multiset_key(len(iv) for iv in p) for p in interval_partitions(n))


def brute_decomposition_counts(n: int) -> Counter:
    """``(k, sorted complement-run lengths) -> number of subsets`` by enumeration."""
    out: Counter = Counter()
    for mask in range(1, 1 << n):
        S = [v for v in range(n) if mask >> v & 1]
        out[(len(S), multiset_key(len(r) for r in complement_runs(n, S)))] += 1
    return out


def valid_interval_multisets(n: int) -> Iterator[tuple[int, ...]]:
    """All multisets of at least two positive lengths summing to ``n``."""
    def parts(rem: int, most: int):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, most), 0, -1):
            for rest in parts(rem - p, p):
                yield (p,) + rest

    for p in parts(n, n):
        if len(p) >= 2:
            yield tuple(sorted(p))


def valid_decomposition_shapes(n: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All ``(k, lengths)`` allowed for a cycle of size ``n``."""
    for k in range(1, n + 1):
        rest = n - k

        def parts(rem: int, most: int, room: int):
            if rem == 0:
                yield ()
                return
            if room == 0:
                return
            for p in range(min(rem, most), 0, -1):
                for tail in parts(rem - p, p, room - 1):
                    yield (p,) + tail

        for p in parts(rest, rest, k):
            yield k, tuple(sorted(p))
