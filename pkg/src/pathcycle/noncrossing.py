"""Noncrossing partitions of paths, pointed noncrossing partitions of cycles,
adjacent closures and the grouping-free antipode formulas."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod
from typing import Iterable, Sequence

from .errors import NotAClosure, NotACycle, NotAPath
from .graphs import Component, LabeledGraph, as_graph, contract, restrict
from .hopf import LinearCombination


def catalan(m: int) -> int:
    """``C_m = binom(2m, m) / (m + 1)`` with ``C_0 = C_1 = 1``."""
    return comb(2 * m, m) // (m + 1)


def _host(g: LabeledGraph | Component, want_cycle: bool) -> Component:
    if isinstance(g, Component):
        comp = g
    else:
        g = as_graph(g)
        if not g.is_connected():
            raise (NotACycle if want_cycle else NotAPath)(f"{g} is not a single component")
        comp = g.components[0]
    if want_cycle and not comp.is_cycle:
        raise NotACycle(f"{comp.word()} is not a cycle")
    if not want_cycle and not comp.is_path:
        raise NotAPath(f"{comp.word()} is not a path")
    return comp



def is_noncrossing(blocks: Iterable[Iterable[str]], word: Sequence[str]) -> bool:
    """No ``a < b < c < d`` along ``word`` with ``a, c`` in one block and ``b, d`` in another."""
    pos = {v: i for i, v in enumerate(word)}
    owner = {}
    for k, b in enumerate(blocks):
        for v in b:
            owner[pos[v]] = k
    seq = [owner[i] for i in range(len(word))]
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[b] == seq[a]:
                continue
            for c in range(b + 1, n):
                if seq[c] != seq[a]:
                    continue
                for d in range(c + 1, n):
                    if seq[d] == seq[b]:
                        return False
    return True


@dataclass(frozen=True)
class NCPartition:
    blocks: frozenset[frozenset[str]]
    host: Component

    def __len__(self) -> int:
        return len(self.blocks)

    def sorted_blocks(self) -> list[list[str]]:
        pos = {v: i for i, v in enumerate(self.host.vertices)}
        return sorted((sorted(b, key=pos.__getitem__) for b in self.blocks), key=lambda b: pos[b[0]])

    def to_json(self) -> dict:
        return {"blocks": self.sorted_blocks()}

    def __repr__(self) -> str:
        return "NC{" + ", ".join("".join(b) for b in self.sorted_blocks()) + "}"


@dataclass(frozen=True)
class PointedNCPartition:
    zero_block: frozenset[str]
    nonzero_blocks: frozenset[frozenset[str]]
    host: Component

    def __len__(self) -> int:
        return 1 + len(self.nonzero_blocks)

    @property
    def blocks(self) -> frozenset[frozenset[str]]:
        return self.nonzero_blocks | {self.zero_block}

    def sorted_nonzero(self) -> list[list[str]]:
        pos = {v: i for i, v in enumerate(self.host.vertices)}
        return sorted((sorted(b, key=pos.__getitem__) for b in self.nonzero_blocks), key=lambda b: pos[b[0]])

    def to_json(self) -> dict:
        pos = {v: i for i, v in enumerate(self.host.vertices)}
        return {"zero": sorted(self.zero_block, key=pos.__getitem__), "blocks": self.sorted_nonzero()}

    def __repr__(self) -> str:
        pos = {v: i for i, v in enumerate(self.host.vertices)}
        zero = "".join(sorted(self.zero_block, key=pos.__getitem__))
        return f"PNC(0={zero}; " + ", ".join("".join(b) for b in self.sorted_nonzero()) + ")"


@lru_cache(maxsize=None)
def _nc_positions(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Noncrossing partitions of ``0..n-1``, blocks as sorted position tuples.

    Recurses on the successor of ``0`` inside its block: the stretch strictly
    between them is partitioned on its own, and the successor's block in the
    remainder absorbs ``0``.
    """
    if n == 0:
        return ((),)
    out = []
    for rest in _nc_positions(n - 1):
        out.append(((0,),) + tuple(tuple(p + 1 for p in b) for b in rest))
    for j in range(1, n):
        for inner in _nc_positions(j - 1):
            inner_blocks = tuple(tuple(p + 1 for p in b) for b in inner)
            for tail in _nc_positions(n - j):
                merged = tuple(((0,) + tuple(p + j for p in b)) if b[0] == 0 else tuple(p + j for p in b)
                               for b in tail)
                out.append(inner_blocks + merged)
    return tuple(out)


def nc_partitions_of_word(word: Sequence[str]) -> list[frozenset[frozenset[str]]]:
    """Noncrossing partitions of the vertices of a linear word."""
    return [frozenset(frozenset(word[p] for p in b) for b in part) for part in _nc_positions(len(word))]


def enumerate_nc(p: LabeledGraph | str | Component) -> list[NCPartition]:
    host = _host(p, want_cycle=False)
    return [NCPartition(blocks, host) for blocks in nc_partitions_of_word(host.vertices)]


def enumerate_pnc(c: LabeledGraph | str | Component) -> list[PointedNCPartition]:
    """Pointed noncrossing partitions: each noncrossing partition of the cycle's
    word with one block marked as the (nonempty) zero block."""
    host = _host(c, want_cycle=True)
    out = []
    for blocks in nc_partitions_of_word(host.vertices):
        for zero in sorted(blocks, key=lambda b: min(host.vertices.index(v) for v in b)):
            out.append(PointedNCPartition(zero, blocks - {zero}, host))
    return out


def _close(blocks: Iterable[frozenset[str]], word: Sequence[str]) -> frozenset[frozenset[str]]:
    pos = {v: i for i, v in enumerate(word)}
    current = [frozenset(b) for b in blocks]
    merged = True
    while merged:
        merged = False
        first = {min(pos[v] for v in b): b for b in current}
        for b in current:
            nxt = first.get(max(pos[v] for v in b) + 1)
            if nxt is not None:
                current.remove(b)
                current.remove(nxt)
                current.append(b | nxt)
                merged = True
                break
    return frozenset(current)


def adjacent_closure(pi: NCPartition) -> NCPartition:
    """Merge blocks ``A, B`` with ``max A + 1 = min B`` (along the host) until stable."""
    return NCPartition(_close(pi.blocks, pi.host.vertices), pi.host)


def _pointed_word(pi: PointedNCPartition) -> tuple[str, ...]:
    vs = pi.host.vertices
    start = next(i for i, v in enumerate(vs) if v in pi.zero_block)
    return vs[start:] + vs[:start]


def adjacent_closure_pointed(pi: PointedNCPartition) -> PointedNCPartition:
    """Close the nonzero blocks; the zero block separates the arcs of the cycle."""
    return PointedNCPartition(pi.zero_block, _close(pi.nonzero_blocks, _pointed_word(pi)), pi.host)


@dataclass(frozen=True)
class CatalanCoefficient:
    value: int
    factors: tuple[tuple[frozenset[str], int], ...]

    def __int__(self) -> int:
        return self.value


def catalan_coefficient(pi: NCPartition | PointedNCPartition,
                        closure: NCPartition | PointedNCPartition | None = None) -> CatalanCoefficient:
    """Product over closure blocks of ``C_k``, ``k`` the number of blocks of ``pi`` inside it."""
    pointed = isinstance(pi, PointedNCPartition)
    expected = adjacent_closure_pointed(pi) if pointed else adjacent_closure(pi)
    if closure is None:
        closure = expected
    elif closure != expected:
        raise NotAClosure(f"{closure!r} is not the adjacent closure of {pi!r}")
    small = pi.nonzero_blocks if pointed else pi.blocks
    big = closure.nonzero_blocks if pointed else closure.blocks
    factors = tuple(sorted(((b, sum(1 for s in small if s <= b)) for b in big),
                           key=lambda f: sorted(f[0])))
    return CatalanCoefficient(prod(catalan(k) for _, k in factors), factors)


def graph_of_nc(p: LabeledGraph | str | Component, pi: NCPartition) -> LabeledGraph:
    """One path per block, vertices in the order they appear along the host."""
    host = _host(p, want_cycle=False)
    g = LabeledGraph([host])
    out: list[Component] = []
    for b in pi.blocks:
        out.extend(restrict(g, b).components)
    return LabeledGraph(out)


def graph_of_pnc(c: LabeledGraph | str | Component, pi: PointedNCPartition) -> LabeledGraph:
    """``c|_{zero} + (c/_{zero})|_{block}`` over the nonzero blocks."""
    host = _host(c, want_cycle=True)
    g = LabeledGraph([host])
    out = list(restrict(g, pi.zero_block).components)
    rest = contract(g, pi.zero_block)
    for b in pi.nonzero_blocks:
        out.extend(restrict(rest, b).components)
    return LabeledGraph(out)


def antipode_nc(p: LabeledGraph | str) -> LinearCombination:
    """Antipode of a path as a signed Catalan-weighted sum over noncrossing partitions."""
    host = _host(p, want_cycle=False)
    acc = {}
    for pi in enumerate_nc(host):
        h = graph_of_nc(host, pi)
        acc[h] = acc.get(h, 0) + (-1) ** len(pi) * catalan_coefficient(pi).value
    return LinearCombination(acc)


def antipode_pnc(c: LabeledGraph | str) -> LinearCombination:
    """Antipode of a cycle over pointed noncrossing partitions, sign ``(-1)^(1 + #nonzero)``."""
    host = _host(c, want_cycle=True)
    acc = {}
    for pi in enumerate_pnc(host):
        h = graph_of_pnc(host, pi)
        acc[h] = acc.get(h, 0) + (-1) ** len(pi) * catalan_coefficient(pi).value
    return LinearCombination(acc)
