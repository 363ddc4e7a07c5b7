"""Graph associahedra of paths and cycles as Minkowski sums of simplices.

The polytope of ``g`` is the sum of the simplices ``Delta_S`` over all tubes
``S``.  Its vertices are built from maximal tubings: the vertex of a maximal
tubing ``t`` takes, from every simplex, the coordinate vector of the vertex
of ``S`` lying in the fewest tubes of ``t``.  Faces correspond to tubings and
are located by maximizing ``-sum_i n_i x_i`` where ``n_i`` counts the tubes
containing ``i``.

Vertex coordinates are integers, so they are kept in an ``int64`` matrix;
every comparison is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Iterator, Mapping

import numpy as np

from .errors import HostNotCycle, NotATubing, NotConnected, VertexSelectionError
from .graphs import LabeledGraph, as_graph, cycle_graph, path_graph
from .tubings import (
    Tubing,
    _Index,
    _bits,
    _block_masks,
    _popcount,
    _tube_masks,
    _tubing_masks,
    _validated_masks,
    decompose_tubing,
)


@dataclass(frozen=True)
class RationalPoint:
    labels: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __getitem__(self, label: str) -> Fraction:
        return self.values[self.labels.index(label)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.labels, self.values))

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {k: str(v) for k, v in sorted(self.as_dict().items())}


@dataclass(frozen=True)
class FaceModel:
    tubing: Tubing
    vertices: frozenset[int]  # indices into PolytopeModel.vertices
    dim: int


@dataclass(frozen=True)
class FaceFactorization:
    """Sizes of the Cartesian factors of a face.

    ``cyclic`` is the size of the cyclohedron factor (``None`` on a path host);
    ``paths`` lists the associahedron factor sizes in increasing order.
    """

    cyclic: int | None
    paths: tuple[int, ...]

    @property
    def dim(self) -> int:
        d = sum(f - 1 for f in self.paths)
        return d + (self.cyclic - 1 if self.cyclic is not None else 0)


@dataclass(eq=False)
class PolytopeModel:
    host: LabeledGraph
    labels: tuple[str, ...]
    vertices: list[RationalPoint]
    vertex_tubings: list[Tubing]
    coords: np.ndarray = field(repr=False)
    num_tubes: int = 0

    @property
    def dim(self) -> int:
        return len(self.host) - self.host.num_components

    def to_json(self) -> dict:
        return {
            "graph": str(self.host),
            "vertices": [{"coords": v.to_json(), "tubing": t.to_json()["tubes"]}
                         for v, t in zip(self.vertices, self.vertex_tubings)],
        }


def _depths(ix: _Index, masks) -> list[int]:
    n = len(ix.labels)
    return [sum(1 for m in masks if m >> i & 1) for i in range(n)]


def _vertex_of(ix: _Index, tubes: list[int], masks) -> list[int]:
    depth = _depths(ix, masks)
    point = [0] * len(ix.labels)
    for S in tubes:
        # fewest containing tubes wins; ties go to the smallest label
        best = min(_bits(S), key=lambda i: (depth[i], ix.labels[i]))
        point[best] += 1
    return point


def build_polytope(g: LabeledGraph | str, verify: bool = True) -> PolytopeModel:
    """Vertices of the graph associahedron, one per maximal tubing.

    With ``verify`` each vertex is checked to be the unique maximizer of its
    tubing's functional among all constructed vertices.
    """
    g = as_graph(g)
    ix = _Index(g)
    tubes = _tube_masks(ix)
    n = len(ix.labels)
    maximal = [m for m in _tubing_masks(ix) if len(m) == n]
    rows = [_vertex_of(ix, tubes, m) for m in maximal]
    coords = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    if verify:
        _verify_vertices(ix, maximal, coords)
    labels = tuple(ix.labels)
    verts = [RationalPoint(labels, tuple(Fraction(int(x)) for x in row)) for row in coords]
    tubings = [Tubing(frozenset(ix.labelset(m) for m in ms)) for ms in maximal]
    return PolytopeModel(g, labels, verts, tubings, coords, len(tubes))


def _verify_vertices(ix: _Index, maximal, coords: np.ndarray, chunk: int = 512) -> None:
    weights = np.array([_depths(ix, m) for m in maximal], dtype=np.int64).reshape(len(maximal), -1)
    for lo in range(0, len(maximal), chunk):
        vals = weights[lo:lo + chunk] @ coords.T  # minimize sum n_i x_i
        best = vals.min(axis=1)
        for r in range(vals.shape[0]):
            hits = np.flatnonzero(vals[r] == best[r])
            if len(hits) != 1 or hits[0] != lo + r:
                raise VertexSelectionError(
                    f"vertex of tubing #{lo + r} is not the unique maximizer of its functional")


def vertices_by_generic_directions(g: LabeledGraph | str) -> set[tuple[int, ...]]:
    """Reference vertex set: for every ordering of the labels take the generic
    direction it induces and sum the maximizing vertex of each simplex.

    Coordinates follow the label order of :func:`build_polytope`.
    """
    g = as_graph(g)
    ix = _Index(g)
    tubes = [list(_bits(t)) for t in _tube_masks(ix)]
    n = len(ix.labels)
    out = set()
    for order in permutations(range(n)):
        weight = [0] * n
        for rank, i in enumerate(order):
            weight[i] = rank
        point = [0] * n
        for S in tubes:
            point[max(S, key=weight.__getitem__)] += 1
        out.add(tuple(point))
    return out


def _face_rows(P: PolytopeModel, depth: list[int]) -> np.ndarray:
    vals = P.coords @ np.asarray(depth, dtype=np.int64)
    return np.flatnonzero(vals == vals.min())


def face_of_tubing(P: PolytopeModel, t: Tubing) -> FaceModel:
    """Vertices maximizing ``-sum n_i x_i``; dimension ``|I| - |t|``."""
    ix = _Index(P.host)
    masks = _validated_masks(ix, t)
    rows = _face_rows(P, _depths(ix, masks))
    return FaceModel(t, frozenset(int(r) for r in rows), len(P.labels) - len(masks))


def faces(P: PolytopeModel) -> Iterator[FaceModel]:
    ix = _Index(P.host)
    for masks in _tubing_masks(ix):
        rows = _face_rows(P, _depths(ix, masks))
        t = Tubing(frozenset(ix.labelset(m) for m in masks))
        yield FaceModel(t, frozenset(int(r) for r in rows), len(P.labels) - len(masks))


def f_vector(P: PolytopeModel | LabeledGraph | str) -> list[int]:
    """Face counts by dimension, from dimension 0 upward."""
    host = P.host if isinstance(P, PolytopeModel) else as_graph(P)
    ix = _Index(host)
    n = len(ix.labels)
    counts = Counter(n - len(m) for m in _tubing_masks(ix))
    top = n - host.num_components
    return [counts.get(d, 0) for d in range(top + 1)]


def cyclic_value(n: int) -> int:
    """``binom(n, 2) + 1``: the largest coordinate on the cyclohedron of ``c_n``."""
    return comb(n, 2) + 1


def _max_over_face(P: PolytopeModel, F: FaceModel) -> np.ndarray:
    return P.coords[sorted(F.vertices)].max(axis=0)


def cyclic_factor_coordinates(P: PolytopeModel, F: FaceModel) -> frozenset[str]:
    """Labels whose coordinate reaches ``binom(n, 2) + 1`` somewhere on ``F``."""
    if not P.host.is_cycle():
        raise HostNotCycle(f"{P.host} is not a single cycle")
    target = cyclic_value(len(P.labels))
    top = _max_over_face(P, F)
    return frozenset(lab for lab, x in zip(P.labels, top) if x == target)


def face_factorization(P: PolytopeModel, F: FaceModel) -> FaceFactorization:
    """Factor sizes of a face of ``a_{p_n}`` or ``a_{c_n}``.

    On a cycle the cyclohedron factor is the set of coordinates found by
    :func:`cyclic_factor_coordinates`; the path factors are the remaining
    blocks of the face's tubing.
    """
    host = P.host
    if not host.is_connected():
        raise NotConnected(f"{host} is not a single path or cycle")
    dec = decompose_tubing(host, F.tubing)
    if host.is_path():
        return FaceFactorization(None, tuple(sorted(len(b) for b in dec.partition)))
    zero = cyclic_factor_coordinates(P, F)
    if zero not in dec.partition:
        raise NotATubing(f"cyclic coordinates {sorted(zero)} do not form a block of the face's tubing")
    rest = tuple(sorted(len(b) for b in dec.partition if b != zero))
    return FaceFactorization(len(zero), rest)


def vertices_of_face_by_containment(P: PolytopeModel, t: Tubing) -> frozenset[int]:
    """Vertices whose maximal tubing contains ``t`` (the order-reversing bijection)."""
    return frozenset(i for i, s in enumerate(P.vertex_tubings) if t.tubes <= s.tubes)


def euler_characteristic(P: PolytopeModel | LabeledGraph | str) -> int:
    return sum((-1) ** d * f for d, f in enumerate(f_vector(P)))


@lru_cache(maxsize=None)
def standard_associahedron(n: int) -> PolytopeModel:
    return build_polytope(path_graph(n))


@lru_cache(maxsize=None)
def standard_cyclohedron(n: int) -> PolytopeModel:
    return build_polytope(cycle_graph(n))


def _bulk_factorizations(P: PolytopeModel) -> Iterator[tuple[int, FaceFactorization]]:
    """``(dim F, factorization)`` for every face, sharing one bitmask index."""
    host = P.host
    if not host.is_connected():
        raise NotConnected(f"{host} is not a single path or cycle")
    ix = _Index(host)
    n = len(ix.labels)
    cyclic = host.is_cycle()
    target = cyclic_value(n)
    label_bit = {lab: 1 << ix.pos[lab] for lab in P.labels}
    col_bits = [label_bit[lab] for lab in P.labels]
    for masks in _tubing_masks(ix):
        blocks = _block_masks(sorted(masks, key=_popcount))
        dim = n - len(masks)
        if not cyclic:
            yield dim, FaceFactorization(None, tuple(sorted(_popcount(b) for b in blocks)))
            continue
        rows = _face_rows(P, _depths(ix, masks))
        top = P.coords[rows].max(axis=0)
        zero = sum(bit for bit, x in zip(col_bits, top) if x == target)
        if zero not in blocks:
            raise NotATubing("cyclic coordinates do not form a block of the face's tubing")
        rest = tuple(sorted(_popcount(b) for b in blocks if b != zero))
        yield dim, FaceFactorization(_popcount(zero), rest)


@lru_cache(maxsize=None)
def face_monomials(kind: str, n: int) -> Mapping[FaceFactorization, int]:
    """``factorization -> sum over faces F of (-1)^(n - dim F)``.

    ``kind`` is ``"path"`` for ``a_n`` and ``"cycle"`` for ``c_n``.
    """
    P = standard_associahedron(n) if kind == "path" else standard_cyclohedron(n)
    out: Counter = Counter()
    for dim, fac in _bulk_factorizations(P):
        if fac.dim != dim:
            raise AssertionError(f"factor dimensions {fac} disagree with face dimension {dim}")
        out[fac] += (-1) ** (n - dim)
    return {k: v for k, v in out.items() if v}
