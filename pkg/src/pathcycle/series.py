"""Truncated exact power series, the group of pairs ``(g, h)`` and characters.

A :class:`TruncatedSeries` of order ``N`` holds the coefficients of
``x, x^2, ..., x^N``; the constant term is always zero.  A
:class:`TruncatedPair` of order ``N`` stands for

    g(x) = x + a_1 x^2 + ... + a_{N-1} x^N,
    h(x) = c_1 x + c_2 x^2 / 2 + ... + c_N x^N / N,

and is stored through the numbers ``a_n`` and ``c_n``.  Pairs multiply by
``(g1, h1)(g2, h2) = (g1 o g2, h1 o g2 + h2)``; a character of the Hopf
monoid is the same data, read as its values on paths and cycles.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

from .errors import OrderExceeded, OrderMismatch, ParseError
from .graphs import LabeledGraph, as_graph, contract, cycle_graph, path_graph, restrict
from .hopf import all_subsets

Rational = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, str):
        x = x.strip().replace("−", "-")
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an exact rational: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or string")
    return Fraction(x)


def parse_coefficients(text: str) -> tuple[Fraction, ...]:
    """``"1,-1/2,1/3"`` -> exact rationals; an empty string gives ``()``."""
    text = text.strip()
    if not text:
        return ()
    return tuple(_frac(t) for t in text.split(","))


def format_coefficients(values: Iterable[Fraction]) -> str:
    return ",".join(_fstr(v) for v in values)


def _fstr(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum_{k=1}^{N} coefficients[k-1] x^k``."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable):
        object.__setattr__(self, "coefficients", tuple(_frac(c) for c in coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        """Coefficient of ``x^k``; zero for ``k = 0``."""
        if k == 0:
            return Fraction(0)
        if not 1 <= k <= self.order:
            raise OrderExceeded(f"coefficient x^{k} is beyond order {self.order}")
        return self.coefficients[k - 1]

    def is_monic(self) -> bool:
        return self.order >= 1 and self.coefficients[0] == 1

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _same_order(self.order, other.order)
        return TruncatedSeries(a + b for a, b in zip(self.coefficients, other.coefficients))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-a for a in self.coefficients)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __repr__(self) -> str:
        return f"TruncatedSeries([{format_coefficients(self.coefficients)}])"

    @classmethod
    def identity(cls, order: int) -> "TruncatedSeries":
        return cls([1] + [0] * (order - 1))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * order)


def _same_order(n: int, m: int) -> None:
    if n != m:
        raise OrderMismatch(f"orders differ: {n} vs {m}")


# ---------------------------------------------------------------------------
# named series


def geometric(order: int) -> TruncatedSeries:
    """``x / (1 - x)``."""
    return TruncatedSeries([1] * order)


def alternating_geometric(order: int) -> TruncatedSeries:
    """``x / (1 + x)``."""
    return TruncatedSeries([(-1) ** (k + 1) for k in range(1, order + 1)])


def exp_minus_one(order: int) -> TruncatedSeries:
    """``e^x - 1``."""
    return TruncatedSeries([Fraction(1, factorial(k)) for k in range(1, order + 1)])


def log_one_plus(order: int) -> TruncatedSeries:
    """``ln(1 + x)``."""
    return TruncatedSeries([Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)])


def neg_log_one_minus(order: int) -> TruncatedSeries:
    """``-ln(1 - x)``."""
    return TruncatedSeries([Fraction(1, k) for k in range(1, order + 1)])


NAMED = {
    "geom": geometric,
    "altgeom": alternating_geometric,
    "exp": exp_minus_one,
    "log": log_one_plus,
    "nlog": neg_log_one_minus,
    "id": TruncatedSeries.identity,
    "zero": TruncatedSeries.zero,
}


def named_series(name: str, order: int) -> TruncatedSeries:
    try:
        return NAMED[name](order)
    except KeyError:
        raise ParseError(f"unknown series {name!r}; choose from {sorted(NAMED)}") from None


# ---------------------------------------------------------------------------
# composition


@lru_cache(maxsize=None)
def _multiplicity_vectors(n: int, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Partitions of ``n`` into ``k`` positive parts, as ``((part, mult), ...)``."""
    out = []

    def rec(remaining: int, parts_left: int, largest: int, acc: list[int]):
        if parts_left == 0:
            if remaining == 0:
                out.append(tuple(sorted(Counter(acc).items())))
            return
        lo = -(-remaining // parts_left)  # ceil
        for p in range(min(largest, remaining - parts_left + 1), lo - 1, -1):
            acc.append(p)
            rec(remaining - p, parts_left - 1, p, acc)
            acc.pop()

    rec(n, k, n, [])
    return tuple(out)


def bell_ordinary(n: int, k: int, xs: Sequence) -> Fraction:
    """Ordinary Bell polynomial ``B^_{n,k}(x_1, ..., x_{n-k+1})``.

    Sum over multiplicity vectors ``j`` with ``sum j_i = k`` and
    ``sum i j_i = n`` of ``k! / prod j_i! * prod x_i^{j_i}``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if len(xs) < n - k + 1:
        raise ValueError(f"need {n - k + 1} arguments, got {len(xs)}")
    total = Fraction(0)
    for vec in _multiplicity_vectors(n, k):
        coeff = factorial(k) // prod(factorial(j) for _, j in vec)
        total += coeff * prod((Fraction(xs[i - 1]) ** j for i, j in vec), start=Fraction(1))
    return total


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f o g`` by the Faà di Bruno formula with ordinary Bell polynomials."""
    _same_order(f.order, g.order)
    N = f.order
    gs = g.coefficients
    return TruncatedSeries(
        sum((f.coefficients[k - 1] * bell_ordinary(n, k, gs) for k in range(1, n + 1)), Fraction(0))
        for n in range(1, N + 1)
    )


def _mul(p: Sequence[Fraction], q: Sequence[Fraction], N: int) -> list[Fraction]:
    """Product of two series given by coefficients of ``x^0..x^N``, truncated."""
    out = [Fraction(0)] * (N + 1)
    for i, a in enumerate(p):
        if a:
            for j in range(N + 1 - i):
                out[i + j] += a * q[j]
    return out


def compose_horner(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f o g`` as ``g (f_1 + g (f_2 + ... ))``; reference for :func:`compose`."""
    _same_order(f.order, g.order)
    N = f.order
    gg = [Fraction(0)] + list(g.coefficients)
    acc = [Fraction(0)] * (N + 1)
    for k in range(N, 0, -1):
        acc[0] += f.coefficients[k - 1]
        acc = _mul(gg, acc, N)
    return TruncatedSeries(acc[1:])


def inverse_direct(g: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of a monic series, solving ``g(b(x)) = x`` one
    coefficient at a time with explicit powers of ``b``."""
    if not g.is_monic():
        raise ValueError("compositional inverse needs a monic series")
    N = g.order
    b = [Fraction(0)] * (N + 1)
    b[1] = Fraction(1)
    for n in range(2, N + 1):
        # [x^n] g(b) = b_n + sum_{k>=2} g_k [x^n] b^k; b^k only sees b_1..b_{n-1}
        power = list(b)
        s = Fraction(0)
        for k in range(2, n + 1):
            power = _mul(power, b, n)
            s += g[k] * power[n]
        b[n] = -s
    return TruncatedSeries(b[1:])


# ---------------------------------------------------------------------------
# the group of pairs


@dataclass(frozen=True)
class TruncatedPair:
    """``(x + sum a_n x^{n+1}, sum c_n x^n / n)`` at order ``N``.

    ``a`` holds ``a_1..a_{N-1}`` and ``c`` holds ``c_1..c_N``.
    """

    a: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __init__(self, a: Iterable, c: Iterable):
        a = tuple(_frac(x) for x in a)
        c = tuple(_frac(x) for x in c)
        if len(a) + 1 != len(c):
            raise OrderMismatch(f"need len(a) = len(c) - 1, got {len(a)} and {len(c)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    @property
    def order(self) -> int:
        return len(self.c)

    @property
    def g(self) -> TruncatedSeries:
        return TruncatedSeries((Fraction(1),) + self.a)

    @property
    def h(self) -> TruncatedSeries:
        return TruncatedSeries(c / n for n, c in enumerate(self.c, start=1))

    @classmethod
    def from_series(cls, g: TruncatedSeries, h: TruncatedSeries) -> "TruncatedPair":
        _same_order(g.order, h.order)
        if not g.is_monic():
            raise ValueError("the first component of a pair must be monic")
        return cls(g.coefficients[1:], (n * x for n, x in enumerate(h.coefficients, start=1)))

    @classmethod
    def unit(cls, order: int) -> "TruncatedPair":
        """``(x, 0)``."""
        return cls([0] * (order - 1), [0] * order)

    @classmethod
    def named(cls, g_name: str, h_name: str, order: int) -> "TruncatedPair":
        return cls.from_series(named_series(g_name, order), named_series(h_name, order))

    def to_json(self) -> dict:
        return {"order": self.order, "a": [_fstr(x) for x in self.a], "c": [_fstr(x) for x in self.c]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "TruncatedPair":
        if isinstance(data, str):
            data = json.loads(data)
        p = cls(data["a"], data["c"])
        if "order" in data and data["order"] != p.order:
            raise OrderMismatch(f"declared order {data['order']} but got {p.order} c-coefficients")
        return p


def embed(g: TruncatedSeries) -> TruncatedPair:
    """``g -> (g, 0)``."""
    return TruncatedPair.from_series(g, TruncatedSeries.zero(g.order))


def group_mul(p1: TruncatedPair, p2: TruncatedPair) -> TruncatedPair:
    _same_order(p1.order, p2.order)
    g = compose(p1.g, p2.g)
    h = compose(p1.h, p2.g) + p2.h
    return TruncatedPair.from_series(g, h)


def group_inv(p: TruncatedPair) -> TruncatedPair:
    """``(g^<-1>, -h o g^<-1>)``."""
    ginv = inverse_direct(p.g)
    return TruncatedPair.from_series(ginv, -compose(p.h, ginv))


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    """Multiplicative functional on graphs: ``a_n`` on ``p_n``, ``c_n`` on ``c_n``."""

    pair: TruncatedPair

    @property
    def order(self) -> int:
        return self.pair.order

    def on_path(self, n: int) -> Fraction:
        if n > len(self.pair.a):
            raise OrderExceeded(f"p_{n} needs a_{n}, beyond order {self.order}")
        return self.pair.a[n - 1]

    def on_cycle(self, n: int) -> Fraction:
        if n > self.order:
            raise OrderExceeded(f"c_{n} needs c_{n}, beyond order {self.order}")
        return self.pair.c[n - 1]

    @classmethod
    def unit(cls, order: int) -> "Character":
        """The counit: 1 on the empty graph and 0 on everything else."""
        return cls(TruncatedPair.unit(order))


def character_eval(chi: Character, g: LabeledGraph | str) -> Fraction:
    g = as_graph(g)
    out = Fraction(1)
    for comp in g.components:
        out *= chi.on_path(comp.size) if comp.is_path else chi.on_cycle(comp.size)
    return out


def convolve(zeta: Character, xi: Character, g: LabeledGraph | str) -> Fraction:
    """``sum_S zeta(g|_S) xi(g/_S)`` over all subsets ``S`` of the ground set."""
    g = as_graph(g)
    return sum((character_eval(zeta, restrict(g, S)) * character_eval(xi, contract(g, S))
                for S in all_subsets(g.ground_set)), Fraction(0))


# ---------------------------------------------------------------------------
# inversion through faces and noncrossing partitions


def _monomial(sizes: Iterable[int], a: Sequence[Fraction]) -> Fraction:
    return prod((a[k - 1] for k in sizes), start=Fraction(1))


def invert_via_assoc_faces(g: TruncatedSeries) -> TruncatedSeries:
    """``b_n = sum over faces F of a_n of (-1)^(n - dim F) a_F``."""
    from .polytope import face_monomials

    if not g.is_monic():
        raise ValueError("compositional inverse needs a monic series")
    a = g.coefficients[1:]
    b = [Fraction(1)]
    for n in range(1, g.order):
        b.append(sum((w * _monomial(f.paths, a) for f, w in face_monomials("path", n).items()),
                     Fraction(0)))
    return TruncatedSeries(b)


@lru_cache(maxsize=None)
def _nc_weights(n: int) -> dict[tuple[int, ...], int]:
    """Block-size multiset -> sum of ``(-1)^|pi| C_(closure:pi)`` over NC(p_n)."""
    from .noncrossing import catalan_coefficient, enumerate_nc

    out: Counter = Counter()
    for pi in enumerate_nc(path_graph(n)):
        key = tuple(sorted(len(b) for b in pi.blocks))
        out[key] += (-1) ** len(pi) * catalan_coefficient(pi).value
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _pnc_weights(n: int) -> dict[tuple[int, tuple[int, ...]], int]:
    """``(|zero|, nonzero sizes)`` -> sum of ``(-1)^|pi| C`` over PNC(c_n)."""
    from .noncrossing import catalan_coefficient, enumerate_pnc

    out: Counter = Counter()
    for pi in enumerate_pnc(cycle_graph(n)):
        key = (len(pi.zero_block), tuple(sorted(len(b) for b in pi.nonzero_blocks)))
        out[key] += (-1) ** len(pi) * catalan_coefficient(pi).value
    return {k: v for k, v in out.items() if v}


def invert_via_nc(g: TruncatedSeries) -> TruncatedSeries:
    """``b_n = sum over NC(p_n) of (-1)^|pi| C_(closure:pi) prod a_|block|``."""
    if not g.is_monic():
        raise ValueError("compositional inverse needs a monic series")
    a = g.coefficients[1:]
    b = [Fraction(1)]
    for n in range(1, g.order):
        b.append(sum((w * _monomial(k, a) for k, w in _nc_weights(n).items()), Fraction(0)))
    return TruncatedSeries(b)


def invert_pair_via_cyclo_faces(p: TruncatedPair) -> TruncatedPair:
    """Second component from the faces of the cyclohedra,
    ``d_n = sum_F (-1)^(n - dim F) c_{f0} a_{f1} ... a_{fk}``."""
    from .polytope import face_monomials

    first = invert_via_assoc_faces(p.g)
    d = []
    for n in range(1, p.order + 1):
        d.append(sum((w * p.c[f.cyclic - 1] * _monomial(f.paths, p.a)
                      for f, w in face_monomials("cycle", n).items()), Fraction(0)))
    return TruncatedPair(first.coefficients[1:], d)


def invert_pair_via_pnc(p: TruncatedPair) -> TruncatedPair:
    """``d_n = sum over PNC(c_n) of (-1)^|pi| C c_|zero| prod a_|block|``."""
    first = invert_via_nc(p.g)
    d = []
    for n in range(1, p.order + 1):
        d.append(sum((w * p.c[z - 1] * _monomial(rest, p.a) for (z, rest), w in _pnc_weights(n).items()),
                     Fraction(0)))
    return TruncatedPair(first.coefficients[1:], d)


def restrict_to_Cbar(p: TruncatedPair) -> bool:
    """Whether ``a_1 = c_1`` and ``a_2 = c_2``: the pair is a character of the
    quotient that identifies ``p_1, p_2`` with ``c_1, c_2``."""
    for n in (1, 2):
        a = p.a[n - 1] if n <= len(p.a) else Fraction(0)
        c = p.c[n - 1] if n <= len(p.c) else Fraction(0)
        if a != c:
            return False
    return True
