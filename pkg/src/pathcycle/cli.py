"""Command-line interface: ``pathcycle <verb> ...``.

Every verb writes deterministic JSON to stdout (``--plain`` gives a short
text rendering instead).  ``verify`` exits with status 1 when a check fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import factorial, prod
from typing import Callable, Sequence

from . import noncrossing as nc
from . import polytope as pt
from . import series as sr
from . import tubings as tb
from .errors import OrderMismatch, PathCycleError
from .graphs import LabeledGraph, cycle_graph, parse_graph, path_graph
from .hopf import LinearCombination, antipode_by_components, antipode_mm

DEFAULT_ORDER = 8


def _fs(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# antipode


def _connected_ncp(g: LabeledGraph) -> LinearCombination:
    return nc.antipode_nc(g) if g.is_path() else nc.antipode_pnc(g)


ANTIPODES: dict[str, Callable[[LabeledGraph], LinearCombination]] = {
    "mm": antipode_mm,
    "tubings": lambda g: antipode_by_components(g, tb.antipode_tubings),
    "ncp": lambda g: antipode_by_components(g, _connected_ncp),
}


def run_antipode(graph: str, method: str = "mm") -> LinearCombination:
    return ANTIPODES[method](parse_graph(graph))


# ---------------------------------------------------------------------------
# invert


def _pair_from_args(a: str | None, c: str | None, named: str | None, order: int | None) -> sr.TruncatedPair:
    if named:
        names = [s.strip() for s in named.split(",")]
        if len(names) == 1:
            names.append("zero")
        if len(names) != 2:
            raise OrderMismatch("--named takes one or two series names")
        return sr.TruncatedPair.named(names[0], names[1], order or DEFAULT_ORDER)
    avals = sr.parse_coefficients(a or "")
    cvals = sr.parse_coefficients(c or "")
    if order is None:
        order = max(len(avals) + 1, len(cvals), 1)
    avals = avals or (Fraction(0),) * (order - 1)
    cvals = cvals or (Fraction(0),) * order
    if len(avals) < order - 1 or len(cvals) < order:
        raise OrderMismatch(f"order {order} needs {order - 1} a-values and {order} c-values, "
                            f"got {len(avals)} and {len(cvals)}")
    return sr.TruncatedPair(avals[:order - 1], cvals[:order])


def _second_from_first(p: sr.TruncatedPair, ginv: sr.TruncatedSeries) -> sr.TruncatedPair:
    return sr.TruncatedPair.from_series(ginv, -sr.compose(p.h, ginv))


INVERSIONS: dict[str, Callable[[sr.TruncatedPair], sr.TruncatedPair]] = {
    "direct": sr.group_inv,
    "assoc-faces": lambda p: _second_from_first(p, sr.invert_via_assoc_faces(p.g)),
    "nc": lambda p: _second_from_first(p, sr.invert_via_nc(p.g)),
    "cyclo-faces": sr.invert_pair_via_cyclo_faces,
    "pnc": sr.invert_pair_via_pnc,
}


def run_invert(pair: sr.TruncatedPair, method: str = "direct") -> sr.TruncatedPair:
    return INVERSIONS[method](pair)


# ---------------------------------------------------------------------------
# enumerate and fvector


def run_enumerate(what: str, graph: str) -> list:
    g = parse_graph(graph)
    if what == "tubes":
        return [sorted(t) for t in sorted(tb.enumerate_tubes(g), key=lambda t: (len(t), sorted(t)))]
    if what == "tubings":
        return sorted((t.to_json()["tubes"] for t in tb.enumerate_tubings(g)), key=lambda t: (len(t), t))
    if what == "nc":
        return sorted(pi.to_json()["blocks"] for pi in nc.enumerate_nc(g))
    if what == "pnc":
        return sorted((pi.to_json() for pi in nc.enumerate_pnc(g)), key=lambda d: (d["zero"], d["blocks"]))
    if what == "vertices":
        P = pt.build_polytope(g)
        return sorted((v for v in P.to_json()["vertices"]), key=lambda v: [v["coords"][k] for k in sorted(v["coords"])])
    raise ValueError(f"unknown enumeration {what!r}")


# ---------------------------------------------------------------------------
# verify


def _check(n: int, value, expected) -> dict:
    return {"n": n, "value": _fs(value) if isinstance(value, (int, Fraction)) else value,
            "expected": _fs(expected) if isinstance(expected, (int, Fraction)) else expected,
            "pass": value == expected}


def _verify_euler(kind: str, nmax: int) -> list[dict]:
    make = path_graph if kind == "path" else cycle_graph
    return [_check(n, pt.euler_characteristic(make(n)), 1) for n in range(1, nmax + 1)]


def _pnc_sum(n: int, weight: Callable[[nc.PointedNCPartition], Fraction]) -> Fraction:
    total = Fraction(0)
    for pi in nc.enumerate_pnc(cycle_graph(n)):
        total += (-1) ** len(pi.nonzero_blocks) * nc.catalan_coefficient(pi).value * weight(pi)
    return total


def _verify_pnc_pointed(nmax: int) -> list[dict]:
    return [_check(n, _pnc_sum(n, lambda pi: Fraction(len(pi.zero_block))), int(n == 1))
            for n in range(1, nmax + 1)]


def _verify_pnc_factorial(nmax: int) -> list[dict]:
    def w(pi):
        den = factorial(len(pi.zero_block) - 1) * prod(factorial(len(b) + 1) for b in pi.nonzero_blocks)
        return Fraction(1, den)
    return [_check(n, _pnc_sum(n, w), int(n == 1)) for n in range(1, nmax + 1)]


def _verify_counting_lemma(nmax: int) -> list[dict]:
    out = []
    for n in range(2, nmax + 1):
        brute = tb.brute_interval_counts(n)
        bad = [list(m) for m in tb.valid_interval_multisets(n) if tb.count_interval_partitions(n, m) != brute[m]]
        out.append(_check(n, len(bad), 0) | {"multisets": len(brute)})
    return out


def _verify_counting_prop(nmax: int) -> list[dict]:
    out = []
    for n in range(1, nmax + 1):
        brute = tb.brute_decomposition_counts(n)
        bad = [[k, list(m)] for k, m in tb.valid_decomposition_shapes(n)
               if tb.count_decompositions(n, k, m) != brute[(k, m)]]
        out.append(_check(n, len(bad), 0) | {"shapes": len(brute)})
    return out


def _verify_antipode_triple(nmax: int) -> list[dict]:
    out = []
    for n in range(1, nmax + 1):
        p, c = path_graph(n), cycle_graph(n)
        ok = (antipode_mm(p) == tb.antipode_tubings(p) == nc.antipode_nc(p)
              and antipode_mm(c) == tb.antipode_tubings(c) == nc.antipode_pnc(c))
        out.append({"n": n, "pass": ok, "terms_path": len(antipode_mm(p)), "terms_cycle": len(antipode_mm(c))})
    return out


def random_pair(rng: random.Random, order: int, size: int = 5) -> sr.TruncatedPair:
    """A pair with small random rational coefficients."""
    def r():
        return Fraction(rng.randint(-size, size), rng.randint(1, size))
    return sr.TruncatedPair([r() for _ in range(order - 1)], [r() for _ in range(order)])


def _verify_chars_iso(nmax: int, seed: int = 0) -> list[dict]:
    rng = random.Random(seed)
    order = nmax + 1
    p1, p2 = random_pair(rng, order), random_pair(rng, order)
    z1, z2 = sr.Character(p1), sr.Character(p2)
    prod_pair = sr.group_mul(p1, p2)
    inv = sr.Character(sr.group_inv(p1))
    out = []
    for n in range(1, nmax + 1):
        ok = (sr.convolve(z1, z2, path_graph(n)) == prod_pair.a[n - 1]
              and sr.convolve(z1, z2, cycle_graph(n)) == prod_pair.c[n - 1])
        for G in (path_graph(n), cycle_graph(n)):
            s = antipode_mm(G)
            ok = ok and sum((c * sr.character_eval(z1, h) for h, c in s), Fraction(0)) == sr.character_eval(inv, G)
        out.append({"n": n, "pass": ok})
    return out


IDENTITIES: dict[str, Callable[[int], list[dict]]] = {
    "euler-assoc": lambda n: _verify_euler("path", n),
    "euler-cyclo": lambda n: _verify_euler("cycle", n),
    "pnc-pointed-sum": _verify_pnc_pointed,
    "pnc-factorial-sum": _verify_pnc_factorial,
    "counting-lemma": _verify_counting_lemma,
    "counting-prop": _verify_counting_prop,
    "antipode-triple": _verify_antipode_triple,
    "chars-iso": _verify_chars_iso,
}


def run_verify(identity: str, nmax: int) -> dict:
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}")
    results = IDENTITIES[identity](nmax)
    return {"identity": identity, "nmax": nmax, "pass": all(r["pass"] for r in results), "results": results}


# ---------------------------------------------------------------------------
# argument handling


def _add_graph(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph_pos", nargs="?", metavar="GRAPH", help="graph in word notation, e.g. '12|(345)'")
    p.add_argument("--graph", dest="graph_opt", help="same as the positional GRAPH")


def _graph(args) -> str:
    g = args.graph_opt if args.graph_opt is not None else args.graph_pos
    if g is None:
        raise SystemExit("error: a graph is required")
    return g


def _add_pair(p: argparse.ArgumentParser, prefix: str = "") -> None:
    dash = f"--{prefix}-" if prefix else "--"
    p.add_argument(f"{dash}a", dest=f"{prefix}a", help="comma-separated a_1,...,a_{N-1}")
    p.add_argument(f"{dash}c", dest=f"{prefix}c", help="comma-separated c_1,...,c_N (h = sum c_n x^n / n)")
    p.add_argument(f"{dash}named" if prefix else "--named", dest=f"{prefix}named",
                   help="named series 'G,H' from: " + ", ".join(sorted(sr.NAMED)))


def build_parser() -> argparse.ArgumentParser:
    def formats(default):
        holder = argparse.ArgumentParser(add_help=False)
        fmt = holder.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="plain", action="store_false", default=default,
                         help="JSON output (default)")
        fmt.add_argument("--plain", dest="plain", action="store_true", default=default,
                         help="plain text output")
        return holder

    # the flags work before or after the verb
    parser = argparse.ArgumentParser(prog="pathcycle", description=__doc__.splitlines()[0],
                                     parents=[formats(False)])
    sub = parser.add_subparsers(dest="verb", required=True)
    common = formats(argparse.SUPPRESS)

    def verb(name: str, **kwargs) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kwargs)

    p = verb("antipode", help="antipode of a graph")
    _add_graph(p)
    p.add_argument("--method", choices=sorted(ANTIPODES), default="mm")

    p = verb("invert", help="inverse of a pair (g, h) in the group G",
                       description="Invert a pair. Costs grow quickly with --order; "
                                   "the face and partition methods are practical up to about 9.")
    _add_pair(p)
    p.add_argument("--order", type=int, default=None, help=f"truncation order N (default {DEFAULT_ORDER})")
    p.add_argument("--method", choices=sorted(INVERSIONS), default="direct")

    p = verb("enumerate", help="list tubes, tubings, (pointed) noncrossing partitions or vertices")
    p.add_argument("what", choices=["tubes", "tubings", "nc", "pnc", "vertices"])
    _add_graph(p)

    p = verb("fvector", help="f-vector of the graph associahedron")
    _add_graph(p)

    p = verb("verify", help="check a named identity for n = 1..nmax")
    p.add_argument("identity", choices=sorted(IDENTITIES))
    p.add_argument("--nmax", type=int, default=6)

    p = verb("convolve", help="convolution of two characters evaluated on a graph",
                       description="Each character is a pair (g, h); it takes a_n on p_n and c_n on c_n. "
                                   "Evaluation sums over all 2^n subsets.")
    _add_graph(p)
    _add_pair(p, "zeta")
    _add_pair(p, "xi")
    p.add_argument("--order", type=int, default=None)
    return parser


def _emit(obj, plain_text: str | None, plain: bool, out) -> None:
    if plain and plain_text is not None:
        print(plain_text, file=out)
    else:
        print(json.dumps(obj, sort_keys=True), file=out)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "antipode":
            res = run_antipode(_graph(args), args.method)
            text = "\n".join(f"{_fs(c)}\t{str(g) or '()'}" for g, c in res)
            _emit(res.to_json(), text, args.plain, out)
        elif args.verb == "invert":
            pair = _pair_from_args(args.a, args.c, args.named, args.order)
            res = run_invert(pair, args.method)
            text = f"a: {sr.format_coefficients(res.a)}\nc: {sr.format_coefficients(res.c)}"
            _emit(res.to_json(), text, args.plain, out)
        elif args.verb == "enumerate":
            items = run_enumerate(args.what, _graph(args))
            _emit(items, "\n".join(json.dumps(i, sort_keys=True) for i in items), args.plain, out)
        elif args.verb == "fvector":
            fv = pt.f_vector(parse_graph(_graph(args)))
            _emit(fv, " ".join(map(str, fv)), args.plain, out)
        elif args.verb == "verify":
            report = run_verify(args.identity, args.nmax)
            lines = [f"n={r['n']}: {'pass' if r['pass'] else 'FAIL'}"
                     + (f" value={r['value']}" if "value" in r else "") for r in report["results"]]
            _emit(report, "\n".join(lines), args.plain, out)
            return 0 if report["pass"] else 1
        elif args.verb == "convolve":
            g = parse_graph(_graph(args))
            fallback = max(len(g), 1) + 1  # enough for p_n and c_n on this ground set

            def character(a, c, named):
                order = args.order or (fallback if named else None)
                return sr.Character(_pair_from_args(a, c, named, order))

            zeta = character(args.zetaa, args.zetac, args.zetanamed)
            xi = character(args.xia, args.xic, args.xinamed)
            v = sr.convolve(zeta, xi, g)
            _emit({"graph": str(g), "value": _fs(v)}, _fs(v), args.plain, out)
    except PathCycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
