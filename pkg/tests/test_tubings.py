from collections import Counter, defaultdict
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathcycle.errors import InvalidMultiset, NotATubing, NotConnected
from pathcycle.graphs import LabeledGraph, cycle_graph, parse_graph, path_graph
from pathcycle.hopf import LinearCombination, antipode_mm
from pathcycle.tubings import (
    Tubing,
    antipode_tubings,
    brute_decomposition_counts,
    brute_interval_counts,
    complement_runs,
    count_decompositions,
    count_interval_partitions,
    decompose_tubing,
    enumerate_tubes,
    enumerate_tubings,
    interval_partitions,
    intervals_from_endpoints,
    is_maximal_tubing,
    is_tubing,
    make_tubing,
    right_endpoints,
    tubing_terms,
    valid_decomposition_shapes,
    valid_interval_multisets,
)

from conftest import graphs


def edges_of(g: LabeledGraph):
    out = set()
    for c in g.components:
        vs = c.vertices
        out |= {frozenset(e) for e in zip(vs, vs[1:])}
        if c.is_cycle and len(vs) > 2:
            out.add(frozenset((vs[-1], vs[0])))
    return out


def connected(S, edges) -> bool:
    S = set(S)
    if not S:
        return False
    seen, stack = set(), [min(S)]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(w for e in edges if v in e for w in e if w in S and w not in seen)
    return seen == S


def literal_tubings(g: LabeledGraph) -> set[frozenset[frozenset[str]]]:
    """Every family of tubes, filtered by the tubing axioms read literally:
    nested-or-disjoint pairs, no union of two or more pairwise disjoint
    members is a tube, and every component belongs to the family."""
    E = edges_of(g)
    verts = sorted(g.ground_set)
    tubes = [frozenset(S) for k in range(1, len(verts) + 1) for S in combinations(verts, k) if connected(S, E)]
    comps = [c.vertex_set() for c in g.components]
    optional = [t for t in tubes if t not in comps]
    out = set()
    for k in range(len(optional) + 1):
        for fam in combinations(optional, k):
            fam = list(fam) + comps
            if any(not (a <= b or b <= a or not a & b) for a, b in combinations(fam, 2)):
                continue
            bad = False
            for r in range(2, len(fam) + 1):
                for sub in combinations(fam, r):
                    if all(not a & b for a, b in combinations(sub, 2)) and connected(frozenset().union(*sub), E):
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                out.add(frozenset(fam))
    return out


def little_schroeder(n: int) -> int:
    s = [1, 1]
    for m in range(2, n + 1):
        s.append((3 * (2 * m - 1) * s[m - 1] - (m - 2) * s[m - 2]) // (m + 1))
    return s[n]


class TestTubes:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_cycle_tube_count(self, n):
        assert len(enumerate_tubes(cycle_graph(n))) == n * (n - 1) + 1

    def test_path_tubes(self):
        assert len(enumerate_tubes("123")) == 6
        assert enumerate_tubes("1") == [frozenset("1")]

    @given(graphs(6))
    def test_tubes_are_connected_subsets(self, g):
        E = edges_of(g)
        expected = {frozenset(S) for k in range(1, len(g) + 1)
                    for S in combinations(sorted(g.ground_set), k) if connected(S, E)}
        assert set(enumerate_tubes(g)) == expected


class TestEnumeration:
    def test_two_cycle(self):
        ts = {t.tubes for t in enumerate_tubings("(12)")}
        assert ts == {
            frozenset({frozenset("12")}),
            frozenset({frozenset("1"), frozenset("12")}),
            frozenset({frozenset("2"), frozenset("12")}),
        }
        assert not is_tubing("(12)", make_tubing(["1", "2", "12"]))

    def test_small_counts(self):
        assert len(enumerate_tubings("123")) == 11
        assert len(enumerate_tubings("1")) == 1

    @pytest.mark.parametrize("word", ["1234", "(1234)", "12|(34)", "1|2|3", "(1)|(23)", "12345", "(12)|34"])
    def test_against_literal_axioms(self, word):
        g = parse_graph(word)
        assert {t.tubes for t in enumerate_tubings(g)} == literal_tubings(g)

    @settings(max_examples=25)
    @given(graphs(5, "abcde"))
    def test_against_literal_axioms_random(self, g):
        assert {t.tubes for t in enumerate_tubings(g)} == literal_tubings(g)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_path_counts_by_size(self, n):
        sizes = Counter(len(t) for t in enumerate_tubings(path_graph(n)))
        for j in range(n):  # j proper tubes: dissections of an (n+2)-gon by j diagonals
            assert sizes[j + 1] == comb(n - 1, j) * comb(n + j + 1, j) // (j + 1)
        assert sum(sizes.values()) == little_schroeder(n)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_cycle_counts_by_size(self, n):
        sizes = Counter(len(t) for t in enumerate_tubings(cycle_graph(n)))
        for j in range(n):
            assert sizes[j + 1] == comb(n - 1, j) * comb(n - 1 + j, j)

    @given(graphs(6))
    def test_sizes_bounded(self, g):
        for t in enumerate_tubings(g):
            assert g.num_components <= len(t) <= len(g)
            assert is_tubing(g, t)
            assert is_maximal_tubing(g, t) == (len(t) == len(g))

    def test_validation_errors(self):
        assert not is_tubing("1234", make_tubing(["13", "1234"]))  # not a tube
        assert not is_tubing("1234", make_tubing(["12", "23", "1234"]))  # overlap
        assert not is_tubing("1234", make_tubing(["12"]))  # missing component
        with pytest.raises(NotATubing):
            decompose_tubing("1234", make_tubing(["12", "34", "1234"]))

    def test_json(self):
        t = make_tubing(["1234", "12"])
        assert t.to_json() == {"tubes": [["1", "2"], ["1", "2", "3", "4"]]}
        assert Tubing.from_json(t.to_json()) == t


class TestDecomposition:
    def test_path_example(self):
        d = decompose_tubing("1234", make_tubing(["12", "1234"]))
        assert d.partition == {frozenset("12"), frozenset("34")}
        assert d.graph == parse_graph("12|34")
        assert d.zero_block is None

    def test_cycle_example(self):
        d = decompose_tubing("(1234)", make_tubing(["2", "123", "1234"]))
        assert d.zero_block == frozenset("4")
        assert d.nonzero_blocks == {frozenset("2"), frozenset("13")}
        assert d.graph == parse_graph("(4)|2|13")

    def test_minimum_tubing(self):
        for w in ["12345", "(12345)"]:
            g = parse_graph(w)
            d = decompose_tubing(g, make_tubing([w.strip("()")]))
            assert d.graph == g

    def test_small_zero_blocks_are_cycles(self):
        d = decompose_tubing("(1234)", make_tubing(["12", "1234"]))
        assert d.graph == parse_graph("12|(34)")

    @pytest.mark.parametrize("n", range(1, 7))
    def test_blocks_are_components(self, n):
        for host in (path_graph(n), cycle_graph(n)):
            for t, d in tubing_terms(host):
                assert {c.vertex_set() for c in d.graph.components} == set(d.partition)
                # blocks are the classes of "lies in the same tubes"
                sig = defaultdict(set)
                for v in host.ground_set:
                    sig[frozenset(T for T in t.tubes if v in T)].add(v)
                assert {frozenset(b) for b in sig.values()} == set(d.partition)
                if host.is_cycle():
                    inside_proper = set().union(*[T for T in t.tubes if T != host.ground_set])
                    assert d.zero_block == host.ground_set - inside_proper


class TestAntipode:
    def test_examples(self):
        assert antipode_tubings("(12)") == antipode_mm("(12)")
        assert antipode_tubings("123") == LinearCombination(
            [(parse_graph(w), c) for w, c in
             [("123", -1), ("12|3", 2), ("1|23", 2), ("13|2", 1), ("1|2|3", -5)]])
        assert antipode_tubings("1") == LinearCombination.of("1", -1)

    def test_requires_connected(self):
        with pytest.raises(NotConnected):
            antipode_tubings("1|2")

    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_recursion(self, n):
        assert antipode_tubings(path_graph(n)) == antipode_mm(path_graph(n))
        assert antipode_tubings(cycle_graph(n)) == antipode_mm(cycle_graph(n))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_cancellation_free(self, n):
        for host in (path_graph(n), cycle_graph(n)):
            parity = {}
            for t, d in tubing_terms(host):
                assert parity.setdefault(d.graph, len(t)) == len(t)


class TestCounting:
    def test_interval_examples(self):
        assert count_interval_partitions(4, [1, 3]) == 4
        assert count_interval_partitions(6, [1, 2, 3]) == 12
        assert count_interval_partitions(5, [1] * 5) == 1
        assert count_interval_partitions(4, {1: 1, 3: 1}) == 4

    def test_decomposition_examples(self):
        assert count_decompositions(3, 1, [2]) == 3
        assert count_decompositions(4, 2, [1, 1]) == 2
        assert count_decompositions(5, 5, []) == 1

    @pytest.mark.parametrize("n", range(2, 12))
    def test_single_point_gives_n(self, n):
        assert count_decompositions(n, 1, [n - 1]) == n

    @pytest.mark.parametrize("bad", [(4, [4]), (4, [1, 2]), (5, [])])
    def test_interval_invalid(self, bad):
        with pytest.raises(InvalidMultiset):
            count_interval_partitions(*bad)

    @pytest.mark.parametrize("bad", [(4, 0, [4]), (4, 1, [1, 2]), (5, 2, [1]), (3, 4, [])])
    def test_decomposition_invalid(self, bad):
        with pytest.raises(InvalidMultiset):
            count_decompositions(*bad)

    @pytest.mark.parametrize("n", range(2, 10))
    def test_interval_exhaustive(self, n):
        brute = brute_interval_counts(n)
        shapes = list(valid_interval_multisets(n))
        assert set(shapes) == set(brute)
        for m in shapes:
            assert count_interval_partitions(n, m) == brute[m]

    @pytest.mark.parametrize("n", range(1, 10))
    def test_decomposition_exhaustive(self, n):
        brute = brute_decomposition_counts(n)
        shapes = list(valid_decomposition_shapes(n))
        assert set(shapes) == set(brute)
        for k, m in shapes:
            assert count_decompositions(n, k, m) == brute[(k, m)]

    def test_interval_partition_oracle(self):
        # four-cycle: {0}{1}{2}{3}, four ways with a 1+3 split, two with 2+2, four with 1+1+2
        assert len(interval_partitions(4)) == 1 + 4 + 2 + 4

    @pytest.mark.parametrize("n", range(2, 8))
    def test_right_endpoint_bijection(self, n):
        parts = interval_partitions(n)
        images = {}
        for p in parts:
            S = right_endpoints(p)
            assert intervals_from_endpoints(n, S) == p
            # complement runs of S are the intervals with their endpoint removed
            runs = sorted(len(r) for r in complement_runs(n, S))
            assert runs == sorted(len(iv) - 1 for iv in p if len(iv) > 1)
            images[S] = p
        assert len(images) == len(parts)
        # every subset of size >= 2 arises
        assert len(images) == 2 ** n - 1 - n

    @given(st.integers(2, 9), st.data())
    def test_counts_related_by_shift(self, n, data):
        m = data.draw(st.sampled_from(list(valid_interval_multisets(n))))
        k = len(m)
        gaps = [x - 1 for x in m if x > 1]
        assert count_interval_partitions(n, m) == count_decompositions(n, k, gaps)
