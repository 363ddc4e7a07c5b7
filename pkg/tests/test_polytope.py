from fractions import Fraction
from math import comb

import numpy as np
import pytest

from pathcycle.errors import HostNotCycle
from pathcycle.graphs import cycle_graph, parse_graph, path_graph
from pathcycle.noncrossing import catalan
from pathcycle.polytope import (
    FaceFactorization,
    build_polytope,
    cyclic_factor_coordinates,
    cyclic_value,
    euler_characteristic,
    f_vector,
    face_factorization,
    face_monomials,
    face_of_tubing,
    faces,
    standard_associahedron,
    standard_cyclohedron,
    vertices_by_generic_directions,
    vertices_of_face_by_containment,
)
from pathcycle.tubings import decompose_tubing, enumerate_tubes, enumerate_tubings, make_tubing


def affine_dim(points: np.ndarray) -> int:
    if len(points) == 1:
        return 0
    return int(np.linalg.matrix_rank((points[1:] - points[0]).astype(float)))


class TestVertices:
    def test_point(self):
        P = build_polytope("1")
        assert [v.as_dict() for v in P.vertices] == [{"1": Fraction(1)}]

    @pytest.mark.parametrize("word,count,total", [("123", 5, 6), ("(123)", 6, 7)])
    def test_small(self, word, count, total):
        P = build_polytope(word)
        assert len(P.vertices) == count
        assert all(v.total() == total for v in P.vertices)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_counts(self, n):
        assert len(standard_associahedron(n).vertices) == catalan(n)
        assert len(standard_cyclohedron(n).vertices) == comb(2 * n - 2, n - 1)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_against_generic_directions(self, n):
        for P in (standard_associahedron(n), standard_cyclohedron(n)):
            got = {tuple(int(x) for x in row) for row in P.coords}
            assert got == vertices_by_generic_directions(P.host)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_coordinate_sum_is_tube_count(self, n):
        for P in (standard_associahedron(n), standard_cyclohedron(n)):
            assert set(P.coords.sum(axis=1)) == {len(enumerate_tubes(P.host))}

    def test_products(self):
        P = build_polytope("12|(34)")
        assert len(P.vertices) == 4
        assert P.dim == 2
        assert f_vector(P) == [4, 4, 1]
        oracle = vertices_by_generic_directions(P.host)
        assert {tuple(int(x) for x in row) for row in P.coords} == oracle

    def test_json(self):
        data = build_polytope("12").to_json()
        assert data["graph"] == "12"
        assert sorted(v["coords"]["1"] for v in data["vertices"]) == ["1", "2"]


class TestFaces:
    def test_minimum_and_maximal(self):
        for word in ["1234", "(1234)"]:
            P = build_polytope(word)
            whole = face_of_tubing(P, make_tubing([word.strip("()")]))
            assert whole.vertices == frozenset(range(len(P.vertices)))
            assert whole.dim == 3
            for i, t in enumerate(P.vertex_tubings):
                F = face_of_tubing(P, t)
                assert F.vertices == {i} and F.dim == 0

    def test_pentagon_edge(self):
        P = build_polytope("123")
        F = face_of_tubing(P, make_tubing(["3", "123"]))
        pts = [P.vertices[i] for i in F.vertices]
        assert len(pts) == 2
        assert {p["1"] + p["2"] for p in pts} == {5}
        assert max(v["1"] + v["2"] for v in P.vertices) == 5

    @pytest.mark.parametrize("word,fv", [("123", [5, 5, 1]), ("(123)", [6, 6, 1]), ("1", [1]),
                                         ("1234", [14, 21, 9, 1]), ("(1234)", [20, 30, 12, 1])])
    def test_f_vectors(self, word, fv):
        assert f_vector(parse_graph(word)) == fv

    @pytest.mark.parametrize("n", range(1, 7))
    def test_dimension_and_containment(self, n):
        for P in (standard_associahedron(n), standard_cyclohedron(n)):
            for F in faces(P):
                assert F.dim == n - len(F.tubing)
                assert affine_dim(P.coords[sorted(F.vertices)]) == F.dim
                if n <= 5:
                    assert F.vertices == vertices_of_face_by_containment(P, F.tubing)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_euler(self, n):
        assert euler_characteristic(path_graph(n)) == 1
        assert euler_characteristic(cycle_graph(n)) == 1


class TestCyclicFactor:
    def test_value(self):
        assert [cyclic_value(n) for n in range(1, 6)] == [1, 2, 4, 7, 11]

    def test_whole_polytope(self):
        P = standard_cyclohedron(4)
        F = face_of_tubing(P, make_tubing(["1234"]))
        assert cyclic_factor_coordinates(P, F) == P.host.ground_set

    def test_vertices_of_hexagon(self):
        P = standard_cyclohedron(3)
        for t in P.vertex_tubings:
            F = face_of_tubing(P, t)
            labels = cyclic_factor_coordinates(P, F)
            assert len(labels) == 1
            (v,) = F.vertices
            assert P.vertices[v][next(iter(labels))] == 4

    @pytest.mark.parametrize("n", range(1, 7))
    def test_zero_block_rule(self, n):
        P = standard_cyclohedron(n)
        for F in faces(P):
            assert cyclic_factor_coordinates(P, F) == decompose_tubing(P.host, F.tubing).zero_block

    def test_path_host_rejected(self):
        P = standard_associahedron(3)
        with pytest.raises(HostNotCycle):
            cyclic_factor_coordinates(P, next(faces(P)))

    def test_square_faces_of_c5(self):
        P = standard_cyclohedron(5)
        squares = {}
        for F in faces(P):
            if F.dim == 2 and len(F.vertices) == 4:
                fac = face_factorization(P, F)
                squares.setdefault(fac, []).append(F)
        assert FaceFactorization(2, (1, 2)) in squares
        assert FaceFactorization(1, (2, 2)) in squares
        for fac, fs in squares.items():
            for F in fs:
                assert len(cyclic_factor_coordinates(P, F)) == fac.cyclic


class TestFactorization:
    def test_example(self):
        P = standard_cyclohedron(4)
        F = face_of_tubing(P, make_tubing(["2", "123", "1234"]))
        fac = face_factorization(P, F)
        assert fac == FaceFactorization(1, (1, 2))
        assert fac.dim == F.dim == 1

    def test_whole_associahedron(self):
        P = standard_associahedron(5)
        F = face_of_tubing(P, make_tubing(["12345"]))
        assert face_factorization(P, F) == FaceFactorization(None, (5,))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_dims_add_up(self, n):
        for P in (standard_associahedron(n), standard_cyclohedron(n)):
            for F in faces(P):
                assert face_factorization(P, F).dim == F.dim

    def test_facets_of_c4(self):
        P = standard_cyclohedron(4)
        facets = [F for F in faces(P) if F.dim == 2]
        assert len(facets) == 12
        for F in facets:
            assert len(F.tubing) == 2
            assert face_factorization(P, F).dim == 2

    @pytest.mark.parametrize("kind,n", [("path", k) for k in range(1, 7)] + [("cycle", k) for k in range(1, 7)])
    def test_monomials_match_face_by_face(self, kind, n):
        P = standard_associahedron(n) if kind == "path" else standard_cyclohedron(n)
        expected = {}
        for F in faces(P):
            fac = face_factorization(P, F)
            expected[fac] = expected.get(fac, 0) + (-1) ** (n - F.dim)
        assert face_monomials(kind, n) == {k: v for k, v in expected.items() if v}
