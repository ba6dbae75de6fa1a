import pytest

from knotball.models.complex import f_vector, make_complex
from knotball.models.errors import (
    BadDimension,
    DimensionMismatch,
    NotAFacet,
    NotAVertex,
    VertexClash,
)
from knotball.services import moves, recognition
from knotball.services.algebra import homology


class TestConstructions:
    def test_cone(self, sphere2_min, tetrahedron):
        C = moves.cone(sphere2_min, 5)
        assert C.dim == 3
        assert C.n_facets == sphere2_min.n_facets
        assert homology(C, reduced=True).is_trivial()
        with pytest.raises(VertexClash):
            moves.cone(tetrahedron, 4)

    def test_suspension(self, sphere2_min, sphere3_min):
        S = moves.suspension(sphere2_min, 5, 6)
        assert S.n_facets == 8
        assert homology(S).betti == [1, 0, 0, 1]
        with pytest.raises(VertexClash):
            moves.suspension(sphere2_min, 5, 5)

    def test_one_point_suspension_sizes(self, sphere2_min):
        S = moves.one_point_suspension(sphere2_min, 1, 5)
        # three facets through vertex 1 and one facet twice
        assert S.n_facets == 3 + 2
        assert S.n_vertices == sphere2_min.n_vertices + 1
        assert recognition.verify_sphere3(S).yes

    def test_one_point_suspension_is_smaller_than_suspension(self, load):
        S = load("S3_13_56")
        ops = moves.one_point_suspension(S, 4, 14)
        two = moves.suspension(S, 14, 15)
        assert ops.n_vertices == two.n_vertices - 1
        assert ops.dim == two.dim == 4

    def test_one_point_suspension_errors(self, sphere2_min):
        with pytest.raises(NotAVertex):
            moves.one_point_suspension(sphere2_min, 9, 10)
        with pytest.raises(VertexClash):
            moves.one_point_suspension(sphere2_min, 1, 2)

    def test_glue(self, sphere2_min):
        disk = make_complex([(1, 2, 3)])
        assert moves.glue(disk, sphere2_min) == sphere2_min
        with pytest.raises(DimensionMismatch):
            moves.glue(disk, make_complex([(1, 2)]))

    def test_remove_facet(self, tetrahedron, sphere2_min):
        disk = moves.remove_facet(sphere2_min, (1, 2, 3))
        assert disk.n_facets == 3
        assert recognition.is_ball2(disk)
        assert moves.remove_facet(tetrahedron, (1, 2, 3, 4)).is_empty
        with pytest.raises(NotAFacet):
            moves.remove_facet(sphere2_min, (1, 2, 5))

    def test_simplex_complex(self):
        assert moves.simplex_complex((3, 1, 2)).sorted_facets() == [(1, 2, 3)]


class TestFamilies:
    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_sphere_family_sizes(self, d):
        S = moves.family_sphere(d)
        assert S.dim == d
        assert S.n_vertices == d + 10
        assert moves.knot_preserved(S)
        member = moves.describe_family("sphere", d, S)
        assert member.non_constructible == ("certified" if d == 3 else "inherited")

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_ball_family_sizes(self, d):
        B = moves.family_ball(d)
        assert B.dim == d
        assert B.n_vertices == d + 9
        assert B.n_facets == 37
        assert moves.knot_preserved(B)

    def test_sphere_family_homology(self):
        assert homology(moves.family_sphere(4)).betti == [1, 0, 0, 0, 1]

    def test_bad_dimension(self):
        with pytest.raises(BadDimension):
            moves.family_sphere(2)
        with pytest.raises(BadDimension):
            moves.family_ball(1)

    @pytest.mark.slow
    def test_sphere_family_in_dimension_four_is_a_sphere(self):
        assert recognition.verify_sphere(moves.family_sphere(4), 4).yes

    def test_knot_preserved(self, sphere3_min, load):
        assert not moves.knot_preserved(sphere3_min)
        assert moves.knot_preserved(load("S3_13_56"))
        assert f_vector(load("S3_13_56")).counts == (13, 69, 112, 56)
