import pytest

from knotball.models.complex import (
    SimplicialComplex,
    boundary_complex,
    delete_star,
    f_vector,
    is_connected,
    is_pseudomanifold,
    link,
    make_complex,
    parse_cplx,
    read_cplx,
    star_closed,
    strongly_connected,
    write_cplx,
)
from knotball.models.errors import (
    ContainedFacet,
    EmptyComplex,
    FormatError,
    NonPure,
    NotAFace,
)
from knotball.models.schemas import ManifoldStatus


class TestConstruction:
    def test_duplicates_collapse(self):
        C = make_complex([(1, 2, 3), (3, 2, 1), (2, 3, 4)])
        assert C.n_facets == 2
        assert C.dim == 2
        assert C.vertices == frozenset({1, 2, 3, 4})

    def test_empty_list_rejected(self):
        with pytest.raises(EmptyComplex):
            make_complex([])

    def test_mixed_sizes_rejected(self):
        with pytest.raises(NonPure):
            make_complex([(1, 2, 3), (3, 4)])

    def test_labels_must_be_positive(self):
        with pytest.raises(FormatError):
            make_complex([(0, 1, 2)])

    def test_generated_by_mixed(self):
        C = SimplicialComplex.generated_by([(1, 2, 3), (3, 4)])
        assert not C.is_pure
        assert C.dim == 2
        assert f_vector(C).counts == (4, 4, 1)
        with pytest.raises(NonPure):
            boundary_complex(C)

    def test_generated_by_rejects_contained_generator(self):
        with pytest.raises(ContainedFacet):
            SimplicialComplex.generated_by([(1, 2, 3), (1, 2)])


class TestFaces:
    def test_f_vector_and_euler_characteristic(self, sphere3_min):
        fv = f_vector(sphere3_min)
        assert fv.counts == (5, 10, 10, 5)
        assert fv.euler_characteristic == 0

    def test_is_face(self, tetrahedron):
        assert tetrahedron.is_face((1, 3))
        assert tetrahedron.contains_face((2, 3, 4))
        assert not tetrahedron.is_face((1, 5))
        assert not tetrahedron.is_face((1, 2, 3, 4, 5))

    def test_skeleton(self, tetrahedron):
        assert tetrahedron.skeleton(1).n_facets == 6

    def test_induced_subcomplex(self, sphere3_min):
        sub = sphere3_min.induced_subcomplex([1, 2, 3])
        assert sub.sorted_facets() == [(1, 2, 3)]

    def test_relabel(self, sphere2_min):
        C = sphere2_min.relabel({1: 10, 2: 20, 3: 30, 4: 40})
        assert C.vertices == frozenset({10, 20, 30, 40})
        with pytest.raises(FormatError):
            sphere2_min.relabel({1: 7, 2: 7, 3: 8, 4: 9})


class TestLinksAndStars:
    def test_link_of_vertex_in_sphere(self, sphere3_min):
        L = link(sphere3_min, [1])
        assert L.dim == 2
        assert L.sorted_facets() == [(2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5)]

    def test_link_of_edge(self, sphere3_min):
        assert link(sphere3_min, [1, 2]).n_facets == 3

    def test_link_of_non_face(self, sphere2_min):
        with pytest.raises(NotAFace):
            link(sphere2_min, [1, 9])

    def test_star_and_deletion_partition_facets(self, sphere3_min):
        star = star_closed(sphere3_min, [5])
        rest = delete_star(sphere3_min, [5])
        assert star.n_facets == 4
        assert rest.sorted_facets() == [(1, 2, 3, 4)]
        assert star.facets | rest.facets == sphere3_min.facets


class TestBoundaryAndManifolds:
    def test_boundary_of_simplex(self, tetrahedron, sphere2_min):
        assert boundary_complex(tetrahedron) == sphere2_min

    def test_closed_complex_has_empty_boundary(self, sphere3_min):
        B = boundary_complex(sphere3_min)
        assert B.is_empty
        assert B.dim == 2

    def test_pseudomanifold_status(self, sphere3_min, tetrahedron, rp2):
        assert is_pseudomanifold(sphere3_min) is ManifoldStatus.CLOSED
        assert is_pseudomanifold(tetrahedron) is ManifoldStatus.WITH_BOUNDARY
        assert is_pseudomanifold(rp2) is ManifoldStatus.CLOSED
        three_sheets = make_complex([(1, 2, 3), (1, 2, 4), (1, 2, 5)])
        assert is_pseudomanifold(three_sheets) is ManifoldStatus.NO

    def test_connectivity(self):
        bowtie = make_complex([(1, 2, 3), (3, 4, 5)])
        assert is_connected(bowtie)
        assert not strongly_connected(bowtie)
        assert is_pseudomanifold(bowtie) is ManifoldStatus.NO


class TestCplxFormat:
    def test_canonical_text(self):
        C = make_complex([(4, 3, 2), (3, 1, 2)])
        assert C.to_cplx() == "1 2 3\n2 3 4\n"
        assert C.to_cplx(["demo"]) == "# demo\n1 2 3\n2 3 4\n"

    def test_parse_skips_comments_and_blank_lines(self):
        C = parse_cplx("# header\n\n1 2 3\n  2 3 4  \n")
        assert C.sorted_facets() == [(1, 2, 3), (2, 3, 4)]

    def test_parse_rejects_garbage(self):
        with pytest.raises(FormatError):
            parse_cplx("1 2 x\n")

    def test_file_round_trip(self, tmp_path, rp2):
        path = tmp_path / "rp2.cplx"
        write_cplx(rp2, path, header=["projective plane"])
        assert read_cplx(path) == rp2
        assert path.read_text().startswith("# projective plane\n1 2 4\n")
