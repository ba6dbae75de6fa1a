import pytest

from knotball.models.complex import boundary_complex, f_vector, read_cplx
from knotball.models.errors import UnknownName
from knotball.models.schemas import FreeFacetReport
from knotball.services import catalog, iso, knot, recognition, shelling
from knotball.services.algebra import abelianization, homology
from knotball.services.groups import get_group


FAST_CLAIMS = [
    "shield_split",
    "complexC_contractible",
    "closing16_in_B3_16_46",
    "closing16_v2_in_S3_13_56",
    "boundary28",
    "identity.S3_17_74",
    "identity.S3_13_56",
    "link13_sphere",
    "knot_edges",
]


class TestEntries:
    @pytest.mark.parametrize("name,counts", [
        ("B3_16_46", (16, 75, 106, 46)),
        ("S3_17_74", (17, 91, 148, 74)),
        ("S3_13_56", (13, 69, 112, 56)),
        ("B3_12_37_a", (12, 58, 84, 37)),
        ("B3_12_37_b", (12, 58, 84, 37)),
    ])
    def test_f_vectors(self, name, counts):
        assert f_vector(catalog.load(name)).counts == counts

    def test_sizes(self):
        assert catalog.load("B3_12_38").n_facets == 38
        assert catalog.load("B3_12_38").n_vertices == 12
        assert catalog.load("complexC").n_facets == 25
        assert not catalog.load("complexC").is_pure

    def test_unknown_name(self):
        with pytest.raises(UnknownName):
            catalog.load("B3_99_99")

    def test_every_name_loads(self):
        for name in catalog.names():
            assert catalog.load(name).n_facets > 0

    def test_balls_have_the_right_homology(self):
        for name in ("B3_16_46", "B3_12_38", "B3_12_37_a"):
            assert homology(catalog.load(name), reduced=True).is_trivial()
        assert homology(catalog.load("S3_13_56")).betti == [1, 0, 0, 1]

    def test_boundary_of_b3_16_46(self):
        assert boundary_complex(catalog.load("B3_16_46")) == catalog.load("boundary28")

    def test_knot_edges_present(self):
        for name in catalog.KNOTTED:
            C = catalog.load(name)
            assert all(C.is_face(e) for e in ((1, 2), (1, 3), (2, 3)))
            assert not C.is_face((1, 2, 3))

    def test_export_round_trip(self, tmp_path):
        path = catalog.export("S3_13_56", tmp_path)
        assert path.name == "S3_13_56.cplx"
        assert read_cplx(path) == catalog.load("S3_13_56")
        assert path.read_text(encoding="utf-8").startswith("# S3_13_56")


class TestClaims:
    @pytest.mark.parametrize("claim", FAST_CLAIMS)
    def test_fast_claims(self, claim):
        result = catalog.run_claim(claim)
        assert result.passed, result.detail

    def test_size_and_f_vector_claims(self):
        selected = [c for c in catalog.CLAIMS if c.startswith(("size.", "f_vector."))]
        report = catalog.verify_catalog(selected, jobs=1)
        assert report.passed
        assert report.failed_count == 0
        assert [c.claim for c in report.claims] == selected

    @pytest.mark.parametrize("claim", ["strongly_nonshellable.B3_16_46", "free_facets.B3_12_38"])
    def test_undecided_facets_fail_the_claim(self, claim, monkeypatch):
        def stalled(B, *args, **kwargs):
            return FreeFacetReport(undecided=B.sorted_facets()[:1])

        monkeypatch.setattr(shelling, "classify_facets", stalled)
        result = catalog.run_claim(claim)
        assert not result.passed
        assert "undecided" in result.detail

    def test_unknown_claim(self):
        with pytest.raises(UnknownName):
            catalog.verify_catalog(["no.such.claim"])


@pytest.mark.slow
class TestHeavyClaims:
    @pytest.mark.parametrize("name", catalog.BALLS)
    def test_balls(self, name):
        assert recognition.verify_ball3(catalog.load(name), jobs=1).yes

    @pytest.mark.parametrize("name", catalog.SPHERES)
    def test_spheres(self, name):
        assert recognition.verify_sphere3(catalog.load(name), jobs=1).yes

    def test_free_facets_of_b3_12_38(self):
        assert shelling.free_facets(catalog.load("B3_12_38"), jobs=1) == [(2, 4, 5, 7), (3, 4, 6, 10)]

    @pytest.mark.parametrize("name", ["B3_12_37_a", "B3_12_37_b"])
    def test_strongly_non_shellable(self, name):
        assert shelling.free_facets(catalog.load(name), jobs=1) == []

    @pytest.mark.parametrize("name", ["S3_13_56", "B3_12_37_a"])
    def test_knot_certificate(self, name):
        result = knot.certify_nonconstructible(catalog.load(name), jobs=1)
        assert result.status == "certified"
        assert tuple(result.witness.cycle) == (1, 2, 3)
        assert knot.verify_witness(result.witness)

    @pytest.mark.parametrize("name", catalog.SPHERES)
    def test_complement_of_the_knot(self, name):
        P = knot.complement_presentation(catalog.load(name), (1, 2, 3))
        assert abelianization(P).is_infinite_cyclic()
        assert knot.count_homs(P, get_group("S3")) == 12

    def test_certificate_survives_relabeling(self):
        B = catalog.load("B3_12_37_a").relabel(lambda v: 13 - v)
        result = knot.certify_nonconstructible(B, jobs=1)
        assert result.status == "certified"
        assert not B.is_face(result.witness.cycle)
        assert knot.verify_witness(result.witness)

    def test_non_isomorphic_balls_with_isomorphic_boundaries(self):
        assert catalog.run_claim("non_isomorphic_37").passed

    def test_z3_symmetry(self):
        C = catalog.load("B3_16_46")
        assert iso.is_automorphism(C, iso.permutation_from_cycles(catalog.Z3_SYMMETRY))
