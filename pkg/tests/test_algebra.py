import numpy as np
import pytest

from knotball.models.complex import SimplicialComplex
from knotball.models.schemas import CollapseStep, GroupPresentation
from knotball.services.algebra import (
    IntegerMatrix,
    abelianization,
    boundary_matrix,
    closure,
    collapse,
    euler_characteristic,
    homology,
    is_collapsible,
    replay_collapse,
    smith_normal_form,
)


def _is_smith_diagonal(D: IntegerMatrix) -> bool:
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D.entries[i][j]:
                return False
    diag = [D.entries[i][i] for i in range(min(D.rows, D.cols))]
    nonzero = [d for d in diag if d]
    if any(d < 0 for d in diag) or diag[: len(nonzero)] != nonzero:
        return False
    return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


class TestSmithNormalForm:
    def test_known_example(self):
        A = IntegerMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        assert smith_normal_form(A).diagonal == [2, 6, 12]

    def test_zero_matrix(self):
        assert smith_normal_form(IntegerMatrix.zeros(2, 3)).diagonal == [0, 0]

    @pytest.mark.parametrize("seed", range(20))
    def test_recomposition_on_random_matrices(self, seed):
        rng = np.random.default_rng(seed)
        entries = rng.integers(-6, 7, size=(6, 6))
        if seed % 4 == 0:
            entries[5] = entries[0] + 2 * entries[1]
        A = IntegerMatrix(entries.tolist())
        snf = smith_normal_form(A, transforms=True)
        assert snf.U @ A @ snf.V == snf.D
        assert abs(snf.U.determinant()) == 1
        assert abs(snf.V.determinant()) == 1
        assert _is_smith_diagonal(snf.D)
        assert snf.diagonal == [snf.D.entries[i][i] for i in range(6)]

    def test_rectangular_recomposition(self):
        A = IntegerMatrix([[4, 6, 2, 0], [2, 0, 8, 6]])
        snf = smith_normal_form(A, transforms=True)
        assert snf.U @ A @ snf.V == snf.D
        assert snf.diagonal == [2, 2]

    def test_determinant(self):
        assert IntegerMatrix([[2, 1], [7, 4]]).determinant() == 1
        assert IntegerMatrix([[1, 2], [2, 4]]).determinant() == 0


class TestHomology:
    def test_boundary_squares_to_zero(self, sphere3_min):
        d2, d3 = boundary_matrix(sphere3_min, 2), boundary_matrix(sphere3_min, 3)
        product = d2 @ d3
        assert all(x == 0 for row in product.entries for x in row)

    def test_sphere(self, sphere3_min):
        H = homology(sphere3_min)
        assert H.betti == [1, 0, 0, 1]
        assert not any(H.torsion)

    def test_projective_plane_has_torsion(self, rp2):
        H = homology(rp2)
        assert H.betti == [1, 0, 0]
        assert H.torsion == [[], [2], []]
        assert str(H) == "(Z, Z2, 0)"

    def test_torus(self, torus):
        assert homology(torus).betti == [1, 2, 1]
        assert euler_characteristic(torus) == 0

    def test_reduced_homology_of_simplex(self, tetrahedron):
        H = homology(tetrahedron, reduced=True)
        assert H.is_trivial()
        assert H.euler_characteristic == 1

    def test_mixed_complex(self):
        C = SimplicialComplex.generated_by([(1, 2, 3), (3, 4), (4, 5), (5, 3)])
        assert homology(C).betti == [1, 1, 0]


class TestAbelianization:
    def test_trefoil_group_is_infinite_cyclic_after_abelianizing(self):
        trefoil = GroupPresentation(generators=2, relators=[[1, 2, 1, -2, -1, -2]])
        assert abelianization(trefoil).is_infinite_cyclic()

    def test_cyclic_of_order_two(self):
        ab = abelianization(GroupPresentation(generators=1, relators=[[1, 1]]))
        assert ab.rank == 0
        assert ab.torsion == [2]

    def test_free_group(self):
        assert abelianization(GroupPresentation(generators=2)).rank == 2


class TestCollapses:
    def test_simplex_collapses_with_replayable_trace(self, tetrahedron):
        result = is_collapsible(tetrahedron)
        assert result.outcome == "yes"
        assert len(replay_collapse(tetrahedron, result.trace)) == 1

    def test_sphere_is_stuck(self, sphere2_min):
        result = is_collapsible(sphere2_min)
        assert result.outcome == "unknown"
        assert len(result.remaining) == 4

    def test_invalid_trace_step(self, tetrahedron):
        with pytest.raises(ValueError):
            replay_collapse(tetrahedron, [CollapseStep(face=(1,), coface=(1, 2))])

    def test_collapse_face_set(self):
        faces = closure([(1, 2, 3), (3, 4)])
        assert len(faces) == 9
        assert len(collapse(faces)) == 1
