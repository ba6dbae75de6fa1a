import pytest

from knotball.config import settings
from knotball.models.complex import f_vector
from knotball.models.errors import FormatError, Inadmissible, NotAFace
from knotball.models.schemas import FlipMove, ManifoldStatus
from knotball.services import bistellar
from knotball.services.algebra import homology
from knotball.services.recognition import is_combinatorial_manifold3


KNOT_EDGES = [(1, 2), (1, 3), (2, 3)]


def _move(face, coface):
    return FlipMove(face=face, coface=coface)


class TestMoves:
    def test_simplex_boundary_only_admits_subdivisions(self, sphere3_min):
        moves = bistellar.admissible_moves(sphere3_min)
        assert len(moves) == 5
        assert all(m.is_subdivision and m.coface == (6,) for m in moves)
        assert bistellar.admissible_moves(sphere3_min, subdivisions=False) == []

    def test_vertex_removal(self, subdivided_sphere3, sphere3_min):
        moves = bistellar.admissible_moves(subdivided_sphere3, subdivisions=False)
        removal = _move((6,), (1, 2, 3, 4))
        assert removal in moves
        assert bistellar.apply_move(subdivided_sphere3, removal) == sphere3_min

    def test_inadmissible_move(self, sphere3_min):
        with pytest.raises(Inadmissible):
            bistellar.apply_move(sphere3_min, _move((1, 2), (3, 4, 5)))
        with pytest.raises(Inadmissible):
            bistellar.apply_move(sphere3_min, _move((1, 2, 3, 4), (5,)))

    def test_reverse(self):
        move = _move((1, 2), (3, 4, 5))
        assert bistellar.reverse(move) == _move((3, 4, 5), (1, 2))
        assert move.delta_facets == -1

    @pytest.mark.parametrize("name", ["S3_13_56", "S3_17_74"])
    def test_every_move_is_reversible(self, load, name):
        C = load(name)
        for move in bistellar.admissible_moves(C):
            flipped = bistellar.apply_move(C, move)
            assert f_vector(flipped).euler_characteristic == 0
            assert bistellar.apply_move(flipped, bistellar.reverse(move)) == C

    def test_engine_agrees_with_functional_api(self, subdivided_sphere3):
        engine = bistellar.FlipEngine(subdivided_sphere3)
        for move in engine.moves():
            expected = bistellar.apply_move(subdivided_sphere3, move)
            copy = bistellar.FlipEngine(subdivided_sphere3)
            copy.apply(move)
            assert copy.complex() == expected


class TestFrozenFaces:
    def test_forbidden_triangle(self, load):
        assert bistellar.forbidden_for(load("S3_13_56"), KNOT_EDGES) == {frozenset({1, 2, 3})}

    def test_frozen_face_must_exist(self, sphere3_min):
        with pytest.raises(NotAFace):
            bistellar.FlipEngine(sphere3_min, frozen=[(1, 6)])

    def test_frozen_face_blocks_its_moves(self, subdivided_sphere3):
        moves = bistellar.admissible_moves(subdivided_sphere3, frozen=[(6,)], subdivisions=False)
        assert (6,) not in [m.face for m in moves]
        assert bistellar.admissible_moves(subdivided_sphere3, subdivisions=False) != moves

    def test_reduction_keeps_the_knot(self, load):
        S = load("S3_13_56")
        result = bistellar.reduce(S, frozen=KNOT_EDGES, seed=1, budget=2000)
        R = result.complex
        assert R.n_facets <= S.n_facets
        assert R.n_vertices <= 17
        assert all(R.is_face(e) for e in KNOT_EDGES)
        assert not R.is_face((1, 2, 3))
        assert homology(R).betti == [1, 0, 0, 1]
        assert is_combinatorial_manifold3(R) is ManifoldStatus.CLOSED


class TestReduction:
    def test_reaches_simplex_boundary_and_replays(self, subdivided_sphere3):
        result = bistellar.reduce(subdivided_sphere3, seed=3, budget=500)
        assert result.reached_simplex_boundary
        assert result.final_f_vector == (5, 10, 10, 5)
        assert result.initial_f_vector == (6, 14, 16, 8)
        assert bistellar.replay(subdivided_sphere3, result.trace) == result.complex

    def test_same_seed_same_trace(self, load):
        S = load("S3_13_56")
        first = bistellar.reduce(S, seed=7, budget=300)
        second = bistellar.reduce(S, seed=7, budget=300)
        assert first.trace == second.trace
        assert first.final_f_vector == second.final_f_vector

    def test_checkpoints_preserve_euler_characteristic_and_homology(self, load):
        S = load("S3_13_56")
        config = settings.with_overrides(checkpoint_every=10)
        result = bistellar.reduce(S, seed=2, budget=400, config=config)
        assert result.checkpoints
        assert all(c.euler_characteristic == 0 for c in result.checkpoints)
        assert all(c.homology == homology(S) for c in result.checkpoints)
        assert [c.accepted for c in result.checkpoints] == list(
            range(10, 10 * len(result.checkpoints) + 1, 10)
        )


class TestTraceFiles:
    def test_round_trip(self, tmp_path, subdivided_sphere3):
        result = bistellar.reduce(subdivided_sphere3, frozen=[(1, 2)], seed=5, budget=100)
        path = tmp_path / "run.trace"
        bistellar.write_trace(result, path)
        header, moves = bistellar.read_trace(path)
        assert header["seed"] == "5"
        assert header["frozen"] == "1,2"
        assert moves == result.trace

    def test_bad_line(self):
        with pytest.raises(FormatError):
            bistellar.parse_trace("# seed=1\n1 2 3\n")
        with pytest.raises(FormatError):
            bistellar.parse_trace("1 2 | x\n")


@pytest.mark.slow
class TestSeventeenVertexSphere:
    def test_reduces_to_simplex_boundary(self, load):
        results = [bistellar.reduce(load("S3_17_74"), seed=s) for s in settings.seeds]
        assert any(r.final_f_vector == (5, 10, 10, 5) for r in results)

    def test_frozen_knot_survives(self, load):
        S = load("S3_17_74")
        result = bistellar.reduce(S, frozen=KNOT_EDGES, seed=1)
        R = result.complex
        assert R.n_vertices <= 17
        assert all(R.is_face(e) for e in KNOT_EDGES)
        assert not R.is_face((1, 2, 3))
        assert bistellar.replay(S, result.trace) == R
