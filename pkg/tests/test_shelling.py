from itertools import combinations, permutations

import numpy as np
import pytest

from knotball.models.complex import make_complex
from knotball.models.errors import NotABall
from knotball.models.schemas import Outcome, Verdict
from knotball.services.batch_service import batch_service
from knotball.services import shelling


TWO_TETRAHEDRA = [(1, 2, 3, 4), (2, 3, 4, 5)]


class TestShelling:
    def test_sphere_is_shellable(self, sphere2_min):
        result = shelling.find_shelling(sphere2_min)
        assert result.status == "shellable"
        assert shelling.verify_shelling(sphere2_min, result.certificate)
        assert shelling.verify_shelling(sphere2_min, result.certificate.order)
        assert len(result.certificate.ridges) == 3

    def test_first_facet(self, sphere3_min):
        result = shelling.find_shelling(sphere3_min, first=(2, 3, 4, 5))
        assert result.certificate.order[0] == (2, 3, 4, 5)

    def test_projective_plane_is_not_shellable(self, rp2):
        result = shelling.find_shelling(rp2)
        assert result.status == "not_shellable"
        assert result.expansions > 0

    def test_torus_is_not_shellable(self, torus):
        assert shelling.find_shelling(torus).status == "not_shellable"

    def test_disconnected_facets(self):
        bowtie = make_complex([(1, 2, 3), (3, 4, 5)])
        assert shelling.find_shelling(bowtie).status == "not_shellable"

    def test_budget(self, rp2):
        result = shelling.find_shelling(rp2, budget=3)
        assert result.status == "unknown"
        assert result.budget == 3

    def test_replay_rejects_bad_order(self):
        path = make_complex([(1, 2), (2, 3), (3, 4)])
        assert shelling.verify_shelling(path, [(1, 2), (2, 3), (3, 4)])
        assert not shelling.verify_shelling(path, [(1, 2), (3, 4), (2, 3)])
        assert not shelling.verify_shelling(path, [(1, 2), (2, 3)])


class TestFreeFacets:
    def test_single_facet_is_free(self, tetrahedron):
        assert shelling.free_facets(tetrahedron) == [(1, 2, 3, 4)]
        assert not shelling.is_strongly_nonshellable(tetrahedron)

    def test_two_tetrahedra(self):
        B = make_complex(TWO_TETRAHEDRA)
        assert shelling.free_facets(B, seeds=[1], budget=1000) == TWO_TETRAHEDRA

    def test_sphere_is_rejected(self, sphere3_min):
        with pytest.raises(NotABall):
            shelling.free_facets(sphere3_min)

    def test_undecided_facet_is_not_free(self, monkeypatch):
        B = make_complex(TWO_TETRAHEDRA)
        real_map = batch_service.map

        def stalled(task_name, payloads, jobs=None):
            if task_name == "ball3":
                return [Verdict(outcome=Outcome.UNKNOWN) for _ in payloads]
            return real_map(task_name, payloads, jobs)

        monkeypatch.setattr(batch_service, "map", stalled)
        report = shelling.classify_facets(B, seeds=[1], budget=1000)
        assert report.free == []
        assert report.undecided == TWO_TETRAHEDRA
        assert not report.strongly_nonshellable
        assert shelling.free_facets(B, seeds=[1], budget=1000) == []
        assert not shelling.is_strongly_nonshellable(B, seeds=[1], budget=1000)


class TestConstructibility:
    def test_simplex(self, tetrahedron):
        result = shelling.is_constructible(tetrahedron)
        assert result.outcome is Outcome.YES
        assert result.tree.is_leaf

    @pytest.mark.parametrize("fixture", ["sphere2_min", "sphere3_min"])
    def test_simplex_boundaries(self, request, fixture):
        C = request.getfixturevalue(fixture)
        result = shelling.is_constructible(C)
        assert result.outcome is Outcome.YES
        assert shelling.verify_constructibility_tree(result.tree)
        assert sorted(result.tree.facets) == C.sorted_facets()

    def test_graph_cycle(self):
        cycle = make_complex([(1, 2), (2, 3), (3, 4), (1, 4)])
        result = shelling.is_constructible(cycle)
        assert result.outcome is Outcome.YES
        assert shelling.verify_constructibility_tree(result.tree)

    def test_not_strongly_connected(self):
        bowtie = make_complex([(1, 2, 3), (3, 4, 5)])
        assert shelling.is_constructible(bowtie).outcome is Outcome.NO

    def test_budget(self, sphere2_min):
        assert shelling.is_constructible(sphere2_min, budget=1).outcome is Outcome.UNKNOWN

    def test_tree_check_detects_overlap(self, sphere2_min):
        tree = shelling.is_constructible(sphere2_min).tree
        broken = tree.model_copy(update={"right": tree.left})
        assert not shelling.verify_constructibility_tree(broken)


def _is_shelling_order(order):
    d = len(order[0]) - 1
    for k in range(1, len(order)):
        F = order[k]
        meets = [F & G for G in order[:k]]
        ridges = [m for m in meets if len(m) == d]
        if not ridges or any(not any(m <= r for r in ridges) for m in meets):
            return False
    return True


def _brute_force_shellable(C):
    return any(_is_shelling_order(list(p)) for p in permutations(C.facets))


def _random_complexes(seed, count=40):
    rng = np.random.default_rng(seed)
    pool = []
    for _ in range(count):
        n = int(rng.integers(4, 7))
        triples = list(combinations(range(1, n + 1), 3))
        k = int(rng.integers(1, min(6, len(triples)) + 1))
        chosen = rng.choice(len(triples), size=k, replace=False)
        pool.append(make_complex([triples[i] for i in chosen]))
    return pool


class TestAgainstExhaustiveOrders:
    @pytest.mark.parametrize("seed", range(5))
    def test_shelling_search_agrees_with_all_orders(self, seed):
        for C in _random_complexes(seed):
            result = shelling.find_shelling(C)
            assert result.status != "unknown"
            assert (result.status == "shellable") == _brute_force_shellable(C), C.sorted_facets()

    @pytest.mark.parametrize("seed", range(5))
    def test_shellable_is_never_nonconstructible(self, seed):
        for C in _random_complexes(seed):
            if shelling.find_shelling(C).status == "shellable":
                assert shelling.is_constructible(C).outcome is not Outcome.NO, C.sorted_facets()


@pytest.mark.slow
def test_thirty_seven_facet_ball_is_not_shellable(load):
    result = shelling.find_shelling(load("B3_12_37_a"))
    assert result.status == "not_shellable"
    assert result.certificate is None
