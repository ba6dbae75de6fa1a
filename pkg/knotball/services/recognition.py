"""
Ball and sphere recognition.

Dimension 2 is decided exactly. In dimension 3 a sphere is certified by a
bistellar reduction to the boundary of the 4-simplex, after the necessary
conditions (vertex links, Euler characteristic, homology) have passed. Balls
are recognized by coning off their boundary with a fresh apex.
"""

from typing import Iterable, List, Optional, Tuple

from knotball.config import settings
from knotball.models.complex import (
    SimplicialComplex,
    boundary_complex,
    f_vector,
    is_connected,
    is_pseudomanifold,
    link,
    make_complex,
    strongly_connected,
)
from knotball.models.errors import UnsupportedDimension, WrongDimension
from knotball.models.schemas import ManifoldStatus, Outcome, Verdict
from knotball.services import bistellar
from knotball.services.algebra import homology
from knotball.services.batch_service import batch_service


def _require_dim(C: SimplicialComplex, d: int) -> None:
    if C.dim != d:
        raise WrongDimension(f"Expected a {d}-dimensional complex, got dimension {C.dim}")


def _no(reason: str) -> Verdict:
    return Verdict(outcome=Outcome.NO, witness=reason)


# ============================================================================
# Dimension 2
# ============================================================================

def is_sphere2(C: SimplicialComplex) -> bool:
    _require_dim(C, 2)
    if not C.is_pure:
        return False
    return is_pseudomanifold(C) is ManifoldStatus.CLOSED and f_vector(C).euler_characteristic == 2


def is_ball2(C: SimplicialComplex) -> bool:
    _require_dim(C, 2)
    if not C.is_pure or is_pseudomanifold(C) is not ManifoldStatus.WITH_BOUNDARY:
        return False
    if f_vector(C).euler_characteristic != 1:
        return False
    boundary = boundary_complex(C)
    degrees = {}
    for e in boundary.facets:
        for v in e:
            degrees[v] = degrees.get(v, 0) + 1
    return all(n == 2 for n in degrees.values()) and is_connected(boundary)


def vertex_link_status(C: SimplicialComplex, v: int) -> str:
    """'sphere', 'ball' or 'other' for the link of a vertex in a 3-complex."""
    L = link(C, [v])
    if L.dim != 2 or not L.is_pure:
        return "other"
    if is_sphere2(L):
        return "sphere"
    if is_ball2(L):
        return "ball"
    return "other"


# ============================================================================
# Dimension 3
# ============================================================================

def _link_report(C: SimplicialComplex, jobs: Optional[int] = None) -> List[Tuple[int, str]]:
    vertices = sorted(C.vertices)
    statuses = batch_service.map("vertex_link", [(C, v) for v in vertices], jobs=jobs)
    return list(zip(vertices, statuses))


def _manifold_status(C: SimplicialComplex, jobs: Optional[int] = None) -> Tuple[ManifoldStatus, Optional[str]]:
    with_boundary = False
    for v, status in _link_report(C, jobs):
        if status == "other":
            return ManifoldStatus.NO, f"vertex {v} link is not a 2-sphere or 2-ball"
        with_boundary = with_boundary or status == "ball"
    return (ManifoldStatus.WITH_BOUNDARY if with_boundary else ManifoldStatus.CLOSED), None


def is_combinatorial_manifold3(C: SimplicialComplex, jobs: Optional[int] = None) -> ManifoldStatus:
    """closed / with_boundary by vertex links; no otherwise."""
    if C.dim != 3 or not C.is_pure:
        return ManifoldStatus.NO
    return _manifold_status(C, jobs)[0]


def _reduce_to_simplex(C: SimplicialComplex, seeds: Iterable[int], budget: Optional[int]) -> Verdict:
    for seed in seeds:
        result = bistellar.reduce(C, seed=seed, budget=budget)
        if result.reached_simplex_boundary:
            return Verdict(
                outcome=Outcome.YES,
                trace=result.trace,
                seed=seed,
                accepted_flips=result.accepted,
            )
    return Verdict(outcome=Outcome.UNKNOWN, witness="bistellar reduction stalled within budget")


def verify_sphere3(
    C: SimplicialComplex,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> Verdict:
    """
    Certify a 3-sphere.

    Returns no with the first failed necessary condition as witness, yes with
    a reduction trace ending at the boundary of the 4-simplex, or unknown
    when every seed stalls.
    """
    if C.dim != 3:
        return _no(f"dimension is {C.dim}, not 3")
    if not C.is_pure:
        return _no("complex is not pure")
    if not strongly_connected(C):
        return _no("complex is not strongly connected")
    status, reason = _manifold_status(C, jobs)
    if status is not ManifoldStatus.CLOSED:
        return _no(reason or "complex has boundary")
    chi = f_vector(C).euler_characteristic
    if chi != 0:
        return _no(f"Euler characteristic is {chi}, not 0")
    H = homology(C)
    if H.betti != [1, 0, 0, 1] or any(H.torsion):
        return _no(f"homology is {H}, not (Z, 0, 0, Z)")
    return _reduce_to_simplex(C, seeds or settings.seeds, budget)


def cone_off_boundary(C: SimplicialComplex) -> SimplicialComplex:
    """C with the cone over its boundary from the fresh apex max + 1."""
    apex = max(C.vertices) + 1
    boundary = boundary_complex(C)
    return make_complex(list(C.facets) + [F | {apex} for F in boundary.facets])


def verify_ball3(
    C: SimplicialComplex,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> Verdict:
    """Certify a 3-ball: manifold with 2-sphere boundary whose cone-off is a 3-sphere."""
    if C.dim != 3:
        return _no(f"dimension is {C.dim}, not 3")
    if not C.is_pure:
        return _no("complex is not pure")
    if not strongly_connected(C):
        return _no("complex is not strongly connected")
    status, reason = _manifold_status(C, jobs)
    if status is ManifoldStatus.NO:
        return _no(reason or "not a combinatorial manifold")
    if status is ManifoldStatus.CLOSED:
        return _no("complex has no boundary")
    boundary = boundary_complex(C)
    if not is_sphere2(boundary):
        return _no("boundary is not a 2-sphere")
    verdict = verify_sphere3(cone_off_boundary(C), seeds, budget, jobs)
    if verdict.outcome is Outcome.NO:
        return _no(f"coned-off complex is not a 3-sphere: {verdict.witness}")
    return verdict


# ============================================================================
# Any supported dimension
# ============================================================================

def verify_sphere(
    C: SimplicialComplex,
    d: int,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> Verdict:
    """
    Certify a d-sphere for d = 2, 3 or 4.

    In dimension 4 every vertex link must pass verify_sphere3 before the
    complex itself is reduced to the boundary of the 5-simplex.

    Raises:
        UnsupportedDimension: d outside 2..4
    """
    if d not in (2, 3, 4):
        raise UnsupportedDimension(f"Sphere recognition is implemented for d = 2, 3, 4, not {d}")
    if C.dim != d:
        return _no(f"dimension is {C.dim}, not {d}")
    if d == 2:
        return Verdict(outcome=Outcome.YES) if is_sphere2(C) else _no("not a 2-sphere")
    if d == 3:
        return verify_sphere3(C, seeds, budget, jobs)

    if not C.is_pure:
        return _no("complex is not pure")
    if is_pseudomanifold(C) is not ManifoldStatus.CLOSED:
        return _no("complex is not a closed pseudomanifold")
    chi = f_vector(C).euler_characteristic
    if chi != 2:
        return _no(f"Euler characteristic is {chi}, not 2")
    vertices = sorted(C.vertices)
    verdicts = batch_service.map(
        "sphere3", [(link(C, [v]), tuple(seeds or settings.seeds), budget) for v in vertices], jobs=jobs
    )
    for v, verdict in zip(vertices, verdicts):
        if verdict.outcome is Outcome.NO:
            return _no(f"vertex {v} link is not a 3-sphere: {verdict.witness}")
        if verdict.outcome is Outcome.UNKNOWN:
            return Verdict(outcome=Outcome.UNKNOWN, witness=f"vertex {v} link could not be certified")
    return _reduce_to_simplex(C, seeds or settings.seeds, budget)
