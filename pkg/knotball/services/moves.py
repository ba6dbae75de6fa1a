"""
Constructions: cones, suspensions, gluing and the higher-dimensional families.
"""

from typing import Iterable, Tuple

from knotball.models.complex import SimplicialComplex, make_complex, simplex
from knotball.models.errors import BadDimension, DimensionMismatch, NotAFacet, NotAVertex, VertexClash
from knotball.models.schemas import FamilyMember


# Label of the suspension vertex used for the sphere family; it lies outside
# the knot cycle (1, 2, 3).
FAMILY_SUSPENSION_VERTEX = 4
KNOT_CYCLE = (1, 2, 3)


def _fresh(C: SimplicialComplex, v: int) -> None:
    if v in C.vertices:
        raise VertexClash(f"Vertex {v} already belongs to the complex")


def cone(C: SimplicialComplex, apex: int) -> SimplicialComplex:
    """Facets F + apex; same facet count, one dimension up."""
    C.require_pure()
    _fresh(C, apex)
    return make_complex(F | {apex} for F in C.facets)


def suspension(C: SimplicialComplex, a: int, b: int) -> SimplicialComplex:
    """Two-apex suspension."""
    C.require_pure()
    _fresh(C, a)
    _fresh(C, b)
    if a == b:
        raise VertexClash("Suspension apices must differ")
    return make_complex([F | {a} for F in C.facets] + [F | {b} for F in C.facets])


def one_point_suspension(C: SimplicialComplex, v: int, fresh: int) -> SimplicialComplex:
    """
    Suspension over the vertex v adding only the vertex `fresh`.

    Facets: F + fresh for F containing v; F + v and F + fresh otherwise.

    Raises:
        NotAVertex: v is not a vertex of C
        VertexClash: fresh is already a vertex of C
    """
    C.require_pure()
    if v not in C.vertices:
        raise NotAVertex(f"{v} is not a vertex of the complex")
    _fresh(C, fresh)
    facets = []
    for F in C.facets:
        if v in F:
            facets.append(F | {fresh})
        else:
            facets.append(F | {v})
            facets.append(F | {fresh})
    return make_complex(facets)


def glue(C1: SimplicialComplex, C2: SimplicialComplex) -> SimplicialComplex:
    """Union of facet sets."""
    if C1.dim != C2.dim:
        raise DimensionMismatch(f"Cannot glue dimensions {C1.dim} and {C2.dim}")
    C1.require_pure()
    C2.require_pure()
    return make_complex(C1.facets | C2.facets)


def remove_facet(C: SimplicialComplex, F: Iterable[int]) -> SimplicialComplex:
    """Facet set minus F; removing the only facet gives the empty complex."""
    F = frozenset(F)
    if F not in C.facets:
        raise NotAFacet(f"{tuple(sorted(F))} is not a facet")
    rest = C.facets - {F}
    if not rest:
        return SimplicialComplex.empty(C.dim)
    if C.is_pure:
        return make_complex(rest)
    return SimplicialComplex.generated_by(rest)


def simplex_complex(F: Iterable[int]) -> SimplicialComplex:
    """Face complex of a single facet."""
    return simplex(F)


# ============================================================================
# Families
# ============================================================================

def _check_family_dim(d: int) -> None:
    if d < 3:
        raise BadDimension(f"Families start in dimension 3, got {d}")


def family_sphere(d: int) -> SimplicialComplex:
    """Non-constructible d-sphere with d + 10 vertices."""
    _check_family_dim(d)
    from knotball.services.catalog import load
    C = load("S3_13_56")
    for _ in range(d - 3):
        C = one_point_suspension(C, FAMILY_SUSPENSION_VERTEX, max(C.vertices) + 1)
    return C


def family_ball(d: int) -> SimplicialComplex:
    """Non-constructible d-ball with d + 9 vertices and 37 facets."""
    _check_family_dim(d)
    from knotball.services.catalog import load
    C = load("B3_12_37_a")
    for _ in range(d - 3):
        C = cone(C, max(C.vertices) + 1)
    return C


def describe_family(kind: str, d: int, C: SimplicialComplex) -> FamilyMember:
    """Sizes and the properties a family member carries over from dimension 3."""
    return FamilyMember(
        kind=kind,
        dim=d,
        vertices=C.n_vertices,
        facets=C.n_facets,
        non_constructible="certified" if d == 3 else "inherited",
        knot_cycle=KNOT_CYCLE,
    )


def knot_preserved(C: SimplicialComplex, cycle: Tuple[int, int, int] = KNOT_CYCLE) -> bool:
    """The three cycle edges are faces and the triangle is not."""
    a, b, c = cycle
    return (
        all(C.is_face(e) for e in ((a, b), (a, c), (b, c)))
        and not C.is_face(cycle)
    )
