"""
Immutable simplicial complexes given by their facets.

A complex is stored as a frozenset of facets, each facet a frozenset of
positive integer vertex labels. Faces are enumerated on demand and memoized
per dimension. Complexes built with make_complex are pure; the catalog's
mixed-dimensional complex C goes through SimplicialComplex.generated_by.
"""

from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

import networkx as nx

from knotball.models.errors import (
    ContainedFacet,
    EmptyComplex,
    FormatError,
    NonPure,
    NotAFace,
    WrongDimension,
)
from knotball.models.schemas import FVector, ManifoldStatus


Face = FrozenSet[int]


def face(vertices: Iterable[int]) -> Face:
    """Normalize an iterable of vertex labels to a Face."""
    result = frozenset(vertices)
    for v in result:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise FormatError(f"Vertex labels must be positive integers, got {v!r}")
    return result


def sorted_face(f: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(f))


class SimplicialComplex:
    """Abstract simplicial complex given by its maximal faces."""

    __slots__ = ("_facets", "_dim", "_pure", "_cache")

    def __init__(self, facets: FrozenSet[Face], dim: int, pure: bool = True):
        self._facets = facets
        self._dim = dim
        self._pure = pure
        self._cache: Dict[object, object] = {}

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "SimplicialComplex":
        return cls(frozenset(), dim)

    @classmethod
    def generated_by(cls, generators: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """
        Complex generated by possibly mixed-dimensional maximal faces.

        Raises:
            EmptyComplex: no generators
            ContainedFacet: one generator lies inside another
        """
        gens = {face(g) for g in generators}
        if not gens or any(len(g) == 0 for g in gens):
            raise EmptyComplex("A complex needs at least one nonempty facet")
        by_size = sorted(gens, key=len)
        for i, small in enumerate(by_size):
            for big in by_size[i + 1:]:
                if len(big) > len(small) and small < big:
                    raise ContainedFacet(
                        f"Facet {sorted_face(small)} is contained in {sorted_face(big)}"
                    )
        sizes = {len(g) for g in gens}
        return cls(frozenset(gens), max(sizes) - 1, pure=len(sizes) == 1)

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def facets(self) -> FrozenSet[Face]:
        return self._facets

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_pure(self) -> bool:
        return self._pure

    @property
    def is_empty(self) -> bool:
        return not self._facets

    @property
    def n_facets(self) -> int:
        return len(self._facets)

    @property
    def vertices(self) -> FrozenSet[int]:
        if "vertices" not in self._cache:
            self._cache["vertices"] = frozenset().union(*self._facets) if self._facets else frozenset()
        return self._cache["vertices"]  # type: ignore[return-value]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def sorted_facets(self) -> List[Tuple[int, ...]]:
        """Facets as ascending tuples in lexicographic order (canonical order)."""
        return sorted(sorted_face(f) for f in self._facets)

    def require_pure(self) -> None:
        if not self._pure:
            raise NonPure("Operation needs a pure complex")

    # ------------------------------------------------------------------
    # Faces
    # ------------------------------------------------------------------

    def faces(self, k: int) -> FrozenSet[Face]:
        """All faces with k+1 vertices (dimension k)."""
        key = ("faces", k)
        if key not in self._cache:
            if k < 0:
                result = frozenset([frozenset()]) if self._facets else frozenset()
            else:
                result = frozenset(
                    frozenset(c)
                    for f in self._facets
                    if len(f) > k
                    for c in combinations(sorted(f), k + 1)
                )
            self._cache[key] = result
        return self._cache[key]  # type: ignore[return-value]

    def all_faces(self) -> FrozenSet[Face]:
        """All nonempty faces."""
        if "all_faces" not in self._cache:
            out = set()
            for k in range(self._dim + 1):
                out |= self.faces(k)
            self._cache["all_faces"] = frozenset(out)
        return self._cache["all_faces"]  # type: ignore[return-value]

    def is_face(self, f: Iterable[int]) -> bool:
        f = frozenset(f)
        if not f:
            return bool(self._facets)
        if len(f) - 1 > self._dim:
            return False
        return f in self.faces(len(f) - 1)

    contains_face = is_face

    def ridges(self) -> Dict[Face, int]:
        """Number of facets containing each (d-1)-face."""
        self.require_pure()
        if "ridges" not in self._cache:
            counts: Dict[Face, int] = {}
            for f in self._facets:
                for v in f:
                    r = f - {v}
                    counts[r] = counts.get(r, 0) + 1
            self._cache["ridges"] = counts
        return self._cache["ridges"]  # type: ignore[return-value]

    def skeleton(self, k: int) -> "SimplicialComplex":
        k = min(k, self._dim)
        top = self.faces(k)
        if not top:
            return SimplicialComplex.empty(k)
        return SimplicialComplex(top, k)

    def induced_subcomplex(self, vertices: Iterable[int]) -> "SimplicialComplex":
        """Subcomplex of all faces whose vertices lie in the given set."""
        keep = frozenset(vertices)
        faces = {f & keep for f in self._facets if f & keep}
        maximal = [f for f in faces if not any(f < g for g in faces)]
        if not maximal:
            return SimplicialComplex.empty(-1)
        return SimplicialComplex.generated_by(maximal)

    # ------------------------------------------------------------------
    # Transformations
    # ------------------------------------------------------------------

    def relabel(self, mapping: Union[Mapping[int, int], Callable[[int], int]]) -> "SimplicialComplex":
        fn = mapping if callable(mapping) else mapping.__getitem__
        image = {v: fn(v) for v in self.vertices}
        if len(set(image.values())) != len(image):
            raise FormatError("Relabeling must be injective on the vertices")
        face(image.values())
        facets = frozenset(frozenset(image[v] for v in f) for f in self._facets)
        return SimplicialComplex(facets, self._dim, self._pure)

    # ------------------------------------------------------------------
    # Text format
    # ------------------------------------------------------------------

    def to_cplx(self, header: Optional[Iterable[str]] = None) -> str:
        """Canonical .cplx text: ascending vertices per line, lines sorted."""
        lines = [f"# {h}" for h in (header or [])]
        lines.extend(" ".join(str(v) for v in f) for f in self.sorted_facets())
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------
    # Value semantics
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._facets == other._facets and self._dim == other._dim

    def __hash__(self) -> int:
        return hash(self._facets)

    def __reduce__(self):
        return (SimplicialComplex, (self._facets, self._dim, self._pure))

    def __len__(self) -> int:
        return len(self._facets)

    def __iter__(self):
        return iter(self.sorted_facets())

    def __contains__(self, f: object) -> bool:
        return frozenset(f) in self._facets  # type: ignore[arg-type]

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex(dim={self._dim}, vertices={self.n_vertices}, "
            f"facets={self.n_facets}{'' if self._pure else ', mixed'})"
        )


# ============================================================================
# Core operations
# ============================================================================

def make_complex(facet_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """
    Validate a facet list and build a pure complex.

    Duplicate facets are collapsed.

    Raises:
        EmptyComplex: the list is empty
        NonPure: facets of different cardinalities
    """
    facets = {face(f) for f in facet_list}
    if not facets or any(len(f) == 0 for f in facets):
        raise EmptyComplex("A complex needs at least one nonempty facet")
    sizes = {len(f) for f in facets}
    if len(sizes) != 1:
        raise NonPure(f"Facets have mixed cardinalities {sorted(sizes)}")
    return SimplicialComplex(frozenset(facets), sizes.pop() - 1)


def simplex(vertices: Iterable[int]) -> SimplicialComplex:
    """The full simplex on the given vertices."""
    return make_complex([vertices])


def simplex_boundary(vertices: Iterable[int]) -> SimplicialComplex:
    """Boundary of the simplex on the given vertices."""
    vs = face(vertices)
    if len(vs) < 2:
        raise WrongDimension("The boundary of a point is not a complex")
    return make_complex(vs - {v} for v in vs)


def f_vector(C: SimplicialComplex) -> FVector:
    if C.is_empty:
        return FVector(counts=[])
    return FVector(counts=[len(C.faces(k)) for k in range(C.dim + 1)])


def _require_face(C: SimplicialComplex, F: Iterable[int]) -> Face:
    F = frozenset(F)
    if not C.is_face(F):
        raise NotAFace(f"{sorted_face(F)} is not a face of {C!r}")
    return F


def link(C: SimplicialComplex, F: Iterable[int]) -> SimplicialComplex:
    """{G \\ F : G facet, F subset of G} as a complex of dimension dim(C) - |F|."""
    F = _require_face(C, F)
    parts = [G - F for G in C.facets if F <= G]
    if not C.is_pure:
        nonempty = [p for p in parts if p]
        if not nonempty:
            return SimplicialComplex(frozenset([frozenset()]), -1)
        return SimplicialComplex.generated_by(nonempty)
    return SimplicialComplex(frozenset(parts), C.dim - len(F))


def star_closed(C: SimplicialComplex, F: Iterable[int]) -> SimplicialComplex:
    """Facets containing F."""
    F = _require_face(C, F)
    return SimplicialComplex(frozenset(G for G in C.facets if F <= G), C.dim, C.is_pure)


def delete_star(C: SimplicialComplex, F: Iterable[int]) -> SimplicialComplex:
    """Facets not containing F; may be the empty complex."""
    F = _require_face(C, F)
    rest = frozenset(G for G in C.facets if not F <= G)
    if not rest:
        return SimplicialComplex.empty(C.dim)
    if C.is_pure:
        return SimplicialComplex(rest, C.dim)
    return SimplicialComplex.generated_by(rest)


def boundary_complex(C: SimplicialComplex) -> SimplicialComplex:
    """
    Complex generated by ridges lying in exactly one facet.

    A closed complex yields the empty complex (check `.is_empty`).
    """
    C.require_pure()
    if C.dim < 1:
        raise WrongDimension("Boundary needs dimension at least 1")
    free = frozenset(r for r, n in C.ridges().items() if n == 1)
    if not free:
        return SimplicialComplex.empty(C.dim - 1)
    return SimplicialComplex(free, C.dim - 1)


def strongly_connected(C: SimplicialComplex) -> bool:
    """True if the facet-ridge graph is connected."""
    C.require_pure()
    if C.n_facets <= 1:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(C.facets)
    by_ridge: Dict[Face, List[Face]] = {}
    for f in C.facets:
        for v in f:
            by_ridge.setdefault(f - {v}, []).append(f)
    for members in by_ridge.values():
        for a, b in zip(members, members[1:]):
            graph.add_edge(a, b)
    return nx.is_connected(graph)


def is_connected(C: SimplicialComplex) -> bool:
    """True if the 1-skeleton is connected."""
    if C.is_empty:
        return False
    graph = nx.Graph()
    graph.add_nodes_from(C.vertices)
    for f in C.facets:
        ordered = sorted(f)
        graph.add_edges_from(zip(ordered, ordered[1:]))
    return nx.is_connected(graph)


def is_pseudomanifold(C: SimplicialComplex) -> ManifoldStatus:
    C.require_pure()
    if C.is_empty or C.dim < 1:
        return ManifoldStatus.NO
    counts = C.ridges().values()
    if any(n > 2 for n in counts):
        return ManifoldStatus.NO
    if not strongly_connected(C):
        return ManifoldStatus.NO
    if all(n == 2 for n in counts):
        return ManifoldStatus.CLOSED
    return ManifoldStatus.WITH_BOUNDARY


# ============================================================================
# .cplx files
# ============================================================================

def parse_facet_lines(text: str) -> List[Face]:
    facets: List[Face] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            facets.append(face(int(tok) for tok in line.split()))
        except ValueError as e:
            raise FormatError(f"line {lineno}: {raw!r} is not a list of integers") from e
    return facets


def parse_cplx(text: str) -> SimplicialComplex:
    return make_complex(parse_facet_lines(text))


def read_cplx(path: Union[str, Path]) -> SimplicialComplex:
    return parse_cplx(Path(path).read_text(encoding="utf-8"))


def write_cplx(C: SimplicialComplex, path: Union[str, Path], header: Optional[Iterable[str]] = None) -> None:
    Path(path).write_text(C.to_cplx(header), encoding="utf-8")
