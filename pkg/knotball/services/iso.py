"""
Canonical labeling, isomorphism and automorphisms of simplicial complexes.

Vertices are coloured by (f-vector of the vertex link, sorted neighbour
degrees) and the colouring is refined through the facets until stable.
Remaining ties are broken by individualizing vertices over the whole search
tree; the lexicographically smallest relabeled facet list is canonical, and
every leaf reaching it yields an automorphism.
"""

from itertools import permutations
from typing import Dict, FrozenSet, Hashable, List, NamedTuple, Optional, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from knotball.models.complex import SimplicialComplex, f_vector, link, make_complex
from knotball.models.schemas import AutomorphismGroup, IsomorphismResult


Image = Tuple[Tuple[int, ...], ...]


class CanonicalForm(NamedTuple):
    complex: SimplicialComplex
    mapping: Dict[int, int]


def _rank(colours: Dict[int, Hashable]) -> Dict[int, int]:
    order = {c: i for i, c in enumerate(sorted(set(colours.values())))}
    return {v: order[c] for v, c in colours.items()}


class _LabelSearch:
    def __init__(self, C: SimplicialComplex):
        self.C = C
        self.vertices = sorted(C.vertices)
        self.star: Dict[int, List[FrozenSet[int]]] = {v: [] for v in self.vertices}
        for F in C.facets:
            for v in F:
                self.star[v].append(F)
        self.best: Optional[Image] = None
        self.leaves: List[Dict[int, int]] = []

    def initial(self) -> Dict[int, int]:
        neighbours: Dict[int, set] = {v: set() for v in self.vertices}
        for F in self.C.facets:
            for v in F:
                neighbours[v].update(F - {v})
        colours = {
            v: (
                tuple(f_vector(link(self.C, [v])).counts),
                tuple(sorted(len(neighbours[u]) for u in neighbours[v])),
            )
            for v in self.vertices
        }
        return _rank(colours)

    def refine(self, col: Dict[int, int]) -> Dict[int, int]:
        classes = len(set(col.values()))
        while True:
            sig = {
                v: (
                    col[v],
                    tuple(sorted(tuple(sorted(col[u] for u in F if u != v)) for F in self.star[v])),
                )
                for v in self.vertices
            }
            new = _rank(sig)
            count = len(set(new.values()))
            if count == classes:
                return new
            col, classes = new, count

    def image(self, labels: Dict[int, int]) -> Image:
        return tuple(sorted(tuple(sorted(labels[u] for u in F)) for F in self.C.facets))

    def search(self, col: Dict[int, int]) -> None:
        col = self.refine(col)
        cells: Dict[int, List[int]] = {}
        for v in self.vertices:
            cells.setdefault(col[v], []).append(v)
        if len(cells) == len(self.vertices):
            labels = {v: c + 1 for v, c in col.items()}
            img = self.image(labels)
            if self.best is None or img < self.best:
                self.best, self.leaves = img, [labels]
            elif img == self.best:
                self.leaves.append(labels)
            return
        _, colour = min((len(members), c) for c, members in cells.items() if len(members) > 1)
        for v in cells[colour]:
            self.search(_rank({u: (col[u], 0 if u == v else 1) for u in self.vertices}))

    def run(self) -> "_LabelSearch":
        if self.vertices:
            self.search(self.initial())
        return self


def _build(facets: Image, pure: bool) -> SimplicialComplex:
    return make_complex(facets) if pure else SimplicialComplex.generated_by(facets)


def canonical_form(C: SimplicialComplex) -> CanonicalForm:
    """Relabeling onto 1..n that is identical for all isomorphic copies."""
    search = _LabelSearch(C).run()
    if not search.leaves:
        return CanonicalForm(C, {})
    return CanonicalForm(_build(search.best, C.is_pure), search.leaves[0])


def relabel_to_canonical(C: SimplicialComplex) -> SimplicialComplex:
    return canonical_form(C).complex


def are_isomorphic(C1: SimplicialComplex, C2: SimplicialComplex) -> IsomorphismResult:
    """Isomorphism test with an explicit vertex bijection checked facet by facet."""
    if (
        C1.n_vertices != C2.n_vertices
        or C1.n_facets != C2.n_facets
        or C1.dim != C2.dim
        or f_vector(C1) != f_vector(C2)
    ):
        return IsomorphismResult(isomorphic=False)
    can1, can2 = canonical_form(C1), canonical_form(C2)
    if can1.complex != can2.complex:
        return IsomorphismResult(isomorphic=False)
    back = {label: v for v, label in can2.mapping.items()}
    mapping = {v: back[label] for v, label in can1.mapping.items()}
    if C1.relabel(mapping) != C2:
        raise AssertionError("canonical labeling produced an invalid isomorphism")
    return IsomorphismResult(isomorphic=True, mapping=dict(sorted(mapping.items())))


def brute_force_isomorphic(C1: SimplicialComplex, C2: SimplicialComplex) -> bool:
    """Try every vertex bijection; only for small complexes."""
    V1, V2 = sorted(C1.vertices), sorted(C2.vertices)
    if len(V1) != len(V2) or C1.n_facets != C2.n_facets:
        return False
    target = C2.facets
    for perm in permutations(V2):
        mapping = dict(zip(V1, perm))
        if all(frozenset(mapping[v] for v in F) in target for F in C1.facets):
            return True
    return False


def is_automorphism(C: SimplicialComplex, mapping: Dict[int, int]) -> bool:
    full = {v: mapping.get(v, v) for v in C.vertices}
    if sorted(full.values()) != sorted(C.vertices):
        return False
    return C.relabel(full) == C


def automorphisms(C: SimplicialComplex) -> List[Dict[int, int]]:
    """Every automorphism of C as a vertex map."""
    search = _LabelSearch(C).run()
    if not search.leaves:
        return []
    base = {label: v for v, label in search.leaves[0].items()}
    return [{v: base[labels[v]] for v in search.vertices} for labels in search.leaves]


def automorphism_group(C: SimplicialComplex) -> AutomorphismGroup:
    """Group order and a small generating set in cycle notation."""
    auts = automorphisms(C)
    vertices = sorted(C.vertices)
    index = {v: i for i, v in enumerate(vertices)}
    perms = sorted(
        (Permutation([index[a[v]] for v in vertices]) for a in auts),
        key=lambda p: p.array_form,
    )
    kept: List[Permutation] = []
    for p in perms:
        if p.is_Identity:
            continue
        if not kept or not PermutationGroup(kept).contains(p):
            kept.append(p)
    if kept and PermutationGroup(kept).order() != len(auts):
        raise AssertionError("automorphism search missed group elements")
    generators = [
        [[vertices[i] for i in cycle] for cycle in p.cyclic_form]
        for p in kept
    ]
    return AutomorphismGroup(order=max(len(auts), 1), generators=generators)


def permutation_from_cycles(cycles: List[List[int]]) -> Dict[int, int]:
    """Vertex map of a permutation given in cycle notation."""
    mapping: Dict[int, int] = {}
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            mapping[a] = b
    return mapping
