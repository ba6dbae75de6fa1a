"""
Knotted-triangle certificates.

For an empty triangle (three edges, no 2-face) of a 3-sphere, the complement
of the knot is the subcomplex of the barycentric subdivision induced on the
barycenters of faces outside the knot. That subcomplex is collapsed, its
edge-path group read off a spanning tree and simplified by Tietze moves. A
homomorphism with non-abelian image into a small finite group shows the
group is not infinite cyclic, so the triangle is knotted and the complex is
not constructible.
"""

from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from knotball.config import settings
from knotball.models.complex import SimplicialComplex, boundary_complex, sorted_face
from knotball.models.errors import NotACandidate, NotBallOrSphere, TooManyGenerators
from knotball.models.schemas import CertificationResult, GroupPresentation, KnotWitness, ManifoldStatus
from knotball.services.algebra import Collapser, closure
from knotball.services.batch_service import batch_service
from knotball.services.groups import FiniteGroup, get_group
from knotball.services.logging_service import logging_service
from knotball.services.recognition import cone_off_boundary, is_combinatorial_manifold3, is_sphere2, verify_sphere3


Word = List[int]
Cycle = Tuple[int, int, int]


# ============================================================================
# Candidates
# ============================================================================

def find_candidate_triangles(C: SimplicialComplex) -> List[Cycle]:
    """Vertex triples spanning three edges but no triangle, in lexicographic order."""
    neighbours: Dict[int, Set[int]] = {}
    for e in C.faces(1):
        a, b = sorted(e)
        neighbours.setdefault(a, set()).add(b)
        neighbours.setdefault(b, set()).add(a)
    found: List[Cycle] = []
    for a in sorted(neighbours):
        for b in sorted(u for u in neighbours[a] if u > a):
            for c in sorted(u for u in neighbours[a] & neighbours[b] if u > b):
                if not C.is_face((a, b, c)):
                    found.append((a, b, c))
    return found


def _check_candidate(S: SimplicialComplex, cycle: Iterable[int]) -> Cycle:
    tri = tuple(sorted(set(cycle)))
    if len(tri) != 3:
        raise NotACandidate(f"{tri} is not a vertex triple")
    if not all(S.is_face(e) for e in combinations(tri, 2)) or S.is_face(tri):
        raise NotACandidate(f"{tri} is not an empty triangle of the complex")
    return tri  # type: ignore[return-value]


# ============================================================================
# Words and Tietze moves
# ============================================================================

def invert(word: Sequence[int]) -> Word:
    return [-a for a in reversed(word)]


def free_reduce(word: Sequence[int]) -> Word:
    out: Word = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = free_reduce(word)
    start, end = 0, len(w)
    while end - start > 1 and w[start] == -w[end - 1]:
        start += 1
        end -= 1
    return w[start:end]


def _relator_key(word: Word) -> Tuple[int, ...]:
    forms = []
    for w in (word, invert(word)):
        forms.extend(tuple(w[i:] + w[:i]) for i in range(len(w)))
    return min(forms)


def _substitute(word: Word, x: int, replacement: Word) -> Word:
    out: Word = []
    for a in word:
        if a == x:
            out.extend(replacement)
        elif a == -x:
            out.extend(invert(replacement))
        else:
            out.append(a)
    return cyclic_reduce(out)


def _solve(word: Word, pos: int) -> Word:
    """Expression for generator |word[pos]| when it occurs only there."""
    rotated = word[pos + 1:] + word[:pos]
    return invert(rotated) if word[pos] > 0 else rotated


def simplify_presentation(P: GroupPresentation, max_length: Optional[int] = None) -> GroupPresentation:
    """
    Tietze simplification to a fixpoint.

    Drops trivial and duplicate relators, kills generators with length-1
    relators, and eliminates a generator occurring once in some relator when
    the rewritten relators stay within max_length. Generators are renumbered
    1..g afterwards.
    """
    max_length = max_length or settings.tietze_max_relator_length
    gens: Set[int] = set(range(1, P.generators + 1))
    rels: List[Word] = [cyclic_reduce(r) for r in P.relators]

    while True:
        unique: Dict[Tuple[int, ...], Word] = {}
        for r in rels:
            if r:
                unique.setdefault(_relator_key(r), r)
        rels = sorted(unique.values(), key=lambda r: (len(r), r))

        single = next((r for r in rels if len(r) == 1), None)
        if single is not None:
            x = abs(single[0])
            gens.discard(x)
            rels = [_substitute(r, x, []) for r in rels if r is not single]
            continue

        occurrences: Dict[int, int] = {}
        for r in rels:
            for a in r:
                occurrences[abs(a)] = occurrences.get(abs(a), 0) + 1
        options = []
        for idx, r in enumerate(rels):
            counts: Dict[int, int] = {}
            for a in r:
                counts[abs(a)] = counts.get(abs(a), 0) + 1
            for pos, a in enumerate(r):
                x = abs(a)
                if counts[x] == 1:
                    growth = (len(r) - 2) * (occurrences[x] - 1)
                    options.append((growth, len(r), idx, pos))
        options.sort()
        applied = False
        for _, _, idx, pos in options:
            r = rels[idx]
            x = abs(r[pos])
            replacement = _solve(r, pos)
            rewritten = [_substitute(s, x, replacement) for j, s in enumerate(rels) if j != idx]
            if all(len(s) <= max_length for s in rewritten):
                gens.discard(x)
                rels = rewritten
                applied = True
                break
        if not applied:
            break

    order = {x: i for i, x in enumerate(sorted(gens), start=1)}
    renumbered = [[order[abs(a)] * (1 if a > 0 else -1) for a in r] for r in rels]
    return GroupPresentation(generators=len(order), relators=renumbered)


# ============================================================================
# Complement presentation
# ============================================================================

def complement_faces(S: SimplicialComplex, cycle: Cycle) -> Set[FrozenSet[int]]:
    """
    Faces of the subcomplex of sd(S) induced on barycenters of faces not in the knot.

    Vertices of sd(S) are numbered by the position of the face of S in
    canonical order.
    """
    knot = {frozenset([v]) for v in cycle} | {frozenset(e) for e in combinations(cycle, 2)}
    faces = sorted(S.all_faces(), key=lambda f: (len(f), sorted_face(f)))
    ids = {f: i for i, f in enumerate(faces, start=1)}
    simplices: Set[FrozenSet[int]] = set()
    for F in S.facets:
        for flag in _flags(F):
            simplices.add(frozenset(ids[f] for f in flag if f not in knot))
    simplices.discard(frozenset())
    return closure(simplices)


def _flags(F: FrozenSet[int]) -> Iterable[List[FrozenSet[int]]]:
    for perm in permutations(sorted(F)):
        yield [frozenset(perm[:k]) for k in range(1, len(perm) + 1)]


def edge_path_presentation(faces: Iterable[FrozenSet[int]]) -> GroupPresentation:
    """Fundamental group of the 2-skeleton from a spanning tree of the 1-skeleton."""
    faces = list(faces)
    graph = nx.Graph()
    graph.add_nodes_from(sorted(next(iter(f)) for f in faces if len(f) == 1))
    edges = sorted(tuple(sorted(f)) for f in faces if len(f) == 2)
    graph.add_edges_from(edges)
    tree = {tuple(sorted(e)) for e in nx.minimum_spanning_tree(graph).edges()}
    generator = {e: i for i, e in enumerate((e for e in edges if e not in tree), start=1)}

    def letter(a: int, b: int) -> List[int]:
        if a < b:
            g = generator.get((a, b))
            return [g] if g else []
        g = generator.get((b, a))
        return [-g] if g else []

    relators = []
    for f in faces:
        if len(f) == 3:
            a, b, c = sorted(f)
            relators.append(letter(a, b) + letter(b, c) + letter(c, a))
    return GroupPresentation(generators=len(generator), relators=relators)


def complement_presentation(S: SimplicialComplex, cycle: Iterable[int]) -> GroupPresentation:
    """
    Simplified presentation of the fundamental group of S minus the cycle.

    Raises:
        NotACandidate: cycle is not an empty triangle of S
    """
    tri = _check_candidate(S, cycle)
    collapser = Collapser(complement_faces(S, tri))
    collapser.run(10 ** 9)
    raw = edge_path_presentation(collapser.cofaces)
    return simplify_presentation(raw)


# ============================================================================
# Homomorphisms into finite groups
# ============================================================================

def _evaluate(word: Sequence[int], images: Sequence[int], G: FiniteGroup) -> int:
    acc = 0
    for a in word:
        x = images[abs(a)]
        acc = G.table[acc][x if a > 0 else G.inverse[x]]
    return acc


def _homomorphisms(P: GroupPresentation, G: FiniteGroup, first_images: Optional[Iterable[int]] = None):
    g = P.generators
    check_at: List[List[Word]] = [[] for _ in range(g + 1)]
    for r in P.relators:
        top = max((abs(a) for a in r), default=0)
        check_at[top].append(r)
    if any(_evaluate(r, [0], G) for r in check_at[0]):
        return
    images = [0] * (g + 1)
    first = list(first_images) if first_images is not None else list(range(G.order))

    def extend(k: int):
        if k > g:
            yield images[1:]
            return
        for e in (first if k == 1 else range(G.order)):
            images[k] = e
            if all(_evaluate(r, images, G) == 0 for r in check_at[k]):
                yield from extend(k + 1)

    yield from extend(1)


def count_homs(
    P: GroupPresentation,
    G: FiniteGroup,
    cap: Optional[int] = None,
    first_images: Optional[Iterable[int]] = None,
) -> int:
    """
    Number of homomorphisms P -> G by enumeration with relator pruning.

    Raises:
        TooManyGenerators: more generators than the configured cap
    """
    cap = cap or settings.hom_generator_cap
    if P.generators > cap:
        raise TooManyGenerators(f"{P.generators} generators exceed the cap of {cap}")
    return sum(1 for _ in _homomorphisms(P, G, first_images))


def find_nonabelian_hom(P: GroupPresentation, G: FiniteGroup, cap: Optional[int] = None) -> Optional[List[int]]:
    """Generator images of a homomorphism whose image is non-abelian, if any."""
    cap = cap or settings.hom_generator_cap
    if P.generators > cap:
        raise TooManyGenerators(f"{P.generators} generators exceed the cap of {cap}")
    for images in _homomorphisms(P, G):
        if any(not G.commute(a, b) for a, b in combinations(images, 2)):
            return list(images)
    return None


# ============================================================================
# Certification
# ============================================================================

def ambient_sphere(
    C: SimplicialComplex,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> SimplicialComplex:
    """
    C itself for a 3-sphere, C with its boundary coned off for a 3-ball.

    The result must be certified by verify_sphere3.

    Raises:
        NotBallOrSphere: C is not a combinatorial 3-manifold with empty or
            2-sphere boundary, or the sphere certificate is no or unknown
    """
    if C.dim != 3 or not C.is_pure:
        raise NotBallOrSphere("Knot certificates need a pure 3-dimensional complex")
    status = is_combinatorial_manifold3(C)
    if status is ManifoldStatus.CLOSED:
        S = C
    elif status is ManifoldStatus.WITH_BOUNDARY and is_sphere2(boundary_complex(C)):
        S = cone_off_boundary(C)
    else:
        raise NotBallOrSphere("Complex is neither a 3-sphere nor a 3-ball candidate")
    verdict = verify_sphere3(S, seeds, budget, jobs)
    if not verdict.yes:
        raise NotBallOrSphere(
            f"Sphere certificate is {verdict.outcome.value}: {verdict.witness or 'budget exhausted'}"
        )
    return S


def try_candidate(S: SimplicialComplex, cycle: Cycle, groups: Sequence[str]) -> Optional[KnotWitness]:
    """Knot witness for one candidate triangle, or None."""
    presentation = complement_presentation(S, cycle)
    if presentation.generators <= 1:
        return None
    if presentation.generators > settings.hom_generator_cap:
        logging_service.logger.warning("candidate_skipped", extra={
            "event": "candidate_skipped",
            "cycle": list(cycle),
            "generators": presentation.generators,
            "cap": settings.hom_generator_cap,
        })
        return None
    for name in groups:
        images = find_nonabelian_hom(presentation, get_group(name))
        if images is not None:
            return KnotWitness(cycle=cycle, group=name, images=images, presentation=presentation)
    return None


def verify_witness(witness: KnotWitness) -> bool:
    """Relators map to the identity and some pair of images fails to commute."""
    G = get_group(witness.group)
    images = [0] + list(witness.images)
    if len(images) != witness.presentation.generators + 1:
        return False
    if any(_evaluate(r, images, G) for r in witness.presentation.relators):
        return False
    return any(not G.commute(a, b) for a, b in combinations(witness.images, 2))


def certify_nonconstructible(
    C: SimplicialComplex,
    groups: Optional[Sequence[str]] = None,
    jobs: Optional[int] = None,
) -> CertificationResult:
    """
    Search the empty triangles of a 3-ball or 3-sphere for a knotted one.

    Raises:
        NotBallOrSphere: see ambient_sphere
    """
    groups = list(groups or settings.knot_groups)
    for name in groups:
        get_group(name)
    S = ambient_sphere(C, jobs=jobs)
    candidates = find_candidate_triangles(C)
    jobs = jobs or settings.jobs
    examined = 0
    witness: Optional[KnotWitness] = None
    if jobs <= 1:
        for cycle in candidates:
            examined += 1
            witness = try_candidate(S, cycle, groups)
            if witness is not None:
                break
    else:
        results = batch_service.map("knot_candidate", [(S, c, groups) for c in candidates], jobs=jobs)
        for result in results:
            examined += 1
            if result is not None:
                witness = result
                break
    certified = witness is not None
    logging_service.log_search("knot", "certified" if certified else "none_found", examined, len(candidates), C.n_facets)
    return CertificationResult(
        status="certified" if certified else "none_found",
        witness=witness,
        candidates_examined=examined,
        non_constructible=certified,
        non_shellable=certified,
        no_straight_embedding=certified,
    )
