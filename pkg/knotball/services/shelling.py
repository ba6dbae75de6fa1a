"""
Shellability, free facets and constructibility.

A facet F extends a partial shelling P when F meets the union of P in a
nonempty pure (d-1)-complex. With M the set of vertices v such that F - v
lies in a facet of P, that holds exactly when M is nonempty and no facet of
P contains M.
"""

from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from knotball.config import settings
from knotball.models.complex import Face, SimplicialComplex, make_complex, sorted_face, strongly_connected
from knotball.models.errors import NotABall
from knotball.models.schemas import (
    ConstructibilityResult,
    ConstructibilityTree,
    FreeFacetReport,
    Outcome,
    ShellingCertificate,
    ShellingResult,
)
from knotball.services.batch_service import batch_service
from knotball.services.iso import canonical_form
from knotball.services.logging_service import logging_service
from knotball.services.recognition import verify_ball3


# ============================================================================
# Shelling search
# ============================================================================

class _BudgetExhausted(Exception):
    pass


class ShellingSearch:
    """Depth-first search over shelling orders with a memo of dead prefixes."""

    def __init__(self, C: SimplicialComplex, budget: int):
        self.facets: List[Face] = [frozenset(f) for f in C.sorted_facets()]
        self.n = len(self.facets)
        self.budget = budget
        self.expansions = 0
        self.dead: Set[int] = set()
        self.vertex_mask: Dict[int, int] = {}
        for i, F in enumerate(self.facets):
            for v in F:
                self.vertex_mask[v] = self.vertex_mask.get(v, 0) | (1 << i)
        by_ridge: Dict[Face, List[int]] = {}
        for i, F in enumerate(self.facets):
            for v in F:
                by_ridge.setdefault(F - {v}, []).append(i)
        # neighbours[i]: (vertex of F_i opposite the shared ridge, other facet)
        self.neighbours: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for ridge, members in by_ridge.items():
            for i in members:
                (v,) = self.facets[i] - ridge
                self.neighbours[i].extend((v, j) for j in members if j != i)

    def restriction(self, i: int, used: int) -> Optional[FrozenSet[int]]:
        """M for facet i against the used facets, or None if F_i cannot come next."""
        M = frozenset(v for v, j in self.neighbours[i] if used >> j & 1)
        if not M:
            return None
        mask = used
        for v in M:
            mask &= self.vertex_mask[v]
        return None if mask else M

    def extend(self, used: int, order: List[int]) -> bool:
        if len(order) == self.n:
            return True
        if used in self.dead:
            return False
        self.expansions += 1
        if self.expansions > self.budget:
            raise _BudgetExhausted
        options = []
        for i in range(self.n):
            if used >> i & 1:
                continue
            M = self.restriction(i, used)
            if M is not None:
                options.append((-len(M), i))
        options.sort()
        for _, i in options:
            order.append(i)
            if self.extend(used | (1 << i), order):
                return True
            order.pop()
        self.dead.add(used)
        return False

    def run(self, first: Optional[int] = None) -> Optional[List[int]]:
        starts = [first] if first is not None else range(self.n)
        for s in starts:
            order = [s]
            if self.extend(1 << s, order):
                return order
        return None


def _certificate(facets: List[Face]) -> ShellingCertificate:
    ridges: List[List[Tuple[int, ...]]] = []
    for k in range(1, len(facets)):
        F = facets[k]
        previous = facets[:k]
        ridges.append(sorted(
            sorted_face(F - {v}) for v in F if any(F - {v} <= G for G in previous)
        ))
    return ShellingCertificate(order=[sorted_face(F) for F in facets], ridges=ridges)


def find_shelling(
    C: SimplicialComplex,
    budget: Optional[int] = None,
    first: Optional[Iterable[int]] = None,
) -> ShellingResult:
    """
    Search for a shelling order.

    not_shellable is reported only when every extension order has been
    ruled out; unknown when the expansion budget runs out first.
    """
    C.require_pure()
    budget = budget or settings.shelling_budget
    if not strongly_connected(C):
        return ShellingResult(status="not_shellable", budget=budget)
    search = ShellingSearch(C, budget)
    start = None
    if first is not None:
        start = search.facets.index(frozenset(first))
    try:
        order = search.run(start)
    except _BudgetExhausted:
        logging_service.log_search("shelling", "unknown", search.expansions, budget, C.n_facets)
        return ShellingResult(status="unknown", expansions=search.expansions, budget=budget)
    if order is None:
        logging_service.log_search("shelling", "not_shellable", search.expansions, budget, C.n_facets)
        return ShellingResult(status="not_shellable", expansions=search.expansions, budget=budget)
    logging_service.log_search("shelling", "shellable", search.expansions, budget, C.n_facets)
    return ShellingResult(
        status="shellable",
        certificate=_certificate([search.facets[i] for i in order]),
        expansions=search.expansions,
        budget=budget,
    )


def verify_shelling(
    C: SimplicialComplex,
    order: Union[ShellingCertificate, Sequence[Iterable[int]]],
) -> bool:
    """Replay a shelling order against the definition."""
    certificate = order if isinstance(order, ShellingCertificate) else None
    facets = [frozenset(f) for f in (certificate.order if certificate else order)]
    if len(facets) != C.n_facets or set(facets) != set(C.facets):
        return False
    d = C.dim
    for k in range(1, len(facets)):
        F = facets[k]
        meets = {F & G for G in facets[:k]}
        maximal = [m for m in meets if not any(m < n for n in meets)]
        if not maximal or any(len(m) != d for m in maximal):
            return False
        if certificate is not None:
            expected = sorted(sorted_face(m) for m in maximal)
            if sorted(tuple(r) for r in certificate.ridges[k - 1]) != expected:
                return False
    return True


# ============================================================================
# Free facets
# ============================================================================

def _require_ball(B: SimplicialComplex, seeds, budget, jobs) -> None:
    verdict = verify_ball3(B, seeds, budget, jobs)
    if not verdict.yes:
        raise NotABall(f"Input is not a certified 3-ball ({verdict.outcome.value}: {verdict.witness})")


def classify_facets(
    B: SimplicialComplex,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> FreeFacetReport:
    """
    Free facets of a 3-ball, and the facets whose check ended unknown.

    The single facet of a simplex counts as free.

    Raises:
        NotABall: B is not certified as a 3-ball
    """
    _require_ball(B, seeds, budget, jobs)
    facets = B.sorted_facets()
    if len(facets) == 1:
        return FreeFacetReport(free=facets)
    seeds = tuple(seeds or settings.seeds)
    rests = [make_complex(G for G in B.facets if G != frozenset(F)) for F in facets]
    verdicts = batch_service.map("ball3", [(R, seeds, budget) for R in rests], jobs=jobs)
    report = FreeFacetReport()
    for F, verdict in zip(facets, verdicts):
        if verdict.outcome is Outcome.UNKNOWN:
            logging_service.logger.warning(
                "free_facet_undecided", extra={"event": "free_facet_undecided", "facet": list(F)}
            )
            report.undecided.append(F)
        elif verdict.yes:
            report.free.append(F)
    return report


def free_facets(
    B: SimplicialComplex,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> List[Tuple[int, ...]]:
    """Facets whose removal is certified to leave a 3-ball, in canonical order."""
    return classify_facets(B, seeds, budget, jobs).free


def is_strongly_nonshellable(
    B: SimplicialComplex,
    seeds: Optional[Iterable[int]] = None,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> bool:
    """True only when every facet is certified not free."""
    return classify_facets(B, seeds, budget, jobs).strongly_nonshellable


# ============================================================================
# Constructibility
# ============================================================================

class ConstructibilitySearch:
    """
    Recursive search over splits into two constructible parts.

    Both parts are strongly connected, so the first part is grown as a
    connected facet set containing facet 0. Results are memoized on
    canonical forms.
    """

    def __init__(self, budget: int):
        self.budget = budget
        self.expansions = 0
        self.memo: Dict[Tuple, Tuple[Outcome, Optional[ConstructibilityTree]]] = {}

    def decide(self, C: SimplicialComplex) -> Tuple[Outcome, Optional[ConstructibilityTree]]:
        if C.n_facets == 1:
            return Outcome.YES, ConstructibilityTree(facets=C.sorted_facets())
        if C.dim == 0:
            return Outcome.YES, self._points(C.sorted_facets())
        can = canonical_form(C)
        key = tuple(can.complex.sorted_facets())
        if key not in self.memo:
            outcome, tree = self._split(can.complex)
            if outcome is not Outcome.UNKNOWN:
                self.memo[key] = (outcome, tree)
            else:
                return outcome, None
        outcome, tree = self.memo[key]
        if tree is None:
            return outcome, None
        back = {label: v for v, label in can.mapping.items()}
        return outcome, _relabel_tree(tree, back)

    def _points(self, facets: List[Tuple[int, ...]]) -> ConstructibilityTree:
        if len(facets) == 1:
            return ConstructibilityTree(facets=facets)
        return ConstructibilityTree(
            facets=facets,
            left=ConstructibilityTree(facets=facets[:1]),
            right=self._points(facets[1:]),
        )

    def _split(self, C: SimplicialComplex) -> Tuple[Outcome, Optional[ConstructibilityTree]]:
        facets = [frozenset(f) for f in C.sorted_facets()]
        n = len(facets)
        adjacency = [0] * n
        by_ridge: Dict[Face, List[int]] = {}
        for i, F in enumerate(facets):
            for v in F:
                by_ridge.setdefault(F - {v}, []).append(i)
        for members in by_ridge.values():
            for i in members:
                for j in members:
                    if i != j:
                        adjacency[i] |= 1 << j
        full = (1 << n) - 1
        undecided = False
        for mask in _connected_sets(adjacency, n):
            if mask == full:
                continue
            self.expansions += 1
            if self.expansions > self.budget:
                return Outcome.UNKNOWN, None
            rest = full & ~mask
            if not _connected(rest, adjacency):
                continue
            left = [facets[i] for i in range(n) if mask >> i & 1]
            right = [facets[i] for i in range(n) if rest >> i & 1]
            meets = {F & G for F in left for G in right}
            meet = [m for m in meets if m and not any(m < o for o in meets)]
            if not meet or any(len(m) != C.dim for m in meet):
                continue
            parts = []
            for piece in (left, right, meet):
                outcome, tree = self.decide(make_complex(piece))
                if outcome is not Outcome.YES:
                    undecided = undecided or outcome is Outcome.UNKNOWN
                    break
                parts.append(tree)
            else:
                return Outcome.YES, ConstructibilityTree(
                    facets=C.sorted_facets(), left=parts[0], right=parts[1], intersection=parts[2]
                )
        return (Outcome.UNKNOWN if undecided else Outcome.NO), None


def _connected(mask: int, adjacency: List[int]) -> bool:
    if not mask:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        grow = 0
        i = 0
        f = frontier
        while f:
            if f & 1:
                grow |= adjacency[i]
            f >>= 1
            i += 1
        frontier = grow & mask & ~seen
        seen |= frontier
    return seen == mask


def _connected_sets(adjacency: List[int], n: int) -> Iterator[int]:
    """Every connected facet set containing facet 0, each exactly once."""

    def grow(sub: int, frontier: int, banned: int) -> Iterator[int]:
        yield sub
        candidates = [i for i in range(n) if frontier >> i & 1]
        for k, w in enumerate(candidates):
            blocked = banned
            for earlier in candidates[:k]:
                blocked |= 1 << earlier
            new_sub = sub | (1 << w)
            later = 0
            for c in candidates[k + 1:]:
                later |= 1 << c
            new_frontier = (later | adjacency[w]) & ~new_sub & ~blocked
            yield from grow(new_sub, new_frontier, blocked)

    yield from grow(1, adjacency[0] & ~1, 0)


def _relabel_tree(tree: ConstructibilityTree, mapping: Dict[int, int]) -> ConstructibilityTree:
    return ConstructibilityTree(
        facets=sorted(tuple(sorted(mapping[v] for v in f)) for f in tree.facets),
        left=_relabel_tree(tree.left, mapping) if tree.left else None,
        right=_relabel_tree(tree.right, mapping) if tree.right else None,
        intersection=_relabel_tree(tree.intersection, mapping) if tree.intersection else None,
    )


def verify_constructibility_tree(tree: ConstructibilityTree) -> bool:
    """Check every node: parts partition the facets and meet in the stored intersection."""
    if tree.is_leaf:
        return len(tree.facets) == 1
    left, right = set(tree.left.facets), set(tree.right.facets)
    if left & right or left | right != set(tree.facets):
        return False
    if tree.intersection is not None:
        meets = {frozenset(F) & frozenset(G) for F in left for G in right}
        meet = {tuple(sorted(m)) for m in meets if m and not any(m < o for o in meets)}
        if meet != set(tree.intersection.facets):
            return False
        if not verify_constructibility_tree(tree.intersection):
            return False
    return verify_constructibility_tree(tree.left) and verify_constructibility_tree(tree.right)


def is_constructible(C: SimplicialComplex, budget: Optional[int] = None) -> ConstructibilityResult:
    """yes with a tree, no after an exhausted search, unknown on budget."""
    C.require_pure()
    budget = budget or settings.constructible_budget
    search = ConstructibilitySearch(budget)
    if C.n_facets > 1 and C.dim > 0 and not strongly_connected(C):
        return ConstructibilityResult(outcome=Outcome.NO, budget=budget)
    outcome, tree = search.decide(C)
    logging_service.log_search("constructibility", outcome.value, search.expansions, budget, C.n_facets)
    return ConstructibilityResult(outcome=outcome, tree=tree, expansions=search.expansions, budget=budget)
