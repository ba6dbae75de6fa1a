"""
Bistellar flips and simulated-annealing reduction of closed manifolds.

A move (F, V) is admissible when link(F) is the boundary of the simplex on V
and V is not a face. Applying it replaces F * boundary(V) by V * boundary(F),
so the facet count changes by |F| - |V|. A reduction that reaches the
boundary of a (d+1)-simplex certifies that the input is a PL d-sphere.
"""

import math
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from knotball.config import settings
from knotball.models.complex import Face, SimplicialComplex, f_vector, make_complex, sorted_face
from knotball.models.errors import FormatError, Inadmissible, NotAFace
from knotball.models.schemas import Checkpoint, FlipMove, ReductionResult
from knotball.services.algebra import homology
from knotball.services.logging_service import logging_service


# Proposal weights by move class
WEIGHT_VERTEX_REMOVAL = 100
WEIGHT_DECREASING = 10
WEIGHT_OTHER = 1


def _move(F: Iterable[int], V: Iterable[int]) -> FlipMove:
    return FlipMove(face=tuple(F), coface=tuple(V))


def reverse(move: FlipMove) -> FlipMove:
    return move.reverse()


def forbidden_for(C: SimplicialComplex, frozen: Iterable[Iterable[int]]) -> Set[Face]:
    """Triangles spanned by frozen edges that are not faces of C."""
    edges = {frozenset(f) for f in frozen if len(frozenset(f)) == 2}
    verts = sorted(set().union(*edges)) if edges else []
    out: Set[Face] = set()
    for tri in combinations(verts, 3):
        t = frozenset(tri)
        if all(frozenset(e) in edges for e in combinations(tri, 2)) and not C.is_face(t):
            out.add(t)
    return out


class FlipEngine:
    """
    Mutable flip state over a pure complex.

    Keeps, for every nonempty face, the set of facets containing it, and the
    faces whose link is a simplex boundary. Both are updated locally after
    each move.
    """

    def __init__(
        self,
        C: SimplicialComplex,
        frozen: Iterable[Iterable[int]] = (),
        forbidden: Iterable[Iterable[int]] = (),
    ):
        C.require_pure()
        self.dim = C.dim
        self.facets: Set[Face] = set(C.facets)
        self.frozen: List[Face] = [frozenset(f) for f in frozen]
        self.forbidden: List[Face] = [frozenset(f) for f in forbidden]
        for f in self.frozen:
            if not C.is_face(f):
                raise NotAFace(f"Frozen face {sorted_face(f)} is not a face of the complex")
        self.cofacets: Dict[Face, Set[Face]] = {}
        self.vertex_count: Dict[int, int] = {}
        for G in self.facets:
            self._index(G)
        self.link_simplex: Dict[Face, Face] = {}
        for F in list(self.cofacets):
            self._refresh(F)
        self._moves: Optional[List[FlipMove]] = None

    # ------------------------------------------------------------------
    # Index maintenance
    # ------------------------------------------------------------------

    def _index(self, G: Face) -> None:
        for k in range(1, len(G) + 1):
            for sub in combinations(G, k):
                self.cofacets.setdefault(frozenset(sub), set()).add(G)
        for v in G:
            self.vertex_count[v] = self.vertex_count.get(v, 0) + 1

    def _unindex(self, G: Face) -> None:
        for k in range(1, len(G) + 1):
            for sub in combinations(G, k):
                key = frozenset(sub)
                star = self.cofacets[key]
                star.discard(G)
                if not star:
                    del self.cofacets[key]
        for v in G:
            self.vertex_count[v] -= 1
            if not self.vertex_count[v]:
                del self.vertex_count[v]

    def _refresh(self, F: Face) -> None:
        """Recompute whether link(F) is a simplex boundary."""
        self.link_simplex.pop(F, None)
        star = self.cofacets.get(F)
        need = self.dim + 2 - len(F)
        if not star or len(F) > self.dim or len(star) != need:
            return
        V = frozenset().union(*star) - F
        if len(V) == need:
            self.link_simplex[F] = V

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_count)

    def is_face(self, F: Face) -> bool:
        return F in self.cofacets

    def fresh_vertex(self) -> int:
        return max(self.vertex_count) + 1

    def is_simplex_boundary(self) -> bool:
        return self.n_facets == self.dim + 2 and self.n_vertices == self.dim + 2

    def _allowed(self, F: Face, V: Face) -> bool:
        if any(F <= f for f in self.frozen):
            return False
        whole = F | V
        return not any(f <= whole and not F <= f for f in self.forbidden)

    def moves(self) -> List[FlipMove]:
        """Admissible non-subdivision moves, sorted by (face, coface)."""
        if self._moves is None:
            found = [
                (sorted_face(F), sorted_face(V))
                for F, V in self.link_simplex.items()
                if V not in self.cofacets and self._allowed(F, V)
            ]
            found.sort()
            self._moves = [_move(F, V) for F, V in found]
        return self._moves

    def subdivisions(self) -> List[FlipMove]:
        fresh = self.fresh_vertex()
        out = []
        for G in sorted(sorted_face(G) for G in self.facets):
            if self._allowed(frozenset(G), frozenset([fresh])):
                out.append(_move(G, (fresh,)))
        return out

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(frozenset(self.facets), self.dim)

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(
            sum(1 for F in self.cofacets if len(F) == k + 1) for k in range(self.dim + 1)
        )

    # ------------------------------------------------------------------
    # Moves
    # ------------------------------------------------------------------

    def check(self, move: FlipMove) -> Tuple[Face, Face]:
        F, V = frozenset(move.face), frozenset(move.coface)
        if len(F) + len(V) != self.dim + 2 or F & V:
            raise Inadmissible(f"{move} has the wrong shape for dimension {self.dim}")
        if len(V) == 1 and len(F) == self.dim + 1:
            if F not in self.facets:
                raise Inadmissible(f"{move}: {sorted_face(F)} is not a facet")
            if next(iter(V)) in self.vertex_count:
                raise Inadmissible(f"{move}: subdivision vertex is not fresh")
        elif self.link_simplex.get(F) != V:
            raise Inadmissible(f"{move}: link of the face is not the boundary of the coface")
        elif V in self.cofacets:
            raise Inadmissible(f"{move}: coface is already a face")
        return F, V

    def apply(self, move: FlipMove) -> None:
        F, V = self.check(move)
        old = [F | (V - {w}) for w in V] if len(V) > 1 else [F]
        new = [V | (F - {u}) for u in F]
        touched: Set[Face] = set()
        for G in old:
            self.facets.discard(G)
            self._unindex(G)
        for G in new:
            self.facets.add(G)
            self._index(G)
        for G in old + new:
            for k in range(1, len(G)):
                touched.update(frozenset(s) for s in combinations(G, k))
        for T in touched:
            self._refresh(T)
        self._moves = None


# ============================================================================
# Functional API
# ============================================================================

def admissible_moves(
    C: SimplicialComplex,
    frozen: Iterable[Iterable[int]] = (),
    forbidden: Iterable[Iterable[int]] = (),
    subdivisions: bool = True,
) -> List[FlipMove]:
    """All admissible moves; facet subdivisions use the fresh label max + 1."""
    engine = FlipEngine(C, frozen, forbidden)
    moves = list(engine.moves())
    if subdivisions:
        moves.extend(engine.subdivisions())
    return moves


def apply_move(C: SimplicialComplex, move: FlipMove) -> SimplicialComplex:
    """
    Apply one bistellar move.

    Raises:
        Inadmissible: link(F) is not the boundary of V, or V is a face
    """
    C.require_pure()
    F, V = frozenset(move.face), frozenset(move.coface)
    if len(F) + len(V) != C.dim + 2 or F & V:
        raise Inadmissible(f"{move} has the wrong shape for dimension {C.dim}")
    if len(V) == 1 and len(F) == C.dim + 1:
        if F not in C.facets or V <= C.vertices:
            raise Inadmissible(f"{move} is not a facet subdivision with a fresh vertex")
        old = {F}
    else:
        old = {F | (V - {w}) for w in V}
        star = {G for G in C.facets if F <= G}
        if star != old:
            raise Inadmissible(f"{move}: link of the face is not the boundary of the coface")
        if C.is_face(V):
            raise Inadmissible(f"{move}: coface is already a face")
    facets = (C.facets - old) | {V | (F - {u}) for u in F}
    return make_complex(facets)


def replay(C: SimplicialComplex, trace: Sequence[FlipMove]) -> SimplicialComplex:
    engine = FlipEngine(C)
    for move in trace:
        engine.apply(move)
    return engine.complex()


# ============================================================================
# Simulated annealing
# ============================================================================

def _weight(move: FlipMove, dim: int) -> int:
    if len(move.face) == 1 and len(move.coface) == dim + 1:
        return WEIGHT_VERTEX_REMOVAL
    if move.delta_facets < 0:
        return WEIGHT_DECREASING
    return WEIGHT_OTHER


def _choose(moves: List[FlipMove], dim: int, rng: np.random.Generator) -> FlipMove:
    weights = np.array([_weight(m, dim) for m in moves], dtype=float)
    return moves[int(rng.choice(len(moves), p=weights / weights.sum()))]


def reduce(
    C: SimplicialComplex,
    frozen: Iterable[Iterable[int]] = (),
    seed: int = 1,
    budget: Optional[int] = None,
    forbidden: Optional[Iterable[Iterable[int]]] = None,
    config=None,
) -> ReductionResult:
    """
    Reduce (f_d, f_0) lexicographically by annealed bistellar flips.

    Frozen faces are never removed. Unless given explicitly, triangles spanned
    by frozen edges that are missing from C are kept missing. After
    `anneal_stall` proposals without a new best, the run restarts from the
    best complex with a sub-seed spawned from the master seed.
    """
    cfg = config or settings
    budget = budget or cfg.flip_budget
    frozen = [frozenset(f) for f in frozen]
    if forbidden is None:
        forbidden = forbidden_for(C, frozen)
    forbidden = [frozenset(f) for f in forbidden]

    seq = np.random.SeedSequence(seed)
    rng = np.random.default_rng(seq.spawn(1)[0])
    engine = FlipEngine(C, frozen, forbidden)
    initial = tuple(f_vector(C).counts)
    dim = C.dim

    trace: List[FlipMove] = []
    checkpoints: List[Checkpoint] = []
    best_key = (engine.n_facets, engine.n_vertices)
    best_facets = frozenset(engine.facets)
    best_len = 0
    T = cfg.anneal_t0
    accepted = proposals = restarts = since_best = 0

    while accepted < budget and proposals < cfg.reduce_max_proposals:
        if engine.is_simplex_boundary():
            break
        moves = engine.moves()
        if cfg.subdivision_moves or not moves:
            moves = moves + engine.subdivisions()
        if not moves:
            break
        move = _choose(moves, dim, rng)
        proposals += 1
        delta = move.delta_facets
        if delta <= 0 or rng.random() < math.exp(-delta / T):
            engine.apply(move)
            trace.append(move)
            accepted += 1
            T = max(T * cfg.anneal_cooling, cfg.anneal_t_min)
            if accepted % cfg.checkpoint_every == 0:
                counts = engine.f_vector()
                checkpoints.append(Checkpoint(
                    accepted=accepted,
                    f_vector=counts,
                    euler_characteristic=sum((-1) ** k * c for k, c in enumerate(counts)),
                    homology=homology(engine.complex()),
                ))
            key = (engine.n_facets, engine.n_vertices)
            if key < best_key:
                best_key, best_facets, best_len = key, frozenset(engine.facets), len(trace)
                since_best = 0
                continue
        since_best += 1
        if since_best >= cfg.anneal_stall:
            restarts += 1
            since_best = 0
            T = cfg.anneal_t0
            rng = np.random.default_rng(seq.spawn(1)[0])
            del trace[best_len:]
            engine = FlipEngine(SimplicialComplex(best_facets, dim), frozen, forbidden)

    if (engine.n_facets, engine.n_vertices) > best_key:
        del trace[best_len:]
        engine = FlipEngine(SimplicialComplex(best_facets, dim), frozen, forbidden)

    best = engine.complex()
    final = tuple(f_vector(best).counts)
    logging_service.log_reduction(seed, accepted, proposals, restarts, initial, final, len(frozen))
    return ReductionResult(
        complex=best,
        trace=trace,
        seed=seed,
        accepted=accepted,
        proposals=proposals,
        restarts=restarts,
        initial_f_vector=initial,
        final_f_vector=final,
        reached_simplex_boundary=engine.is_simplex_boundary(),
        frozen=[sorted_face(f) for f in frozen],
        checkpoints=checkpoints,
    )


# ============================================================================
# Trace files
# ============================================================================

def format_trace(result: ReductionResult, config=None) -> str:
    cfg = config or settings
    frozen = ";".join(",".join(map(str, f)) for f in result.frozen)
    lines = [
        f"# seed={result.seed}",
        f"# schedule=t0:{cfg.anneal_t0},cooling:{cfg.anneal_cooling},"
        f"t_min:{cfg.anneal_t_min},stall:{cfg.anneal_stall}",
        f"# frozen={frozen}",
    ]
    lines.extend(str(m) for m in result.trace)
    return "\n".join(lines) + "\n"


def write_trace(result: ReductionResult, path: Union[str, Path], config=None) -> None:
    Path(path).write_text(format_trace(result, config), encoding="utf-8")


def parse_trace(text: str) -> Tuple[Dict[str, str], List[FlipMove]]:
    """Header fields and moves of a trace file."""
    header: Dict[str, str] = {}
    moves: List[FlipMove] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            header[key.strip()] = value.strip()
            continue
        left, sep, right = line.partition("|")
        try:
            if not sep:
                raise ValueError(line)
            moves.append(_move(
                (int(t) for t in left.split()),
                (int(t) for t in right.split()),
            ))
        except ValueError as e:
            raise FormatError(f"trace line {lineno}: {raw!r} is not 'F | V'") from e
    return header, moves


def read_trace(path: Union[str, Path]) -> Tuple[Dict[str, str], List[FlipMove]]:
    return parse_trace(Path(path).read_text(encoding="utf-8"))
