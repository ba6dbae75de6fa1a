"""
Integral homology, Euler characteristics and elementary collapses.

Homology is computed from boundary matrices over the integers with a Smith
normal form in Python's arbitrary-precision ints. The collapse engine works on
any face set closed under taking subsets, so the knot module reuses it on
subcomplexes of a barycentric subdivision.
"""

import heapq
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from knotball.config import settings
from knotball.models.complex import SimplicialComplex, f_vector
from knotball.models.schemas import CollapseResult, CollapseStep, GroupPresentation, HomologyGroups
from knotball.services.logging_service import logging_service


# ============================================================================
# Integer matrices and Smith normal form
# ============================================================================

class IntegerMatrix:
    """Dense integer matrix with exact entries."""

    def __init__(self, entries: Sequence[Sequence[int]], cols: Optional[int] = None):
        self.entries: List[List[int]] = [list(map(int, row)) for row in entries]
        self.rows = len(self.entries)
        self.cols = cols if cols is not None else (len(self.entries[0]) if self.entries else 0)
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i][i] = 1
        return m

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix(self.entries, self.cols)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = IntegerMatrix.zeros(self.rows, other.cols)
        for i, row in enumerate(self.entries):
            target = out.entries[i]
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            target[j] += a * b
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [row[:] for row in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


class SmithForm(NamedTuple):
    diagonal: List[int]
    U: Optional[IntegerMatrix]
    V: Optional[IntegerMatrix]
    D: IntegerMatrix


def smith_normal_form(matrix: IntegerMatrix, transforms: bool = False) -> SmithForm:
    """
    Smith normal form D = U * A * V with U, V unimodular.

    The nonzero diagonal entries are positive and form a divisibility chain.
    U and V are only tracked when transforms=True.
    """
    A = [row[:] for row in matrix.entries]
    m, n = matrix.rows, matrix.cols
    U = IntegerMatrix.identity(m).entries if transforms else None
    V = IntegerMatrix.identity(n).entries if transforms else None

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, q: int) -> None:
        """row[dst] += q * row[src]"""
        rs, rd = A[src], A[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(src: int, dst: int, q: int) -> None:
        """col[dst] += q * col[src]"""
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    def find_pivot(t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a:
                    if a == 1 or a == -1:
                        return i, j
                    if best is None or abs(a) < abs(A[best[0]][best[1]]):
                        best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pivot = find_pivot(t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        changed = True
            if changed:
                # move the smallest remainder in row/column t onto the diagonal
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
        t += 1

    diagonal = [A[i][i] for i in range(min(m, n))]
    return SmithForm(
        diagonal=diagonal,
        U=IntegerMatrix(U, m) if U is not None else None,
        V=IntegerMatrix(V, n) if V is not None else None,
        D=IntegerMatrix(A, n),
    )


# ============================================================================
# Homology
# ============================================================================

def _index(faces: Iterable[FrozenSet[int]]) -> Dict[FrozenSet[int], int]:
    return {f: i for i, f in enumerate(sorted(faces, key=lambda f: tuple(sorted(f))))}


def boundary_matrix(C: SimplicialComplex, k: int) -> IntegerMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains."""
    rows = _index(C.faces(k - 1)) if k >= 1 else {}
    cols = _index(C.faces(k))
    M = IntegerMatrix.zeros(len(rows), len(cols))
    for f, j in cols.items():
        ordered = sorted(f)
        if k == 0:
            continue
        for i, v in enumerate(ordered):
            M.entries[rows[f - {v}]][j] = -1 if i % 2 else 1
    return M


def _rank_and_torsion(M: IntegerMatrix) -> Tuple[int, List[int]]:
    if M.rows == 0 or M.cols == 0:
        return 0, []
    diag = smith_normal_form(M).diagonal
    nonzero = [d for d in diag if d]
    return len(nonzero), [d for d in nonzero if d > 1]


def homology(C: SimplicialComplex, reduced: bool = False) -> HomologyGroups:
    """Integral homology H_0..H_d of a (possibly mixed-dimensional) complex."""
    if C.is_empty:
        return HomologyGroups(betti=[], torsion=[], reduced=reduced)
    d = C.dim
    ranks: Dict[int, int] = {}
    torsion: Dict[int, List[int]] = {}
    for k in range(1, d + 1):
        ranks[k], torsion[k - 1] = _rank_and_torsion(boundary_matrix(C, k))
    ranks[0] = 1 if reduced else 0
    ranks[d + 1] = 0
    torsion[d] = []
    betti = [len(C.faces(k)) - ranks[k] - ranks[k + 1] for k in range(d + 1)]
    return HomologyGroups(betti=betti, torsion=[torsion[k] for k in range(d + 1)], reduced=reduced)


def euler_characteristic(C: SimplicialComplex) -> int:
    return f_vector(C).euler_characteristic


class Abelianization(NamedTuple):
    rank: int
    torsion: List[int]

    def is_infinite_cyclic(self) -> bool:
        return self.rank == 1 and not self.torsion


def abelianization(presentation: GroupPresentation) -> Abelianization:
    """Abelianized group from the SNF of the relator exponent-sum matrix."""
    g = presentation.generators
    if g == 0:
        return Abelianization(0, [])
    rows = []
    for word in presentation.relators:
        row = [0] * g
        for letter in word:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    if not rows:
        return Abelianization(g, [])
    rank, tors = _rank_and_torsion(IntegerMatrix(rows, g))
    return Abelianization(g - rank, tors)


# ============================================================================
# Elementary collapses
# ============================================================================

def closure(generators: Iterable[Iterable[int]]) -> Set[FrozenSet[int]]:
    """All nonempty faces of the given simplices."""
    out: Set[FrozenSet[int]] = set()
    stack = [frozenset(g) for g in generators]
    while stack:
        f = stack.pop()
        if f in out or not f:
            continue
        out.add(f)
        if len(f) > 1:
            stack.extend(f - {v} for v in f)
    return out


def _key(f: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    return (-len(f), tuple(sorted(f)))


class Collapser:
    """
    Greedy elementary collapses on a face set closed under subsets.

    Free faces of maximal dimension go first, ties broken lexicographically.
    """

    def __init__(self, faces: Iterable[FrozenSet[int]]):
        self.cofaces: Dict[FrozenSet[int], Set[FrozenSet[int]]] = {f: set() for f in faces}
        for f in self.cofaces:
            if len(f) > 1:
                for v in f:
                    self.cofaces[f - {v}].add(f)
        self.trace: List[Tuple[FrozenSet[int], FrozenSet[int]]] = []

    def copy(self) -> "Collapser":
        other = Collapser.__new__(Collapser)
        other.cofaces = {f: set(c) for f, c in self.cofaces.items()}
        other.trace = list(self.trace)
        return other

    def free_partner(self, f: FrozenSet[int]) -> Optional[FrozenSet[int]]:
        cof = self.cofaces.get(f)
        if cof is None or len(cof) != 1:
            return None
        (tau,) = cof
        return tau if not self.cofaces[tau] else None

    def free_pairs(self) -> List[Tuple[FrozenSet[int], FrozenSet[int]]]:
        pairs = [(f, t) for f in self.cofaces for t in [self.free_partner(f)] if t is not None]
        pairs.sort(key=lambda p: _key(p[0]))
        return pairs

    def collapse_pair(self, sigma: FrozenSet[int], tau: FrozenSet[int]) -> List[FrozenSet[int]]:
        """Remove sigma and tau; return faces whose freeness may have changed."""
        touched: List[FrozenSet[int]] = []
        for face_ in (tau, sigma):
            if len(face_) > 1:
                for v in face_:
                    sub = face_ - {v}
                    if sub in self.cofaces:
                        self.cofaces[sub].discard(face_)
                        touched.append(sub)
            del self.cofaces[face_]
        self.trace.append((sigma, tau))
        out = list(touched)
        for mu in touched:
            if mu in self.cofaces and not self.cofaces[mu] and len(mu) > 1:
                out.extend(mu - {v} for v in mu)
        return out

    def run(self, step_limit: int) -> int:
        """Collapse greedily until stuck or out of steps; return steps taken."""
        heap = [_key(f) for f in self.cofaces if self.free_partner(f) is not None]
        heapq.heapify(heap)
        steps = 0
        while heap and steps < step_limit:
            _, tup = heapq.heappop(heap)
            sigma = frozenset(tup)
            tau = self.free_partner(sigma)
            if tau is None:
                continue
            for g in self.collapse_pair(sigma, tau):
                if g in self.cofaces and self.free_partner(g) is not None:
                    heapq.heappush(heap, _key(g))
            steps += 1
        return steps

    def maximal_faces(self) -> List[FrozenSet[int]]:
        return [f for f, c in self.cofaces.items() if not c]

    @property
    def size(self) -> int:
        return len(self.cofaces)


def collapse(faces: Iterable[FrozenSet[int]], step_limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """Greedily collapse a face set and return the maximal faces that remain."""
    collapser = Collapser(faces)
    collapser.run(step_limit or 10 ** 9)
    return collapser.maximal_faces()


def is_collapsible(
    C: SimplicialComplex,
    budget: Optional[int] = None,
    backtrack_depth: Optional[int] = None,
) -> CollapseResult:
    """
    Try to collapse C to a single vertex.

    Returns outcome "yes" with a replayable trace of (free face, coface)
    pairs, or "unknown" when greedy collapsing with the given backtracking
    depth gets stuck or the step budget runs out.
    """
    budget = budget or settings.collapse_step_limit
    depth = settings.collapse_backtrack_depth if backtrack_depth is None else backtrack_depth
    start = Collapser(C.all_faces())
    spent = 0

    def search(state: Collapser, levels: int) -> Optional[Collapser]:
        nonlocal spent
        if levels == 0:
            spent += state.run(budget - spent)
            return state if state.size == 1 else None
        pairs = state.free_pairs()
        if not pairs:
            return state if state.size == 1 else None
        for sigma, tau in pairs:
            if spent >= budget:
                return None
            branch = state.copy()
            branch.collapse_pair(sigma, tau)
            spent += 1
            found = search(branch, levels - 1)
            if found is not None:
                return found
        return None

    final = search(start, depth)
    outcome = "yes" if final is not None else "unknown"
    logging_service.log_search("collapse", outcome, spent, budget, C.n_facets)
    if final is None:
        greedy = Collapser(C.all_faces())
        greedy.run(budget)
        return CollapseResult(
            outcome="unknown",
            remaining=sorted(tuple(sorted(f)) for f in greedy.maximal_faces()),
            steps=spent,
            budget=budget,
        )
    return CollapseResult(
        outcome="yes",
        trace=[CollapseStep(face=tuple(sorted(s)), coface=tuple(sorted(t))) for s, t in final.trace],
        remaining=[tuple(sorted(f)) for f in final.maximal_faces()],
        steps=spent,
        budget=budget,
    )


def replay_collapse(C: SimplicialComplex, trace: Sequence[CollapseStep]) -> List[FrozenSet[int]]:
    """
    Apply a collapse trace, checking every pair is free when it is used.

    Returns the maximal faces left; raises ValueError on an invalid step.
    """
    state = Collapser(C.all_faces())
    for step in trace:
        sigma, tau = frozenset(step.face), frozenset(step.coface)
        if state.free_partner(sigma) != tau:
            raise ValueError(f"{step.face} is not a free face of {step.coface}")
        state.collapse_pair(sigma, tau)
    return state.maximal_faces()
