"""
Pydantic models for results and certificates.
Every model renders to line-oriented key=value records for the CLI.
"""

from enum import Enum
from typing import Any, ClassVar, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def to_records(model: BaseModel, prefix: str = "") -> List[str]:
    """Flatten a model into sorted-by-field key=value lines."""
    lines: List[str] = []

    def emit(key: str, value: Any) -> None:
        if isinstance(value, dict):
            if not value:
                lines.append(f"{key}={{}}")
            for k, v in value.items():
                emit(f"{key}.{k}", v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}.count={len(value)}")
            for i, v in enumerate(value):
                emit(f"{key}.{i}", v)
        elif isinstance(value, (list, tuple)):
            lines.append(f"{key}={_flat(value)}")
        elif isinstance(value, bool):
            lines.append(f"{key}={'true' if value else 'false'}")
        elif value is None:
            lines.append(f"{key}=")
        elif isinstance(value, Enum):
            lines.append(f"{key}={value.value}")
        else:
            lines.append(f"{key}={value}")

    for name, value in model.model_dump(mode="json", exclude=_record_excludes(model)).items():
        emit(f"{prefix}{name}", value)
    return lines


def _record_excludes(model: BaseModel) -> set:
    return set(getattr(model, "record_exclude", ()))


def _flat(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_flat(v) for v in value) + "]"
    return str(value)


# ============================================================================
# Complex fingerprints
# ============================================================================

class FVector(BaseModel):
    """Face counts (f_0, ..., f_d)."""
    model_config = ConfigDict(frozen=True)

    counts: Tuple[int, ...] = Field(..., description="f_k for k = 0..d")

    @field_validator("counts")
    @classmethod
    def _non_negative(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(c < 0 for c in v):
            raise ValueError("face counts are non-negative")
        return v

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


class ManifoldStatus(str, Enum):
    CLOSED = "closed"
    WITH_BOUNDARY = "with_boundary"
    NO = "no"


class Outcome(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class HomologyGroups(BaseModel):
    """Integral homology: Betti numbers and torsion coefficients per dimension."""
    betti: List[int]
    torsion: List[List[int]]
    reduced: bool = False

    @model_validator(mode="after")
    def _aligned(self) -> "HomologyGroups":
        if len(self.betti) != len(self.torsion):
            raise ValueError("betti and torsion must cover the same dimensions")
        if any(t <= 1 for ts in self.torsion for t in ts):
            raise ValueError("torsion coefficients are greater than 1")
        return self

    @property
    def euler_characteristic(self) -> int:
        chi = sum((-1) ** k * b for k, b in enumerate(self.betti))
        return chi + 1 if self.reduced else chi

    def is_trivial(self) -> bool:
        """True for the homology of a point."""
        if any(self.torsion):
            return False
        if self.reduced:
            return not any(self.betti)
        return self.betti[0] == 1 and not any(self.betti[1:])

    def group(self, k: int) -> str:
        parts = ["Z"] * self.betti[k] + [f"Z{t}" for t in self.torsion[k]]
        if not parts:
            return "0"
        return "+".join(parts) if len(parts) > 1 else parts[0]

    def __str__(self) -> str:
        return "(" + ", ".join(self.group(k) for k in range(len(self.betti))) + ")"


# ============================================================================
# Collapses and recognition verdicts
# ============================================================================

class CollapseStep(BaseModel):
    face: Tuple[int, ...]
    coface: Tuple[int, ...]


class CollapseResult(BaseModel):
    outcome: Literal["yes", "unknown"]
    trace: List[CollapseStep] = Field(default_factory=list)
    remaining: List[Tuple[int, ...]] = Field(default_factory=list, description="Maximal faces left")
    steps: int = 0
    budget: int = 0

    record_exclude: ClassVar[Tuple[str, ...]] = ("trace",)


class FlipMove(BaseModel):
    """A bistellar move replacing face * boundary(coface) by coface * boundary(face)."""
    model_config = ConfigDict(frozen=True)

    face: Tuple[int, ...]
    coface: Tuple[int, ...]

    @field_validator("face", "coface")
    @classmethod
    def _sorted(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("move faces are nonempty")
        return tuple(sorted(v))

    @property
    def delta_facets(self) -> int:
        return len(self.face) - len(self.coface)

    @property
    def is_subdivision(self) -> bool:
        return len(self.coface) == 1 and len(self.face) > 1

    def reverse(self) -> "FlipMove":
        return FlipMove(face=self.coface, coface=self.face)

    def __str__(self) -> str:
        return " ".join(map(str, self.face)) + " | " + " ".join(map(str, self.coface))


class Checkpoint(BaseModel):
    accepted: int
    f_vector: Tuple[int, ...]
    euler_characteristic: int
    homology: HomologyGroups


class Verdict(BaseModel):
    """yes / no / unknown with the evidence that decided it."""
    outcome: Outcome
    witness: Optional[str] = Field(None, description="First failed necessary condition")
    trace: List[FlipMove] = Field(default_factory=list)
    seed: Optional[int] = None
    accepted_flips: int = 0

    record_exclude: ClassVar[Tuple[str, ...]] = ("trace",)

    @property
    def yes(self) -> bool:
        return self.outcome is Outcome.YES


class ReductionResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    complex: Any = Field(..., description="Best SimplicialComplex found")
    trace: List[FlipMove]
    seed: int
    accepted: int
    proposals: int
    restarts: int
    initial_f_vector: Tuple[int, ...]
    final_f_vector: Tuple[int, ...]
    reached_simplex_boundary: bool
    frozen: List[Tuple[int, ...]] = Field(default_factory=list)
    checkpoints: List[Checkpoint] = Field(default_factory=list)

    record_exclude: ClassVar[Tuple[str, ...]] = ("complex", "trace", "checkpoints")


# ============================================================================
# Shelling and constructibility
# ============================================================================

class ShellingCertificate(BaseModel):
    order: List[Tuple[int, ...]]
    ridges: List[List[Tuple[int, ...]]] = Field(
        ..., description="For each facet after the first: its ridges in the previous union"
    )


class ShellingResult(BaseModel):
    status: Literal["shellable", "not_shellable", "unknown"]
    certificate: Optional[ShellingCertificate] = None
    expansions: int = 0
    budget: int = 0

    record_exclude: ClassVar[Tuple[str, ...]] = ("certificate",)


class FreeFacetReport(BaseModel):
    """Facets of a 3-ball sorted by whether their removal leaves a 3-ball."""
    free: List[Tuple[int, ...]] = Field(default_factory=list)
    undecided: List[Tuple[int, ...]] = Field(
        default_factory=list, description="Facets whose ball check ran out of budget"
    )

    @property
    def strongly_nonshellable(self) -> bool:
        return not self.free and not self.undecided


class ConstructibilityTree(BaseModel):
    facets: List[Tuple[int, ...]]
    left: Optional["ConstructibilityTree"] = None
    right: Optional["ConstructibilityTree"] = None
    intersection: Optional["ConstructibilityTree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(t.depth() for t in (self.left, self.right, self.intersection) if t)


ConstructibilityTree.model_rebuild()


class ConstructibilityResult(BaseModel):
    outcome: Outcome
    tree: Optional[ConstructibilityTree] = None
    expansions: int = 0
    budget: int = 0

    record_exclude: ClassVar[Tuple[str, ...]] = ("tree",)


# ============================================================================
# Knot certificates
# ============================================================================

class GroupPresentation(BaseModel):
    """Generators 1..g; relators are words of signed generator indices."""
    generators: int = Field(..., ge=0)
    relators: List[List[int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _indices_in_range(self) -> "GroupPresentation":
        for word in self.relators:
            for letter in word:
                if letter == 0 or abs(letter) > self.generators:
                    raise ValueError(f"letter {letter} outside 1..{self.generators}")
        return self

    def __str__(self) -> str:
        def spell(word: List[int]) -> str:
            return "".join(f"x{abs(a)}" + ("" if a > 0 else "^-1") for a in word) or "1"
        gens = ", ".join(f"x{i}" for i in range(1, self.generators + 1))
        return f"< {gens} | {', '.join(spell(w) for w in self.relators)} >"


class KnotWitness(BaseModel):
    cycle: Tuple[int, int, int]
    group: str = Field(..., description="Target finite group of the quotient")
    images: List[int] = Field(..., description="Group element index per generator")
    presentation: GroupPresentation

    record_exclude: ClassVar[Tuple[str, ...]] = ("presentation",)


class CertificationResult(BaseModel):
    status: Literal["certified", "none_found"]
    witness: Optional[KnotWitness] = None
    candidates_examined: int = 0
    non_constructible: bool = False
    non_shellable: bool = False
    no_straight_embedding: bool = False


class FamilyMember(BaseModel):
    kind: Literal["sphere", "ball"]
    dim: int
    vertices: int
    facets: int
    non_constructible: Literal["certified", "inherited"]
    knot_cycle: Tuple[int, int, int]


# ============================================================================
# Isomorphism
# ============================================================================

class IsomorphismResult(BaseModel):
    isomorphic: bool
    mapping: Optional[Dict[int, int]] = None


class AutomorphismGroup(BaseModel):
    order: int
    generators: List[List[List[int]]] = Field(
        default_factory=list, description="Generators in cycle notation"
    )


# ============================================================================
# Catalog verification
# ============================================================================

class ClaimResult(BaseModel):
    claim: str
    passed: bool
    detail: str = ""
    elapsed_ms: float = 0.0
    error: Optional[str] = None

    record_exclude: ClassVar[Tuple[str, ...]] = ("elapsed_ms",)


class CatalogReport(BaseModel):
    claims: List[ClaimResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def failed_count(self) -> int:
        return sum(1 for c in self.claims if not c.passed)
