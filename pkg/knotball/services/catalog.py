"""
Catalog of the transcribed complexes and the checks of their documented claims.

Stored entries are read from the .cplx resources in knotball/data; compound
entries are built from their parts as described in config/catalog.yaml.
"""

import time
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union

from knotball.config import DATA_DIR, catalog_registry
from knotball.models.complex import (
    SimplicialComplex,
    boundary_complex,
    delete_star,
    f_vector,
    link,
    read_cplx,
    star_closed,
    write_cplx,
)
from knotball.models.errors import KnotballError, UnknownName
from knotball.models.schemas import CatalogReport, ClaimResult
from knotball.services import iso, knot, moves, recognition, shelling
from knotball.services.algebra import homology
from knotball.services.batch_service import batch_service
from knotball.services.logging_service import logging_service


KNOTTED = ["B3_16_46", "S3_17_74", "B3_12_38", "S3_13_56", "B3_12_37_a", "B3_12_37_b"]
BALLS = ["B3_16_46", "B3_12_38", "B3_12_37_a", "B3_12_37_b"]
SPHERES = ["S3_17_74", "S3_13_56"]
Z3_SYMMETRY = [[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12], [13, 14, 15]]


def names() -> List[str]:
    return catalog_registry.list_names()


@lru_cache(maxsize=None)
def load(name: str) -> SimplicialComplex:
    """
    Catalog complex by name.

    Raises:
        UnknownName: name is not in the registry
    """
    entry = catalog_registry.get_entry(name)
    kind = entry["kind"]
    parts = [load(p) for p in entry.get("parts", [])]
    if kind == "stored":
        return read_cplx(DATA_DIR / entry["file"])
    if kind == "union":
        if entry.get("mixed"):
            return SimplicialComplex.generated_by(
                [F for P in parts for F in P.facets]
            )
        return moves.glue(*parts)
    if kind == "cone_union":
        ball, boundary = parts
        return moves.glue(ball, moves.cone(boundary, entry["apex"]))
    if kind == "minus":
        return moves.remove_facet(parts[0], entry["facet"])
    raise ValueError(f"Catalog entry {name} has unsupported kind {kind}")


def export(name: str, directory: Union[str, Path]) -> Path:
    """Write the entry as canonical .cplx and return the path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{name}.cplx"
    entry = catalog_registry.get_entry(name)
    write_cplx(load(name), path, header=[f"{name}: {entry.get('description', '')}"])
    return path


# ============================================================================
# Claims
# ============================================================================

ClaimCheck = Callable[[], Tuple[bool, str]]


def _sizes(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        C = load(name)
        detail = []
        ok = True
        for key, actual in (("facets", C.n_facets), ("vertices", C.n_vertices), ("dim", C.dim)):
            expected = catalog_registry.expected(name, key)
            if expected is not None:
                detail.append(f"{key}={actual}")
                ok = ok and expected == actual
        return ok, " ".join(detail)
    return check


def _f_vector(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        fv = f_vector(load(name))
        return list(fv.counts) == catalog_registry.expected(name, "f_vector"), str(fv)
    return check


def _shield_split() -> Tuple[bool, str]:
    shield, thick, ball = load("shield9"), load("thickening37"), load("B3_16_46")
    ok = (
        shield.n_facets == 9
        and thick.n_facets == 37
        and not shield.facets & thick.facets
        and shield.facets | thick.facets == ball.facets
    )
    return ok, f"{shield.n_facets}+{thick.n_facets}={ball.n_facets}"


def _complex_c_contractible() -> Tuple[bool, str]:
    H = homology(load("complexC"), reduced=True)
    return H.is_trivial(), f"reduced homology {H}"


def _faces_of(part: str, wholes: List[str]) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        missing = []
        for whole in wholes:
            W = load(whole)
            missing.extend(f"{whole}:{F}" for F in load(part) if not W.is_face(F))
        return not missing, "missing " + ",".join(missing) if missing else f"all in {','.join(wholes)}"
    return check


def _boundary28() -> Tuple[bool, str]:
    B = boundary_complex(load("B3_16_46"))
    return B == load("boundary28"), f"{B.n_facets} boundary triangles"


def _s3_17_74_identity() -> Tuple[bool, str]:
    ball = load("B3_16_46")
    built = moves.glue(ball, moves.cone(boundary_complex(ball), 17))
    return built == load("S3_17_74"), f"{ball.n_facets}+{boundary_complex(ball).n_facets}={built.n_facets}"


def _s3_13_56_identity() -> Tuple[bool, str]:
    S = load("S3_13_56")
    star, rest = star_closed(S, [13]), delete_star(S, [13])
    ok = star == load("star13") and rest == load("B3_12_38") and moves.glue(star, rest) == S
    return ok, f"{rest.n_facets}+{star.n_facets}={S.n_facets}"


def _link13() -> Tuple[bool, str]:
    L = link(load("S3_13_56"), [13])
    ok = recognition.is_sphere2(L) and L.n_vertices == 11 and L.n_facets == 18
    return ok, f"link has {L.n_vertices} vertices, {L.n_facets} triangles, chi={f_vector(L).euler_characteristic}"


def _ball(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        verdict = recognition.verify_ball3(load(name), jobs=1)
        return verdict.yes, f"{verdict.outcome.value} seed={verdict.seed} flips={verdict.accepted_flips}"
    return check


def _sphere(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        verdict = recognition.verify_sphere3(load(name), jobs=1)
        return verdict.yes, f"{verdict.outcome.value} seed={verdict.seed} flips={verdict.accepted_flips}"
    return check


def _free_facets_b3_12_38() -> Tuple[bool, str]:
    report = shelling.classify_facets(load("B3_12_38"), jobs=1)
    ok = report.free == [(2, 4, 5, 7), (3, 4, 6, 10)] and not report.undecided
    return ok, ";".join(" ".join(map(str, F)) for F in report.free) + f" undecided={len(report.undecided)}"


def _strongly_nonshellable(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        report = shelling.classify_facets(load(name), jobs=1)
        return report.strongly_nonshellable, f"{len(report.free)} free, {len(report.undecided)} undecided facets"
    return check


def _knot(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        result = knot.certify_nonconstructible(load(name), jobs=1)
        w = result.witness
        ok = result.status == "certified" and w is not None and tuple(w.cycle) == (1, 2, 3)
        detail = f"cycle={w.cycle} group={w.group}" if w else "no knotted triangle found"
        return ok, detail
    return check


def _knot_edges() -> Tuple[bool, str]:
    edges = load("knot_cycle")
    failing = [n for n in KNOTTED if not moves.knot_preserved(load(n))]
    ok = edges.facets == {frozenset(e) for e in ((1, 2), (1, 3), (2, 3))} and not failing
    return ok, "knot edges present, triangle 123 absent" if ok else f"failing: {','.join(failing)}"


def _non_isomorphic_37() -> Tuple[bool, str]:
    a, b = load("B3_12_37_a"), load("B3_12_37_b")
    balls = iso.are_isomorphic(a, b)
    boundaries = iso.are_isomorphic(boundary_complex(a), boundary_complex(b))
    return (not balls.isomorphic) and boundaries.isomorphic, (
        f"balls isomorphic={balls.isomorphic} boundaries isomorphic={boundaries.isomorphic}"
    )


def _z3(name: str) -> ClaimCheck:
    def check() -> Tuple[bool, str]:
        C = load(name)
        fixes = iso.is_automorphism(C, iso.permutation_from_cycles(Z3_SYMMETRY))
        order = iso.automorphism_group(C).order
        return fixes and order % 3 == 0, f"order={order} permutation_fixes_facets={fixes}"
    return check


CLAIMS: Dict[str, ClaimCheck] = {}
for _name in names():
    CLAIMS[f"size.{_name}"] = _sizes(_name)
for _name in ["B3_16_46", "S3_17_74", "S3_13_56", "B3_12_37_a", "B3_12_37_b"]:
    CLAIMS[f"f_vector.{_name}"] = _f_vector(_name)
CLAIMS.update({
    "shield_split": _shield_split,
    "complexC_contractible": _complex_c_contractible,
    "closing16_in_B3_16_46": _faces_of("closing16", ["B3_16_46"]),
    "closing16_v2_in_S3_13_56": _faces_of("closing16_v2", ["B3_12_38", "S3_13_56"]),
    "boundary28": _boundary28,
    "identity.S3_17_74": _s3_17_74_identity,
    "identity.S3_13_56": _s3_13_56_identity,
    "link13_sphere": _link13,
    "knot_edges": _knot_edges,
})
for _name in BALLS:
    CLAIMS[f"ball.{_name}"] = _ball(_name)
for _name in SPHERES:
    CLAIMS[f"sphere.{_name}"] = _sphere(_name)
CLAIMS["free_facets.B3_12_38"] = _free_facets_b3_12_38
for _name in ["B3_16_46", "B3_12_37_a", "B3_12_37_b"]:
    CLAIMS[f"strongly_nonshellable.{_name}"] = _strongly_nonshellable(_name)
for _name in ["S3_13_56", "S3_17_74", "B3_12_37_a", "B3_12_37_b", "B3_16_46"]:
    CLAIMS[f"knot.{_name}"] = _knot(_name)
CLAIMS["non_isomorphic_37"] = _non_isomorphic_37
for _name in ["B3_16_46", "S3_17_74"]:
    CLAIMS[f"z3_symmetry.{_name}"] = _z3(_name)
del _name


def run_claim(claim_id: str) -> ClaimResult:
    """Evaluate one claim; library errors count as a failed claim."""
    started = time.perf_counter()
    try:
        passed, detail = CLAIMS[claim_id]()
        error = None
    except KnotballError as e:
        passed, detail, error = False, "", f"{type(e).__name__}: {e}"
    elapsed = (time.perf_counter() - started) * 1000
    logging_service.log_claim(claim_id, passed, elapsed, error)
    return ClaimResult(claim=claim_id, passed=passed, detail=detail, elapsed_ms=round(elapsed, 2), error=error)


def verify_catalog(claims: Optional[List[str]] = None, jobs: Optional[int] = None) -> CatalogReport:
    """Check every claim (or the selected ones) and report pass/fail per claim."""
    selected = claims or list(CLAIMS)
    unknown = [c for c in selected if c not in CLAIMS]
    if unknown:
        raise UnknownName(f"Unknown claims: {', '.join(unknown)}")
    results = batch_service.map("claim", [(c,) for c in selected], jobs=jobs)
    return CatalogReport(claims=results)
