"""
`construct`: cones, one-point suspensions and the higher-dimensional families.

The result is written as canonical .cplx text with the construction echoed in
comment lines, so the output can be fed straight back into `info`.
"""

from knotball.commands.common import EXIT_PASS, Report, load_complex
from knotball.models.complex import f_vector
from knotball.services import moves


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("construct", help="Build complexes")
    kinds = parser.add_subparsers(dest="construction", required=True)

    cone = kinds.add_parser("cone", parents=parents, help="Cone from a fresh apex")
    cone.add_argument("file", help=".cplx file or catalog name")
    cone.add_argument("--apex", type=int, default=None, help="Apex label (default: max vertex + 1)")
    cone.set_defaults(handler=handle_cone)

    ops = kinds.add_parser("ops", parents=parents, help="One-point suspension over a vertex")
    ops.add_argument("file", help=".cplx file or catalog name")
    ops.add_argument("--vertex", type=int, required=True)
    ops.add_argument("--fresh", type=int, default=None, help="New vertex label (default: max vertex + 1)")
    ops.set_defaults(handler=handle_ops)

    for kind in ("sphere", "ball"):
        family = kinds.add_parser(f"family-{kind}", parents=parents, help=f"Non-constructible {kind} in dimension d")
        family.add_argument("--dim", type=int, required=True)
        family.set_defaults(handler=handle_family, family=kind)


def _emit(report: Report, C, description: str) -> int:
    report.header("construction", description)
    report.header("f_vector", str(f_vector(C)))
    report.payload.extend(C.to_cplx().splitlines())
    return EXIT_PASS


def handle_cone(args, report: Report) -> int:
    C = load_complex(args.file)
    apex = args.apex if args.apex is not None else max(C.vertices) + 1
    return _emit(report, moves.cone(C, apex), f"cone apex={apex}")


def handle_ops(args, report: Report) -> int:
    C = load_complex(args.file)
    fresh = args.fresh if args.fresh is not None else max(C.vertices) + 1
    result = moves.one_point_suspension(C, args.vertex, fresh)
    return _emit(report, result, f"one-point suspension vertex={args.vertex} fresh={fresh}")


def handle_family(args, report: Report) -> int:
    if args.family == "sphere":
        C = moves.family_sphere(args.dim)
    else:
        C = moves.family_ball(args.dim)
    member = moves.describe_family(args.family, args.dim, C)
    report.header("family", args.family)
    report.header("dim", member.dim)
    report.header("vertices", member.vertices)
    report.header("facets", member.facets)
    report.header("non_constructible", member.non_constructible)
    report.header("knot_cycle", list(member.knot_cycle))
    return _emit(report, C, f"family-{args.family} d={args.dim}")
