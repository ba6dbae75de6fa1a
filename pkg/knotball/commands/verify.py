"""`verify`: certify a complex as a 3-ball, 3-sphere or 4-sphere."""

from knotball.commands.common import OUTCOME_EXIT, Report, budget_header, load_complex
from knotball.config import settings
from knotball.services import recognition


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("verify", parents=parents, help="Recognize balls and spheres")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.add_argument("--as", dest="kind", required=True, choices=["ball3", "sphere3", "sphere4"])
    parser.add_argument("--seed", dest="seeds", type=int, action="append", help="Reduction seed (repeatable)")
    parser.add_argument("--budget", type=int, default=None, help="Accepted flips per seed")
    parser.add_argument("--trace", action="store_true", help="Print the reduction trace")
    parser.set_defaults(handler=handle)


def handle(args, report: Report) -> int:
    C = load_complex(args.file)
    seeds = args.seeds or settings.seeds
    budget = budget_header(report, args.budget, settings.flip_budget)
    report.header("seeds", seeds)
    if args.kind == "ball3":
        verdict = recognition.verify_ball3(C, seeds, budget)
    elif args.kind == "sphere3":
        verdict = recognition.verify_sphere3(C, seeds, budget)
    else:
        verdict = recognition.verify_sphere(C, 4, seeds, budget)
    report.add("as", args.kind)
    report.add_model(verdict)
    report.add("trace_length", len(verdict.trace))
    if args.trace:
        for move in verdict.trace:
            report.line(str(move))
    return OUTCOME_EXIT[verdict.outcome]
