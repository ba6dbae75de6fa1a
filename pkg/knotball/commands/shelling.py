"""`shelling`, `free-facets` and `constructible` sub-commands."""

from knotball.commands.common import (
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_UNKNOWN,
    OUTCOME_EXIT,
    Report,
    budget_header,
    format_face,
    load_complex,
)
from knotball.config import settings
from knotball.services import shelling


SHELLING_EXIT = {"shellable": EXIT_PASS, "not_shellable": EXIT_FAIL, "unknown": EXIT_UNKNOWN}


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("shelling", parents=parents, help="Search for a shelling order")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.add_argument("--budget", type=int, default=None, help="Search node expansions")
    parser.add_argument("--first", default=None, help="Facet to start from, e.g. '1,2,3,4'")
    parser.set_defaults(handler=handle_shelling)

    parser = subparsers.add_parser("free-facets", parents=parents, help="List facets whose removal leaves a ball")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.add_argument("--seed", dest="seeds", type=int, action="append", help="Reduction seed (repeatable)")
    parser.add_argument("--budget", type=int, default=None, help="Accepted flips per seed")
    parser.set_defaults(handler=handle_free_facets)

    parser = subparsers.add_parser("constructible", parents=parents, help="Decide constructibility")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.add_argument("--budget", type=int, default=None, help="Search node expansions")
    parser.set_defaults(handler=handle_constructible)


def handle_shelling(args, report: Report) -> int:
    C = load_complex(args.file)
    budget = budget_header(report, args.budget, settings.shelling_budget)
    first = [int(v) for v in args.first.split(",")] if args.first else None
    result = shelling.find_shelling(C, budget, first)
    report.add_model(result)
    if result.certificate is not None:
        for F in result.certificate.order:
            report.line(format_face(F))
    return SHELLING_EXIT[result.status]


def handle_free_facets(args, report: Report) -> int:
    B = load_complex(args.file)
    seeds = args.seeds or settings.seeds
    budget_header(report, args.budget, settings.flip_budget)
    report.header("seeds", seeds)
    facets = shelling.classify_facets(B, seeds, args.budget)
    report.add("count", len(facets.free))
    report.add("undecided", len(facets.undecided))
    report.add("strongly_nonshellable", facets.strongly_nonshellable)
    if report.records:
        for i, F in enumerate(facets.free):
            report.add(f"free.{i}", list(F))
        for i, F in enumerate(facets.undecided):
            report.add(f"undecided.{i}", list(F))
    for F in facets.free:
        report.line(format_face(F))
    return EXIT_UNKNOWN if facets.undecided else EXIT_PASS


def handle_constructible(args, report: Report) -> int:
    C = load_complex(args.file)
    budget = budget_header(report, args.budget, settings.constructible_budget)
    result = shelling.is_constructible(C, budget)
    report.add_model(result)
    if result.tree is not None:
        report.add("tree_depth", result.tree.depth())
    return OUTCOME_EXIT[result.outcome]
