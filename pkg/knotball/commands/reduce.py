"""`reduce`: annealed bistellar reduction with optional frozen faces."""

from knotball.commands.common import EXIT_PASS, Report, budget_header, load_complex
from knotball.config import settings
from knotball.models.complex import write_cplx
from knotball.services import bistellar


def _face_arg(text: str):
    return tuple(int(v) for v in text.replace(",", " ").split())


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("reduce", parents=parents, help="Reduce by bistellar flips")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.add_argument("--freeze", type=_face_arg, action="append", default=[],
                        help="Face that must survive, e.g. '1,2' (repeatable)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--budget", type=int, default=None, help="Accepted flips")
    parser.add_argument("--trace", default=None, help="Write the move trace to this path")
    parser.add_argument("--result", default=None, help="Write the reduced complex as .cplx to this path")
    parser.set_defaults(handler=handle)


def handle(args, report: Report) -> int:
    C = load_complex(args.file)
    seed = args.seed if args.seed is not None else settings.seeds[0]
    budget = budget_header(report, args.budget, settings.flip_budget)
    report.header("seed", seed)
    report.header("frozen", [list(f) for f in args.freeze])
    result = bistellar.reduce(C, frozen=args.freeze, seed=seed, budget=budget)
    report.add_model(result)
    report.add("checkpoints", len(result.checkpoints))
    if args.trace:
        bistellar.write_trace(result, args.trace)
        report.add("trace_file", args.trace)
    if args.result:
        write_cplx(result.complex, args.result, [f"reduced seed={seed} f_vector={list(result.final_f_vector)}"])
        report.add("result_file", args.result)
    return EXIT_PASS
