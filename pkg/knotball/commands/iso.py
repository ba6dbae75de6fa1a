"""`iso` and `auts` sub-commands."""

from knotball.commands.common import EXIT_PASS, Report, load_complex
from knotball.services import iso


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("iso", parents=parents, help="Decide combinatorial isomorphism")
    parser.add_argument("file_a", help=".cplx file or catalog name")
    parser.add_argument("file_b", help=".cplx file or catalog name")
    parser.set_defaults(handler=handle_iso)

    parser = subparsers.add_parser("auts", parents=parents, help="Automorphism group order and generators")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.set_defaults(handler=handle_auts)


def handle_iso(args, report: Report) -> int:
    result = iso.are_isomorphic(load_complex(args.file_a), load_complex(args.file_b))
    if report.records:
        report.add_model(result)
    else:
        report.line("isomorphic" if result.isomorphic else "not isomorphic")
        if result.mapping:
            report.line(" ".join(f"{a}->{b}" for a, b in sorted(result.mapping.items())))
    return EXIT_PASS


def _cycles(cycles) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"


def handle_auts(args, report: Report) -> int:
    group = iso.automorphism_group(load_complex(args.file))
    if report.records:
        report.add_model(group)
    else:
        report.add("order", group.order)
        for g in group.generators:
            report.line(_cycles(g))
    return EXIT_PASS
