"""`knot`: search for a knotted empty triangle and report the certificate."""

from knotball.commands.common import EXIT_PASS, EXIT_UNKNOWN, Report, load_complex
from knotball.config import settings
from knotball.services import knot


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("knot", parents=parents, help="Certify non-constructibility by a knotted triangle")
    parser.add_argument("file", help=".cplx file or catalog name")
    parser.set_defaults(handler=handle)


def handle(args, report: Report) -> int:
    C = load_complex(args.file)
    report.header("groups", settings.knot_groups)
    report.header("generator_cap", settings.hom_generator_cap)
    result = knot.certify_nonconstructible(C, settings.knot_groups)
    report.add_model(result)
    if result.witness is not None:
        report.add("witness.presentation_text", str(result.witness.presentation))
        report.add("witness.verified", knot.verify_witness(result.witness))
    # No certificate does not make the complex constructible.
    return EXIT_PASS if result.status == "certified" else EXIT_UNKNOWN
