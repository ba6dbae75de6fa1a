"""`catalog list|export|verify`."""

from knotball.commands.common import EXIT_FAIL, EXIT_PASS, Report
from knotball.config import catalog_registry
from knotball.models.complex import f_vector
from knotball.services import catalog


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("catalog", help="Named complexes and their documented claims")
    actions = parser.add_subparsers(dest="action", required=True)

    listing = actions.add_parser("list", parents=parents, help="List catalog entries")
    listing.set_defaults(handler=handle_list)

    export = actions.add_parser("export", parents=parents, help="Write entries as canonical .cplx files")
    export.add_argument("names", nargs="*", help="Entries to export (default: all)")
    export.add_argument("--directory", default=".", help="Target directory")
    export.set_defaults(handler=handle_export)

    verify = actions.add_parser("verify", parents=parents, help="Check every documented claim")
    verify.add_argument("--claim", dest="claims", action="append", help="Restrict to one claim (repeatable)")
    verify.add_argument("--list-claims", action="store_true", help="Only list claim ids")
    verify.set_defaults(handler=handle_verify)


def handle_list(args, report: Report) -> int:
    for name in catalog.names():
        entry = catalog_registry.get_entry(name)
        if report.records:
            report.add(f"{name}.kind", entry["kind"])
            report.add(f"{name}.description", entry.get("description", ""))
        else:
            report.line(f"{name:<14} {entry.get('description', '')}")
    return EXIT_PASS


def handle_export(args, report: Report) -> int:
    for name in args.names or catalog.names():
        path = catalog.export(name, args.directory)
        report.add(name, f"{path} f_vector={f_vector(catalog.load(name))}")
    return EXIT_PASS


def handle_verify(args, report: Report) -> int:
    if args.list_claims:
        for claim in catalog.CLAIMS:
            if report.records:
                report.add("claim", claim)
            else:
                report.line(claim)
        return EXIT_PASS
    result = catalog.verify_catalog(args.claims)
    for claim in result.claims:
        if report.records:
            report.add_model(claim, prefix=f"{claim.claim}.")
        else:
            mark = "PASS" if claim.passed else "FAIL"
            report.line(f"{mark} {claim.claim}: {claim.error or claim.detail}")
    report.add("passed", result.passed)
    report.add("failed", result.failed_count)
    return EXIT_PASS if result.passed else EXIT_FAIL
