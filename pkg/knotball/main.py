"""
knotball - command-line entry point.
"""

import argparse
import sys
from typing import List, Optional

from knotball import __version__
from knotball.commands import catalog, construct, info, iso, knot, reduce, shelling, verify
from knotball.commands.common import EXIT_USAGE, Report, common_options
from knotball.config import apply_overrides, settings
from knotball.models.errors import KnotballError
from knotball.services.logging_service import configure_logging, logging_service


COMMANDS = [info, verify, shelling, knot, construct, reduce, iso, catalog]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotball",
        description="Construct and certify non-constructible simplicial balls and spheres.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_options()]
    for command in COMMANDS:
        command.register(subparsers, parents)
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.groups:
        overrides["knot_groups"] = [g.strip() for g in args.groups.split(",") if g.strip()]
    if args.log_level:
        overrides["log_level"] = args.log_level.upper()
    return overrides


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run one sub-command and print its report.

    Returns the exit code: 0 pass, 1 a check failed, 2 usage or input error,
    3 a search ran out of budget.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    snapshot = settings.model_dump()
    try:
        apply_overrides(**_overrides(args))
        configure_logging(settings.log_level, settings.log_json)
        report = Report(args.format)
        code = args.handler(args, report)
    except (KnotballError, ValueError) as e:
        logging_service.logger.error("command_failed", extra={"event": "command_failed", "error": str(e)})
        print(f"knotball: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"knotball: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        apply_overrides(**snapshot)

    text = report.render()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
