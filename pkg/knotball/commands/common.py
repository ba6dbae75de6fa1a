"""
Shared pieces of the sub-commands: exit codes, input loading and the report
that every handler fills in.
"""

import argparse
from pathlib import Path
from typing import Any, Iterable, List, Optional, Tuple

from pydantic import BaseModel

from knotball.config import catalog_registry
from knotball.models.complex import SimplicialComplex, read_cplx
from knotball.models.errors import UnknownName
from knotball.models.schemas import Outcome, to_records
from knotball.services import catalog


EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

OUTCOME_EXIT = {Outcome.YES: EXIT_PASS, Outcome.NO: EXIT_FAIL, Outcome.UNKNOWN: EXIT_UNKNOWN}


def common_options() -> argparse.ArgumentParser:
    """Options accepted by every sub-command."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=["text", "records"], default="text")
    parent.add_argument("--log-level", default=None, help="Override the configured log level")
    parent.add_argument("--jobs", type=int, default=None, help="Worker processes for batch checks")
    parent.add_argument("--groups", default=None, help="Comma-separated target groups for knot certificates")
    parent.add_argument("--output", default=None, help="Write the report to a file instead of stdout")
    return parent


def load_complex(source: str) -> SimplicialComplex:
    """
    A .cplx path, or the name of a catalog entry when no such file exists.

    Raises:
        UnknownName: neither an existing file nor a catalog name
    """
    path = Path(source)
    if path.is_file():
        return read_cplx(path)
    if catalog_registry.is_valid_name(source):
        return catalog.load(source)
    raise UnknownName(f"No such file or catalog entry: {source}")


def format_face(F: Iterable[int]) -> str:
    return " ".join(str(v) for v in F)


class Report:
    """Ordered key/value lines, rendered as text or as key=value records."""

    def __init__(self, fmt: str = "text"):
        self.fmt = fmt
        self.headers: List[Tuple[str, Any]] = []
        self.entries: List[Tuple[str, Any]] = []
        self.body: List[str] = []
        self.payload: List[str] = []

    @property
    def records(self) -> bool:
        return self.fmt == "records"

    def header(self, key: str, value: Any) -> None:
        self.headers.append((key, value))

    def add(self, key: str, value: Any) -> None:
        self.entries.append((key, value))

    def add_model(self, model: BaseModel, prefix: str = "") -> None:
        for line in to_records(model, prefix):
            key, _, value = line.partition("=")
            self.entries.append((key, value))

    def line(self, text: str) -> None:
        """Free text, printed after the entries in text mode only."""
        self.body.append(text)

    def render(self) -> str:
        lines = [f"# {k}={_value(v)}" for k, v in self.headers]
        sep = "=" if self.records else ": "
        lines.extend(f"{k}{sep}{_value(v)}" for k, v in self.entries)
        if not self.records:
            lines.extend(self.body)
        lines.extend(self.payload)
        return "\n".join(lines) + "\n" if lines else ""


def _value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_value(v) for v in value) + "]"
    if value is None:
        return ""
    return str(value)


def budget_header(report: Report, budget: Optional[int], default: int) -> int:
    """Echo the effective budget and return it."""
    effective = budget or default
    report.header("budget", effective)
    return effective
