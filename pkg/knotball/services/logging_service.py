"""
Logging service for searches, reductions and catalog claims.

Log records go to stderr as JSON so that report output on stdout stays
byte-identical between runs.
"""

import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Optional, Sequence

from pythonjsonlogger import jsonlogger


logger = logging.getLogger("knotball")


def configure_logging(level: str = "WARNING", json_format: bool = True) -> None:
    """Install a single stderr handler on the package logger."""
    handler = logging.StreamHandler(sys.stderr)
    if json_format:
        handler.setFormatter(
            jsonlogger.JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s")
        )
    else:
        handler.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    for old in list(logger.handlers):
        logger.removeHandler(old)
    logger.addHandler(handler)
    logger.setLevel(level.upper())
    logger.propagate = False


class LoggingService:
    """Structured event logging for long-running computations."""

    def __init__(self):
        self.logger = logger

    def log_search(
        self,
        kind: str,
        verdict: str,
        expansions: int,
        budget: int,
        facets: Optional[int] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ):
        """
        Log the end of a budgeted combinatorial search.

        Args:
            kind: Search kind (shelling, constructibility, collapse)
            verdict: Reported outcome
            expansions: Search nodes expanded
            budget: Node budget the search ran under
            facets: Facet count of the input
            metadata: Additional context
        """
        level = logging.WARNING if verdict == "unknown" else logging.INFO
        self.logger.log(level, "search_finished", extra={
            "event": "search_finished",
            "kind": kind,
            "verdict": verdict,
            "expansions": expansions,
            "budget": budget,
            "facets": facets,
            "metadata": metadata,
            "timestamp": _now(),
        })

    def log_reduction(
        self,
        seed: int,
        accepted: int,
        proposals: int,
        restarts: int,
        start: Sequence[int],
        end: Sequence[int],
        frozen: int = 0,
    ):
        """
        Log a finished bistellar reduction run.

        Args:
            seed: Master seed of the run
            accepted: Accepted flips
            proposals: Proposed flips
            restarts: Reheats after stalls
            start: Initial f-vector
            end: Best f-vector reached
            frozen: Number of frozen faces
        """
        self.logger.info("reduction_finished", extra={
            "event": "reduction_finished",
            "seed": seed,
            "accepted": accepted,
            "proposals": proposals,
            "restarts": restarts,
            "start_f_vector": list(start),
            "end_f_vector": list(end),
            "frozen": frozen,
            "timestamp": _now(),
        })

    def log_claim(self, claim: str, passed: bool, elapsed_ms: float, error: Optional[str] = None):
        level = logging.INFO if passed else logging.ERROR
        self.logger.log(level, "claim_checked", extra={
            "event": "claim_checked",
            "claim": claim,
            "passed": passed,
            "elapsed_ms": round(elapsed_ms, 2),
            "error": error,
            "timestamp": _now(),
        })

    def log_batch(
        self,
        batch_id: str,
        event: str,
        task_count: int,
        jobs: int,
        completed_count: Optional[int] = None,
        failed_count: Optional[int] = None,
        error: Optional[str] = None,
    ):
        """
        Log a batch event.

        Args:
            batch_id: Batch identifier
            event: Event type (submitted/completed/failed)
            task_count: Number of tasks in batch
            jobs: Worker processes used
            completed_count: Number of completed tasks
            failed_count: Number of failed tasks
            error: Error message if failed
        """
        self.logger.info(f"batch_{event}", extra={
            "event": f"batch_{event}",
            "batch_id": batch_id,
            "task_count": task_count,
            "jobs": jobs,
            "completed_count": completed_count,
            "failed_count": failed_count,
            "error": error,
            "timestamp": _now(),
        })


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


# Global logging service instance
logging_service = LoggingService()
