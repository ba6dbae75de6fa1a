"""
Task runner for batch jobs.

Every task is a module-level callable looked up by name, so it can be
shipped to a pool process by name and argument tuple. Tasks inside a
worker always run single-process.
"""

from typing import Any, Callable, Dict


def _vertex_link(C, v):
    from knotball.services.recognition import vertex_link_status
    return vertex_link_status(C, v)


def _sphere3(C, seeds, budget):
    from knotball.services.recognition import verify_sphere3
    return verify_sphere3(C, seeds=seeds, budget=budget, jobs=1)


def _ball3(C, seeds, budget):
    from knotball.services.recognition import verify_ball3
    return verify_ball3(C, seeds=seeds, budget=budget, jobs=1)


def _knot_candidate(S, cycle, groups):
    from knotball.services.knot import try_candidate
    return try_candidate(S, cycle, groups)


def _claim(claim_id):
    from knotball.services.catalog import run_claim
    return run_claim(claim_id)


TASKS: Dict[str, Callable[..., Any]] = {
    "vertex_link": _vertex_link,
    "sphere3": _sphere3,
    "ball3": _ball3,
    "knot_candidate": _knot_candidate,
    "claim": _claim,
}


def process_task(task_name: str, payload: tuple) -> Any:
    """
    Run a single registered task.

    Args:
        task_name: Key in TASKS
        payload: Positional arguments for the task
    """
    task = TASKS.get(task_name)
    if task is None:
        raise KeyError(f"Unknown batch task: {task_name}")
    return task(*payload)
