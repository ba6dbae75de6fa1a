"""
Batch job management service using a process pool.
"""

import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence

from knotball.config import settings
from knotball.services.logging_service import logging_service
from workers.batch_worker import process_task


class BatchService:
    """Service for running independent tasks (claims, links, candidates)."""

    def __init__(self):
        self._jobs: Dict[str, Dict[str, Any]] = {}

    def submit_batch_job(
        self,
        task_name: str,
        payloads: Sequence[tuple],
        metadata: Optional[Dict[str, Any]] = None,
    ) -> str:
        """
        Register a new batch job.

        Args:
            task_name: Registered worker task
            payloads: One argument tuple per task
            metadata: Optional job metadata

        Returns:
            Job ID
        """
        job_id = f"batch-{uuid.uuid4().hex[:12]}"
        self._jobs[job_id] = {
            "job_id": job_id,
            "status": "queued",
            "task_name": task_name,
            "payloads": list(payloads),
            "metadata": metadata or {},
            "submitted_at": time.time(),
            "started_at": None,
            "completed_at": None,
            "task_count": len(payloads),
            "completed_count": 0,
            "failed_count": 0,
            "error": None,
        }
        return job_id

    def get_job_status(self, job_id: str) -> Optional[Dict[str, Any]]:
        return self._jobs.get(job_id)

    def update_job_status(
        self,
        job_id: str,
        status: str,
        completed_count: Optional[int] = None,
        error: Optional[str] = None,
    ):
        """
        Update the status of a batch job.

        Args:
            job_id: Job identifier
            status: New status
            completed_count: Tasks finished so far
            error: Error message (if failed)
        """
        job_data = self._jobs.get(job_id)
        if not job_data:
            return
        job_data["status"] = status
        if status == "processing" and not job_data["started_at"]:
            job_data["started_at"] = time.time()
        if status in ("completed", "failed"):
            job_data["completed_at"] = time.time()
        if completed_count is not None:
            job_data["completed_count"] = completed_count
        if error:
            job_data["error"] = error
            job_data["failed_count"] = job_data["task_count"] - job_data["completed_count"]

    def run_job(self, job_id: str, jobs: int = 1) -> List[Any]:
        """
        Run every task of a job and return results in submission order.

        Tasks run inline when jobs == 1 and in a process pool otherwise.
        The first task exception is re-raised after the job is marked failed.
        """
        job = self._jobs[job_id]
        name, payloads = job["task_name"], job["payloads"]
        self.update_job_status(job_id, "processing")
        results: List[Any] = []
        try:
            if jobs <= 1 or len(payloads) <= 1:
                for payload in payloads:
                    results.append(process_task(name, payload))
            else:
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    futures = [pool.submit(process_task, name, p) for p in payloads]
                    for future in futures:
                        results.append(future.result())
        except Exception as e:
            self.update_job_status(job_id, "failed", completed_count=len(results), error=str(e))
            logging_service.log_batch(
                job_id, "failed", len(payloads), jobs,
                completed_count=len(results), failed_count=len(payloads) - len(results), error=str(e),
            )
            raise
        self.update_job_status(job_id, "completed", completed_count=len(results))
        logging_service.log_batch(job_id, "completed", len(payloads), jobs, completed_count=len(results))
        return results

    def map(self, task_name: str, payloads: Sequence[tuple], jobs: Optional[int] = None) -> List[Any]:
        """Submit and run a job in one call."""
        job_id = self.submit_batch_job(task_name, payloads)
        try:
            return self.run_job(job_id, jobs or settings.jobs)
        finally:
            self._jobs.pop(job_id, None)


# Global batch service instance
batch_service = BatchService()
