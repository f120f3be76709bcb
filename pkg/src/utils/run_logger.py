"""
Command run logging and statistics utilities.
"""
from typing import Any, Dict, List, Optional

from .logging import logger


class RunLogger:
    """Class to log CLI command runs and their outcomes."""

    def __init__(self):
        self.runs: List[Dict[str, Any]] = []

    def log_run(self, command: str, status: str, elapsed: Optional[float] = None,
                error: Optional[str] = None):
        """
        Log a command execution.

        Args:
            command (str): The verb and subverb that ran
            status (str): ok, fail or error
            elapsed (float): Wall time in seconds
            error (str): Error code if the run errored
        """
        entry = {
            'command': command,
            'status': status,
            'elapsed': elapsed,
            'error': error,
        }
        self.runs.append(entry)

        if status == 'error':
            logger.error(f"Command failed: {command} | Error: {error}")
        else:
            took = f" in {elapsed:.3f}s" if elapsed is not None else ""
            logger.info(f"Command {command} -> {status}{took}")

    def get_recent_runs(self, limit: int = 10) -> List[Dict[str, Any]]:
        return self.runs[-limit:]

    def clear_history(self):
        self.runs.clear()

    def get_run_stats(self) -> Dict[str, Any]:
        """Get statistics about command runs."""
        if not self.runs:
            return {'total_runs': 0, 'ok': 0, 'fail': 0, 'error': 0, 'avg_elapsed': 0}

        counts = {status: sum(1 for r in self.runs if r['status'] == status)
                  for status in ('ok', 'fail', 'error')}
        times = [r['elapsed'] for r in self.runs if r['elapsed'] is not None]
        return {
            'total_runs': len(self.runs),
            **counts,
            'avg_elapsed': sum(times) / len(times) if times else 0,
        }
