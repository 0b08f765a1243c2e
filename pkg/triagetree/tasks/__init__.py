"""Parallel job execution"""

from triagetree.tasks.pool import run_parallel

__all__ = ["run_parallel"]
