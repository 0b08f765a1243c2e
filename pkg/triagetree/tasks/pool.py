"""Parallel execution of independent jobs."""

from typing import Callable, Iterable, TypeVar

from joblib import Parallel, delayed

from triagetree.utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_parallel(fn: Callable[[T], R], items: Iterable[T], n_jobs: int = 1) -> list[R]:
    """
    Apply ``fn`` to every item, preserving input order.

    Jobs must own their randomness (one RNG stream each) so that the
    result does not depend on ``n_jobs`` or on scheduling.

    Args:
        fn: Picklable function of one argument
        items: Job inputs
        n_jobs: joblib worker count; 1 runs inline, -1 uses every core

    Returns:
        Results in input order
    """
    items = list(items)
    if n_jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]

    logger.debug(f"Dispatching {len(items)} jobs to {n_jobs} workers")
    return Parallel(n_jobs=n_jobs)(delayed(fn)(item) for item in items)
