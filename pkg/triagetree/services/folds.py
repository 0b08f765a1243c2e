"""Stratified k-fold planning."""

import numpy as np

from triagetree.exceptions import UsageError
from triagetree.models.dataset import Dataset, FoldPlan
from triagetree.utils.logger import get_logger
from triagetree.utils.rng import DeterministicRng

logger = get_logger(__name__)


def stratified_kfold(d: Dataset, k: int, rng: DeterministicRng) -> FoldPlan:
    """
    Assign every row to one of k folds, class by class.

    Each class's rows are shuffled with ``rng`` and dealt round-robin; the deal
    continues across classes (class 0 first), so both fold sizes and per-class
    fold counts differ by at most one.

    Args:
        d: Dataset to split
        k: Fold count, 2 <= k <= N
        rng: Stream for the shuffles; its stream_id becomes the repeat id

    Returns:
        FoldPlan

    Raises:
        UsageError: If k is out of range
    """
    if not 2 <= k <= d.n_rows:
        raise UsageError(f"fold count must lie in [2, {d.n_rows}], got {k}")

    assignments = np.empty(d.n_rows, dtype=np.int64)
    offset = 0
    for label, count in enumerate(d.class_counts()):
        if count == 0:
            continue
        if count < k:
            logger.warning(
                f"Class {d.class_names[label]!r} has {count} rows, fewer than "
                f"{k} folds; some folds will not contain it"
            )
        members = rng.permutation(np.flatnonzero(d.labels == label))
        assignments[members] = (offset + np.arange(count)) % k
        offset = (offset + count) % k

    return FoldPlan(k=k, assignments=assignments, repeat_id=rng.stream_id, seed=rng.seed)


def split_by_fold(d: Dataset, plan: FoldPlan, test_fold: int) -> tuple[Dataset, Dataset]:
    """
    Partition ``d`` into (train, test) with ``test_fold`` held out.

    Row order within each part follows ``d``.

    Raises:
        UsageError: If test_fold is out of range or the plan does not fit d
    """
    if not 0 <= test_fold < plan.k:
        raise UsageError(f"test fold must lie in [0, {plan.k}), got {test_fold}")
    if plan.assignments.shape[0] != d.n_rows:
        raise UsageError(
            f"fold plan covers {plan.assignments.shape[0]} rows, dataset has {d.n_rows}"
        )
    held_out = plan.assignments == test_fold
    return d.subset(np.flatnonzero(~held_out)), d.subset(np.flatnonzero(held_out))
