"""SMOTE oversampling of the minority class of a two-class dataset."""

import logging
from pathlib import Path
from typing import NamedTuple, Sequence, Union

import numpy as np
import pandas as pd

from triagetree.exceptions import DataError, UsageError
from triagetree.models.dataset import Dataset
from triagetree.schemas.params import SmoteParams
from triagetree.utils.logger import get_logger
from triagetree.utils.rng import DeterministicRng

logger = get_logger(__name__)

# Upper bound on elements of one pairwise-difference block.
_BLOCK_ELEMENTS = 1 << 22


class SyntheticRow(NamedTuple):
    """Provenance of one synthetic row: parent + lam * (neighbor - parent)."""

    row: int
    parent: int
    neighbor: int
    lam: float


class SmoteResult(NamedTuple):
    dataset: Dataset
    provenance: tuple[SyntheticRow, ...]


def _squared_distances(rows: np.ndarray, queries: np.ndarray) -> np.ndarray:
    diff = queries[:, np.newaxis, :] - rows[np.newaxis, :, :]
    return np.sum(diff * diff, axis=2)


def _nearest(distances: np.ndarray, query_indices: np.ndarray, k: int) -> np.ndarray:
    distances[np.arange(query_indices.shape[0]), query_indices] = np.inf
    # Stable sort keeps equidistant rows in index order.
    return np.argsort(distances, axis=1, kind="stable")[:, :k]


def k_nearest_minority(rows: np.ndarray, query_index: int, k: int) -> np.ndarray:
    """
    Indices of the k rows closest (Euclidean) to ``rows[query_index]``.

    Args:
        rows: Minority-class feature rows
        query_index: Row whose neighbours are wanted (never returned itself)
        k: Neighbour count, 1 <= k <= len(rows) - 1

    Returns:
        k row indices, nearest first, distance ties broken by lower index

    Raises:
        UsageError: If k or query_index is out of range
    """
    rows = np.asarray(rows, dtype=np.float64)
    if not 1 <= k <= rows.shape[0] - 1:
        raise UsageError(f"k must lie in [1, {rows.shape[0] - 1}], got {k}")
    if not 0 <= query_index < rows.shape[0]:
        raise UsageError(f"query_index {query_index} out of range")
    query = np.array([query_index])
    return _nearest(_squared_distances(rows, rows[query]), query, k)[0]


def _neighbor_table(rows: np.ndarray, k: int) -> np.ndarray:
    """k_nearest_minority for every row, computed block by block."""
    n_rows = rows.shape[0]
    block = max(1, _BLOCK_ELEMENTS // max(1, n_rows * rows.shape[1]))
    table = np.empty((n_rows, k), dtype=np.intp)
    for start in range(0, n_rows, block):
        queries = np.arange(start, min(start + block, n_rows))
        table[queries] = _nearest(_squared_distances(rows, rows[queries]), queries, k)
    return table


def smote_oversample(d: Dataset, params: SmoteParams, rng: DeterministicRng) -> SmoteResult:
    """
    Append synthetic minority rows until both classes have equal counts.

    Each synthetic row is x + lam * (x_nn - x) for a uniformly drawn minority
    row x, one of its k nearest minority neighbours x_nn drawn uniformly, and
    lam uniform in [0, 1). With k_eff = min(k_neighbors, m - 1); a single
    minority row is duplicated. Original rows keep their positions.

    Args:
        d: Dataset with exactly two classes, both present
        params: SMOTE parameters
        rng: Stream used for the draws

    Returns:
        Balanced dataset plus per-row provenance

    Raises:
        UsageError: If d does not have exactly two classes
        DataError: If one of the two classes has no rows
    """
    if d.n_classes != 2:
        raise UsageError(f"SMOTE balancing needs exactly 2 classes, got {d.n_classes}")
    counts = d.class_counts()
    if np.count_nonzero(counts) < 2:
        raise DataError(
            f"SMOTE balancing needs both classes present, got counts {counts.tolist()}"
        )

    minority = int(np.argmin(counts))
    n_new = int(counts.max() - counts.min())
    if n_new == 0:
        return SmoteResult(d, ())

    minority_rows = np.flatnonzero(d.labels == minority)
    X_min = d.features[minority_rows]
    n_minority = minority_rows.shape[0]

    if n_minority == 1:
        parent_pos = np.zeros(n_new, dtype=np.intp)
        neighbor_pos = parent_pos
        lam = np.zeros(n_new)
        synthetic = np.repeat(X_min, n_new, axis=0)
    else:
        k = min(params.k_neighbors, n_minority - 1)
        table = _neighbor_table(X_min, k)
        draws = rng.integers(0, n_minority * k, size=n_new)
        parent_pos = draws // k
        neighbor_pos = table[parent_pos, draws % k]
        lam = rng.random(n_new)
        base = X_min[parent_pos]
        synthetic = base + lam[:, np.newaxis] * (X_min[neighbor_pos] - base)

    provenance = tuple(
        SyntheticRow(d.n_rows + i, int(parent), int(neighbor), float(weight))
        for i, (parent, neighbor, weight) in enumerate(
            zip(minority_rows[parent_pos], minority_rows[neighbor_pos], lam)
        )
    )
    if logger.isEnabledFor(logging.DEBUG):
        for record in provenance:
            logger.debug(
                f"SMOTE row {record.row}: parent={record.parent} "
                f"neighbor={record.neighbor} lam={record.lam!r}"
            )

    balanced = Dataset(
        features=np.vstack([d.features, synthetic]),
        labels=np.concatenate([d.labels, np.full(n_new, minority, dtype=np.int64)]),
        feature_names=d.feature_names,
        class_names=d.class_names,
        name=d.name,
    )
    logger.info(
        f"SMOTE added {n_new} synthetic '{d.class_names[minority]}' rows "
        f"from {n_minority} originals"
    )
    return SmoteResult(balanced, provenance)


def smote_balance(d: Dataset, params: SmoteParams, rng: DeterministicRng) -> Dataset:
    """smote_oversample without the provenance records."""
    return smote_oversample(d, params, rng).dataset


def write_provenance_csv(
    provenance: Sequence[SyntheticRow], path: Union[str, Path]
) -> None:
    """Write synthetic-row provenance as CSV (row, parent, neighbor, lam)."""
    frame = pd.DataFrame(list(provenance), columns=list(SyntheticRow._fields))
    frame.to_csv(path, index=False)
