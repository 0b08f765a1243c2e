"""Helper utility functions."""

from typing import Sequence

import numpy as np

from triagetree.exceptions import DataError


def as_feature_vector(x: Sequence[float], n_features: int) -> np.ndarray:
    """
    Validate a single input row.

    Args:
        x: Feature values
        n_features: Expected dimension

    Returns:
        1-D float64 array

    Raises:
        DataError: On dimension mismatch or non-finite values
    """
    row = np.asarray(x, dtype=np.float64).reshape(-1)
    if row.shape[0] != n_features:
        raise DataError(f"expected {n_features} feature values, got {row.shape[0]}")
    if not np.all(np.isfinite(row)):
        raise DataError("feature values must be finite")
    return row


def as_feature_matrix(X, n_features: int) -> np.ndarray:
    """Validate a batch of input rows (same rules as as_feature_vector)."""
    matrix = np.asarray(X, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    if matrix.ndim != 2 or matrix.shape[1] != n_features:
        raise DataError(
            f"expected rows with {n_features} feature values, got shape {matrix.shape}"
        )
    if not np.all(np.isfinite(matrix)):
        raise DataError("feature values must be finite")
    return matrix


def format_percent(fraction: float, digits: int = 2) -> str:
    """Render a fraction as a percentage string, e.g. 0.9542 -> '95.42'."""
    return f"{fraction * 100:.{digits}f}"


def parse_float_list(text: str) -> list[float]:
    """
    Parse comma-separated numbers.

    Args:
        text: e.g. "1.5,2,-0.25"

    Returns:
        List of floats

    Raises:
        DataError: If any item is not a number
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    values = []
    for position, item in enumerate(items):
        try:
            values.append(float(item))
        except ValueError:
            raise DataError(f"value {position} ({item!r}) is not a number") from None
    return values
