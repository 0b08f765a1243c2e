"""CSV ingestion of numeric classification datasets."""

from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from triagetree.exceptions import DataError
from triagetree.models.dataset import Dataset
from triagetree.utils.logger import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def _read_cells(path: Path) -> pd.DataFrame:
    """Read every cell as a string; the first row is the header."""
    try:
        frame = pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            encoding="utf-8",
        )
    except FileNotFoundError:
        raise DataError(f"dataset file not found: {path}") from None
    except pd.errors.EmptyDataError:
        raise DataError(f"dataset file is empty: {path}") from None
    except pd.errors.ParserError as e:
        raise DataError(f"{path}: inconsistent column count ({e})") from None
    except UnicodeDecodeError as e:
        raise DataError(f"{path}: not valid UTF-8 ({e})") from None
    return frame


def load_csv(path: PathLike, label_column: Optional[str] = None) -> Dataset:
    """
    Load a numeric CSV dataset.

    Class indices follow the order in which label values first appear.

    Args:
        path: UTF-8, comma-separated file with one header row
        label_column: Name of the label column (default: the last column)

    Returns:
        Dataset named after the file stem

    Raises:
        DataError: Missing/empty file, ragged rows, empty or non-numeric cells
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"dataset file not found: {path}")

    cells = _read_cells(path)
    header = [str(name).strip() for name in cells.iloc[0]]
    body = cells.iloc[1:].reset_index(drop=True)
    if body.empty:
        raise DataError(f"{path}: header row but no data rows")
    if len(set(header)) != len(header):
        raise DataError(f"{path}: duplicate column names in header")
    if len(header) < 2:
        raise DataError(f"{path}: need at least one feature column and a label column")

    # Padding of short rows; genuinely empty cells stay "" and are reported below.
    ragged = body.isna().any(axis=1)
    if ragged.any():
        line = int(np.flatnonzero(ragged.to_numpy())[0]) + 2
        raise DataError(f"{path}: line {line} has fewer than {len(header)} columns")

    if label_column is None:
        label_position = len(header) - 1
    elif label_column in header:
        label_position = header.index(label_column)
    else:
        raise DataError(f"{path}: label column {label_column!r} not in header {header}")

    body = body.apply(lambda column: column.str.strip())
    feature_positions = [i for i in range(len(header)) if i != label_position]
    features = np.empty((len(body), len(feature_positions)), dtype=np.float64)

    for out, position in enumerate(feature_positions):
        raw = body.iloc[:, position]
        values = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=np.float64)
        bad = ~np.isfinite(values)
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            cell = raw.iloc[row]
            problem = "missing value" if cell == "" else f"non-numeric value {cell!r}"
            raise DataError(
                f"{path}: {problem} at line {row + 2}, column {header[position]!r}"
            )
        features[:, out] = values

    raw_labels = body.iloc[:, label_position]
    empty = (raw_labels == "").to_numpy()
    if empty.any():
        row = int(np.flatnonzero(empty)[0])
        raise DataError(
            f"{path}: missing value at line {row + 2}, column {header[label_position]!r}"
        )
    codes, uniques = pd.factorize(raw_labels, sort=False)

    dataset = Dataset(
        features=features,
        labels=codes.astype(np.int64),
        feature_names=tuple(header[i] for i in feature_positions),
        class_names=tuple(str(u) for u in uniques),
        name=path.stem,
    )
    logger.info(
        f"Loaded {path}: {dataset.n_rows} rows, {dataset.n_features} features, "
        f"{dataset.n_classes} classes"
    )
    return dataset


def write_csv(d: Dataset, path: PathLike, label_column: str = "label") -> None:
    """Write ``d`` in the format load_csv reads (labels as class names, last column)."""
    frame = pd.DataFrame(d.features, columns=list(d.feature_names))
    frame[label_column] = [d.class_names[i] for i in d.labels]
    frame.to_csv(path, index=False, float_format="%.17g")
