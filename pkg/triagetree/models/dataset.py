"""Dataset and fold-plan entities."""

from dataclasses import dataclass, field

import numpy as np

from triagetree.exceptions import DataError


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Dataset:
    """Numeric feature matrix with integer class labels in [0, C)."""

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    class_names: tuple[str, ...]
    name: str = field(default="dataset", compare=False)

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels)

        if features.ndim != 2:
            raise DataError(f"features must be a 2-D matrix, got {features.ndim}-D")
        n_rows, n_features = features.shape
        if n_rows < 1 or n_features < 1:
            raise DataError(f"dataset needs N >= 1 and P >= 1, got {features.shape}")
        if labels.shape != (n_rows,):
            raise DataError(f"labels must have length {n_rows}, got shape {labels.shape}")
        if not np.all(np.isfinite(features)):
            raise DataError("features contain NaN or infinite values")
        if len(self.feature_names) != n_features:
            raise DataError(
                f"{len(self.feature_names)} feature names for {n_features} features"
            )
        if len(self.class_names) < 1:
            raise DataError("dataset needs at least one class name")
        if labels.size and not np.issubdtype(labels.dtype, np.integer):
            raise DataError(f"labels must be integers, got dtype {labels.dtype}")
        labels = labels.astype(np.int64)
        if labels.min() < 0 or labels.max() >= len(self.class_names):
            raise DataError(
                f"labels must lie in [0, {len(self.class_names)}), "
                f"got range [{labels.min()}, {labels.max()}]"
            )

        object.__setattr__(self, "features", _frozen(features))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "feature_names", tuple(str(n) for n in self.feature_names))
        object.__setattr__(self, "class_names", tuple(str(n) for n in self.class_names))

    def __repr__(self):
        return (
            f"<Dataset(name={self.name}, n_rows={self.n_rows}, "
            f"n_features={self.n_features}, n_classes={self.n_classes})>"
        )

    @property
    def n_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_classes)

    def subset(self, rows) -> "Dataset":
        """Rows selected (and possibly repeated) by index, in the given order."""
        rows = np.asarray(rows, dtype=np.intp)
        return Dataset(
            features=self.features[rows],
            labels=self.labels[rows],
            feature_names=self.feature_names,
            class_names=self.class_names,
            name=self.name,
        )

    def with_labels(self, labels, class_names) -> "Dataset":
        """Same features under a different labelling."""
        return Dataset(
            features=self.features,
            labels=labels,
            feature_names=self.feature_names,
            class_names=tuple(class_names),
            name=self.name,
        )


@dataclass(frozen=True, eq=False)
class FoldPlan:
    """Assignment of every dataset row to one of k folds."""

    k: int
    assignments: np.ndarray
    repeat_id: int
    seed: int

    def __post_init__(self):
        assignments = np.asarray(self.assignments, dtype=np.int64)
        if assignments.size and (assignments.min() < 0 or assignments.max() >= self.k):
            raise DataError(f"fold assignments must lie in [0, {self.k})")
        object.__setattr__(self, "assignments", _frozen(assignments))

    def __repr__(self):
        return f"<FoldPlan(k={self.k}, repeat_id={self.repeat_id}, seed={self.seed})>"

    def fold_sizes(self) -> np.ndarray:
        return np.bincount(self.assignments, minlength=self.k)
