"""Seeded 2-D demo data."""

import numpy as np

from triagetree.exceptions import UsageError
from triagetree.models.dataset import Dataset
from triagetree.utils.rng import DeterministicRng


def two_blobs(
    n_per_class: int = 50,
    seed: int = 0,
    separation: float = 2.0,
    spread: float = 1.0,
) -> Dataset:
    """
    Two overlapping isotropic Gaussian blobs in the plane.

    Class "a" is centred at the origin and class "b" at (separation, separation),
    so the overlap band along the diagonal is where a shallow tree errs.

    Args:
        n_per_class: Points per class
        seed: RNG seed (stream 0)
        separation: Offset of the second centre along each axis
        spread: Standard deviation of both blobs

    Returns:
        Dataset with features x1, x2 and classes a, b; class a rows first
    """
    if n_per_class < 1:
        raise UsageError(f"n_per_class must be >= 1, got {n_per_class}")
    if spread <= 0:
        raise UsageError(f"spread must be positive, got {spread}")

    rng = DeterministicRng(seed)
    centres = np.array([[0.0, 0.0], [separation, separation]])
    features = np.vstack(
        [rng.normal(centre, spread, size=(n_per_class, 2)) for centre in centres]
    )
    labels = np.repeat(np.arange(2), n_per_class)
    return Dataset(
        features=features,
        labels=labels,
        feature_names=("x1", "x2"),
        class_names=("a", "b"),
        name="two_blobs",
    )
