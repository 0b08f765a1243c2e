"""Benchmark datasets and their published reference results."""

from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, PositiveInt

from triagetree.exceptions import DataError, UsageError
from triagetree.models.dataset import Dataset
from triagetree.services.experiment import TableRow
from triagetree.utils.logger import get_logger

logger = get_logger(__name__)


class BenchmarkEntry(BaseModel):
    """
    One benchmark dataset.

    ``published`` holds six (mean, std) pairs in percent, in table order:
    base train, base test, final train, final test, deferral train, deferral test.
    """

    abbreviation: str
    title: str
    n_features: PositiveInt
    n_patterns: PositiveInt
    n_classes: PositiveInt
    published: tuple[tuple[float, float], ...]

    model_config = ConfigDict(frozen=True)

    @property
    def filename(self) -> str:
        return f"{self.abbreviation.lower()}.csv"

    def published_row(self) -> TableRow:
        """The reference results as a format_cv_table row (fractions)."""
        return f"{self.abbreviation} (published)", [
            (mean / 100.0, std / 100.0) for mean, std in self.published
        ]

    def mean(self, column: int) -> float:
        return self.published[column][0] / 100.0


def _entry(abbreviation, title, shape, *published) -> BenchmarkEntry:
    n_features, n_patterns, n_classes = shape
    pairs = tuple(zip(published[0::2], published[1::2]))
    return BenchmarkEntry(
        abbreviation=abbreviation,
        title=title,
        n_features=n_features,
        n_patterns=n_patterns,
        n_classes=n_classes,
        published=pairs,
    )


BENCHMARKS: tuple[BenchmarkEntry, ...] = (
    _entry("Bnk", "Banknote Authentication", (4, 1372, 2),
           96.50, 0.65, 95.42, 1.80, 99.79, 0.18, 98.57, 1.15, 21.82, 5.23, 21.78, 6.78),
    _entry("Bld", "Blood Transfusion Service Center", (4, 748, 2),
           80.51, 0.49, 77.62, 3.81, 90.05, 0.81, 75.26, 4.05, 45.42, 4.73, 45.36, 7.65),
    _entry("Brst", "Breast Cancer Wisconsin (Diagnostic)", (30, 569, 2),
           98.47, 0.49, 93.28, 3.15, 99.98, 0.06, 93.92, 3.04, 8.89, 4.31, 9.13, 5.89),
    _entry("Clim", "Climate Model Simulation Crashes", (20, 540, 2),
           94.57, 0.36, 90.22, 3.11, 99.66, 0.32, 90.48, 2.25, 19.64, 3.22, 20.78, 5.74),
    _entry("EEG", "EEG Eye State", (14, 14980, 2),
           70.67, 0.20, 70.19, 0.84, 93.51, 2.42, 87.92, 2.10, 62.32, 8.39, 62.57, 8.24),
    _entry("Gas", "Gas Sensor Array Drift", (128, 13910, 6),
           73.27, 0.48, 72.96, 1.07, 96.16, 0.60, 95.50, 0.92, 37.38, 2.39, 37.44, 2.39),
    _entry("Ins", "Ionosphere", (34, 351, 2),
           94.57, 0.85, 87.35, 5.87, 99.62, 0.46, 89.35, 5.67, 22.79, 7.48, 26.56, 10.92),
    _entry("Lnd", "Landsat Satellite", (36, 6430, 6),
           79.88, 0.62, 78.83, 1.51, 96.98, 0.85, 90.46, 1.00, 40.67, 4.68, 40.81, 4.84),
    _entry("Ozn", "Ozone Level Detection", (72, 2534, 2),
           95.02, 0.29, 92.97, 1.00, 99.40, 0.22, 93.99, 0.80, 25.34, 3.53, 26.39, 4.92),
    _entry("QSAR", "QSAR Biodegradation", (41, 1055, 2),
           86.42, 0.98, 80.92, 3.45, 96.83, 1.63, 85.01, 3.52, 41.29, 11.25, 42.19, 11.91),
    _entry("Spm", "Spambase", (57, 4601, 2),
           90.86, 0.24, 89.53, 1.12, 97.45, 0.63, 94.38, 0.86, 31.69, 4.67, 32.46, 5.63),
    _entry("Stl", "Steel Plates Faults", (27, 1941, 7),
           62.29, 1.01, 60.76, 2.64, 95.08, 4.00, 76.86, 3.51, 58.62, 11.97, 59.23, 11.81),
    _entry("Vhcl", "Vehicle Silhouettes", (18, 846, 4),
           73.67, 1.21, 68.21, 4.23, 96.26, 1.70, 72.88, 3.69, 46.65, 7.69, 47.89, 8.88),
    _entry("Yst", "Yeast", (8, 1484, 10),
           59.84, 0.45, 56.85, 3.52, 92.95, 3.84, 61.16, 3.63, 67.93, 9.31, 67.90, 10.32),
)

# Alternative spellings seen in dataset listings
_ALIASES = {"land": "lnd", "veh": "vhcl"}


def get_benchmark(abbreviation: str) -> BenchmarkEntry:
    """
    Look up a benchmark by abbreviation (case-insensitive).

    Raises:
        UsageError: If the abbreviation is unknown
    """
    key = abbreviation.strip().lower()
    key = _ALIASES.get(key, key)
    for entry in BENCHMARKS:
        if entry.abbreviation.lower() == key:
            return entry
    known = ", ".join(entry.abbreviation for entry in BENCHMARKS)
    raise UsageError(f"unknown benchmark {abbreviation!r}; known: {known}")


def check_shape(d: Dataset, entry: BenchmarkEntry) -> bool:
    """Warn (and return False) when ``d`` does not have the catalogued shape."""
    expected = (entry.n_features, entry.n_patterns, entry.n_classes)
    actual = (d.n_features, d.n_rows, d.n_classes)
    if actual == expected:
        return True
    logger.warning(
        f"{d.name} does not match benchmark {entry.abbreviation}: "
        f"expected (features, patterns, classes) = {expected}, got {actual}"
    )
    return False


def benchmark_path(entry: BenchmarkEntry, directory: Optional[Union[str, Path]]) -> Path:
    """
    Location of a benchmark CSV inside ``directory``.

    Raises:
        DataError: If no directory is configured or the file is missing
    """
    if directory is None:
        raise DataError("no benchmark directory configured (TRIAGETREE_BENCHMARK_DIR)")
    path = Path(directory) / entry.filename
    if not path.is_file():
        raise DataError(f"benchmark file not found: {path}")
    return path
