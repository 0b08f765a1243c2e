"""Pydantic schemas for experiment reports and boundary grids."""

from typing import Annotated, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from triagetree.models.ensemble import Route
from triagetree.schemas.params import EnsembleConfig

Fraction = Annotated[float, Field(ge=0.0, le=1.0)]

METRICS = (
    "base_acc_train",
    "base_acc_test",
    "final_acc_train",
    "final_acc_test",
    "deferral_rate_train",
    "deferral_rate_test",
    "deferral_acc_train",
    "deferral_acc_test",
)


class RunReport(BaseModel):
    """Metrics of one train/test split."""

    fold_id: int = Field(ge=0)
    repeat_id: int = Field(ge=0)
    seed: int = Field(ge=0)
    n_train: int = Field(ge=1)
    n_test: int = Field(ge=1)
    hard_train: int = Field(ge=0)
    hard_test: int = Field(ge=0)
    base_acc_train: Fraction
    base_acc_test: Fraction
    final_acc_train: Fraction
    final_acc_test: Fraction
    deferral_rate_train: Fraction
    deferral_rate_test: Fraction
    # Forest-alone baseline
    deferral_acc_train: Fraction
    deferral_acc_test: Fraction
    trivial_grader: bool = False

    model_config = ConfigDict(frozen=True)


class MetricSummary(BaseModel):
    """Arithmetic mean and population standard deviation over runs."""

    mean: float
    std: float

    model_config = ConfigDict(frozen=True)


class CvReport(BaseModel):
    """Repeated cross-validation results, one summary per metric."""

    dataset: str
    folds: int = Field(ge=2)
    repeats: int = Field(ge=1)
    seed: int = Field(ge=0)
    run_count: int
    config: EnsembleConfig
    base_acc_train: MetricSummary
    base_acc_test: MetricSummary
    final_acc_train: MetricSummary
    final_acc_test: MetricSummary
    deferral_rate_train: MetricSummary
    deferral_rate_test: MetricSummary
    deferral_acc_train: MetricSummary
    deferral_acc_test: MetricSummary
    trivial_grader_runs: int = 0
    runs: list[RunReport]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_run_count(self) -> "CvReport":
        if self.run_count != self.folds * self.repeats or len(self.runs) != self.run_count:
            raise ValueError(
                f"run_count must equal folds x repeats ({self.folds * self.repeats}) "
                f"and the number of runs ({len(self.runs)})"
            )
        return self

    def summary(self, metric: str) -> MetricSummary:
        return getattr(self, metric)


class GridCell(BaseModel):
    """Routed label plus the base and deferral labels underneath it."""

    x: float
    y: float
    route: Route
    label: str
    base_label: str
    deferral_label: str

    model_config = ConfigDict(frozen=True)


class BoundaryGrid(BaseModel):
    """Ensemble routes and labels at the cell centres of a regular 2-D grid."""

    nx: int = Field(ge=1)
    ny: int = Field(ge=1)
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    feature_names: tuple[str, str]
    records: list[GridCell]
    hard_fraction: Optional[float] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_records(self) -> "BoundaryGrid":
        if len(self.records) != self.nx * self.ny:
            raise ValueError(f"expected {self.nx * self.ny} records, got {len(self.records)}")
        return self
