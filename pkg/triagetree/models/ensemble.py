"""Grader/deferral ensemble entities."""

import enum
from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from triagetree.models.forest import RandomForest
from triagetree.models.tree import DecisionTree, PathStep
from triagetree.schemas.params import EnsembleConfig


class Route(str, enum.Enum):
    """Grader output. The value doubles as the grader's class index order."""

    EASY = "easy"
    HARD = "hard"

    @property
    def index(self) -> int:
        return 0 if self is Route.EASY else 1

    @classmethod
    def from_index(cls, index: int) -> "Route":
        return cls.EASY if int(index) == 0 else cls.HARD


GRADER_CLASSES = (Route.EASY.value, Route.HARD.value)


class FitStats(BaseModel):
    """What happened while fitting an ensemble."""

    n_train: int = Field(ge=1)
    easy_count: int = Field(ge=0)
    hard_count_before_resample: int = Field(ge=0)
    synthetic_rows: int = Field(default=0, ge=0)
    base_train_accuracy: float = Field(ge=0.0, le=1.0)
    trivial_grader: bool
    trivial_route: Optional[Route] = None

    model_config = ConfigDict(frozen=True)


@dataclass(frozen=True, eq=False)
class GraderDeferralEnsemble:
    """Base tree for easy inputs, forest for hard ones, grader tree to choose."""

    base: DecisionTree
    deferral: RandomForest
    grader: DecisionTree
    fit_stats: FitStats
    config: EnsembleConfig
    feature_names: tuple[str, ...]
    class_names: tuple[str, ...]

    def __repr__(self):
        return (
            f"<GraderDeferralEnsemble(base_nodes={self.base.node_count}, "
            f"grader_nodes={self.grader.node_count}, "
            f"trees={len(self.deferral.trees)}, trivial={self.fit_stats.trivial_grader})>"
        )

    @property
    def n_features(self) -> int:
        return len(self.feature_names)


@dataclass(frozen=True)
class RoutedPrediction:
    """A label plus the reason it came from the base tree or the forest."""

    label: int
    route: Route
    grader_path: tuple[PathStep, ...]
    evaluator_path: Optional[tuple[PathStep, ...]]
