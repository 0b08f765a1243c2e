"""Pydantic schemas for algorithm parameters."""

import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from triagetree.exceptions import UsageError

Seed = Annotated[int, Field(ge=0, lt=2**64)]


class TreeParams(BaseModel):
    """CART growth limits. max_depth=None grows until leaves are pure."""

    max_depth: Optional[PositiveInt] = 4
    min_samples_split: int = Field(default=2, ge=2)
    min_samples_leaf: int = Field(default=1, ge=1)

    model_config = ConfigDict(frozen=True, extra="forbid")


class ForestParams(BaseModel):
    """Random forest parameters; defaults follow the usual 100-tree, unbounded setup."""

    n_trees: PositiveInt = 100
    max_depth: Optional[PositiveInt] = None
    features_per_split: Union[Literal["sqrt"], PositiveInt] = "sqrt"
    bootstrap: bool = True
    seed: Seed = 0
    n_jobs: int = Field(default=1, exclude=True)

    model_config = ConfigDict(frozen=True, extra="forbid")

    def resolve_features_per_split(self, n_features: int) -> int:
        """
        Number of candidate features examined at each node.

        Args:
            n_features: P of the training data

        Returns:
            Count in [1, P]
        """
        if self.features_per_split == "sqrt":
            return max(1, int(math.isqrt(n_features)))
        if self.features_per_split > n_features:
            raise UsageError(
                f"features_per_split={self.features_per_split} exceeds "
                f"the {n_features} available features"
            )
        return int(self.features_per_split)

    def tree_params(self) -> TreeParams:
        return TreeParams(max_depth=self.max_depth)


class SmoteParams(BaseModel):
    """SMOTE oversampling parameters."""

    k_neighbors: PositiveInt = 5
    seed: Seed = 0

    model_config = ConfigDict(frozen=True, extra="forbid")


class EnsembleConfig(BaseModel):
    """Parameters of the base tree, deferral forest, grader tree and resampler."""

    base_params: TreeParams = TreeParams(max_depth=4)
    grader_params: TreeParams = TreeParams(max_depth=4)
    deferral_params: ForestParams = ForestParams()
    smote: SmoteParams = SmoteParams()
    seed: Seed = 0

    model_config = ConfigDict(frozen=True, extra="forbid")

    def reseeded(self, seed: int) -> "EnsembleConfig":
        """Copy with ``seed`` applied to the ensemble, the forest and SMOTE."""
        return self.model_copy(
            update={
                "seed": seed,
                "deferral_params": self.deferral_params.model_copy(update={"seed": seed}),
                "smote": self.smote.model_copy(update={"seed": seed}),
            }
        )

    def with_n_jobs(self, n_jobs: int) -> "EnsembleConfig":
        return self.model_copy(
            update={
                "deferral_params": self.deferral_params.model_copy(
                    update={"n_jobs": n_jobs}
                )
            }
        )
