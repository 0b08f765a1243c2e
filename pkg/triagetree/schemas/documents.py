"""Pydantic schemas for persisted models."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from triagetree.models.ensemble import FitStats
from triagetree.schemas.params import EnsembleConfig, ForestParams, TreeParams

FORMAT_VERSION = 1


class NodeRecord(BaseModel):
    """One tree node; leaves have feature = -1 and children = -1."""

    feature: int = Field(ge=-1)
    threshold: Optional[float] = None
    left: int = Field(ge=-1)
    right: int = Field(ge=-1)
    class_counts: list[int]


class TreeDocument(BaseModel):
    n_classes: int = Field(ge=1)
    n_features: int = Field(ge=1)
    params: TreeParams
    nodes: list[NodeRecord] = Field(min_length=1)


class ForestDocument(BaseModel):
    n_classes: int = Field(ge=1)
    n_features: int = Field(ge=1)
    params: ForestParams
    trees: list[TreeDocument]


class EnsembleDocument(BaseModel):
    """Everything needed to predict and explain: three models, names, config, stats."""

    kind: Literal["grader-deferral-ensemble"] = "grader-deferral-ensemble"
    format_version: int = FORMAT_VERSION
    feature_names: list[str]
    class_names: list[str]
    config: EnsembleConfig
    fit_stats: FitStats
    base: TreeDocument
    grader: TreeDocument
    deferral: ForestDocument

    model_config = ConfigDict(extra="forbid")
