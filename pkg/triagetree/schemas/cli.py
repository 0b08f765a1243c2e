"""Pydantic schemas for the command-line surface."""

from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError

from triagetree.exceptions import DataError, UsageError
from triagetree.schemas.params import EnsembleConfig, Seed

Command = Literal["fit", "cv", "explain", "boundary", "export-tree"]
OutputFormat = Literal["json", "table", "csv"]


class CliConfig(BaseModel):
    """Validated arguments of one CLI invocation."""

    command: Command
    data: Optional[Path] = None
    label_column: Optional[str] = None
    seed: Seed = 0

    # Ensemble overrides; None keeps the value from --config or the default
    base_depth: Optional[int] = None
    grader_depth: Optional[int] = None
    trees: Optional[int] = None
    forest_depth: Optional[int] = None
    max_features: Optional[Union[Literal["sqrt"], int]] = None
    smote_k: Optional[int] = None
    config_path: Optional[Path] = None

    out: Optional[Path] = None
    format: Optional[OutputFormat] = None

    # cv
    folds: int = Field(default=10, ge=2)
    repeats: int = Field(default=5, ge=1)
    n_jobs: int = 1
    benchmark: Optional[str] = None
    with_std: bool = False

    # explain / boundary / export-tree
    model: Optional[Path] = None
    row: Optional[str] = None
    bounds: Optional[tuple[float, float, float, float]] = None
    resolution: tuple[PositiveInt, PositiveInt] = (100, 100)
    which: Literal["base", "grader"] = "base"

    model_config = ConfigDict(frozen=True, extra="forbid")

    def require(self, *fields: str) -> None:
        """
        Raises:
            UsageError: If any of the named options was not given
        """
        missing = [name for name in fields if getattr(self, name) is None]
        if missing:
            flags = ", ".join("--" + name.replace("_", "-") for name in missing)
            raise UsageError(f"{self.command} requires {flags}")

    def _base_config(self) -> EnsembleConfig:
        if self.config_path is None:
            return EnsembleConfig()
        if not self.config_path.is_file():
            raise DataError(f"config file not found: {self.config_path}")
        try:
            return EnsembleConfig.model_validate_json(self.config_path.read_text(encoding="utf-8"))
        except ValidationError as e:
            raise UsageError(f"{self.config_path}: invalid ensemble config: {e}") from e

    def ensemble_config(self) -> EnsembleConfig:
        """
        The ensemble parameters: --config (if any), then explicit flags, then --seed.

        Raises:
            DataError: If the config file is missing
            UsageError: If the resulting parameters are invalid
        """
        data = self._base_config().model_dump()
        overrides = {
            ("base_params", "max_depth"): self.base_depth,
            ("grader_params", "max_depth"): self.grader_depth,
            ("deferral_params", "n_trees"): self.trees,
            ("deferral_params", "max_depth"): self.forest_depth,
            ("deferral_params", "features_per_split"): self.max_features,
            ("smote", "k_neighbors"): self.smote_k,
        }
        for (section, key), value in overrides.items():
            if value is not None:
                data[section][key] = value
        try:
            config = EnsembleConfig.model_validate(data)
        except ValidationError as e:
            raise UsageError(f"invalid ensemble parameters: {e}") from e
        return config.reseeded(self.seed).with_n_jobs(self.n_jobs)


class ExplainResult(BaseModel):
    """JSON form of an explanation."""

    label: str
    route: str
    trivial_grader: bool
    grader_conditions: list[str]
    base_conditions: Optional[list[str]] = None
    text: str
