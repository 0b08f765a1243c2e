"""Subcommand handlers. Each returns the process exit code."""

from pathlib import Path
from typing import Optional

import pandas as pd

from triagetree.exceptions import DataError, UsageError
from triagetree.models.dataset import Dataset
from triagetree.models.ensemble import GRADER_CLASSES, Route
from triagetree.schemas.cli import CliConfig, ExplainResult
from triagetree.services.catalog import check_shape, get_benchmark
from triagetree.services.dataset_loader import load_csv
from triagetree.services.ensemble import explain, fit_ensemble, predict_ensemble
from triagetree.services.experiment import (
    boundary_grid,
    format_cv_table,
    grid_frame,
    report_row,
    run_cv,
)
from triagetree.services.persistence import load_ensemble, save_ensemble
from triagetree.services.tree_builder import export_text
from triagetree.utils.helpers import format_percent, parse_float_list
from triagetree.utils.logger import get_logger

logger = get_logger(__name__)


def _emit(text: str, out: Optional[Path]) -> None:
    """Write ``text`` to ``out``, or to stdout when no path is given."""
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        print(text, end="")
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot write {out}: {e}") from e
    logger.info(f"Wrote {out}")


def _load_dataset(cli: CliConfig) -> Dataset:
    cli.require("data")
    d = load_csv(cli.data, cli.label_column)
    if cli.benchmark:
        check_shape(d, get_benchmark(cli.benchmark))
    return d


def cmd_fit(cli: CliConfig) -> int:
    """
    Fit an ensemble on the whole dataset and save it as JSON.

    Prints the fit statistics (table or json) on stdout.
    """
    cli.require("out")
    if cli.format == "csv":
        raise UsageError("fit output format must be json or table")
    config = cli.ensemble_config()
    d = _load_dataset(cli)

    ensemble = fit_ensemble(d, config)
    try:
        save_ensemble(ensemble, cli.out)
    except OSError as e:
        raise DataError(f"cannot write {cli.out}: {e}") from e

    stats = ensemble.fit_stats
    if cli.format == "json":
        print(stats.model_dump_json(indent=2))
    else:
        trivial = f"yes (always {stats.trivial_route.value})" if stats.trivial_grader else "no"
        print(f"rows: {stats.n_train}")
        print(f"base training accuracy [%]: {format_percent(stats.base_train_accuracy)}")
        print(f"hard rows: {stats.hard_count_before_resample}")
        print(f"synthetic rows: {stats.synthetic_rows}")
        print(f"trivial grader: {trivial}")
    return 0


def cmd_cv(cli: CliConfig) -> int:
    """
    Repeated stratified cross validation; prints or writes the report.

    Formats: ``json`` (the full CvReport), ``table`` (aligned accuracy table,
    plus the published row when --benchmark is given) and ``csv`` (one line
    per run).
    """
    config = cli.ensemble_config()
    d = _load_dataset(cli)

    report = run_cv(
        d, config, k=cli.folds, repeats=cli.repeats, seed=cli.seed, n_jobs=cli.n_jobs
    )

    output_format = cli.format or "table"
    if output_format == "json":
        text = report.model_dump_json(indent=2)
    elif output_format == "csv":
        text = pd.DataFrame([run.model_dump() for run in report.runs]).to_csv(index=False)
    else:
        rows = [report_row(report)]
        if cli.benchmark:
            rows.append(get_benchmark(cli.benchmark).published_row())
        text = format_cv_table(rows, with_std=cli.with_std)
        if report.trivial_grader_runs:
            text += f"\ntrivial grader in {report.trivial_grader_runs} of {report.run_count} runs"
    _emit(text, cli.out)
    return 0


def cmd_explain(cli: CliConfig) -> int:
    """Explain the ensemble's decision for one input row."""
    cli.require("model", "row")
    ensemble = load_ensemble(cli.model)
    try:
        row = parse_float_list(cli.row)
    except DataError as e:
        raise UsageError(f"--row: {e}") from e
    if len(row) != ensemble.n_features:
        raise UsageError(
            f"--row has {len(row)} values, the model expects {ensemble.n_features}"
        )

    text = explain(ensemble, row)
    if cli.format == "json":
        prediction = predict_ensemble(ensemble, row)
        result = ExplainResult(
            label=ensemble.class_names[prediction.label],
            route=prediction.route.value,
            trivial_grader=ensemble.fit_stats.trivial_grader,
            grader_conditions=[step.describe() for step in prediction.grader_path],
            base_conditions=(
                [step.describe() for step in prediction.evaluator_path]
                if prediction.route is Route.EASY
                else None
            ),
            text=text,
        )
        text = result.model_dump_json(indent=2)
    _emit(text, cli.out)
    return 0


def cmd_boundary(cli: CliConfig) -> int:
    """Evaluate a 2-feature model on a grid and emit x, y, route, label rows."""
    cli.require("model", "bounds")
    ensemble = load_ensemble(cli.model)
    grid = boundary_grid(ensemble, cli.bounds, cli.resolution)
    logger.info(
        f"Boundary grid: {grid.nx}x{grid.ny} cells, hard fraction {grid.hard_fraction:.4f}"
    )

    if cli.format == "json":
        text = grid.model_dump_json(indent=2)
    else:
        text = grid_frame(grid).to_csv(index=False)
    _emit(text, cli.out)
    return 0


def cmd_export_tree(cli: CliConfig) -> int:
    """Print the base or grader tree as indented text."""
    cli.require("model")
    ensemble = load_ensemble(cli.model)
    if cli.which == "base":
        text = export_text(ensemble.base, ensemble.feature_names, ensemble.class_names)
    else:
        text = export_text(ensemble.grader, ensemble.feature_names, GRADER_CLASSES)
        stats = ensemble.fit_stats
        if stats.trivial_grader:
            text += f"\n# trivial grader: every input is routed {stats.trivial_route.value}"
    _emit(text, cli.out)
    return 0


COMMANDS = {
    "fit": cmd_fit,
    "cv": cmd_cv,
    "explain": cmd_explain,
    "boundary": cmd_boundary,
    "export-tree": cmd_export_tree,
}
