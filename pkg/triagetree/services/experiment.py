"""Evaluation protocol: hold-out metrics, repeated stratified CV, boundary grids."""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from triagetree.exceptions import UsageError
from triagetree.models.dataset import Dataset, FoldPlan
from triagetree.models.ensemble import GraderDeferralEnsemble, Route
from triagetree.schemas.params import EnsembleConfig
from triagetree.schemas.report import (
    METRICS,
    BoundaryGrid,
    CvReport,
    GridCell,
    MetricSummary,
    RunReport,
)
from triagetree.services.ensemble import fit_ensemble, predict_ensemble_batch
from triagetree.services.folds import split_by_fold, stratified_kfold
from triagetree.services.forest import predict_forest_batch
from triagetree.services.tree_builder import predict_tree_batch
from triagetree.tasks.pool import run_parallel
from triagetree.utils.helpers import format_percent
from triagetree.utils.logger import get_logger
from triagetree.utils.rng import DeterministicRng, derive_seed

logger = get_logger(__name__)

# Columns of the published results table, in order.
TABLE_METRICS = METRICS[:6]

TableRow = tuple[str, Sequence[tuple[float, Optional[float]]]]


def _score(e: GraderDeferralEnsemble, d: Dataset) -> dict:
    labels, hard = predict_ensemble_batch(e, d.features)
    base = predict_tree_batch(e.base, d.features)
    forest = predict_forest_batch(e.deferral, d.features)
    n_rows = d.n_rows
    return {
        "n": n_rows,
        "hard": int(hard.sum()),
        "base_acc": int(np.sum(base == d.labels)) / n_rows,
        "final_acc": int(np.sum(labels == d.labels)) / n_rows,
        "deferral_rate": int(hard.sum()) / n_rows,
        "deferral_acc": int(np.sum(forest == d.labels)) / n_rows,
    }


def evaluate_holdout(
    e: GraderDeferralEnsemble,
    train: Dataset,
    test: Dataset,
    fold_id: int = 0,
    repeat_id: int = 0,
    seed: int = 0,
) -> RunReport:
    """
    Base, final and forest-alone accuracy plus deferral rate on train and test.

    Base accuracy scores the base tree alone on every row, ignoring the
    grader; final accuracy scores the routed ensemble; the deferral rate is
    the fraction of rows the grader marks hard.

    Raises:
        DataError: On dimension mismatch
    """
    on_train = _score(e, train)
    on_test = _score(e, test)
    return RunReport(
        fold_id=fold_id,
        repeat_id=repeat_id,
        seed=seed,
        n_train=on_train["n"],
        n_test=on_test["n"],
        hard_train=on_train["hard"],
        hard_test=on_test["hard"],
        base_acc_train=on_train["base_acc"],
        base_acc_test=on_test["base_acc"],
        final_acc_train=on_train["final_acc"],
        final_acc_test=on_test["final_acc"],
        deferral_rate_train=on_train["deferral_rate"],
        deferral_rate_test=on_test["deferral_rate"],
        deferral_acc_train=on_train["deferral_acc"],
        deferral_acc_test=on_test["deferral_acc"],
        trivial_grader=e.fit_stats.trivial_grader,
    )


@dataclass(frozen=True)
class _FoldJob:
    dataset: Dataset
    plan: FoldPlan
    fold_id: int
    config: EnsembleConfig


def _run_fold(job: _FoldJob) -> RunReport:
    train, test = split_by_fold(job.dataset, job.plan, job.fold_id)
    ensemble = fit_ensemble(train, job.config)
    report = evaluate_holdout(
        ensemble,
        train,
        test,
        fold_id=job.fold_id,
        repeat_id=job.plan.repeat_id,
        seed=job.config.seed,
    )
    logger.info(
        f"Repeat {report.repeat_id} fold {report.fold_id}: "
        f"final test {report.final_acc_test:.4f}, "
        f"deferral test {report.deferral_rate_test:.4f}"
    )
    return report


def summarize(values: Sequence[float]) -> MetricSummary:
    array = np.asarray(values, dtype=np.float64)
    return MetricSummary(mean=float(np.mean(array)), std=float(np.std(array)))


def run_cv(
    d: Dataset,
    cfg: EnsembleConfig = EnsembleConfig(),
    k: int = 10,
    repeats: int = 5,
    seed: int = 0,
    n_jobs: int = 1,
) -> CvReport:
    """
    Repeated stratified k-fold cross validation of the ensemble.

    Repeat r plans its folds on stream (seed, r); fold f of repeat r fits with
    ``cfg.reseeded(derive_seed(seed, r, f))``. The report does not depend on
    ``n_jobs``.

    Args:
        d: Full dataset
        cfg: Ensemble parameters (their seeds are replaced per fold)
        k: Folds per repeat
        repeats: Number of repeats
        seed: Master seed
        n_jobs: Folds fitted concurrently

    Returns:
        CvReport with k x repeats runs
    """
    if repeats < 1:
        raise UsageError(f"repeats must be >= 1, got {repeats}")

    jobs = []
    for repeat in range(repeats):
        plan = stratified_kfold(d, k, DeterministicRng(seed, repeat))
        for fold in range(k):
            fold_cfg = cfg.reseeded(derive_seed(seed, repeat, fold))
            jobs.append(_FoldJob(d, plan, fold, fold_cfg))

    logger.info(f"Running {len(jobs)} folds on {d.name} ({k} folds x {repeats} repeats)")
    runs = run_parallel(_run_fold, jobs, n_jobs=n_jobs)

    summaries = {
        metric: summarize([getattr(run, metric) for run in runs]) for metric in METRICS
    }
    return CvReport(
        dataset=d.name,
        folds=k,
        repeats=repeats,
        seed=seed,
        run_count=len(runs),
        config=cfg,
        trivial_grader_runs=sum(run.trivial_grader for run in runs),
        runs=runs,
        **summaries,
    )


def boundary_grid(
    e: GraderDeferralEnsemble,
    bounds: Sequence[float],
    resolution: Sequence[int],
) -> BoundaryGrid:
    """
    Evaluate the ensemble at the cell centres of a regular grid.

    Cells are listed row-major: y outer (ascending), x inner (ascending). Each
    cell also carries the base tree and deferral forest labels, so both
    component boundaries can be drawn under the hard region.

    Args:
        e: Ensemble over exactly two features
        bounds: (xmin, xmax, ymin, ymax)
        resolution: (nx, ny)

    Raises:
        UsageError: If the ensemble is not 2-D, the resolution is not positive
            or the bounds are degenerate
    """
    if e.n_features != 2:
        raise UsageError(f"boundary grids need a 2-feature model, got {e.n_features}")
    xmin, xmax, ymin, ymax = (float(b) for b in bounds)
    nx, ny = (int(r) for r in resolution)
    if nx < 1 or ny < 1:
        raise UsageError(f"resolution must be positive, got ({nx}, {ny})")
    if not (np.isfinite([xmin, xmax, ymin, ymax]).all() and xmin < xmax and ymin < ymax):
        raise UsageError(
            f"bounds must satisfy xmin < xmax and ymin < ymax, got {tuple(bounds)}"
        )

    xs = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
    ys = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
    points = np.column_stack([np.tile(xs, ny), np.repeat(ys, nx)])
    labels, hard = predict_ensemble_batch(e, points)
    base = predict_tree_batch(e.base, points)
    deferral = predict_forest_batch(e.deferral, points)

    records = [
        GridCell(
            x=float(x),
            y=float(y),
            route=Route.HARD if is_hard else Route.EASY,
            label=e.class_names[label],
            base_label=e.class_names[base_label],
            deferral_label=e.class_names[deferral_label],
        )
        for (x, y), label, is_hard, base_label, deferral_label in zip(
            points, labels, hard, base, deferral
        )
    ]
    return BoundaryGrid(
        nx=nx,
        ny=ny,
        xmin=xmin,
        xmax=xmax,
        ymin=ymin,
        ymax=ymax,
        feature_names=(e.feature_names[0], e.feature_names[1]),
        records=records,
        hard_fraction=float(hard.mean()),
    )


def grid_frame(grid: BoundaryGrid) -> pd.DataFrame:
    """Grid records as a frame: x, y, route, label, base_label, deferral_label."""
    return pd.DataFrame(
        {
            "x": [cell.x for cell in grid.records],
            "y": [cell.y for cell in grid.records],
            "route": [cell.route.value for cell in grid.records],
            "label": [cell.label for cell in grid.records],
            "base_label": [cell.base_label for cell in grid.records],
            "deferral_label": [cell.deferral_label for cell in grid.records],
        }
    )


def write_grid_csv(grid: BoundaryGrid, path: Union[str, Path]) -> None:
    grid_frame(grid).to_csv(path, index=False)


def report_row(report: CvReport) -> TableRow:
    return report.dataset, [
        (report.summary(metric).mean, report.summary(metric).std) for metric in TABLE_METRICS
    ]


def format_cv_table(
    rows: Sequence[TableRow], with_std: bool = False
) -> str:
    """
    Aligned text table: Base / Final accuracy and Deferral rate, Training / Test, in %.

    Args:
        rows: (name, six (mean, std-or-None) pairs) per dataset, see report_row
        with_std: Append ``± std`` to each cell that has one

    Returns:
        Table text
    """
    groups = ["Base Accuracy [%]", "Final Accuracy [%]", "Deferral Rate [%]"]
    subheaders = ["Training", "Test"] * 3

    body = []
    for name, cells in rows:
        rendered = []
        for mean, std in cells:
            text = format_percent(mean)
            if with_std and std is not None:
                text += f" ± {format_percent(std)}"
            rendered.append(text)
        body.append([name, *rendered])

    name_width = max([len("Dataset")] + [len(row[0]) for row in body])
    cell_width = max([len(h) for h in subheaders] + [len(c) for row in body for c in row[1:]])
    group_width = 2 * cell_width + 2

    lines = [
        "Dataset".ljust(name_width)
        + "  "
        + "  ".join(group.ljust(group_width) for group in groups).rstrip(),
        " " * name_width + "  " + "  ".join(h.ljust(cell_width) for h in subheaders).rstrip(),
    ]
    for row in body:
        lines.append(
            row[0].ljust(name_width)
            + "  "
            + "  ".join(cell.ljust(cell_width) for cell in row[1:]).rstrip()
        )
    return "\n".join(lines)
