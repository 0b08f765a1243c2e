#!/usr/bin/env python3
"""
Run the cross-validation protocol over every catalogued benchmark found in
TRIAGETREE_BENCHMARK_DIR and print our results next to the published ones.

Files are expected as <abbreviation>.csv in lower case (bnk.csv, bld.csv, ...);
missing ones are skipped.

Usage: python scripts/reproduce_table.py [--repeats N] [--n-jobs N] [--only Bnk,Bld]
"""

import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

# Import after path setup
from triagetree.config import settings  # noqa: E402
from triagetree.exceptions import DataError  # noqa: E402
from triagetree.schemas.params import EnsembleConfig  # noqa: E402
from triagetree.services.catalog import (  # noqa: E402
    BENCHMARKS,
    benchmark_path,
    check_shape,
    get_benchmark,
)
from triagetree.services.dataset_loader import load_csv  # noqa: E402
from triagetree.services.experiment import format_cv_table, report_row, run_cv  # noqa: E402
from triagetree.utils.logger import get_logger, setup_logging  # noqa: E402

logger = get_logger(__name__)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--folds", type=int, default=settings.cv_folds)
    parser.add_argument("--repeats", type=int, default=settings.cv_repeats)
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--n-jobs", type=int, default=settings.n_jobs)
    parser.add_argument("--only", help="Comma-separated abbreviations")
    parser.add_argument("--with-std", action="store_true")
    args = parser.parse_args()

    setup_logging(level="INFO")
    entries = (
        [get_benchmark(name) for name in args.only.split(",")] if args.only else BENCHMARKS
    )

    rows = []
    for entry in entries:
        try:
            path = benchmark_path(entry, settings.benchmark_dir)
        except DataError as e:
            logger.warning(f"Skipping {entry.abbreviation}: {e}")
            continue
        dataset = load_csv(path)
        check_shape(dataset, entry)
        report = run_cv(
            dataset,
            EnsembleConfig(),
            k=args.folds,
            repeats=args.repeats,
            seed=args.seed,
            n_jobs=args.n_jobs,
        )
        _, cells = report_row(report)
        rows.append((entry.abbreviation, cells))
        rows.append(entry.published_row())

    if not rows:
        print("No benchmark files found; set TRIAGETREE_BENCHMARK_DIR", file=sys.stderr)
        return 1
    print(format_cv_table(rows, with_std=args.with_std))
    return 0


if __name__ == "__main__":
    sys.exit(main())
