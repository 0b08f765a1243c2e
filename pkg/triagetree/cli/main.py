"""Command-line entry point: argument parsing, dispatch and exit codes."""

import argparse
import logging
import sys
from typing import Optional, Sequence, Union

from pydantic import ValidationError

from triagetree import __version__
from triagetree.cli.commands import COMMANDS
from triagetree.config import settings
from triagetree.exceptions import DataError, UsageError
from triagetree.schemas.cli import CliConfig
from triagetree.utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2


def _features_per_split(text: str) -> Union[str, int]:
    if text == "sqrt":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'sqrt' or an integer, got {text!r}") from None


def _add_data_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="Dataset CSV (header row, label last)")
    parser.add_argument("--label-column", help="Label column name (default: last column)")
    parser.add_argument("--benchmark", help="Catalogued benchmark the file holds, e.g. Bnk")


def _add_ensemble_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("ensemble")
    group.add_argument("--config", dest="config_path", help="EnsembleConfig JSON document")
    group.add_argument("--base-depth", type=int, help="Base tree max depth (default 4)")
    group.add_argument("--grader-depth", type=int, help="Grader tree max depth (default 4)")
    group.add_argument("--trees", type=int, help="Deferral forest size (default 100)")
    group.add_argument("--forest-depth", type=int, help="Forest tree max depth (default none)")
    group.add_argument(
        "--max-features",
        type=_features_per_split,
        help="Features tried per forest split: 'sqrt' or a count (default sqrt)",
    )
    group.add_argument("--smote-k", type=int, help="SMOTE neighbours (default 5)")


def _add_model_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, help="Model JSON written by `fit`")


def _common_options() -> argparse.ArgumentParser:
    """Options accepted by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help=f"Log level (default {settings.log_level})",
    )
    parser.add_argument(
        "--seed", type=int, default=settings.default_seed, help="Master seed (default %(default)s)"
    )
    parser.add_argument("--out", help="Output path (default: stdout; required by fit)")
    parser.add_argument("--format", choices=["json", "table", "csv"], help="Output format")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triagetree",
        description="Interpretable grader/deferral ensembles of decision trees and forests.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_options()

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    fit = subparsers.add_parser(
        "fit", help="Fit an ensemble and save it as JSON", parents=[common]
    )
    _add_data_options(fit)
    _add_ensemble_options(fit)

    cv = subparsers.add_parser(
        "cv", help="Repeated stratified cross validation", parents=[common]
    )
    _add_data_options(cv)
    _add_ensemble_options(cv)
    cv.add_argument("--folds", type=int, default=settings.cv_folds)
    cv.add_argument("--repeats", type=int, default=settings.cv_repeats)
    cv.add_argument("--n-jobs", type=int, default=settings.n_jobs, help="Folds run concurrently")
    cv.add_argument("--with-std", action="store_true", help="Show ± std in the text table")

    explain = subparsers.add_parser(
        "explain", help="Explain the decision for one input row", parents=[common]
    )
    _add_model_option(explain)
    explain.add_argument(
        "--row",
        required=True,
        help="Comma-separated feature values (use --row=-1,2 for a leading minus)",
    )

    boundary = subparsers.add_parser(
        "boundary", help="Route/label grid of a 2-feature model", parents=[common]
    )
    _add_model_option(boundary)
    boundary.add_argument(
        "--bounds",
        type=float,
        nargs=4,
        required=True,
        metavar=("XMIN", "XMAX", "YMIN", "YMAX"),
    )
    boundary.add_argument(
        "--resolution",
        type=int,
        nargs=2,
        default=[settings.grid_resolution] * 2,
        metavar=("NX", "NY"),
    )

    export = subparsers.add_parser(
        "export-tree", help="Print the base or grader tree", parents=[common]
    )
    _add_model_option(export)
    export.add_argument("--which", choices=["base", "grader"], default="base")

    return parser


def _cli_config(args: argparse.Namespace) -> CliConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if key != "log_level" and value is not None
    }
    for key in ("bounds", "resolution"):
        if key in values:
            values[key] = tuple(values[key])
    return CliConfig(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 1 on a data error, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(level=args.log_level)

    try:
        cli = _cli_config(args)
        return COMMANDS[cli.command](cli)
    except UsageError as e:
        logger.error(f"Usage error: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except ValidationError as e:
        logger.error(f"Invalid arguments: {e}")
        print(f"error: invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except DataError as e:
        logger.error(f"Data error: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
