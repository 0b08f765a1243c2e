"""Utility functions"""

from triagetree.utils.logger import get_logger, setup_logging
from triagetree.utils.rng import DeterministicRng, derive_seed
from triagetree.utils.helpers import (
    as_feature_matrix,
    as_feature_vector,
    format_percent,
    parse_float_list,
)

__all__ = [
    "get_logger",
    "setup_logging",
    "DeterministicRng",
    "derive_seed",
    "as_feature_matrix",
    "as_feature_vector",
    "format_percent",
    "parse_float_list",
]
