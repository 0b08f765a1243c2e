"""In-memory domain entities"""

from triagetree.models.dataset import Dataset, FoldPlan
from triagetree.models.tree import DecisionTree, PathStep, Split, TreeNode
from triagetree.models.forest import RandomForest
from triagetree.models.ensemble import (
    FitStats,
    GraderDeferralEnsemble,
    Route,
    RoutedPrediction,
)

__all__ = [
    "Dataset",
    "FoldPlan",
    "DecisionTree",
    "PathStep",
    "Split",
    "TreeNode",
    "RandomForest",
    "FitStats",
    "GraderDeferralEnsemble",
    "Route",
    "RoutedPrediction",
]
