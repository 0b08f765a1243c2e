"""Binary decision tree entities."""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from triagetree.schemas.params import TreeParams

LEAF = -1


class Split(NamedTuple):
    """Best split of a node: route ``value <= threshold`` to the left child."""

    feature: int
    threshold: float
    weighted_impurity: float


class PathStep(NamedTuple):
    """One internal node visited while routing a row."""

    feature: int
    feature_name: str
    threshold: float
    went_left: bool

    def describe(self) -> str:
        op = "<=" if self.went_left else ">"
        return f"{self.feature_name} {op} {self.threshold:.6g}"


@dataclass(frozen=True)
class TreeNode:
    """
    A node in the flat node list of a DecisionTree.

    Internal nodes have ``feature >= 0`` and child indices; leaves have
    ``feature == LEAF``. Every node keeps the class counts of the training
    rows that reached it; ``predicted_class`` is their argmax with ties going
    to the lowest class index.
    """

    feature: int
    threshold: Optional[float]
    left: int
    right: int
    class_counts: tuple[int, ...]

    @property
    def is_leaf(self) -> bool:
        return self.feature == LEAF

    @property
    def predicted_class(self) -> int:
        return int(np.argmax(self.class_counts))


@dataclass(frozen=True, eq=False)
class DecisionTree:
    """Fitted CART tree; ``nodes[0]`` is the root."""

    nodes: tuple[TreeNode, ...]
    params: TreeParams
    n_classes: int
    n_features: int
    depth: int = field(init=False)
    node_count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "node_count", len(self.nodes))
        object.__setattr__(self, "depth", self._measure_depth())

        # Flat arrays for vectorised routing.
        feature = np.array([n.feature for n in self.nodes], dtype=np.intp)
        threshold = np.array(
            [n.threshold if n.threshold is not None else np.nan for n in self.nodes],
            dtype=np.float64,
        )
        left = np.array([n.left for n in self.nodes], dtype=np.intp)
        right = np.array([n.right for n in self.nodes], dtype=np.intp)
        counts = np.array([n.class_counts for n in self.nodes], dtype=np.float64)
        totals = counts.sum(axis=1, keepdims=True)
        proba = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
        predicted = np.argmax(counts, axis=1)
        for name, array in (
            ("_feature", feature),
            ("_threshold", threshold),
            ("_left", left),
            ("_right", right),
            ("_proba", proba),
            ("_predicted", predicted),
        ):
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def __repr__(self):
        return (
            f"<DecisionTree(node_count={self.node_count}, depth={self.depth}, "
            f"n_classes={self.n_classes})>"
        )

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    def _measure_depth(self) -> int:
        depth = 0
        stack = [(0, 0)]
        while stack:
            index, level = stack.pop()
            node = self.nodes[index]
            depth = max(depth, level)
            if not node.is_leaf:
                stack.append((node.left, level + 1))
                stack.append((node.right, level + 1))
        return depth

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Index of the leaf reached by every row of an already validated matrix."""
        reached = np.zeros(X.shape[0], dtype=np.intp)
        active = np.flatnonzero(self._feature[reached] != LEAF)
        while active.size:
            current = reached[active]
            go_left = X[active, self._feature[current]] <= self._threshold[current]
            reached[active] = np.where(go_left, self._left[current], self._right[current])
            active = active[self._feature[reached[active]] != LEAF]
        return reached

    def leaf_proba(self, leaves: np.ndarray) -> np.ndarray:
        return self._proba[leaves]

    def leaf_class(self, leaves: np.ndarray) -> np.ndarray:
        return self._predicted[leaves]
