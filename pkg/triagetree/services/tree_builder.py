"""CART decision tree: growth, prediction, decision paths and text export."""

from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from triagetree.exceptions import DataError, UsageError
from triagetree.models.dataset import Dataset
from triagetree.models.tree import LEAF, DecisionTree, PathStep, Split, TreeNode
from triagetree.schemas.params import TreeParams
from triagetree.utils.helpers import as_feature_matrix, as_feature_vector
from triagetree.utils.logger import get_logger

logger = get_logger(__name__)

# Relative float margin for shortlisting split candidates before the exact comparison.
SHORTLIST_TOLERANCE = 1e-9

INDENT = "|   "

FeatureSampler = Callable[[np.ndarray], np.ndarray]


def gini_impurity(class_counts: Sequence[int]) -> float:
    """
    Gini impurity 1 - sum_k p_k^2 of a class-count vector.

    Args:
        class_counts: Non-negative counts per class

    Returns:
        Impurity in [0, 1)

    Raises:
        UsageError: If the counts sum to zero
    """
    counts = np.asarray(class_counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        raise UsageError("gini impurity needs at least one counted sample")
    proportions = counts / total
    return float(1.0 - np.sum(proportions * proportions))


def _exact_score(left_sq: int, right_sq: int, n_left: int, n_right: int) -> Fraction:
    return Fraction(left_sq * n_right + right_sq * n_left, n_left * n_right)


def _find_split(
    X: np.ndarray,
    y: np.ndarray,
    counts: np.ndarray,
    candidates: np.ndarray,
    min_samples_leaf: int,
) -> Optional[Split]:
    """
    Exhaustive midpoint search over ``candidates`` (ascending feature indices).

    Splits are scored by S = sum over children of sum_k(count_k^2) / n_child,
    which is n * (1 - weighted Gini). A split must raise S strictly above the
    parent's sum_k(count_k^2) / n. Within a feature the lowest threshold wins
    ties; across features the lowest index wins. Floats only shortlist the
    candidates of a feature; the decision is made on exact fractions.
    """
    n_rows = y.shape[0]
    onehot = np.zeros((n_rows, counts.shape[0]), dtype=np.int64)
    onehot[np.arange(n_rows), y] = 1

    n_left = np.arange(1, n_rows, dtype=np.int64)
    n_right = n_rows - n_left
    size_ok = (n_left >= min_samples_leaf) & (n_right >= min_samples_leaf)

    best_score = Fraction(int(np.sum(counts * counts)), n_rows)
    best: Optional[tuple[int, float]] = None

    for feature in candidates:
        column = X[:, feature]
        order = np.argsort(column, kind="stable")
        values = column[order]
        valid = size_ok & (values[1:] > values[:-1])
        if not valid.any():
            continue

        left = np.cumsum(onehot[order], axis=0)[:-1]
        right = counts - left
        left_sq = np.sum(left * left, axis=1)
        right_sq = np.sum(right * right, axis=1)
        approx = left_sq / n_left + right_sq / n_right
        approx[~valid] = -np.inf

        top = float(approx.max())
        shortlist = np.flatnonzero(approx >= top - SHORTLIST_TOLERANCE * max(1.0, top))
        for position in shortlist:
            score = _exact_score(
                int(left_sq[position]),
                int(right_sq[position]),
                int(n_left[position]),
                int(n_right[position]),
            )
            if score > best_score:
                best_score = score
                low, high = values[position], values[position + 1]
                threshold = (low + high) / 2.0
                if threshold >= high:
                    # Midpoint rounded onto the upper value.
                    threshold = low
                best = (int(feature), float(threshold))

    if best is None:
        return None
    return Split(best[0], best[1], float((n_rows - best_score) / n_rows))


def best_split(
    d: Dataset,
    params: TreeParams = TreeParams(),
    features: Optional[Sequence[int]] = None,
) -> Optional[Split]:
    """
    Best Gini split of the rows of ``d``.

    Args:
        d: The rows reaching a node
        params: Supplies min_samples_split and min_samples_leaf
        features: Candidate feature indices (default: all)

    Returns:
        Split minimising the count-weighted child Gini, or None when the node
        is too small, already pure, or no split strictly lowers impurity
    """
    counts = d.class_counts()
    if d.n_rows < params.min_samples_split or np.count_nonzero(counts) < 2:
        return None
    candidates = np.arange(d.n_features) if features is None else np.unique(features)
    return _find_split(d.features, d.labels, counts, candidates, params.min_samples_leaf)


class TreeBuilder:
    """Greedy top-down CART growth."""

    def __init__(self, params: TreeParams, feature_sampler: Optional[FeatureSampler] = None):
        """
        Args:
            params: Growth limits
            feature_sampler: Maps the node's feature rows to the sorted candidate
                feature indices; None examines every feature
        """
        self.params = params
        self.feature_sampler = feature_sampler

    def _can_split(self, n_rows: int, counts: np.ndarray, depth: int) -> bool:
        if self.params.max_depth is not None and depth >= self.params.max_depth:
            return False
        if n_rows < self.params.min_samples_split:
            return False
        if n_rows < 2 * self.params.min_samples_leaf:
            return False
        return np.count_nonzero(counts) > 1

    def build(self, X: np.ndarray, y: np.ndarray, n_classes: int) -> DecisionTree:
        """
        Grow a tree; nodes are emitted in preorder (node, left subtree, right subtree).

        Args:
            X: N x P feature matrix
            y: Integer labels in [0, n_classes)
            n_classes: C

        Returns:
            Fitted DecisionTree
        """
        all_features = np.arange(X.shape[1])
        records: list[list] = []
        stack = [(np.arange(y.shape[0]), 0, -1, 0)]

        while stack:
            rows, depth, parent, slot = stack.pop()
            index = len(records)
            if parent >= 0:
                records[parent][slot] = index

            y_node = y[rows]
            counts = np.bincount(y_node, minlength=n_classes)
            split = None
            if self._can_split(rows.shape[0], counts, depth):
                X_node = X[rows]
                if self.feature_sampler is None:
                    candidates = all_features
                else:
                    candidates = self.feature_sampler(X_node)
                split = _find_split(
                    X_node, y_node, counts, candidates, self.params.min_samples_leaf
                )

            if split is None:
                records.append([LEAF, None, LEAF, LEAF, counts])
                continue

            records.append([split.feature, split.threshold, LEAF, LEAF, counts])
            go_left = X[rows, split.feature] <= split.threshold
            stack.append((rows[~go_left], depth + 1, index, 3))
            stack.append((rows[go_left], depth + 1, index, 2))

        nodes = [
            TreeNode(
                feature=feature,
                threshold=threshold,
                left=left,
                right=right,
                class_counts=tuple(int(c) for c in counts),
            )
            for feature, threshold, left, right, counts in records
        ]
        return DecisionTree(
            nodes=tuple(nodes), params=self.params, n_classes=n_classes, n_features=X.shape[1]
        )


def fit_tree(d: Dataset, params: TreeParams = TreeParams()) -> DecisionTree:
    """
    Fit a CART classifier. Fitting is deterministic.

    Args:
        d: Training data
        params: Growth limits

    Returns:
        Fitted tree
    """
    tree = TreeBuilder(params).build(d.features, d.labels, d.n_classes)
    logger.debug(
        f"Fitted tree on {d.n_rows} rows: {tree.node_count} nodes, depth {tree.depth}"
    )
    return tree


def predict_tree(t: DecisionTree, x: Sequence[float]) -> int:
    """
    Route one row to a leaf and return its class.

    Raises:
        DataError: On dimension mismatch
    """
    row = as_feature_vector(x, t.n_features)
    node = t.root
    while not node.is_leaf:
        node = t.nodes[node.left if row[node.feature] <= node.threshold else node.right]
    return node.predicted_class


def predict_tree_batch(t: DecisionTree, X) -> np.ndarray:
    """Vectorised predict_tree over the rows of X."""
    matrix = as_feature_matrix(X, t.n_features)
    return t.leaf_class(t.apply(matrix))


def _feature_names(t: DecisionTree, feature_names: Optional[Sequence[str]]) -> list[str]:
    if feature_names is None:
        return [f"x[{i}]" for i in range(t.n_features)]
    if len(feature_names) != t.n_features:
        raise UsageError(
            f"{len(feature_names)} feature names for a tree over {t.n_features} features"
        )
    return [str(name) for name in feature_names]


def decision_path(
    t: DecisionTree, x: Sequence[float], feature_names: Optional[Sequence[str]] = None
) -> list[PathStep]:
    """
    The internal nodes visited by ``x``, root first.

    Args:
        t: Fitted tree
        x: Feature vector
        feature_names: Names used in the steps (default ``x[i]``)

    Returns:
        Ordered PathSteps; empty for a single-leaf tree
    """
    names = _feature_names(t, feature_names)
    row = as_feature_vector(x, t.n_features)
    steps = []
    node = t.root
    while not node.is_leaf:
        went_left = bool(row[node.feature] <= node.threshold)
        steps.append(PathStep(node.feature, names[node.feature], node.threshold, went_left))
        node = t.nodes[node.left if went_left else node.right]
    return steps


def export_text(
    t: DecisionTree, feature_names: Sequence[str], class_names: Sequence[str]
) -> str:
    """
    Render a tree one node per line.

    Internal nodes read ``<feature> <= <threshold>`` and are followed by their
    left (condition true) then right subtree, indented one level. Leaves read
    ``class: <name> (<count>, ...)``.

    Raises:
        UsageError: If the name lists do not match the tree
    """
    names = _feature_names(t, feature_names)
    if len(class_names) != t.n_classes:
        raise UsageError(f"{len(class_names)} class names for {t.n_classes} classes")

    lines = []
    stack = [(0, 0)]
    while stack:
        index, level = stack.pop()
        node = t.nodes[index]
        prefix = INDENT * level
        if node.is_leaf:
            counts = ", ".join(str(c) for c in node.class_counts)
            lines.append(f"{prefix}class: {class_names[node.predicted_class]} ({counts})")
        else:
            lines.append(f"{prefix}{names[node.feature]} <= {node.threshold!r}")
            stack.append((node.right, level + 1))
            stack.append((node.left, level + 1))
    return "\n".join(lines)


def parse_text(
    text: str,
    feature_names: Sequence[str],
    class_names: Sequence[str],
    params: Optional[TreeParams] = None,
) -> DecisionTree:
    """
    Rebuild a tree from export_text output.

    Internal class counts are recovered as the sum of their children's.

    Raises:
        DataError: On malformed text or unknown names
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise DataError("empty tree text")
    feature_index = {str(name): i for i, name in enumerate(feature_names)}
    n_classes = len(class_names)
    records: list[list] = []
    position = 0

    def parse_node(level: int) -> int:
        nonlocal position
        if position >= len(lines):
            raise DataError("tree text ends before every internal node has two children")
        line = lines[position]
        prefix = INDENT * level
        if not line.startswith(prefix) or line[len(prefix) :].startswith(INDENT):
            raise DataError(f"line {position + 1}: expected indentation level {level}")
        body = line[len(prefix) :]
        position += 1
        index = len(records)

        if body.startswith("class: "):
            try:
                counts_text = body.rsplit(" (", 1)[1].rstrip(")")
                counts = tuple(int(c) for c in counts_text.split(","))
            except (IndexError, ValueError):
                raise DataError(f"line {position}: malformed leaf {body!r}") from None
            if len(counts) != n_classes:
                raise DataError(f"line {position}: expected {n_classes} class counts")
            records.append([LEAF, None, LEAF, LEAF, counts])
            return index

        try:
            name, threshold_text = body.rsplit(" <= ", 1)
            threshold = float(threshold_text)
        except ValueError:
            raise DataError(f"line {position}: malformed split {body!r}") from None
        if name not in feature_index:
            raise DataError(f"line {position}: unknown feature {name!r}")
        records.append([feature_index[name], threshold, LEAF, LEAF, None])
        left = parse_node(level + 1)
        right = parse_node(level + 1)
        records[index][2] = left
        records[index][3] = right
        records[index][4] = tuple(a + b for a, b in zip(records[left][4], records[right][4]))
        return index

    parse_node(0)
    if position != len(lines):
        raise DataError(f"line {position + 1}: text continues after the tree is complete")

    nodes = tuple(TreeNode(f, thr, l, r, counts) for f, thr, l, r, counts in records)
    return DecisionTree(
        nodes=nodes,
        params=params or TreeParams(max_depth=None),
        n_classes=n_classes,
        n_features=len(feature_names),
    )
