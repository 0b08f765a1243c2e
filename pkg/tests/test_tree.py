"""Tests for CART growth, prediction, decision paths and text export."""

from fractions import Fraction

import numpy as np
import pytest

from tests.conftest import make_dataset, random_dataset
from triagetree.exceptions import DataError, UsageError
from triagetree.models.tree import LEAF
from triagetree.schemas.params import TreeParams
from triagetree.services.tree_builder import (
    best_split,
    decision_path,
    export_text,
    fit_tree,
    gini_impurity,
    parse_text,
    predict_tree,
    predict_tree_batch,
)


# ---------------------------------------------------------------------------
# Reference implementation: plain loops over every feature and midpoint
# ---------------------------------------------------------------------------


def _score(left_counts, right_counts, n_left, n_right):
    left = sum(c * c for c in left_counts)
    right = sum(c * c for c in right_counts)
    return Fraction(left, n_left) + Fraction(right, n_right)


def _oracle_split(X, y, n_classes):
    n_rows = len(y)
    counts = [int(np.sum(y == k)) for k in range(n_classes)]
    best = Fraction(sum(c * c for c in counts), n_rows)
    choice = None
    for feature in range(X.shape[1]):
        values = sorted(set(X[:, feature].tolist()))
        for low, high in zip(values, values[1:]):
            threshold = (low + high) / 2.0
            if threshold >= high:
                threshold = low
            go_left = X[:, feature] <= threshold
            left = [int(np.sum(y[go_left] == k)) for k in range(n_classes)]
            right = [c - l_count for c, l_count in zip(counts, left)]
            n_left = int(go_left.sum())
            score = _score(left, right, n_left, n_rows - n_left)
            if score > best:
                best = score
                choice = (feature, threshold)
    return choice


def _oracle_predictions(X, y, n_classes, depth, X_eval):
    """Greedy exhaustive-midpoint tree, evaluated on X_eval."""
    counts = np.bincount(y, minlength=n_classes)
    if depth == 0 or np.count_nonzero(counts) < 2 or len(y) < 2:
        return np.full(X_eval.shape[0], int(np.argmax(counts)))
    split = _oracle_split(X, y, n_classes)
    if split is None:
        return np.full(X_eval.shape[0], int(np.argmax(counts)))
    feature, threshold = split
    train_left = X[:, feature] <= threshold
    eval_left = X_eval[:, feature] <= threshold
    out = np.empty(X_eval.shape[0], dtype=np.int64)
    out[eval_left] = _oracle_predictions(
        X[train_left], y[train_left], n_classes, depth - 1, X_eval[eval_left]
    )
    out[~eval_left] = _oracle_predictions(
        X[~train_left], y[~train_left], n_classes, depth - 1, X_eval[~eval_left]
    )
    return out


# ---------------------------------------------------------------------------


def test_gini_impurity_values():
    assert gini_impurity([5, 5]) == pytest.approx(0.5)
    assert gini_impurity([3, 1]) == pytest.approx(0.375)
    assert gini_impurity([10, 0]) == 0.0
    assert gini_impurity([1, 1, 1, 1]) == pytest.approx(0.75)
    with pytest.raises(UsageError):
        gini_impurity([0, 0])


def test_best_split_separable(tiny_dataset):
    split = best_split(tiny_dataset)
    assert split.feature == 0
    assert split.threshold == 3.5
    assert split.weighted_impurity == 0.0


def test_best_split_none_when_pure_or_xor(xor_dataset):
    pure = make_dataset([1, 2, 3], [0, 0, 0])
    assert best_split(pure) is None
    assert best_split(xor_dataset) is None


def test_best_split_alternating_labels_takes_lower_tie():
    # Midpoints 1.5 and 3.5 both give weighted impurity 1/3.
    d = make_dataset([1, 2, 3, 4], [0, 1, 0, 1])
    split = best_split(d)
    assert split.threshold == 1.5
    assert split.weighted_impurity == pytest.approx(1 / 3)


def test_best_split_exact_tie_with_different_count_patterns():
    # Feature 0 splits (2,0)|(1,3), feature 1 splits (0,2)|(3,1): equal scores.
    d = make_dataset(
        [[0, 5], [1, 4], [3, 2], [2, 3], [4, 1], [5, 0]],
        [0, 0, 0, 1, 1, 1],
    )
    split = best_split(d)
    assert (split.feature, split.threshold) == (0, 1.5)
    assert split.weighted_impurity == pytest.approx(0.25)
    other = best_split(d, features=[1])
    assert (other.feature, other.threshold) == (1, 1.5)
    assert other.weighted_impurity == split.weighted_impurity


def test_best_split_tie_prefers_lowest_feature():
    # Both features separate the classes identically.
    d = make_dataset([[0, 0], [1, 1], [2, 2], [3, 3]], [0, 0, 1, 1])
    split = best_split(d)
    assert split.feature == 0
    assert split.threshold == 1.5


def test_best_split_restricted_features():
    d = make_dataset([[0, 0], [1, 1], [2, 2], [3, 3]], [0, 0, 1, 1])
    assert best_split(d, features=[1]).feature == 1


def test_fit_tree_pure_leaves(tiny_dataset):
    tree = fit_tree(tiny_dataset)
    assert tree.node_count == 3
    assert tree.depth == 1
    assert predict_tree_batch(tree, tiny_dataset.features).tolist() == tiny_dataset.labels.tolist()


def test_fit_tree_single_class_is_leaf():
    tree = fit_tree(make_dataset([1, 2, 3], [0, 0, 0], ["a", "b"]))
    assert tree.node_count == 1
    assert tree.root.class_counts == (3, 0)


def test_fit_tree_xor_stays_a_leaf(xor_dataset):
    tree = fit_tree(xor_dataset)
    assert tree.node_count == 1


def test_four_point_xor_is_not_split_at_depth_two():
    # No single split lowers the Gini impurity of XOR, and zero-gain splits
    # are refused, so depth 2 cannot be reached from the root.
    d = make_dataset([[0, 0], [0, 1], [1, 0], [1, 1]], [0, 1, 1, 0])
    tree = fit_tree(d, TreeParams(max_depth=2))
    assert tree.node_count == 1
    assert np.mean(predict_tree_batch(tree, d.features) == d.labels) == 0.5


def test_fit_tree_respects_min_samples_leaf():
    d = make_dataset([1, 2, 3, 4, 5, 6], [0, 1, 1, 1, 1, 1])
    tree = fit_tree(d, TreeParams(min_samples_leaf=2))
    for node in tree.nodes:
        if node.is_leaf:
            assert sum(node.class_counts) >= 2


def test_predict_tree_threshold_goes_left(tiny_dataset):
    tree = fit_tree(tiny_dataset)
    assert predict_tree(tree, [3.5]) == 0
    assert predict_tree(tree, [3.5000001]) == 1


def test_predict_tree_dimension_mismatch(tiny_dataset):
    tree = fit_tree(tiny_dataset)
    with pytest.raises(DataError):
        predict_tree(tree, [1.0, 2.0])


def test_nodes_are_preorder():
    rng = np.random.default_rng(5)
    tree = fit_tree(random_dataset(rng, n_rows=150, n_features=3), TreeParams(max_depth=4))
    for index, node in enumerate(tree.nodes):
        if not node.is_leaf:
            assert node.left == index + 1
            assert node.right > node.left
        else:
            assert node.left == node.right == LEAF


def test_structural_bound_default_depth():
    rng = np.random.default_rng(11)
    for _ in range(20):
        d = random_dataset(rng, n_rows=200, n_features=3, n_classes=3)
        tree = fit_tree(d)
        assert tree.depth <= 4
        assert tree.node_count <= 31


def test_matches_reference_implementation():
    """200 small random instances: identical training accuracy and predictions."""
    rng = np.random.default_rng(2024)
    for _ in range(200):
        d = random_dataset(rng)
        depth = int(rng.integers(1, 3))
        tree = fit_tree(d, TreeParams(max_depth=depth))

        ours = predict_tree_batch(tree, d.features)
        reference = _oracle_predictions(d.features, d.labels, d.n_classes, depth, d.features)
        assert int(np.sum(ours == d.labels)) == int(np.sum(reference == d.labels))
        np.testing.assert_array_equal(ours, reference)


def test_deeper_never_less_accurate_on_training_data():
    rng = np.random.default_rng(3)
    for _ in range(30):
        d = random_dataset(rng, n_rows=120)
        accuracies = [
            np.mean(predict_tree_batch(fit_tree(d, TreeParams(max_depth=depth)), d.features)
                    == d.labels)
            for depth in (1, 2, 3, 4)
        ]
        assert accuracies == sorted(accuracies)


def test_decision_path(tiny_dataset):
    tree = fit_tree(tiny_dataset)
    steps = decision_path(tree, [2.0], ["size"])
    assert len(steps) == 1
    assert steps[0].went_left
    assert steps[0].describe() == "size <= 3.5"
    assert decision_path(tree, [9.0])[0].describe() == "x[0] > 3.5"


def test_decision_path_single_leaf_is_empty():
    tree = fit_tree(make_dataset([1, 2], [0, 0]))
    assert decision_path(tree, [1.0]) == []


def test_export_text_layout(tiny_dataset):
    text = export_text(fit_tree(tiny_dataset), ["size"], ["no", "yes"])
    assert text.splitlines() == [
        "size <= 3.5",
        "|   class: no (4, 0)",
        "|   class: yes (0, 4)",
    ]


def test_export_text_name_mismatch(tiny_dataset):
    with pytest.raises(UsageError):
        export_text(fit_tree(tiny_dataset), ["a", "b"], ["no", "yes"])


def test_parse_text_round_trip():
    rng = np.random.default_rng(8)
    names = ["alpha", "beta", "gamma"]
    classes = ["c0", "c1", "c2"]
    for _ in range(25):
        d = random_dataset(rng, n_rows=100, n_features=3, n_classes=3)
        tree = fit_tree(d)
        parsed = parse_text(export_text(tree, names, classes), names, classes, tree.params)

        assert parsed.nodes == tree.nodes
        assert export_text(parsed, names, classes) == export_text(tree, names, classes)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "a <= 1.0\n|   class: x (1, 0)",
        "a <= 1.0\n|   class: x (1, 0)\n|   class: y (0, 1)\nclass: x (1, 0)",
        "zeta <= 1.0\n|   class: x (1, 0)\n|   class: y (0, 1)",
        "class: x (1, 0, 3)",
    ],
)
def test_parse_text_rejects_malformed(text):
    with pytest.raises(DataError):
        parse_text(text, ["a"], ["x", "y"])
