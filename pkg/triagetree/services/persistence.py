"""JSON persistence of trees, forests and ensembles."""

from pathlib import Path
from typing import Union

from pydantic import ValidationError

from triagetree.exceptions import DataError
from triagetree.models.ensemble import GraderDeferralEnsemble
from triagetree.models.forest import RandomForest
from triagetree.models.tree import LEAF, DecisionTree, TreeNode
from triagetree.schemas.documents import (
    FORMAT_VERSION,
    EnsembleDocument,
    ForestDocument,
    NodeRecord,
    TreeDocument,
)
from triagetree.utils.logger import get_logger

logger = get_logger(__name__)


def tree_to_document(t: DecisionTree) -> TreeDocument:
    return TreeDocument(
        n_classes=t.n_classes,
        n_features=t.n_features,
        params=t.params,
        nodes=[
            NodeRecord(
                feature=node.feature,
                threshold=node.threshold,
                left=node.left,
                right=node.right,
                class_counts=list(node.class_counts),
            )
            for node in t.nodes
        ],
    )


def tree_from_document(doc: TreeDocument) -> DecisionTree:
    """
    Rebuild a tree, checking that the node list is a well-formed preorder tree.

    Raises:
        DataError: On dangling or backward child indices, bad features or counts
    """
    n_nodes = len(doc.nodes)
    nodes = []
    for index, record in enumerate(doc.nodes):
        if len(record.class_counts) != doc.n_classes:
            raise DataError(f"node {index}: expected {doc.n_classes} class counts")
        if record.feature == LEAF:
            if record.left != LEAF or record.right != LEAF:
                raise DataError(f"node {index}: a leaf cannot have children")
        else:
            if record.feature >= doc.n_features or record.threshold is None:
                raise DataError(f"node {index}: invalid split")
            for child in (record.left, record.right):
                if not index < child < n_nodes:
                    raise DataError(f"node {index}: child index {child} out of order")
        nodes.append(
            TreeNode(
                feature=record.feature,
                threshold=record.threshold,
                left=record.left,
                right=record.right,
                class_counts=tuple(record.class_counts),
            )
        )
    return DecisionTree(
        nodes=tuple(nodes), params=doc.params, n_classes=doc.n_classes, n_features=doc.n_features
    )


def forest_to_document(f: RandomForest) -> ForestDocument:
    return ForestDocument(
        n_classes=f.n_classes,
        n_features=f.n_features,
        params=f.params,
        trees=[tree_to_document(tree) for tree in f.trees],
    )


def forest_from_document(doc: ForestDocument) -> RandomForest:
    return RandomForest(
        trees=tuple(tree_from_document(tree) for tree in doc.trees),
        params=doc.params,
        n_classes=doc.n_classes,
        n_features=doc.n_features,
    )


def ensemble_to_document(e: GraderDeferralEnsemble) -> EnsembleDocument:
    return EnsembleDocument(
        feature_names=list(e.feature_names),
        class_names=list(e.class_names),
        config=e.config,
        fit_stats=e.fit_stats,
        base=tree_to_document(e.base),
        grader=tree_to_document(e.grader),
        deferral=forest_to_document(e.deferral),
    )


def ensemble_from_document(doc: EnsembleDocument) -> GraderDeferralEnsemble:
    """
    Raises:
        DataError: If the embedded models disagree on dimensions
    """
    if doc.format_version != FORMAT_VERSION:
        raise DataError(f"unsupported model format version {doc.format_version}")
    n_features = len(doc.feature_names)
    n_classes = len(doc.class_names)
    base = tree_from_document(doc.base)
    grader = tree_from_document(doc.grader)
    deferral = forest_from_document(doc.deferral)
    if {base.n_features, grader.n_features, deferral.n_features} != {n_features}:
        raise DataError("models in the file disagree on the number of features")
    if base.n_classes != n_classes or deferral.n_classes != n_classes:
        raise DataError("models in the file disagree on the number of classes")
    if grader.n_classes != 2:
        raise DataError("the grader must have exactly 2 classes")
    return GraderDeferralEnsemble(
        base=base,
        deferral=deferral,
        grader=grader,
        fit_stats=doc.fit_stats,
        config=doc.config,
        feature_names=tuple(doc.feature_names),
        class_names=tuple(doc.class_names),
    )


def save_ensemble(e: GraderDeferralEnsemble, path: Union[str, Path]) -> None:
    """Write the ensemble as a single JSON document."""
    Path(path).write_text(ensemble_to_document(e).model_dump_json(), encoding="utf-8")
    logger.info(f"Saved ensemble to {path}")


def load_ensemble(path: Union[str, Path]) -> GraderDeferralEnsemble:
    """
    Read an ensemble written by save_ensemble.

    Raises:
        DataError: Missing file, invalid JSON or an inconsistent document
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"model file not found: {path}")
    try:
        doc = EnsembleDocument.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise DataError(f"{path}: not a valid ensemble document ({e.error_count()} errors)") from e
    return ensemble_from_document(doc)
