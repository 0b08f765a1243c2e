"""Random forest entity."""

from dataclasses import dataclass

from triagetree.exceptions import DataError
from triagetree.models.tree import DecisionTree
from triagetree.schemas.params import ForestParams


@dataclass(frozen=True, eq=False)
class RandomForest:
    """A bag of trees whose leaf class frequencies are averaged at prediction time."""

    trees: tuple[DecisionTree, ...]
    params: ForestParams
    n_classes: int
    n_features: int

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        if len(self.trees) != self.params.n_trees:
            raise DataError(
                f"forest holds {len(self.trees)} trees, params say {self.params.n_trees}"
            )
        if any(tree.n_classes != self.n_classes for tree in self.trees):
            raise DataError("all trees in a forest must share n_classes")

    def __repr__(self):
        return f"<RandomForest(n_trees={len(self.trees)}, n_classes={self.n_classes})>"
