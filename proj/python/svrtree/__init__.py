"""Classification trees for imbalanced data with surface-to-volume regularization."""

from svrtree._core import (
    Box,
    BoxUnion,
    ClassWeights,
    ConfusionMatrix,
    Dataset,
    MethodRun,
    MetricSet,
    RiskBreakdown,
    Tree,
    __version__,
    add_redundant_features,
    box_surface,
    box_volume,
    cart_fit,
    confusion,
    contact_area,
    derive_class_weights,
    fit,
    gini,
    grid_surface_oracle,
    intersection_volume,
    lambda_grid,
    load_dataset,
    make_dataset,
    metrics,
    nested_cv,
    prune_alphas,
    prune_at,
    resample,
    risk,
    stratified_folds,
    svr,
    toy_generate,
    tree_signed_impurity,
    union_surface,
    union_volume,
)

__all__ = [
    "Box",
    "BoxUnion",
    "ClassWeights",
    "ConfusionMatrix",
    "Dataset",
    "MethodRun",
    "MetricSet",
    "RiskBreakdown",
    "Tree",
    "__version__",
    "add_redundant_features",
    "box_surface",
    "box_volume",
    "cart_fit",
    "confusion",
    "contact_area",
    "derive_class_weights",
    "fit",
    "gini",
    "grid_surface_oracle",
    "intersection_volume",
    "lambda_grid",
    "load_dataset",
    "make_dataset",
    "metrics",
    "nested_cv",
    "prune_alphas",
    "prune_at",
    "resample",
    "risk",
    "stratified_folds",
    "svr",
    "toy_generate",
    "tree_signed_impurity",
    "union_surface",
    "union_volume",
]
