"""ordboost: transparent regression on permutations via order constraints.

The model is a baseline plus one coefficient per order constraint ("item a
before item b before ..."), fitted by greedy gradient boosting over a pruned
breadth-first search of the constraint space. Sessions expose the same
machinery interactively: expand a constraint into its best refinements,
collapse it back, simplify, restart, revert.
"""

from ._kernels import BACKEND as kernel_backend
from .boost import (
    ScoredConstraint,
    fit_auto,
    fit_coefficient,
    fit_sequential,
    generate_children,
    gradient_score,
    minimal_constraints,
    predict,
    predict_batch,
    residuals,
    search_best_constraint,
    select_top_l,
    upper_bound,
)
from .core import (
    Constraint,
    Dataset,
    Hyperparams,
    Model,
    Permutation,
    validate_permutation,
)
from .data import (
    PlantedSpec,
    SplitSpec,
    generate_planted,
    load_csv,
    save_csv,
    split,
)
from .featurize import SupportVector, feature_matrix, fulfills, support_vector
from .metrics import MetricsReport, evaluate, mae, mse, naive_baseline, r2, report
from .session import (
    Session,
    collapse,
    create_session,
    expand,
    export_session,
    finalize,
    restart,
    revert,
    simplify,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "ScoredConstraint",
    "fit_auto",
    "fit_coefficient",
    "fit_sequential",
    "generate_children",
    "gradient_score",
    "minimal_constraints",
    "predict",
    "predict_batch",
    "residuals",
    "search_best_constraint",
    "select_top_l",
    "upper_bound",
    "Constraint",
    "Dataset",
    "Hyperparams",
    "Model",
    "Permutation",
    "validate_permutation",
    "PlantedSpec",
    "SplitSpec",
    "generate_planted",
    "load_csv",
    "save_csv",
    "split",
    "SupportVector",
    "feature_matrix",
    "fulfills",
    "support_vector",
    "MetricsReport",
    "evaluate",
    "mae",
    "mse",
    "naive_baseline",
    "r2",
    "report",
    "Session",
    "collapse",
    "create_session",
    "expand",
    "export_session",
    "finalize",
    "restart",
    "revert",
    "simplify",
    "__version__",
]
