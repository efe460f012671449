"""Biclustering by independent one-way clustering of rows and columns,
with exact brute-force oracles and worst-case cost-ratio certification
(1 + sqrt(2) for 0/1 matrices under L1, 2 for real matrices under L2)."""

from .cost import (
    BINARY_L1_RATIO_BOUND,
    REAL_L2_RATIO_BOUND,
    CostBreakdown,
    Norm,
    biclustering_cost,
    certificate_bound,
    columnwise_cost,
    dissimilarity,
    oneway_col_cost,
    oneway_row_cost,
    pooled_cost,
    rowwise_cost,
)
from .errors import (
    BoundViolationError,
    CapExceededError,
    CrossclustError,
    DescentViolationError,
    ValidationError,
)
from .model import (
    Bicluster,
    Biclustering,
    DataMatrix,
    ENUMERATION_CAP,
    Partition,
    enumerate_partitions,
    load_matrix_csv,
    submatrix,
)
from .bounds import (
    AlphaPoint,
    BlockDecomposition,
    GridSearchResult,
    L2Decomposition,
    LowerBoundReport,
    MarginReport,
    SwapStep,
    alpha_objective,
    analytic_optima,
    block_decomposition,
    grid_search_alpha,
    l2_decomposition,
    lower_bound_check,
    make_alpha_point,
    per_bicluster_bound,
    swap_normalize,
    terminal_structure,
)
from .oneway import (
    OnewaySolution,
    SolverMode,
    exact_kcluster,
    kcluster_cols,
    kcluster_rows,
    lloyd_kcluster,
)
from .rng import SplitMix64
from .search import (
    OptimalBiclustering,
    RatioReport,
    SchemeResult,
    exact_biclustering,
    ratio,
    run_scheme,
)
from .worstcase import (
    WorstCaseReport,
    WorstCaseSpec,
    planted_real_matrix,
    random_binary_matrix,
    random_real_matrix,
    worst_case_matrix,
    worst_case_report,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaPoint",
    "BINARY_L1_RATIO_BOUND",
    "Bicluster",
    "Biclustering",
    "BlockDecomposition",
    "BoundViolationError",
    "CapExceededError",
    "CostBreakdown",
    "CrossclustError",
    "DataMatrix",
    "DescentViolationError",
    "ENUMERATION_CAP",
    "GridSearchResult",
    "L2Decomposition",
    "LowerBoundReport",
    "MarginReport",
    "Norm",
    "OnewaySolution",
    "OptimalBiclustering",
    "Partition",
    "RatioReport",
    "REAL_L2_RATIO_BOUND",
    "SchemeResult",
    "SolverMode",
    "SplitMix64",
    "SwapStep",
    "ValidationError",
    "WorstCaseReport",
    "WorstCaseSpec",
    "alpha_objective",
    "analytic_optima",
    "biclustering_cost",
    "block_decomposition",
    "certificate_bound",
    "columnwise_cost",
    "dissimilarity",
    "enumerate_partitions",
    "exact_biclustering",
    "exact_kcluster",
    "grid_search_alpha",
    "kcluster_cols",
    "kcluster_rows",
    "l2_decomposition",
    "lloyd_kcluster",
    "load_matrix_csv",
    "lower_bound_check",
    "make_alpha_point",
    "oneway_col_cost",
    "oneway_row_cost",
    "per_bicluster_bound",
    "planted_real_matrix",
    "pooled_cost",
    "random_binary_matrix",
    "random_real_matrix",
    "ratio",
    "rowwise_cost",
    "run_scheme",
    "submatrix",
    "swap_normalize",
    "terminal_structure",
    "worst_case_matrix",
    "worst_case_report",
]
