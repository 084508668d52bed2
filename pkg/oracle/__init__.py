from .brute_force import (
    ORACLE_DIMENSIONS,
    OracleZeroSet,
    default_grid,
    is_identically_zero,
    simplex_grid,
    grid_candidates,
    refine_candidates,
    damped_newton,
    polish_zero,
    cluster_zeros,
    brute_force_zeros,
    oracle_eigen_residuals,
)
from .comparison import (
    MatchReport,
    compare_with_enumeration,
)
