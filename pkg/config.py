"""
Numerical tolerances and defaults shared by all packages.
"""

# frames
FRAME_TOL = 1e-14
FRAME_SUM_TOL = 1e-13
TIGHT_FRAME_RTOL = 1e-12

# tensor_ops
DENSE_CAPACITY = 10 ** 7

# eigenstructure
ROOT_GRID_POINTS_PER_DEGREE = 64
S_STAR_EXCLUSION = 1e-12
TWO_LEVEL_SUM_TOL = 1e-12
TWO_LEVEL_P_RTOL = 1e-10
DEDUPE_TOL = 1e-10
RESIDUAL_TOL = 1e-10
ZERO_COORD_TOL = 1e-12

# dynamics
MAP_NORM_THRESHOLD = 1e-14
TPI_TOL = 1e-12
TPI_MAX_ITER = 10000
TPI_MATCH_FLOOR = 1e-9
ROBUSTNESS_MARGIN = 1e-9
MU_ZERO_TOL = 1e-12
SYMMETRY_TOL = 1e-10
JACOBI_OFFDIAG_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 100

# oracle
ORACLE_GRID_BY_N = {2: 1000, 3: 400, 4: 400}
ORACLE_REFINE_FACTOR = 4
ORACLE_REFINE_SPAN = 2
ORACLE_H_TOL = 1e-12
ORACLE_POLISH_START_TOL = 1e-6
ORACLE_POLISH_DPS = 50
ORACLE_POLISH_MAX_STEPS = 100
ORACLE_CONTINUUM_TOL = 1e-13
ORACLE_CONTINUUM_SAMPLES = 50
ORACLE_DEDUPE_TOL = 1e-8
ORACLE_SIMPLEX_TOL = 1e-12
ORACLE_MATCH_TOL = 1e-6
ORACLE_EIGEN_RESIDUAL_TOL = 1e-9
NEWTON_DAMPING = 0.5
NEWTON_MAX_HALVINGS = 60
NEWTON_MAX_ITER = 100

# basins
BASIN_MIN_RESOLUTION = 16
BASIN_BLOCK_SIZE = 8192

# verify
FD_STEP = 1e-6
FD_RTOL = 1e-6
KERNEL_TOL = 1e-11
TPI_SURVEY_STARTS = 1000
TABLE_TOL = 1e-10

# request cache
RESULT_EXPIRE = 3600 * 24 * 7  # 1 week
IN_PROGRESS_EXPIRE = 30  # 30 sec
FAIL_EXPIRE = 30  # 30 sec
