from .power_iteration import (
    TpiStatus,
    TpiResult,
    TpiSurvey,
    LABEL_UNRESOLVED,
    LABEL_MAP_UNDEFINED,
    phi,
    tpi_run,
    tpi_batch,
    match_tolerance,
    match_limits,
    basin_labels,
    label_vector,
    tpi_survey,
)
from .jacobian import (
    jacobian,
    fd_jacobian,
)
from .spectral import (
    symmetric_eigenvalues,
    spectral_radius_sym,
)
from .robustness import (
    RobustnessClass,
    Family,
    RobustnessRecord,
    TableRow,
    classify_radius,
    spectral_radius_at,
    classify_eigenpair,
    classify_all,
    family_of,
    closed_form_radius_n2,
    table_rows,
    table_summary,
)
