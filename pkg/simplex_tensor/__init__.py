from .powers import int_power
from .frames import (
    SimplexFrame,
    build_simplex_frame,
    check_dimension,
    gramian,
    frame_operator,
    frame_deviations,
    frame_invariants_hold,
    tight_frame_deviation,
    random_unit_vectors,
)
from .tensor_ops import (
    SimplexTensor,
    make_tensor,
    simplex_tensor,
    contract_pow,
    contract_matrix,
    energy,
    rayleigh_quotient,
    eigen_residual,
    dense_tensor,
    dense_contraction,
)
