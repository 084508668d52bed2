from .scalar_functions import (
    ScalarFunctions,
    p_coefficients,
    eigenvalue_from_barycentric,
    normalize_eigenpair,
    h_n2_direct,
    h_n2_factorized,
)
from .roots import (
    RootsOfR,
    matching_polynomial,
    roots_of_r,
)
from .eigenstructure import (
    SolutionKind,
    UniformOnK,
    TwoLevel,
    WholeSimplex,
    EigenPair,
    StructureKind,
    EigenStructure,
    is_continuum,
    whole_sphere_eigenvalue,
    eigenvalue_uniform,
    eigenvalue_two_level,
    enumerate_barycentric,
    expand_symmetry,
    enumerate_eigenpairs,
    canonical_sign,
    orbit_key,
    solution_label,
    solution_unit_vector,
    permutation_image,
)
