import dataclasses
import enum

import toolz

import config
from eigen_analysis import (
    SolutionKind,
    WholeSimplex,
    enumerate_barycentric,
    enumerate_eigenpairs,
    whole_sphere_eigenvalue,
    solution_label,
    solution_unit_vector,
)
from log import log_exectime
from simplex_tensor import simplex_tensor
from utils.exception_handler import InvalidInputError, WholeSphereContinuum
from .jacobian import jacobian
from .spectral import spectral_radius_sym


class RobustnessClass(enum.Enum):
    ROBUST = 'robust'
    NOT_ROBUST = 'not robust'
    MARGINAL = 'marginal'
    UNDEFINED = 'undefined'


class Family(enum.Enum):
    VERTEX = 'vertex'
    MIXED = 'mixed'


@dataclasses.dataclass(frozen=True, eq=False)
class RobustnessRecord:
    """
    :param spectral_radius: spectral radius of the Jacobian of phi at the eigenvector; None when mu = 0
    """
    eigenpair: object
    spectral_radius: float
    robustness_class: RobustnessClass

    def to_dict(self):
        return {
            'vector': self.eigenpair.vector.tolist(),
            'mu': self.eigenpair.eigenvalue,
            'rho': self.spectral_radius,
            'class': self.robustness_class.value,
        }


@dataclasses.dataclass(frozen=True, eq=False)
class TableRow:
    label: str
    mu: float
    spectral_radius: float
    robustness_class: RobustnessClass
    solution: object

    def to_dict(self):
        return {
            'label': self.label,
            'mu': self.mu,
            'rho': self.spectral_radius,
            'class': self.robustness_class.value,
        }


def classify_radius(rho, mu, margin=config.ROBUSTNESS_MARGIN):
    if rho is None or abs(mu) <= config.MU_ZERO_TOL:
        return RobustnessClass.UNDEFINED
    if rho < 1. - margin:
        return RobustnessClass.ROBUST
    elif rho > 1. + margin:
        return RobustnessClass.NOT_ROBUST
    else:
        return RobustnessClass.MARGINAL


def spectral_radius_at(T, x, mu):
    """
    Spectral radius of the Jacobian of phi at the eigenvector x, or None if mu = 0.
    """
    if abs(mu) <= config.MU_ZERO_TOL:
        return None
    return spectral_radius_sym(jacobian(T, x))


def classify_eigenpair(T, pair):
    rho = spectral_radius_at(T, pair.vector, pair.eigenvalue)
    return RobustnessRecord(
        eigenpair=pair, spectral_radius=rho, robustness_class=classify_radius(rho, pair.eigenvalue)
    )


def _raise_if_continuum(structure):
    if structure.is_whole_sphere:
        raise WholeSphereContinuum(structure.n, structure.d, structure.mu)


@log_exectime
def classify_all(n, d, structure=None):
    """
    One robustness record per enumerated eigenpair, in the order of the eigenstructure.
    :param structure: EigenStructure of (n, d), enumerated if not given
    :raises WholeSphereContinuum: for d = 2 and for n = 2, d = 4
    """
    if structure is None:
        structure = enumerate_eigenpairs(n, d)
    _raise_if_continuum(structure)
    T = simplex_tensor(n, d)
    return [classify_eigenpair(T, pair) for pair in structure.pairs]


def family_of(solution):
    """
    For n = 2: eigenvectors collinear with a frame vector (uniform solutions) are Vertex, two-level ones Mixed.
    """
    if solution.n != 2:
        raise InvalidInputError(f'families are defined for n = 2 only; got n={solution.n}')
    return Family.VERTEX if solution.kind is SolutionKind.UNIFORM else Family.MIXED


def closed_form_radius_n2(d, family):
    """
    Spectral radius of the Jacobian of phi at the eigenvectors of the n = 2 simplex tensor:
    3(d-1)/(2^{d-1}+1) at the vertices for even d, (d-1)/3 for the mixed family (even d >= 6),
    3(d-1)/(2^{d-1}-1) at the vertices for odd d.
    """
    family = Family(family)
    if d < 3:
        raise InvalidInputError(f'closed forms exist for d >= 3; got d={d}')
    if family is Family.VERTEX:
        if d % 2 == 0:
            return 3. * (d - 1) / (2 ** (d - 1) + 1)
        return 3. * (d - 1) / (2 ** (d - 1) - 1)
    if d % 2 == 1 or d < 6:
        raise InvalidInputError(f'the mixed family exists for even d >= 6 only; got d={d}')
    return (d - 1) / 3.


def _row_order(solution):
    if solution.kind is SolutionKind.UNIFORM:
        return 0, len(solution.support), solution.support
    return (1, ) + solution.sizes + (solution.support_low, solution.support_high, solution.s_low)


def table_rows(n, d):
    """
    One row per canonical zero of h, i.e. per barycentric solution with support in {1, ..., n}: its label,
    the eigenvalue of the assembled normalized eigenvector and the robustness of that eigenvector.
    :raises WholeSphereContinuum: for d = 2 and for n = 2, d = 4
    """
    canonical = enumerate_barycentric(n, d)
    if isinstance(canonical, WholeSimplex):
        raise WholeSphereContinuum(n, d, whole_sphere_eigenvalue(n, d))
    T = simplex_tensor(n, d)
    rows = []
    for solution in sorted(canonical, key=_row_order):
        x = solution_unit_vector(solution)
        mu = float(solution.eigenvalue())
        rho = spectral_radius_at(T, x, mu)
        rows.append(TableRow(
            label=solution_label(solution),
            mu=mu,
            spectral_radius=rho,
            robustness_class=classify_radius(rho, mu),
            solution=solution,
        ))
    return rows


def table_summary(rows):
    """
    Number of rows per robustness class, in the order of RobustnessClass.
    """
    counts = toolz.frequencies(row.robustness_class for row in rows)
    return {c.value: counts.get(c, 0) for c in RobustnessClass}
