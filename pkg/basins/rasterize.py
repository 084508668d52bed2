import dataclasses
import enum

import numpy as np
import tqdm
import xarray as xr

import config
from dynamics import TpiStatus, LABEL_UNRESOLVED, LABEL_MAP_UNDEFINED, tpi_batch, match_limits, basin_labels
from eigen_analysis import enumerate_eigenpairs
from log import log_exectime
from simplex_tensor import simplex_tensor
from utils.exception_handler import InvalidDimensionError, InvalidInputError, WholeSphereContinuum


BASIN_DIMENSIONS = (2, 3)


class ParametrizationKind(enum.Enum):
    CIRCLE = 'circle'
    SPHERE = 'sphere'


@dataclasses.dataclass(frozen=True)
class Parametrization:
    """
    Circle: angles theta_i = 2 pi i / res_theta.
    Sphere: equirectangular grid theta_i = pi (i + 1/2) / res_theta (polar angle), phi_j = 2 pi j / res_phi,
    cells in row-major order (i, j).
    """
    kind: ParametrizationKind
    res_theta: int
    res_phi: int = None

    @property
    def shape(self):
        if self.kind is ParametrizationKind.CIRCLE:
            return 1, self.res_theta
        return self.res_theta, self.res_phi

    @property
    def size(self):
        rows, cols = self.shape
        return rows * cols


def circle(resolution):
    return Parametrization(ParametrizationKind.CIRCLE, resolution)


def sphere(res_theta, res_phi=None):
    return Parametrization(ParametrizationKind.SPHERE, res_theta, 2 * res_theta if res_phi is None else res_phi)


def circle_angles(resolution):
    return 2. * np.pi * np.arange(resolution) / resolution


def sphere_angles(res_theta, res_phi):
    """
    :return: (theta, phi) of all cells, each of length res_theta * res_phi, row-major
    """
    theta = np.pi * (np.arange(res_theta) + 0.5) / res_theta
    phi = 2. * np.pi * np.arange(res_phi) / res_phi
    theta, phi = np.meshgrid(theta, phi, indexing='ij')
    return theta.ravel(), phi.ravel()


def circle_starts(resolution):
    theta = circle_angles(resolution)
    return np.column_stack([np.cos(theta), np.sin(theta)])


def sphere_starts(res_theta, res_phi):
    theta, phi = sphere_angles(res_theta, res_phi)
    return np.column_stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


@dataclasses.dataclass(frozen=True, eq=False)
class BasinMap:
    """
    :param data: xarray.Dataset over the dimension 'cell' with the variables limit_index, iterations and status
    (TpiStatus values) and the coordinates theta (and phi for the sphere)
    :param structure: the EigenStructure the limits were matched against; limit_index 2k (2k+1) denotes
    structure.pairs[k].vector (its negative), -1 Unresolved, -2 MapUndefined
    """
    n: int
    d: int
    parametrization: Parametrization
    data: xr.Dataset
    structure: object

    @property
    def limit_index(self):
        return self.data['limit_index'].values

    @property
    def iterations(self):
        return self.data['iterations'].values

    @property
    def status(self):
        return self.data['status'].values

    def limit_grid(self):
        """
        The limit indices as an array of the raster shape of the parametrization.
        """
        return self.limit_index.reshape(self.parametrization.shape)

    def distinct_limits(self):
        labels = np.unique(self.limit_index)
        return labels[labels >= 0]

    def converged_fraction(self):
        return float(np.mean(self.status == TpiStatus.CONVERGED.value))

    def summary(self):
        return {
            'n': self.n,
            'd': self.d,
            'parametrization': self.parametrization.kind.value,
            'shape': list(self.parametrization.shape),
            'distinct_limits': self.distinct_limits().tolist(),
            'converged_fraction': self.converged_fraction(),
            'unresolved': int(np.sum(self.limit_index == LABEL_UNRESOLVED)),
            'map_undefined': int(np.sum(self.limit_index == LABEL_MAP_UNDEFINED)),
        }


def _check_resolution(name, value):
    if value is None or value < config.BASIN_MIN_RESOLUTION:
        raise InvalidInputError(f'{name} must be >= {config.BASIN_MIN_RESOLUTION}; got {name}={value}')


@log_exectime
def rasterize(n, d, resolution, res_phi=None, tol=config.TPI_TOL, max_iter=config.TPI_MAX_ITER, progress=False):
    """
    Runs the tensor power iteration from every cell of a raster of the unit circle (n = 2) or of the unit sphere
    (n = 3) and labels each cell with the enumerated eigenvector its trajectory converges to.
    :param resolution: number of angles for the circle, number of polar angles for the sphere; >= 16
    :param res_phi: number of azimuthal angles for the sphere; 2 * resolution if None
    :param progress: show a progress bar over the cell blocks
    :return: BasinMap
    """
    if n not in BASIN_DIMENSIONS:
        raise InvalidDimensionError(f'basin maps are drawn for n in {BASIN_DIMENSIONS}; got n={n}')
    _check_resolution('resolution', resolution)
    if n == 2:
        parametrization = circle(resolution)
        theta = circle_angles(resolution)
        starts = circle_starts(resolution)
        coords = {'theta': ('cell', theta)}
    else:
        parametrization = sphere(resolution, res_phi)
        _check_resolution('res_phi', parametrization.res_phi)
        theta, phi = sphere_angles(parametrization.res_theta, parametrization.res_phi)
        starts = sphere_starts(parametrization.res_theta, parametrization.res_phi)
        coords = {'theta': ('cell', theta), 'phi': ('cell', phi)}
    if not tol > 0. or max_iter < 1:
        raise InvalidInputError(f'need tol > 0 and max_iter >= 1; got tol={tol}, max_iter={max_iter}')

    structure = enumerate_eigenpairs(n, d)
    if structure.is_whole_sphere:
        raise WholeSphereContinuum(n, d, structure.mu)
    T = simplex_tensor(n, d)

    labels, iterations, status = [], [], []
    block_size = config.BASIN_BLOCK_SIZE
    for start in tqdm.tqdm(range(0, len(starts), block_size), disable=not progress, desc='basins'):
        limits, block_iterations, block_status = tpi_batch(T, starts[start:start + block_size], tol, max_iter)
        index, sign = match_limits(structure, limits, tol=tol)
        labels.append(basin_labels(index, sign, block_status))
        iterations.append(block_iterations)
        status.append(block_status)

    data = xr.Dataset(
        data_vars={
            'limit_index': ('cell', np.concatenate(labels)),
            'iterations': ('cell', np.concatenate(iterations)),
            'status': ('cell', np.concatenate(status)),
        },
        coords={'cell': np.arange(len(starts)), **coords},
        attrs={'n': n, 'd': d, 'tol': tol, 'max_iter': max_iter},
    )
    return BasinMap(n=n, d=d, parametrization=parametrization, data=data, structure=structure)


def generator_angles(basin_map):
    """
    Angles of the frame vectors v_k and -v_k: theta for the circle, (theta, phi) pairs for the sphere.
    """
    vectors = simplex_tensor(basin_map.n, basin_map.d).frame.vectors.T
    vectors = np.concatenate([vectors, -vectors])
    if basin_map.parametrization.kind is ParametrizationKind.CIRCLE:
        return np.mod(np.arctan2(vectors[:, 1], vectors[:, 0]), 2. * np.pi)
    theta = np.arccos(np.clip(vectors[:, 2], -1., 1.))
    phi = np.mod(np.arctan2(vectors[:, 1], vectors[:, 0]), 2. * np.pi)
    return np.column_stack([theta, phi])
