import dataclasses
import enum
import math

import numba
import numpy as np

import config
from log import log_args
from simplex_tensor import contract_pow, random_unit_vectors
from simplex_tensor.powers import _int_power
from utils.exception_handler import InvalidInputError, MapUndefined


STATUS_CONVERGED = 0
STATUS_MAX_ITERATIONS = 1
STATUS_MAP_UNDEFINED = 2

LABEL_UNRESOLVED = -1
LABEL_MAP_UNDEFINED = -2


class TpiStatus(enum.Enum):
    CONVERGED = STATUS_CONVERGED
    MAX_ITERATIONS = STATUS_MAX_ITERATIONS
    MAP_UNDEFINED = STATUS_MAP_UNDEFINED


@dataclasses.dataclass(frozen=True, eq=False)
class TpiResult:
    """
    :param limit: the unit limit vector if converged, otherwise None
    :param last_iterate: the final iterate, whatever the status
    :param matched_eigenpair: index into the eigenstructure's pairs, or None
    :param matched_sign: +1 or -1 (the limit is matched_sign times the record's vector), or None
    """
    limit: np.ndarray
    last_iterate: np.ndarray
    status: TpiStatus
    iterations: int
    matched_eigenpair: int = None
    matched_sign: int = None

    def to_dict(self):
        return {
            'status': self.status.name.lower(),
            'iterations': self.iterations,
            'limit': None if self.limit is None else self.limit.tolist(),
            'matched_eigenpair': self.matched_eigenpair,
            'matched_sign': self.matched_sign,
        }


def phi(T, x):
    """
    The normalized power map x -> T x^{d-1} / |T x^{d-1}|.
    :raises MapUndefined: if |T x^{d-1}| <= config.MAP_NORM_THRESHOLD
    """
    y = contract_pow(T, x)
    norm = float(np.linalg.norm(y))
    if norm <= config.MAP_NORM_THRESHOLD:
        raise MapUndefined(norm)
    return y / norm


@numba.njit
def _tpi_single(vectors, weights, d, x0, tol, max_iter, threshold):
    """
    Sign-aligned tensor power iteration x <- s phi(x), s = sign <phi(x), x>, until
    min(|x_new - x|, |x_new + x|) < tol.
    :param vectors: n x (n+1) frame array
    :param weights: n+1 weights
    :param d: order of the tensor
    :param x0: unit start vector
    :return: (last iterate, number of iterations, status code)
    """
    n, r = vectors.shape
    x = x0.copy()
    y = np.empty(n)
    for it in range(1, max_iter + 1):
        y[:] = 0.
        for k in range(r):
            ip = 0.
            for i in range(n):
                ip += vectors[i, k] * x[i]
            c = weights[k] * _int_power(ip, d - 1)
            for i in range(n):
                y[i] += c * vectors[i, k]
        norm = 0.
        dot = 0.
        for i in range(n):
            norm += y[i] * y[i]
            dot += y[i] * x[i]
        norm = math.sqrt(norm)
        if norm <= threshold:
            return x, it, STATUS_MAP_UNDEFINED
        s = 1. / norm if dot >= 0. else -1. / norm
        diff_minus = 0.
        diff_plus = 0.
        for i in range(n):
            y[i] *= s
            diff_minus += (y[i] - x[i]) ** 2
            diff_plus += (y[i] + x[i]) ** 2
            x[i] = y[i]
        if math.sqrt(min(diff_minus, diff_plus)) < tol:
            return x, it, STATUS_CONVERGED
    return x, max_iter, STATUS_MAX_ITERATIONS


@numba.njit(parallel=True)
def _tpi_batch(vectors, weights, d, starts, tol, max_iter, threshold):
    m, n = starts.shape
    limits = np.empty((m, n))
    iterations = np.empty(m, dtype=np.int64)
    status = np.empty(m, dtype=np.int8)
    for j in numba.prange(m):
        x, it, st = _tpi_single(vectors, weights, d, starts[j], tol, max_iter, threshold)
        limits[j] = x
        iterations[j] = it
        status[j] = st
    return limits, iterations, status


def tpi_batch(T, starts, tol=config.TPI_TOL, max_iter=config.TPI_MAX_ITER):
    """
    Runs the tensor power iteration from every row of starts, in parallel.
    :return: (limits, iterations, status) arrays
    """
    starts = np.ascontiguousarray(starts, dtype=np.float64)
    return _tpi_batch(
        T.frame.vectors, T.weights, T.d, starts, float(tol), int(max_iter), config.MAP_NORM_THRESHOLD
    )


def match_tolerance(tol):
    return max(10. * tol, config.TPI_MATCH_FLOOR)


def match_limits(structure, limits, tol=config.TPI_TOL):
    """
    Nearest enumerated eigenvector direction (either sign) of each limit.
    :param structure: discrete EigenStructure
    :param limits: array of shape (m, n)
    :return: (index, sign) arrays; index -1 and sign 0 where nothing lies within match_tolerance(tol)
    """
    limits = np.atleast_2d(limits)
    vectors = structure.vectors()
    if len(vectors) == 0:
        return np.full(len(limits), -1), np.zeros(len(limits), dtype=int)
    dist_plus = np.linalg.norm(limits[:, None, :] - vectors[None, :, :], axis=2)
    dist_minus = np.linalg.norm(limits[:, None, :] + vectors[None, :, :], axis=2)
    nearest_plus = dist_plus.argmin(axis=1)
    nearest_minus = dist_minus.argmin(axis=1)
    rows = np.arange(len(limits))
    d_plus = dist_plus[rows, nearest_plus]
    d_minus = dist_minus[rows, nearest_minus]
    use_plus = d_plus <= d_minus
    index = np.where(use_plus, nearest_plus, nearest_minus)
    sign = np.where(use_plus, 1, -1)
    within = np.minimum(d_plus, d_minus) <= match_tolerance(tol)
    return np.where(within, index, -1), np.where(within, sign, 0)


def basin_labels(index, sign, status):
    """
    Label of a trajectory: 2 * record index (+1 for the negated vector) when converged and matched,
    LABEL_UNRESOLVED after max_iter or when unmatched, LABEL_MAP_UNDEFINED when the map broke down.
    """
    labels = np.where(index >= 0, 2 * index + (sign < 0), LABEL_UNRESOLVED)
    labels = np.where(status == STATUS_CONVERGED, labels, LABEL_UNRESOLVED)
    return np.where(status == STATUS_MAP_UNDEFINED, LABEL_MAP_UNDEFINED, labels).astype(np.int64)


def label_vector(structure, label):
    """
    The signed limit vector designated by a basin label.
    """
    vector = structure.pairs[label // 2].vector
    return -vector if label % 2 else vector


@log_args
def tpi_run(T, x0, tol=config.TPI_TOL, max_iter=config.TPI_MAX_ITER, structure=None):
    """
    One tensor power iteration trajectory. MapUndefined is reported as the status of the result.
    :param structure: optional discrete EigenStructure to match the limit against
    :return: TpiResult
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.shape != (T.n, ):
        raise InvalidInputError(f'start vector must have n={T.n} entries; got shape {x0.shape}')
    if abs(np.linalg.norm(x0) - 1.) > 1e-12:
        raise InvalidInputError(f'start vector must be a unit vector; got norm {np.linalg.norm(x0)!r}')
    if not tol > 0. or max_iter < 1:
        raise InvalidInputError(f'need tol > 0 and max_iter >= 1; got tol={tol}, max_iter={max_iter}')

    x, iterations, status = _tpi_single(
        T.frame.vectors, T.weights, T.d, x0, float(tol), int(max_iter), config.MAP_NORM_THRESHOLD
    )
    status = TpiStatus(int(status))
    limit = x if status is TpiStatus.CONVERGED else None
    matched, sign = None, None
    if limit is not None and structure is not None and not structure.is_whole_sphere:
        index, signs = match_limits(structure, x[None, :], tol=tol)
        if index[0] >= 0:
            matched, sign = int(index[0]), int(signs[0])
    return TpiResult(
        limit=limit, last_iterate=x, status=status, iterations=int(iterations),
        matched_eigenpair=matched, matched_sign=sign
    )


@dataclasses.dataclass(frozen=True)
class TpiSurvey:
    starts: int
    label_counts: dict
    unresolved: int
    map_undefined: int
    unmatched: int = 0


def tpi_survey(T, structure, count=config.TPI_SURVEY_STARTS, seed=0, tol=config.TPI_TOL,
               max_iter=config.TPI_MAX_ITER):
    """
    Runs the tensor power iteration from `count` seeded random unit vectors and counts the limits per basin label.
    Converged runs whose limit matches no enumerated eigenvector are counted both as unresolved and as unmatched.
    """
    rng = np.random.default_rng(seed)
    starts = random_unit_vectors(T.n, count, rng)
    limits, _, status = tpi_batch(T, starts, tol=tol, max_iter=max_iter)
    index, sign = match_limits(structure, limits, tol=tol)
    labels = basin_labels(index, sign, status)
    values, counts = np.unique(labels[labels >= 0], return_counts=True)
    return TpiSurvey(
        starts=count,
        label_counts={int(v): int(c) for v, c in zip(values, counts)},
        unresolved=int(np.sum(labels == LABEL_UNRESOLVED)),
        map_undefined=int(np.sum(labels == LABEL_MAP_UNDEFINED)),
        unmatched=int(np.sum((status == STATUS_CONVERGED) & (index < 0))),
    )
