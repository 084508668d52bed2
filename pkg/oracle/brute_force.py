import dataclasses

import mpmath
import numpy as np
import scipy.ndimage
import scipy.optimize

import config
from eigen_analysis import ScalarFunctions, eigenvalue_from_barycentric
from log import logger, log_exectime
from simplex_tensor import check_dimension, simplex_tensor, contract_pow
from utils.exception_handler import InvalidDimensionError, InvalidInputError
from utils.helper import point_label


ORACLE_DIMENSIONS = (2, 3, 4)
MIN_GRID = 100

_FD_EPSILON = np.sqrt(np.finfo(float).eps)


@dataclasses.dataclass(frozen=True, eq=False)
class OracleZeroSet:
    """
    :param zeros: array of shape (m, n); each row a full barycentric vector (s_1, ..., s_n) of a zero of h
    :param residuals: |h| at each zero after refinement
    :param continuum: True if h vanishes identically on the simplex; then zeros is empty
    :param dropped: number of starting points for which the refinement did not reach a zero inside the simplex
    """
    n: int
    d: int
    grid: int
    zeros: np.ndarray
    residuals: np.ndarray
    continuum: bool = False
    dropped: int = 0

    def coordinates(self):
        """
        The zeros as points (s_1, ..., s_{n-1}) of the (n-1)-dimensional unit simplex.
        """
        return self.zeros[:, :-1]

    def to_dict(self):
        return {
            'n': self.n,
            'd': self.d,
            'grid': self.grid,
            'continuum': self.continuum,
            'dropped': self.dropped,
            'zeros': [
                {'label': point_label(s[:-1]), 's': s.tolist(), 'residual': float(r)}
                for s, r in zip(self.zeros, self.residuals)
            ],
        }


def default_grid(n):
    return config.ORACLE_GRID_BY_N[n]


def is_identically_zero(f, rng, samples=config.ORACLE_CONTINUUM_SAMPLES):
    """
    Tests |h| < config.ORACLE_CONTINUUM_TOL at random interior points of the simplex.
    """
    points = rng.dirichlet(np.ones(f.n), size=samples)[:, :-1]
    return bool(np.all(f.h_norm(points) < config.ORACLE_CONTINUUM_TOL))


def simplex_grid(n, grid):
    """
    All points i/grid with i in {0, ..., grid}^{n-1} as an array of shape (grid+1, ..., grid+1, n-1), together with
    the mask of the points inside the simplex (sum of i <= grid).
    """
    index = np.moveaxis(np.indices((grid + 1, ) * (n - 1)), 0, -1)
    inside = index.sum(axis=-1) <= grid
    return index / grid, inside


def _local_minima(norm):
    return norm == scipy.ndimage.minimum_filter(norm, size=3, mode='constant', cval=np.inf)


def _slab_minima(f, grid):
    """
    Local minima of |h| over the simplex grid of an n >= 3 simplex, scanned slab by slab along the first coordinate;
    only three slabs are held at a time, so grid = 400 stays affordable at n = 4.
    """
    rest = np.moveaxis(np.indices((grid + 1, ) * (f.n - 2)), 0, -1)
    blank = np.full(rest.shape[:-1], np.inf)

    def slab(i):
        if i > grid:
            return None
        index = np.concatenate([np.full(rest.shape[:-1] + (1, ), i), rest], axis=-1)
        inside = index.sum(axis=-1) <= grid
        points = index / grid
        norm = np.full(inside.shape, np.inf)
        norm[inside] = f.h_norm(points[inside])
        return points, inside, norm

    previous, current = None, slab(0)
    for i in range(grid + 1):
        following = slab(i + 1)
        window = np.stack([s[2] if s is not None else blank for s in (previous, current, following)])
        points, inside, norm = current
        yield points[inside & _local_minima(window)[1]]
        previous, current = current, following


def grid_candidates(f, grid):
    """
    Starting points for Newton: the local minima of |h| on the simplex grid and, for n = 2, the midpoints of the
    grid cells where h changes sign.
    :return: array of shape (m, n-1)
    """
    if f.n > 2:
        return np.concatenate(list(_slab_minima(f, grid)), axis=0)
    points, _ = simplex_grid(2, grid)
    values = f.h(points)[:, 0]
    sign_change = np.flatnonzero(values[:-1] * values[1:] < 0.)
    return np.concatenate([
        points[_local_minima(np.abs(values))],
        ((points[sign_change] + points[sign_change + 1]) / 2).reshape(-1, 1),
    ], axis=0)


def refine_candidates(f, candidates, grid, factor=config.ORACLE_REFINE_FACTOR, span=config.ORACLE_REFINE_SPAN):
    """
    Local minima of |h| on a sub-grid of spacing 1/(grid * factor) covering the coarse cells within span cells of each
    candidate; separates zeros lying closer together than the coarse spacing. The candidates themselves are kept.
    :param factor: even number of sub-cells per coarse cell
    :param span: half-width of the scanned box, in coarse cells
    :return: array of shape (m, n-1), without repeated points
    """
    fine = grid * factor
    reach = span * factor
    offsets = np.moveaxis(np.indices((2 * reach + 1, ) * (f.n - 1)), 0, -1) - reach
    box_interior = np.all(np.abs(offsets) < reach, axis=-1)
    refined = [np.rint(candidates * fine).astype(np.int64)]
    for base in refined[0]:
        index = base + offsets
        inside = np.all(index >= 0, axis=-1) & (index.sum(axis=-1) <= fine)
        norm = np.full(inside.shape, np.inf)
        norm[inside] = f.h_norm(index[inside] / fine)
        refined.append(index[inside & box_interior & _local_minima(norm)])
    return np.unique(np.concatenate(refined, axis=0), axis=0) / fine


def damped_newton(f, s0, tol, max_iter=config.NEWTON_MAX_ITER):
    """
    Damped Newton iteration on h with a finite-difference Jacobian; the least-squares step is halved (at most
    config.NEWTON_MAX_HALVINGS times) until |h| decreases.
    :return: (s, |h(s)|, converged)
    """
    s = np.array(s0, dtype=np.float64)
    r = f.h(s)
    norm = float(np.linalg.norm(r))
    for _ in range(max_iter):
        if norm <= tol:
            return s, norm, True
        jac = scipy.optimize.approx_fprime(s, f.h, _FD_EPSILON)
        step, *_ = np.linalg.lstsq(np.atleast_2d(jac), -r, rcond=None)
        t = 1.
        for _ in range(config.NEWTON_MAX_HALVINGS):
            s_new = s + t * step
            r_new = f.h(s_new)
            norm_new = float(np.linalg.norm(r_new))
            if norm_new < norm:
                break
            t *= config.NEWTON_DAMPING
        else:
            return s, norm, False
        s, r, norm = s_new, r_new, norm_new
    return s, norm, norm <= tol


def _mp_h(f):
    n1, d, sign = f.n + 1, f.d, int(f.sign)

    def g(x):
        return (n1 * x - 1) ** (d - 1) - sign

    def h(*s):
        total = mpmath.fsum(g(x) for x in s) + g(1 - mpmath.fsum(s))
        return [x * total - g(x) for x in s]

    return h


def polish_zero(f, s, dps=config.ORACLE_POLISH_DPS, max_steps=config.ORACLE_POLISH_MAX_STEPS):
    """
    Continues Newton on h in mpmath at dps significant digits. At a multiple zero of h, float64 Newton stalls where
    |h| reaches rounding level, which can be more than 1e-6 away from the zero; the extended precision gets past it.
    The residual is taken at the extended-precision zero: near a vertex g reaches n^{d-1}, and rounding the zero to
    float64 alone leaves |h| above 1e-12 there.
    :param s: array of shape (n-1,), typically a damped_newton result
    :return: (s, |h(s)|); s itself and its float64 residual if the Jacobian turns singular
    """
    h = _mp_h(f)
    with mpmath.workdps(dps):
        x0 = [mpmath.mpf(float(x)) for x in s]
        try:
            root = mpmath.findroot(
                h, x0, solver='mdnewton', tol=mpmath.mpf(10) ** (10 - dps), maxsteps=max_steps, verify=False
            )
        except ZeroDivisionError:
            s = np.asarray(s, dtype=np.float64)
            return s, float(f.h_norm(s))
        values = [root[i] for i in range(root.rows)] if isinstance(root, mpmath.matrix) else [root]
        return np.array([float(x) for x in values]), float(mpmath.norm(h(*values)))


def _to_simplex(s):
    """
    Full barycentric vector of s, clipped to the simplex; None if s lies outside by more than the tolerance.
    """
    full = np.append(s, 1. - s.sum())
    if np.any(full < -config.ORACLE_SIMPLEX_TOL):
        return None
    return np.clip(full, 0., None)


def cluster_zeros(found, tol=config.ORACLE_DEDUPE_TOL):
    """
    Merges refined zeros closer than tol, keeping the one with the smallest residual from each cluster.
    :param found: list of (residual, full barycentric vector)
    :return: (zeros, residuals) in lexicographic order of the zeros
    """
    zeros, residuals = [], []
    for residual, full in sorted(found, key=lambda item: item[0]):
        if any(np.linalg.norm(full - z) <= tol for z in zeros):
            continue
        zeros.append(full)
        residuals.append(residual)
    if not zeros:
        return np.empty((0, len(found[0][1]) if found else 0)), np.empty(0)
    zeros = np.array(zeros)
    order = np.lexsort(zeros.T[::-1])
    return zeros[order], np.array(residuals)[order]


@log_exectime
def brute_force_zeros(n, d, grid=None, seed=0):
    """
    All zeros of h in the unit simplex, found by a grid scan, a local sub-grid scan around each grid minimum, damped
    Newton and an extended-precision polish, independently of the structured enumeration.
    :param n: 2, 3 or 4
    :param d: order, >= 2
    :param grid: number of grid cells per simplex edge, >= 100; per-n default if None
    :param seed: seed of the interior sample used to detect the identically-zero cases
    :return: OracleZeroSet
    """
    n = check_dimension(n)
    d = check_dimension(d, name='d')
    if n not in ORACLE_DIMENSIONS:
        raise InvalidDimensionError(f'the brute-force oracle supports n in {ORACLE_DIMENSIONS}; got n={n}')
    if grid is None:
        grid = default_grid(n)
    if grid < MIN_GRID:
        raise InvalidInputError(f'grid must be >= {MIN_GRID}; got grid={grid}')

    f = ScalarFunctions(n, d)
    if is_identically_zero(f, np.random.default_rng(seed)):
        return OracleZeroSet(n, d, grid, zeros=np.empty((0, n)), residuals=np.empty(0), continuum=True)

    found = []
    dropped = 0
    for s0 in refine_candidates(f, grid_candidates(f, grid), grid):
        s, norm, _ = damped_newton(f, s0, config.ORACLE_H_TOL)
        if norm <= config.ORACLE_POLISH_START_TOL:
            s, norm = polish_zero(f, s)
        full = _to_simplex(s) if norm <= config.ORACLE_H_TOL else None
        if full is None:
            dropped += 1
            continue
        found.append((norm, full))
    if dropped:
        logger().info(f'n={n}, d={d}: {dropped} Newton starting points did not reach a zero in the simplex')

    zeros, residuals = cluster_zeros(found)
    return OracleZeroSet(n, d, grid, zeros=zeros.reshape(-1, n), residuals=residuals, dropped=dropped)


def oracle_eigen_residuals(zero_set):
    """
    For every zero s: |T z^{d-1} - mu z| with z = sum_k s_k v_k and mu = sum_k g(s_k) / n^{d-1}.
    """
    n, d = zero_set.n, zero_set.d
    f = ScalarFunctions(n, d)
    T = simplex_tensor(n, d)
    residuals = []
    for s in zero_set.zeros:
        z = T.frame.vectors[:, :n] @ s
        mu = eigenvalue_from_barycentric(f, s)
        residuals.append(float(np.linalg.norm(contract_pow(T, z) - mu * z)))
    return np.array(residuals)
