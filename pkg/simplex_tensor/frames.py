import dataclasses
import numbers

import numpy as np

import config
from utils.exception_handler import InvalidDimensionError


@dataclasses.dataclass(frozen=True, eq=False)
class SimplexFrame:
    """
    The n+1 equiangular unit vectors v_1, ..., v_{n+1} of R^n, stored column-wise in an n x (n+1) read-only array.
    """
    n: int
    vectors: np.ndarray

    @property
    def size(self):
        return self.n + 1

    def vector(self, k):
        return self.vectors[:, k]


def check_dimension(n, name='n', minimum=2):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < minimum:
        raise InvalidDimensionError(f'{name} must be an integer >= {minimum}; got {name}={n!r}')
    return int(n)


def build_simplex_frame(n):
    """
    Regular simplex frame by the closed form: for k <= n, v_k is the renormalized orthogonal projection of e_k onto
    the complement of the all-ones vector (shifted so that the frame sums to zero), and v_{n+1} = -1/sqrt(n) * 1.
    :param n: dimension, int >= 2
    :return: SimplexFrame
    """
    n = check_dimension(n)
    a = np.sqrt(1. + 1. / n)
    b = (np.sqrt(n + 1.) - 1.) / n ** 1.5
    vectors = np.empty((n, n + 1), dtype=np.float64)
    vectors[:, :n] = a * np.eye(n) - b
    vectors[:, n] = -1. / np.sqrt(n)
    vectors.setflags(write=False)
    return SimplexFrame(n=n, vectors=vectors)


def gramian(frame):
    g = frame.vectors.T @ frame.vectors
    g = (g + g.T) / 2
    g.setflags(write=False)
    return g


def frame_operator(frame):
    """
    V V^T, which equals (n+1)/n * I for the simplex frame.
    """
    m = frame.vectors @ frame.vectors.T
    return (m + m.T) / 2


def frame_deviations(frame):
    """
    Maximal deviations of the frame from its defining identities.
    :return: dict with keys 'norm', 'angle', 'sum', 'frame_operator'
    """
    n = frame.n
    g = gramian(frame)
    off_diagonal = ~np.eye(n + 1, dtype=bool)
    return {
        'norm': float(np.max(np.abs(np.diag(g) - 1.))),
        'angle': float(np.max(np.abs(g[off_diagonal] + 1. / n))),
        'sum': float(np.max(np.abs(frame.vectors.sum(axis=1)))),
        'frame_operator': float(np.max(np.abs(frame_operator(frame) - (n + 1.) / n * np.eye(n)))),
    }


def frame_invariants_hold(frame):
    dev = frame_deviations(frame)
    return (
        dev['norm'] <= config.FRAME_TOL and
        dev['angle'] <= config.FRAME_TOL and
        dev['sum'] <= config.FRAME_SUM_TOL and
        dev['frame_operator'] <= config.FRAME_SUM_TOL
    )


def tight_frame_deviation(frame, xs):
    """
    Maximal relative deviation of sum_k <v_k, x>^2 from (n+1)/n * |x|^2 over the rows x of xs.
    :param frame: SimplexFrame
    :param xs: array of shape (m, n)
    :return: float
    """
    xs = np.atleast_2d(xs)
    lhs = np.sum((xs @ frame.vectors) ** 2, axis=1)
    rhs = (frame.n + 1.) / frame.n * np.sum(xs ** 2, axis=1)
    return float(np.max(np.abs(lhs - rhs) / np.maximum(rhs, np.finfo(float).tiny)))


def random_unit_vectors(n, count, rng):
    xs = rng.standard_normal((count, n))
    return xs / np.linalg.norm(xs, axis=1, keepdims=True)
