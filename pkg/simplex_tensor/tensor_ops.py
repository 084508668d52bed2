import dataclasses
import functools

import numpy as np

import config
from utils.exception_handler import CapacityError, InvalidInputError
from .frames import SimplexFrame, build_simplex_frame, check_dimension
from .powers import int_power


@dataclasses.dataclass(frozen=True, eq=False)
class SimplexTensor:
    """
    T = sum_k w_k v_k^{(x)d}, kept in this rank-one-sum form; the dense array is never needed by the computations.
    """
    d: int
    frame: SimplexFrame
    weights: np.ndarray

    @property
    def n(self):
        return self.frame.n

    @property
    def has_unit_weights(self):
        return bool(np.all(self.weights == 1.))


def make_tensor(frame, d, weights=None):
    d = check_dimension(d, name='d')
    if weights is None:
        weights = np.ones(frame.n + 1)
    else:
        weights = np.array(weights, dtype=np.float64)
        if weights.shape != (frame.n + 1, ):
            raise InvalidInputError(f'weights must have n+1={frame.n + 1} entries; got weights.shape={weights.shape}')
    weights.setflags(write=False)
    return SimplexTensor(d=d, frame=frame, weights=weights)


@functools.lru_cache(maxsize=64)
def simplex_tensor(n, d):
    """
    The regular simplex tensor of local dimension n and order d (unit weights).
    """
    return make_tensor(build_simplex_frame(n), d)


def _inner_products(T, x):
    return T.frame.vectors.T @ np.asarray(x, dtype=np.float64)


def contract_pow(T, x, m=None):
    """
    Partial contraction of T by x along all but one mode: sum_k w_k <v_k, x>^{d-1} v_k.
    :param T: SimplexTensor
    :param x: vector of length n
    :param m: number of contracted modes; only m = d-1 is meaningful
    :return: vector of length n
    """
    if m is None:
        m = T.d - 1
    elif m != T.d - 1:
        raise InvalidInputError(f'contract_pow contracts d-1={T.d - 1} modes; got m={m}')
    coeffs = T.weights * int_power(_inner_products(T, x), m)
    return T.frame.vectors @ coeffs


def contract_matrix(T, x):
    """
    (d-2)-fold partial contraction: sum_k w_k <v_k, x>^{d-2} v_k v_k^T (for d = 2 simply sum_k w_k v_k v_k^T).
    """
    coeffs = T.weights * int_power(_inner_products(T, x), T.d - 2)
    v = T.frame.vectors
    m = (v * coeffs) @ v.T
    return (m + m.T) / 2


def energy(T, x):
    return float(np.sum(T.weights * int_power(_inner_products(T, x), T.d)))


def rayleigh_quotient(T, x):
    """
    <T x^{d-1}, x> / |x|^2, the eigenvalue of x if x is an eigenvector; 0 for x = 0.
    """
    x = np.asarray(x, dtype=np.float64)
    squared_norm = float(x @ x)
    if squared_norm == 0.:
        return 0.
    return energy(T, x) / squared_norm


def eigen_residual(T, x, mu):
    return float(np.linalg.norm(contract_pow(T, x) - mu * np.asarray(x)))


def dense_tensor(T):
    """
    The full supersymmetric array with entries sum_k w_k prod_j (v_k)_{i_j}; for testing only.
    """
    n, d = T.n, T.d
    if n ** d > config.DENSE_CAPACITY:
        raise CapacityError(f'dense tensor of n^d={n ** d} entries exceeds the capacity {config.DENSE_CAPACITY}')
    dense = np.zeros((n, ) * d)
    for k in range(n + 1):
        v = T.frame.vector(k)
        dense += T.weights[k] * functools.reduce(np.multiply.outer, [v] * d)
    return dense


def dense_contraction(dense, x, times):
    """
    Contracts the trailing `times` modes of a dense tensor with x.
    """
    return functools.reduce(np.dot, [dense] + [x] * times)
