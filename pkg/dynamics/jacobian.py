import numpy as np

import config
from simplex_tensor import contract_pow, contract_matrix
from utils.exception_handler import MapUndefined
from .power_iteration import phi


def jacobian(T, x):
    """
    Jacobian of the power map phi at an arbitrary x:
    (d-1)/|y| (I - y y^T/|y|^2) T x^{d-2}, with y = T x^{d-1}.
    At a normalized eigenvector with eigenvalue mu this is (d-1)/|mu| (T x^{d-2} - mu x x^T), a symmetric matrix.
    :raises MapUndefined: if |y| <= config.MAP_NORM_THRESHOLD
    """
    x = np.asarray(x, dtype=np.float64)
    y = contract_pow(T, x)
    norm = float(np.linalg.norm(y))
    if norm <= config.MAP_NORM_THRESHOLD:
        raise MapUndefined(norm)
    y_hat = y / norm
    projector = np.eye(T.n) - np.outer(y_hat, y_hat)
    return (T.d - 1) / norm * projector @ contract_matrix(T, x)


def fd_jacobian(T, x, step=config.FD_STEP):
    """
    Central-difference approximation of the Jacobian of phi at x.
    """
    x = np.asarray(x, dtype=np.float64)
    columns = []
    for j in range(T.n):
        e = np.zeros(T.n)
        e[j] = step
        columns.append((phi(T, x + e) - phi(T, x - e)) / (2. * step))
    return np.column_stack(columns)
