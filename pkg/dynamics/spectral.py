import math

import numba
import numpy as np

import config
from utils.exception_handler import AsymmetricMatrixError, InvalidInputError


@numba.njit
def _jacobi_eigenvalues(a, offdiag_tol, max_sweeps):
    """
    Cyclic Jacobi rotations on a copy of the symmetric matrix a, until the off-diagonal Frobenius norm
    drops below offdiag_tol.
    :return: (diagonal, number of sweeps)
    """
    a = a.copy()
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if math.sqrt(off) <= offdiag_tol:
            return np.diag(a).copy(), sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2. * apq)
                if tau >= 0.:
                    t = 1. / (tau + math.sqrt(1. + tau * tau))
                else:
                    t = -1. / (-tau + math.sqrt(1. + tau * tau))
                c = 1. / math.sqrt(1. + t * t)
                s = t * c
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = aip * c - aiq * s
                        a[p, i] = a[i, p]
                        a[i, q] = aiq * c + aip * s
                        a[q, i] = a[i, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.
                a[q, p] = 0.
    return np.diag(a).copy(), max_sweeps


def symmetric_eigenvalues(m):
    """
    Eigenvalues of a symmetric matrix: closed forms for n <= 2, cyclic Jacobi rotations otherwise.
    :param m: square array, symmetric within config.SYMMETRY_TOL * max(1, max|m_ij|)
    :return: 1-d array of the eigenvalues, unordered
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidInputError(f'expected a nonempty square matrix; got shape {m.shape}')
    scale = max(1., float(np.max(np.abs(m))))
    asymmetry = float(np.max(np.abs(m - m.T)))
    if asymmetry > config.SYMMETRY_TOL * scale:
        raise AsymmetricMatrixError(f'matrix is not symmetric: max|M - M^T|={asymmetry:.3e}')
    m = (m + m.T) / 2
    n = m.shape[0]
    if n == 1:
        return np.array([m[0, 0]])
    if n == 2:
        mean = (m[0, 0] + m[1, 1]) / 2
        radius = np.hypot((m[0, 0] - m[1, 1]) / 2, m[0, 1])
        return np.array([mean + radius, mean - radius])
    tol = config.JACOBI_OFFDIAG_RTOL * float(np.linalg.norm(m))
    eigenvalues, _ = _jacobi_eigenvalues(np.ascontiguousarray(m), tol, config.JACOBI_MAX_SWEEPS)
    return eigenvalues


def spectral_radius_sym(m):
    """
    max |eigenvalue| of a symmetric matrix.
    :raises AsymmetricMatrixError: if m is not symmetric within tolerance
    """
    return float(np.max(np.abs(symmetric_eigenvalues(m))))
