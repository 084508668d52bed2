import itertools

import numpy as np
import numpy.testing as npt
import pytest

from dynamics import jacobian, fd_jacobian, spectral_radius_sym
from eigen_analysis import enumerate_eigenpairs
from simplex_tensor import simplex_tensor, contract_pow, random_unit_vectors
from utils.exception_handler import MapUndefined


@pytest.mark.parametrize('n, d', itertools.product([2, 3], range(3, 8)))
def test_analytic_matches_central_differences(n, d, rng):
    T = simplex_tensor(n, d)
    checked = 0
    for x in random_unit_vectors(n, 100, rng):
        if np.linalg.norm(contract_pow(T, x)) < 1e-2:
            continue
        J = jacobian(T, x)
        npt.assert_allclose(J, fd_jacobian(T, x), rtol=0, atol=1e-6 * max(1., np.max(np.abs(J))))
        checked += 1
    assert checked >= 50


@pytest.mark.parametrize('n, d', [(2, 3), (2, 6), (3, 4), (3, 5), (4, 6)])
def test_kernel_and_symmetry_at_eigenvectors(n, d):
    T = simplex_tensor(n, d)
    for pair in enumerate_eigenpairs(n, d).pairs:
        if abs(pair.eigenvalue) <= 1e-12:
            continue
        J = jacobian(T, pair.vector)
        assert np.linalg.norm(J @ pair.vector) <= 1e-11
        npt.assert_allclose(J, J.T, atol=1e-12)
        expected = (d - 1) / abs(pair.eigenvalue) * (
            (T.frame.vectors * (T.frame.vectors.T @ pair.vector) ** (d - 2)) @ T.frame.vectors.T
            - pair.eigenvalue * np.outer(pair.vector, pair.vector)
        )
        npt.assert_allclose(J, expected, atol=1e-12)


def test_vertex_radius_n3_d4():
    T = simplex_tensor(3, 4)
    # 3/7 = (d-1)/(d+1) * 5/7
    assert spectral_radius_sym(jacobian(T, T.frame.vector(0))) == pytest.approx(3. / 7., abs=1e-12)


def test_quadratic_jacobian_is_projector(rng):
    T = simplex_tensor(3, 2)
    x = random_unit_vectors(3, 1, rng)[0]
    npt.assert_allclose(jacobian(T, x), np.eye(3) - np.outer(x, x), atol=1e-14)


def test_jacobian_undefined():
    T = simplex_tensor(3, 3)
    x = T.frame.vector(0) + T.frame.vector(1)
    with pytest.raises(MapUndefined):
        jacobian(T, x / np.linalg.norm(x))
