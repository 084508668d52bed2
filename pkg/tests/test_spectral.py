import numpy as np
import numpy.testing as npt
import pytest

from dynamics import symmetric_eigenvalues, spectral_radius_sym
from utils.exception_handler import AsymmetricMatrixError, InvalidInputError


def test_diagonal():
    assert spectral_radius_sym(np.diag([3., -5.])) == 5.
    npt.assert_allclose(sorted(symmetric_eigenvalues(np.diag([1., -2., 7.]))), [-2., 1., 7.])
    assert spectral_radius_sym([[-4.]]) == 4.


@pytest.mark.parametrize('n', [2, 3, 4])
def test_projector(n, rng):
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    assert spectral_radius_sym(np.eye(n) - np.outer(x, x)) == pytest.approx(1., abs=1e-14)


@pytest.mark.parametrize('n', [2, 3, 5, 8])
def test_against_lapack(n, rng):
    a = rng.standard_normal((n, n))
    m = a + a.T
    npt.assert_allclose(np.sort(symmetric_eigenvalues(m)), np.linalg.eigvalsh(m), rtol=0, atol=1e-12)


def test_zero_matrix_terminates():
    npt.assert_array_equal(symmetric_eigenvalues(np.zeros((4, 4))), np.zeros(4))


def test_asymmetric():
    with pytest.raises(AsymmetricMatrixError):
        spectral_radius_sym([[1., 2.], [0., 1.]])
    # within tolerance
    assert spectral_radius_sym([[1., 1e-12], [0., 1.]]) == pytest.approx(1., abs=1e-11)


@pytest.mark.parametrize('m', [np.zeros((2, 3)), np.zeros(3), np.zeros((0, 0))])
def test_shape(m):
    with pytest.raises(InvalidInputError):
        symmetric_eigenvalues(m)
