import numpy as np
import numpy.testing as npt
import pytest

from eigen_analysis import (
    ScalarFunctions,
    p_coefficients,
    eigenvalue_from_barycentric,
    normalize_eigenpair,
    h_n2_direct,
    h_n2_factorized,
)
from utils.exception_handler import DomainError, InvalidInputError


@pytest.mark.parametrize('n', [2, 3, 5])
@pytest.mark.parametrize('d', [2, 3, 4, 7, 8])
def test_g_special_values(n, d):
    f = ScalarFunctions(n, d)
    assert f.g(0.) == 0.
    assert f.g(2. / (n + 1)) == pytest.approx(1. + (-1) ** d, abs=1e-12)
    assert f.g(1.) == pytest.approx(n ** (d - 1) + (-1) ** d, rel=1e-14)


def test_p_example_n3_d4():
    f = ScalarFunctions(3, 4)
    assert p_coefficients(3, 4) == [12, -48, 64]
    s = np.linspace(0.05, 1., 20)
    npt.assert_allclose(f.p(s), 64 * s ** 2 - 48 * s + 12, rtol=1e-12)
    assert f.p(1.) == pytest.approx(28., abs=1e-12)
    # continued at s = 0
    assert f.p(0.) == pytest.approx(12.)


def test_p_prime_matches_numerator():
    f = ScalarFunctions(3, 6)
    s = np.linspace(0.1, 0.9, 9)
    step = 1e-6
    fd = (f.p(s + step) - f.p(s - step)) / (2 * step)
    npt.assert_allclose(f.p_prime(s), fd, rtol=1e-6)


def test_s_star():
    assert ScalarFunctions(3, 4).s_star() == pytest.approx(3. / 8., abs=1e-14)
    assert ScalarFunctions(2, 4).s_star() == pytest.approx(0.5, abs=1e-14)
    f = ScalarFunctions(2, 6)
    s_star = f.s_star()
    assert 0.5 <= s_star < 2. / 3.
    assert abs(f.p_prime(s_star)) <= 1e-12


@pytest.mark.parametrize('n, d', [(3, 3), (2, 2), (4, 7)])
def test_s_star_domain(n, d):
    with pytest.raises(DomainError):
        ScalarFunctions(n, d).s_star()


def test_h_shape():
    f = ScalarFunctions(3, 4)
    assert f.h(np.zeros((5, 2))).shape == (5, 2)
    with pytest.raises(InvalidInputError):
        f.h(np.zeros(3))


@pytest.mark.parametrize('d', [2, 4])
def test_h_vanishes_for_continuum(d, rng):
    f = ScalarFunctions(2, d) if d == 4 else ScalarFunctions(5, d)
    points = rng.dirichlet(np.ones(f.n), size=20)[:, :-1]
    assert np.max(f.h_norm(points)) <= 1e-13


@pytest.mark.parametrize('d', [4, 6, 8, 10, 12])
def test_h_factorization_n2(d):
    s = np.linspace(0., 1., 101)
    npt.assert_allclose(h_n2_direct(d, s), h_n2_factorized(d, s), rtol=1e-9, atol=1e-9)


def test_h_factorization_domain():
    with pytest.raises(DomainError):
        h_n2_factorized(5, 0.3)


def test_eigenvalue_from_barycentric_vertex():
    f = ScalarFunctions(3, 4)
    # z = v_1 has norm 1, so the eigenvalue is that of the normalized eigenvector
    assert eigenvalue_from_barycentric(f, [1., 0., 0.]) == pytest.approx(28. / 27., abs=1e-14)


def test_normalize_eigenpair():
    x, mu = normalize_eigenpair([3., 4.], 10., 4)
    npt.assert_allclose(x, [0.6, 0.8])
    assert mu == pytest.approx(10. / 25.)
    with pytest.raises(InvalidInputError):
        normalize_eigenpair([0., 0.], 1., 3)
