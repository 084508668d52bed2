import itertools

import numpy as np
import numpy.testing as npt
import pytest
import scipy.ndimage

from eigen_analysis import ScalarFunctions, enumerate_barycentric
from oracle import (
    OracleZeroSet,
    default_grid,
    is_identically_zero,
    simplex_grid,
    grid_candidates,
    refine_candidates,
    damped_newton,
    polish_zero,
    cluster_zeros,
    brute_force_zeros,
    oracle_eigen_residuals,
    compare_with_enumeration,
)
from utils.exception_handler import InvalidDimensionError, InvalidInputError


# (2, 4) is a continuum, covered by test_continuum_flag
@pytest.mark.parametrize('n, d', [nd for nd in itertools.product([2, 3], range(3, 9)) if nd != (2, 4)])
def test_oracle_matches_enumeration(n, d):
    zero_set = brute_force_zeros(n, d)
    report = compare_with_enumeration(zero_set, enumerate_barycentric(n, d))
    assert report.ok, report.to_dict()
    assert not zero_set.continuum
    assert np.max(oracle_eigen_residuals(zero_set), initial=0.) <= 1e-9


@pytest.mark.slow
@pytest.mark.parametrize('d', range(3, 9))
def test_oracle_matches_enumeration_n4(d):
    report = compare_with_enumeration(brute_force_zeros(4, d), enumerate_barycentric(4, d))
    assert report.ok, report.to_dict()


@pytest.mark.slow
def test_multiple_zero_n4_d6():
    zero_set = brute_force_zeros(4, 6)
    assert np.all(zero_set.residuals <= 1e-12)
    distance = np.linalg.norm(zero_set.zeros - [0.2, 0.4, 0.4, 0.], axis=1)
    assert np.sum(distance <= 1e-4) == 1
    assert np.min(distance) <= 1e-9


@pytest.mark.parametrize('n, d', [(2, 2), (3, 2), (4, 2), (2, 4)])
def test_continuum_flag(n, d):
    zero_set = brute_force_zeros(n, d)
    assert zero_set.continuum
    assert zero_set.zeros.shape == (0, n)
    report = compare_with_enumeration(zero_set, enumerate_barycentric(n, d))
    assert report.continuum and report.ok


def test_zeros_n3_d4():
    zero_set = brute_force_zeros(3, 4)
    assert len(zero_set.zeros) == 10
    npt.assert_allclose(zero_set.zeros.sum(axis=1), 1., atol=1e-12)
    assert np.all(zero_set.zeros >= 0.)
    labels = {item['label'] for item in zero_set.to_dict()['zeros']}
    assert {'(1/4, 1/4)', '(1/2, 1/4)', '(1/4, 1/2)', '(1/3, 1/3)'} <= labels
    assert zero_set.coordinates().shape == (10, 2)


def test_mismatch_is_reported():
    zero_set = brute_force_zeros(3, 4)
    truncated = OracleZeroSet(3, 4, zero_set.grid, zero_set.zeros[1:], zero_set.residuals[1:])
    report = compare_with_enumeration(truncated, enumerate_barycentric(3, 4))
    assert not report.ok
    assert len(report.unmatched_enumeration) == 1
    assert report.unmatched_oracle == ()
    assert len(report.to_dict()['unmatched_enumeration']) == 1

    extra = OracleZeroSet(3, 4, zero_set.grid, np.vstack([zero_set.zeros, [[0.1, 0.2, 0.7]]]),
                          np.append(zero_set.residuals, 0.))
    report = compare_with_enumeration(extra, enumerate_barycentric(3, 4))
    assert report.unmatched_oracle == (10, )


def test_continuum_mismatch():
    empty = OracleZeroSet(2, 4, 1000, np.empty((0, 2)), np.empty(0))
    report = compare_with_enumeration(empty, enumerate_barycentric(2, 4))
    assert report.continuum_mismatch and not report.ok


def test_identically_zero(rng):
    assert is_identically_zero(ScalarFunctions(3, 2), rng)
    assert not is_identically_zero(ScalarFunctions(3, 4), rng)


def test_simplex_grid():
    points, inside = simplex_grid(3, 100)
    assert points.shape == (101, 101, 2)
    assert inside.sum() == 101 * 102 // 2
    assert np.all(points[inside].sum(axis=-1) <= 1. + 1e-15)


def test_grid_candidates_n2_include_sign_changes():
    f = ScalarFunctions(2, 6)
    candidates = grid_candidates(f, 100)
    assert candidates.shape[1] == 1
    # each zero lies next to some candidate
    for s in (0., 1. / 3., 0.5, 2. / 3., 1.):
        assert np.min(np.abs(candidates[:, 0] - s)) <= 0.01


def test_damped_newton():
    f = ScalarFunctions(3, 4)
    s, norm, converged = damped_newton(f, np.array([0.26, 0.24]), tol=1e-10)
    assert converged and norm <= 1e-10
    npt.assert_allclose(s, [0.25, 0.25], atol=1e-9)


def test_argument_validation():
    with pytest.raises(InvalidDimensionError):
        brute_force_zeros(5, 3)
    with pytest.raises(InvalidInputError):
        brute_force_zeros(2, 3, grid=50)
    assert default_grid(2) == 1000
    assert default_grid(4) == 400


def test_slab_scan_matches_full_grid():
    f = ScalarFunctions(3, 5)
    points, inside = simplex_grid(3, 100)
    norm = np.where(inside, f.h_norm(points), np.inf)
    local_min = scipy.ndimage.minimum_filter(norm, size=3, mode='constant', cval=np.inf)
    expected = points[inside & (norm == local_min)]
    candidates = grid_candidates(f, 100)
    assert candidates.shape == expected.shape
    npt.assert_array_equal(np.unique(candidates, axis=0), np.unique(expected, axis=0))


def test_refine_candidates():
    f = ScalarFunctions(3, 4)
    candidate = np.array([[0.255, 0.245]])
    refined = refine_candidates(f, candidate, 100, factor=8, span=1)
    assert np.any(np.all(refined == candidate, axis=1))
    assert np.max(np.abs(refined - candidate)) < 0.01
    # (1/4, 1/4) lies on the sub-grid and is a zero
    assert np.any(np.all(np.abs(refined - 0.25) <= 1e-15, axis=1))
    assert len(np.unique(refined, axis=0)) == len(refined)


def test_polish_zero_at_multiple_zero():
    f = ScalarFunctions(4, 6)
    zero = np.array([0.2, 0.4, 0.4])
    npt.assert_allclose(f.h(zero), 0., atol=1e-13)
    # h grows only cubically along (2, -1, -1) here
    start = zero + 1e-4 * np.array([2., -1., -1.])
    s, residual = polish_zero(f, start)
    assert residual <= 1e-12
    npt.assert_allclose(s, zero, atol=1e-9)


def test_polish_zero_simple_zero():
    f = ScalarFunctions(3, 4)
    s, residual = polish_zero(f, np.array([0.2501, 0.2499]))
    assert residual <= 1e-30
    npt.assert_allclose(s, [0.25, 0.25], atol=1e-15)


def test_cluster_zeros_keeps_smallest_residual():
    found = [
        (1e-13, np.array([0.5, 0.5])),
        (1e-15, np.array([0.5 + 1e-9, 0.5 - 1e-9])),
        (0., np.array([0., 1.])),
    ]
    zeros, residuals = cluster_zeros(found)
    npt.assert_array_equal(zeros, [[0., 1.], [0.5 + 1e-9, 0.5 - 1e-9]])
    npt.assert_array_equal(residuals, [0., 1e-15])
    assert cluster_zeros([])[0].size == 0
