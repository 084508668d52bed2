import numpy as np
import numpy.testing as npt
import pytest

from dynamics import (
    TpiStatus,
    LABEL_UNRESOLVED,
    LABEL_MAP_UNDEFINED,
    phi,
    tpi_run,
    tpi_batch,
    match_tolerance,
    match_limits,
    basin_labels,
    label_vector,
    tpi_survey,
    classify_all,
    RobustnessClass,
)
from eigen_analysis import enumerate_eigenpairs
from simplex_tensor import simplex_tensor
from utils.exception_handler import InvalidInputError, MapUndefined


def _perturbed(v, eps):
    w = np.array([-v[1], v[0]])
    x = v + eps * w
    return x / np.linalg.norm(x)


def _line_distance(x, v):
    return min(np.linalg.norm(x - v), np.linalg.norm(x + v))


def test_phi_is_normalized(rng):
    T = simplex_tensor(3, 4)
    x = rng.standard_normal(3)
    assert np.linalg.norm(phi(T, x)) == pytest.approx(1., abs=1e-15)


def test_phi_undefined_at_zero_eigenvector():
    T = simplex_tensor(3, 3)
    x = T.frame.vector(0) + T.frame.vector(1)
    x /= np.linalg.norm(x)
    with pytest.raises(MapUndefined) as e:
        phi(T, x)
    assert e.value.norm <= 1e-14


def test_map_undefined_is_a_status():
    T = simplex_tensor(3, 3)
    x = T.frame.vector(0) + T.frame.vector(1)
    result = tpi_run(T, x / np.linalg.norm(x))
    assert result.status is TpiStatus.MAP_UNDEFINED
    assert result.limit is None
    assert result.iterations == 1


def test_robust_vertex_attracts():
    T = simplex_tensor(2, 7)
    v1 = T.frame.vector(0)
    structure = enumerate_eigenpairs(2, 7)
    result = tpi_run(T, _perturbed(v1, 0.01), structure=structure)
    assert result.status is TpiStatus.CONVERGED
    npt.assert_allclose(result.limit, v1, atol=1e-10)
    matched = label_vector(structure, 2 * result.matched_eigenpair + (result.matched_sign < 0))
    npt.assert_allclose(matched, v1, atol=1e-10)
    assert result.to_dict()['status'] == 'converged'


def test_non_robust_vertex_repels():
    T = simplex_tensor(2, 3)
    v1 = T.frame.vector(0)
    result = tpi_run(T, _perturbed(v1, 1e-3), max_iter=2000)
    assert result.status is not TpiStatus.CONVERGED or _line_distance(result.limit, v1) > 1e-6


def test_start_at_fixed_point_converges_at_once():
    T = simplex_tensor(2, 7)
    result = tpi_run(T, T.frame.vector(1))
    assert result.status is TpiStatus.CONVERGED
    assert result.iterations == 1


def test_start_validation():
    T = simplex_tensor(3, 4)
    with pytest.raises(InvalidInputError):
        tpi_run(T, np.array([1., 0.]))
    with pytest.raises(InvalidInputError):
        tpi_run(T, np.array([1., 1., 0.]))
    with pytest.raises(InvalidInputError):
        tpi_run(T, np.array([1., 0., 0.]), tol=0.)


def test_max_iterations_status():
    T = simplex_tensor(2, 7)
    v1 = T.frame.vector(0)
    result = tpi_run(T, _perturbed(v1, 0.3), max_iter=1)
    assert result.status is TpiStatus.MAX_ITERATIONS
    assert result.limit is None
    assert result.last_iterate.shape == (2, )


def test_batch_matches_single_runs(rng):
    T = simplex_tensor(3, 6)
    starts = rng.standard_normal((20, 3))
    starts /= np.linalg.norm(starts, axis=1, keepdims=True)
    limits, iterations, status = tpi_batch(T, starts)
    assert limits.shape == (20, 3)
    for j in (0, 7, 19):
        result = tpi_run(T, starts[j])
        assert result.iterations == iterations[j]
        assert result.status.value == status[j]
        npt.assert_allclose(result.last_iterate, limits[j], atol=1e-14)


def test_match_limits_and_labels():
    structure = enumerate_eigenpairs(3, 6)
    vectors = structure.vectors()
    m = len(vectors)
    limits = np.concatenate([vectors, -vectors, [[1., 0., 0.]]])
    index, sign = match_limits(structure, limits)
    npt.assert_array_equal(index[:m], np.arange(m))
    npt.assert_array_equal(index[m:2 * m], np.arange(m))
    assert np.all(sign[:m] == 1) and np.all(sign[m:2 * m] == -1)
    assert index[-1] == -1 and sign[-1] == 0

    status = np.zeros(len(limits), dtype=np.int8)
    status[0] = TpiStatus.MAX_ITERATIONS.value
    status[1] = TpiStatus.MAP_UNDEFINED.value
    labels = basin_labels(index, sign, status)
    assert labels[0] == LABEL_UNRESOLVED
    assert labels[1] == LABEL_MAP_UNDEFINED
    npt.assert_array_equal(labels[2:m], 2 * np.arange(2, m))
    npt.assert_array_equal(labels[m:2 * m], 2 * np.arange(m) + 1)
    assert labels[-1] == LABEL_UNRESOLVED


def test_match_tolerance_floor():
    assert match_tolerance(1e-12) == 1e-9
    assert match_tolerance(1e-6) == pytest.approx(1e-5)


@pytest.mark.parametrize('n, d', [(2, 7), (3, 6), (3, 5)])
def test_survey_lands_on_attracting_eigenvectors(n, d):
    structure = enumerate_eigenpairs(n, d)
    records = classify_all(n, d, structure=structure)
    survey = tpi_survey(simplex_tensor(n, d), structure, count=300, seed=7)
    assert survey.starts == 300
    assert survey.unmatched == 0
    assert sum(survey.label_counts.values()) + survey.unresolved + survey.map_undefined == 300
    for label in survey.label_counts:
        assert records[label // 2].robustness_class is RobustnessClass.ROBUST
