import numpy as np
import numpy.testing as npt
import pytest

from simplex_tensor import (
    build_simplex_frame,
    check_dimension,
    gramian,
    frame_operator,
    frame_invariants_hold,
    tight_frame_deviation,
    random_unit_vectors,
)
from utils.exception_handler import InvalidDimensionError


@pytest.mark.parametrize('n', range(2, 13))
def test_gramian_and_frame_operator(n):
    frame = build_simplex_frame(n)
    g = gramian(frame)
    expected = np.full((n + 1, n + 1), -1. / n)
    np.fill_diagonal(expected, 1.)
    npt.assert_allclose(g, expected, rtol=0, atol=1e-13)
    npt.assert_allclose(frame_operator(frame), (n + 1.) / n * np.eye(n), rtol=0, atol=1e-13)
    npt.assert_allclose(frame.vectors.sum(axis=1), 0., atol=1e-13)
    assert frame_invariants_hold(frame)


def test_last_vector_and_shape():
    frame = build_simplex_frame(4)
    assert frame.vectors.shape == (4, 5)
    assert frame.size == 5
    npt.assert_allclose(frame.vector(4), -0.5 * np.ones(4), rtol=0, atol=1e-15)


def test_gramian_rank_n3():
    g = gramian(build_simplex_frame(3))
    assert np.linalg.matrix_rank(g) == 3
    npt.assert_allclose(g @ np.ones(4), 0., atol=1e-13)


@pytest.mark.parametrize('n', [2, 3, 5, 8])
def test_tight_frame_identity(n, rng):
    frame = build_simplex_frame(n)
    assert tight_frame_deviation(frame, random_unit_vectors(n, 100, rng)) <= 1e-12


def test_frame_is_read_only():
    frame = build_simplex_frame(3)
    with pytest.raises(ValueError):
        frame.vectors[0, 0] = 0.
    assert build_simplex_frame(3).vectors[0, 0] > 0.


@pytest.mark.parametrize('n', [1, 0, -3, 2.5, True, '3'])
def test_invalid_dimension(n):
    with pytest.raises(InvalidDimensionError):
        build_simplex_frame(n)


def test_check_dimension_names_the_argument():
    with pytest.raises(InvalidDimensionError, match='d must be'):
        check_dimension(1, name='d')
    assert check_dimension(np.int64(4)) == 4
