import logging
import pickle
import warnings

import pytest

from log import start_logging
from utils.exception_handler import (
    EXIT_OK,
    EXIT_INTERNAL_ERROR,
    EXIT_INVALID_INPUT,
    EXIT_VERIFICATION_FAILED,
    EXIT_IO_ERROR,
    AppWarning,
    InvalidDimensionError,
    MapUndefined,
    ResidualCheckError,
    VerificationError,
    WholeSphereContinuum,
    exit_code_of,
    handle_exception,
)


def _raising(exc):
    @handle_exception
    def command():
        raise exc
    return command


@pytest.mark.parametrize('exc, exit_code', [
    (InvalidDimensionError('n=1'), EXIT_INVALID_INPUT),
    (VerificationError(['table']), EXIT_VERIFICATION_FAILED),
    (FileNotFoundError('missing'), EXIT_IO_ERROR),
    (MapUndefined(0.), EXIT_INTERNAL_ERROR),
    (ZeroDivisionError(), EXIT_INTERNAL_ERROR),
])
def test_exit_codes(capsys, exc, exit_code):
    assert _raising(exc)() == exit_code
    assert capsys.readouterr().err


@pytest.mark.parametrize('exc, traceback', [
    (InvalidDimensionError('n=1'), False),
    (VerificationError(['table']), False),
    (WholeSphereContinuum(3, 2, 1.), False),
    (FileNotFoundError('missing'), False),
    (MapUndefined(0.), True),
    (ZeroDivisionError(), True),
])
def test_tracebacks_only_for_unexpected_errors(tmp_path, capsys, exc, traceback):
    path = tmp_path / 'errors.log'
    start_logging(log_filename=path, logging_level=logging.WARNING)
    try:
        _raising(exc)()
    finally:
        start_logging(logging_level=logging.WARNING)
    text = path.read_text()
    assert ('Traceback' in text) == traceback
    if not traceback:
        assert len(text.strip().splitlines()) == 1
        assert type(exc).__name__ in text


def test_return_value(capsys):
    assert handle_exception(lambda: None)() == EXIT_OK
    assert handle_exception(lambda: 3)() == 3


def test_warnings_become_notices(capsys):
    @handle_exception
    def command():
        warnings.warn('almost tangent', AppWarning)

    assert command() == EXIT_OK
    assert 'Notice: almost tangent' in capsys.readouterr().err


def test_exit_code_of():
    assert exit_code_of(WholeSphereContinuum(3, 2, 1.)) == EXIT_INTERNAL_ERROR
    assert exit_code_of(InvalidDimensionError('x')) == EXIT_INVALID_INPUT


@pytest.mark.parametrize('exc', [
    MapUndefined(1e-16),
    ResidualCheckError('residual too large', 1e-3),
    WholeSphereContinuum(2, 4, 0.75),
    VerificationError(['oracle', 'table']),
])
def test_pickle(exc):
    copy = pickle.loads(pickle.dumps(exc))
    assert type(copy) is type(exc)
    assert str(copy) == str(exc)
    assert vars(copy) == vars(exc)
