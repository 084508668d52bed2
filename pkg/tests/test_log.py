import logging

import numpy as np

from log import start_logging, logger, log_args, log_exectime


@log_args
def _add(a, b=0):
    return a + b


@log_exectime
def _twice(x):
    return 2 * x


def test_log_to_file(tmp_path):
    path = tmp_path / 'run.log'
    start_logging(log_filename=path, logging_level=logging.INFO)
    try:
        assert _add(1, b=2) == 3
        assert _twice(4) == 8
        logger().warning('done')
    finally:
        start_logging(logging_level=logging.WARNING)
    text = path.read_text()
    assert 'result: 3' in text
    assert '_twice finished in' in text
    assert 'WARNING' in text and 'done' in text


def test_level_threshold(tmp_path):
    path = tmp_path / 'quiet.log'
    start_logging(log_filename=path, logging_level=logging.WARNING)
    try:
        _add(1)
    finally:
        start_logging(logging_level=logging.WARNING)
    assert path.read_text() == ''


def test_arrays_are_abbreviated(tmp_path):
    path = tmp_path / 'arrays.log'
    start_logging(log_filename=path, logging_level=logging.INFO)
    try:
        _add(np.arange(100.), b=np.float64(1.))
    finally:
        start_logging(logging_level=logging.WARNING)
    text = path.read_text()
    assert '...' in text
    assert '99.' in text
    assert len(max(text.splitlines(), key=len)) < 400
