import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import tasks  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def request_cache_dir(tmp_path):
    tasks.set_cache_dir(tmp_path / 'cache')
    tasks.enable_cache(True)
    yield tmp_path / 'cache'
    tasks.set_cache_dir(tmp_path / 'cache')
