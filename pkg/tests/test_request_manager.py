import pickle
import time

import pytest

import config
import tasks
from clear_cache import clear_cache
from tasks import (
    EnumerateRequest,
    ClassifyRequest,
    OracleRequest,
    RasterizeRequest,
    request_from_dict,
    request_from_json,
)
from tasks.request_manager import _get_cache_map, _NoResultYet, _ResultInProgress, cache_setdefault
from utils.exception_handler import InvalidInputError, WholeSphereContinuum
from utils.helper import to_json


def test_equality_and_hash():
    assert EnumerateRequest(3, 4) == EnumerateRequest(3, 4)
    assert hash(EnumerateRequest(3, 4)) == hash(EnumerateRequest(3, 4))
    assert EnumerateRequest(3, 4) != ClassifyRequest(3, 4)
    assert OracleRequest(3, 4, None, 0) != OracleRequest(3, 4, None, 1)
    assert EnumerateRequest(3, 4).deterministic_hash() == EnumerateRequest(3, 4).deterministic_hash()
    assert EnumerateRequest(3, 4).deterministic_hash() != EnumerateRequest(4, 3).deterministic_hash()


@pytest.mark.parametrize('req', [
    EnumerateRequest(3, 4),
    ClassifyRequest(2, 5),
    OracleRequest(3, 5, 400, 7),
    RasterizeRequest(2, 5, 64, res_phi=None, tol=1e-10, max_iter=500),
])
def test_request_from_dict(req):
    assert request_from_dict(req.to_dict()) == req
    assert request_from_json(to_json(req.to_dict())) == req


def test_bad_request_dicts():
    with pytest.raises(InvalidInputError):
        request_from_dict([1, 2])
    with pytest.raises(InvalidInputError):
        request_from_dict({'n': 3, 'd': 4})
    with pytest.raises(InvalidInputError):
        request_from_dict({'_action': 'plot', 'n': 3, 'd': 4})
    with pytest.raises(InvalidInputError):
        request_from_dict({'_action': 'enumerate', 'n': 3})


def test_results_are_cached():
    structure = EnumerateRequest(3, 4).compute()
    assert (tasks.cache_dir() / 'cache.tmp').is_dir()
    cached = EnumerateRequest(3, 4).compute()
    assert cached.count_normalized == structure.count_normalized == 26
    req_in_cache, res = _get_cache_map().get(EnumerateRequest(3, 4).deterministic_hash())
    assert req_in_cache == EnumerateRequest(3, 4)
    assert res.count_normalized == 26


def test_cached_failure_is_raised_again():
    for _ in range(2):
        with pytest.raises(WholeSphereContinuum) as exc_info:
            ClassifyRequest(2, 4).compute()
        assert exc_info.value.n == 2 and exc_info.value.d == 4


def test_disabled_cache(tmp_path):
    tasks.set_cache_dir(tmp_path / 'other')
    tasks.enable_cache(False)
    records = ClassifyRequest(3, 4).compute()
    assert len(records) == 13
    assert not (tmp_path / 'other').exists()


def test_exceptions_pickle():
    exc = pickle.loads(pickle.dumps(WholeSphereContinuum(2, 4, 0.75)))
    assert (exc.n, exc.d, exc.mu, exc.spectral_radius) == (2, 4, 0.75, 1.0)


def test_clear_cache(request_cache_dir):
    EnumerateRequest(2, 5).compute()
    assert (request_cache_dir / 'cache.tmp').is_dir()
    clear_cache(request_cache_dir)
    assert not (request_cache_dir / 'cache.tmp').exists()
    assert EnumerateRequest(2, 5).compute().n == 2
    assert (request_cache_dir / 'cache.tmp').is_dir()


def test_stale_in_progress_marker_expires(monkeypatch):
    # a worker killed mid-computation must not block the request for long
    assert config.IN_PROGRESS_EXPIRE <= 60
    monkeypatch.setattr(config, 'IN_PROGRESS_EXPIRE', 0.2)
    req = EnumerateRequest(2, 7)
    _, res = cache_setdefault(req)
    assert isinstance(res, _NoResultYet)
    _, res = cache_setdefault(req)
    assert isinstance(res, _ResultInProgress)
    time.sleep(0.3)
    _, res = cache_setdefault(req)
    assert isinstance(res, _NoResultYet)
