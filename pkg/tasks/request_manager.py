import abc
import functools
import hashlib
import json
import pathlib
import time

import diskcache

import config
import tasks
from log import logger, log_exception
from basins import rasterize
from dynamics import classify_all
from eigen_analysis import enumerate_eigenpairs
from oracle import brute_force_zeros
from utils.exception_handler import InvalidInputError


_cache_map = None
_cache_dir = None
_cache_enabled = True


def set_cache_dir(cache_dir):
    """
    Points the request cache at another directory; the cache is opened lazily on the first request.
    """
    global _cache_map, _cache_dir
    if _cache_map is not None:
        _cache_map.close()
    _cache_map = None
    _cache_dir = pathlib.Path(cache_dir)


def enable_cache(enabled=True):
    global _cache_enabled
    _cache_enabled = enabled


def cache_dir():
    return _cache_dir if _cache_dir is not None else pathlib.Path(tasks.CACHE_DIR)


def _get_cache_map():
    # see: https://grantjenks.com/docs/diskcache/tutorial.html
    global _cache_map
    if _cache_map is None:
        path = cache_dir() / 'cache.tmp'
        path.mkdir(parents=True, exist_ok=True)
        _cache_map = diskcache.Cache(directory=str(path))
    return _cache_map


class _NoResultYet:
    def __str__(self):
        return '<NoResultYet>'


class _ResultInProgress:
    def __str__(self):
        return '<ResultInProgress>'


class _FailResult:
    def __init__(self, exc):
        self.exc = exc


def cache_setdefault(req):
    assert isinstance(req, Request)

    cache_map = _get_cache_map()
    i = req.deterministic_hash()
    with cache_map.transact():
        while True:
            req_in_cache, res = cache_map.get(i, default=(None, None))
            if req_in_cache is None:
                no_result_yet = _NoResultYet()
                result_in_progress = _ResultInProgress()
                cache_map.set(i, (req, result_in_progress), expire=config.IN_PROGRESS_EXPIRE)
                return i, no_result_yet
            elif req_in_cache == req:
                return i, res
            else:
                logger().warning(f'deterministic_hash collision: req={str(req)} and req_in_map={str(req_in_cache)} '
                                 f'have the same hash={i}')
                i = hex(int(i, 16) + 1)[2:]


def request_cache(custom_expire=-1):
    def _request_cache(compute):
        @functools.wraps(compute)
        def wrapper_of_compute(req):
            if not _cache_enabled:
                return compute(req)
            active_waiting = 0
            res = _ResultInProgress()
            while isinstance(res, _ResultInProgress):
                i, res = cache_setdefault(req)
                if isinstance(res, _NoResultYet):
                    expire = config.FAIL_EXPIRE
                    try:
                        res = compute(req)
                        expire = custom_expire if custom_expire != -1 else config.RESULT_EXPIRE
                        return res
                    except Exception as e:
                        res = _FailResult(e)
                        raise
                    finally:
                        _get_cache_map().set(i, (req, res), expire=expire)
                elif isinstance(res, _FailResult):
                    raise res.exc
                elif isinstance(res, _ResultInProgress):
                    active_waiting += 1
                    logger().info(f'active_waiting={active_waiting} for i={i}, req={req}')
                    time.sleep(0.5)
                else:
                    if active_waiting > 0:
                        logger().info(f'got result after active_waiting={active_waiting} for i={i}, req={req}')
                    return res

        return wrapper_of_compute
    return _request_cache


class Request(abc.ABC):
    """
    A computation identified by its action and arguments, with a result cached on disk
    """
    @abc.abstractmethod
    def execute(self):
        pass

    @abc.abstractmethod
    def get_hashable(self):
        pass

    @abc.abstractmethod
    def to_dict(self):
        pass

    @classmethod
    @abc.abstractmethod
    def from_dict(cls, d):
        pass

    @classmethod
    def from_json(cls, js):
        d = json.loads(js)
        return cls.from_dict(d)

    def deterministic_hash(self):
        return hashlib.sha256(bytes(str(self.get_hashable()), encoding='utf-8')).hexdigest()

    def __hash__(self):
        return hash(self.get_hashable())

    def __eq__(self, other):
        return isinstance(other, Request) and self.get_hashable() == other.get_hashable()

    @request_cache()
    def compute(self):
        return self.execute()

    def __str__(self):
        return str(self.to_dict())


def _get_args(cls, d, keys):
    try:
        return [d[k] for k in keys]
    except KeyError:
        raise InvalidInputError(f'bad {cls.__name__}: d={str(d)}')


class EnumerateRequest(Request):
    def __init__(self, n, d):
        self.n = n
        self.d = d

    @log_exception
    def execute(self):
        logger().info(f'execute {str(self)}')
        return enumerate_eigenpairs(self.n, self.d)

    def get_hashable(self):
        return 'enumerate', self.n, self.d

    def to_dict(self):
        return dict(
            _action='enumerate',
            n=self.n,
            d=self.d,
        )

    @classmethod
    def from_dict(cls, d):
        return EnumerateRequest(*_get_args(cls, d, ('n', 'd')))


class ClassifyRequest(Request):
    def __init__(self, n, d):
        self.n = n
        self.d = d

    @log_exception
    def execute(self):
        logger().info(f'execute {str(self)}')
        structure = EnumerateRequest(self.n, self.d).compute()
        return classify_all(self.n, self.d, structure=structure)

    def get_hashable(self):
        return 'classify', self.n, self.d

    def to_dict(self):
        return dict(
            _action='classify',
            n=self.n,
            d=self.d,
        )

    @classmethod
    def from_dict(cls, d):
        return ClassifyRequest(*_get_args(cls, d, ('n', 'd')))


class OracleRequest(Request):
    def __init__(self, n, d, grid, seed=0):
        self.n = n
        self.d = d
        self.grid = grid
        self.seed = seed

    @log_exception
    def execute(self):
        logger().info(f'execute {str(self)}')
        return brute_force_zeros(self.n, self.d, grid=self.grid, seed=self.seed)

    def get_hashable(self):
        return 'oracle', self.n, self.d, self.grid, self.seed

    def to_dict(self):
        return dict(
            _action='oracle',
            n=self.n,
            d=self.d,
            grid=self.grid,
            seed=self.seed,
        )

    @classmethod
    def from_dict(cls, d):
        return OracleRequest(*_get_args(cls, d, ('n', 'd', 'grid', 'seed')))


class RasterizeRequest(Request):
    def __init__(self, n, d, resolution, res_phi=None, tol=config.TPI_TOL, max_iter=config.TPI_MAX_ITER):
        self.n = n
        self.d = d
        self.resolution = resolution
        self.res_phi = res_phi
        self.tol = tol
        self.max_iter = max_iter

    @log_exception
    def execute(self):
        logger().info(f'execute {str(self)}')
        return rasterize(
            self.n, self.d, self.resolution, res_phi=self.res_phi, tol=self.tol, max_iter=self.max_iter
        )

    def get_hashable(self):
        return 'rasterize', self.n, self.d, self.resolution, self.res_phi, self.tol, self.max_iter

    def to_dict(self):
        return dict(
            _action='rasterize',
            n=self.n,
            d=self.d,
            resolution=self.resolution,
            res_phi=self.res_phi,
            tol=self.tol,
            max_iter=self.max_iter,
        )

    @classmethod
    def from_dict(cls, d):
        return RasterizeRequest(*_get_args(cls, d, ('n', 'd', 'resolution', 'res_phi', 'tol', 'max_iter')))


_REQUEST_BY_ACTION = {
    'enumerate': EnumerateRequest,
    'classify': ClassifyRequest,
    'oracle': OracleRequest,
    'rasterize': RasterizeRequest,
}


def request_from_dict(d):
    if not isinstance(d, dict):
        raise InvalidInputError(f'd must be a dict; type(d)={str(type(d))}; d={str(d)}')
    try:
        action = d['_action']
    except KeyError:
        raise InvalidInputError(f'd does not represent a request; d={str(d)}')
    try:
        request_class = _REQUEST_BY_ACTION[action]
    except KeyError:
        raise InvalidInputError(f'unknown request action={action!r}; d={d}')
    return request_class.from_dict(d)


def request_from_json(js):
    d = json.loads(js)
    return request_from_dict(d)
