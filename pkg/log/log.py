import logging
import functools
import time

import numpy as np


_logger = None
_handler = None
_streamHandler = logging.StreamHandler()

_FORMAT = '%(asctime)s - %(levelname)s - in %(pathname)s:%(funcName)s (line %(lineno)d): %(message)s'
_MAX_ARG_LENGTH = 200


def logger():
    return _logger


def _short(obj):
    """
    Compact rendering of a logged argument: arrays with 6 significant digits and at most 16 entries shown,
    anything else by str() cut to _MAX_ARG_LENGTH characters.
    """
    if isinstance(obj, np.ndarray):
        s = np.array2string(obj, precision=6, threshold=16, separator=', ')
    else:
        s = str(obj)
    if len(s) > _MAX_ARG_LENGTH:
        s = s[:_MAX_ARG_LENGTH - 3] + '...'
    return ' '.join(s.split())


def _call_description(func, args, kwargs):
    lines = [f'{func.__module__}.{func.__qualname__}']
    lines.extend(f'  {_short(arg)}' for arg in args)
    lines.extend(f'  {k}={_short(v)}' for k, v in kwargs.items())
    return lines


def log_args(func):
    """
    Logs (at INFO) the arguments of each call and, after it returns, the arguments together with the result.
    """
    @functools.wraps(func)
    def log_args_wrapper(*args, **kwargs):
        if not logger().isEnabledFor(logging.INFO):
            return func(*args, **kwargs)
        log_str_lines = _call_description(func, args, kwargs)
        logger().info('\n'.join(log_str_lines))

        ret = func(*args, **kwargs)

        log_str_lines.append(f'result: {_short(ret)}')
        logger().info('\n'.join(log_str_lines))

        return ret
    return log_args_wrapper


def dump_exception_to_log(exc, func=None, args=None, kwargs=None):
    if func is not None:
        where = f'{func.__module__}.{func.__qualname__}'
    else:
        where = '???'
    args = [_short(arg) for arg in args] if args is not None else None
    kwargs = {k: _short(v) for k, v in kwargs.items()} if kwargs is not None else None
    logger().exception(f'exception in {where}\nargs={args}\nkwargs={kwargs}', exc_info=exc)


def log_exception(func):
    """
    Logs an exception escaping func, with its arguments, and re-raises it.
    """
    @functools.wraps(func)
    def log_exception_wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except Exception as e:
            lines = _call_description(func, args, kwargs)
            logger().exception('unhandled exception in ' + '\n'.join(lines), exc_info=e)
            raise
    return log_exception_wrapper


def log_exectime(func):
    @functools.wraps(func)
    def log_exectime_wrapper(*args, **kwargs):
        logger().info(f'{func.__module__}.{func.__name__} started')
        start = time.perf_counter()
        result = func(*args, **kwargs)
        logger().info(f'{func.__module__}.{func.__name__} finished in {time.perf_counter() - start:.3e} sec')
        return result
    return log_exectime_wrapper


def start_logging(log_filename=None, logging_level=logging.WARNING):
    """
    (Re)configures the package logger. A handler installed by a previous call is replaced, so the CLI can
    re-target the logs (stderr or a file) after the import-time default.
    :param log_filename: path of a log file; if None, logs go to stderr
    :param logging_level: threshold of both the logger and its handler
    """
    global _logger, _handler
    _logger = logging.getLogger(__name__)
    _logger.setLevel(logging_level)
    _logger.propagate = False

    if _handler is not None:
        _logger.removeHandler(_handler)
        if _handler is not _streamHandler:
            _handler.close()

    if not log_filename:
        handler = _streamHandler
    else:
        handler = logging.FileHandler(str(log_filename))

    handler.setLevel(logging_level)
    handler.setFormatter(logging.Formatter(_FORMAT))
    _logger.addHandler(handler)
    _handler = handler


start_logging(logging_level=logging.WARNING)
