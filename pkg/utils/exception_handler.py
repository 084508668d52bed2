import functools
import sys
import warnings

from log import logger, dump_exception_to_log


EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_INVALID_INPUT = 2
EXIT_VERIFICATION_FAILED = 3
EXIT_IO_ERROR = 4


class AppException(Exception):
    pass


class InvalidInputError(AppException, ValueError):
    pass


class InvalidDimensionError(InvalidInputError):
    pass


class DomainError(InvalidInputError):
    pass


class AsymmetricMatrixError(InvalidInputError):
    pass


class CapacityError(AppException):
    pass


class MapUndefined(AppException):
    def __init__(self, norm):
        super().__init__(f'power map undefined: ‖T·x^(d-1)‖={norm:.3e} is below the threshold')
        self.norm = norm

    def __reduce__(self):
        return self.__class__, (self.norm, )


class InvariantViolation(AppException):
    pass


class ResidualCheckError(InvariantViolation):
    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual

    def __reduce__(self):
        return self.__class__, (self.args[0], self.residual)


class WholeSphereContinuum(AppException):
    """
    Every unit vector is an eigenvector (d = 2, or n = 2 and d = 4); there is no discrete list to classify.
    """
    def __init__(self, n, d, mu, spectral_radius=1.0):
        super().__init__(
            f'n={n}, d={d}: every unit vector is an eigenvector with mu={mu!r}; '
            f'spectral radius is {spectral_radius!r} everywhere (continuum)'
        )
        self.n = n
        self.d = d
        self.mu = mu
        self.spectral_radius = spectral_radius

    def __reduce__(self):
        return self.__class__, (self.n, self.d, self.mu, self.spectral_radius)


class VerificationError(AppException):
    def __init__(self, failed_checks):
        super().__init__(f'failed checks: {", ".join(failed_checks)}')
        self.failed_checks = tuple(failed_checks)

    def __reduce__(self):
        return self.__class__, (self.failed_checks, )


class AppWarning(UserWarning):
    pass


_EXPECTED_ERRORS = (InvalidInputError, VerificationError, WholeSphereContinuum, CapacityError)


def exit_code_of(exc):
    if isinstance(exc, InvalidInputError):
        return EXIT_INVALID_INPUT
    elif isinstance(exc, VerificationError):
        return EXIT_VERIFICATION_FAILED
    elif isinstance(exc, OSError):
        return EXIT_IO_ERROR
    else:
        return EXIT_INTERNAL_ERROR


def _log_expected(command, exc):
    logger().warning(f'{command.__qualname__}: {type(exc).__name__}: {exc}')


def handle_exception(command):
    """
    Decorates a CLI command: the command's return value (or 0) becomes the exit status; exceptions are reported
    on stderr in one line and mapped to an exit status. Errors caused by the input or the environment are logged
    in one line; anything else is dumped to the log with its traceback. AppWarning's raised during the
    command are reported on stderr as notices.
    """
    @functools.wraps(command)
    def command_with_exception_handling(*args, **kwargs):
        with warnings.catch_warnings(record=True) as warnings_list:
            warnings.simplefilter('always', category=AppWarning)
            try:
                exit_code = command(*args, **kwargs)
            except _EXPECTED_ERRORS as e:
                _log_expected(command, e)
                print(f'Error: {e}', file=sys.stderr)
                exit_code = exit_code_of(e)
            except AppException as e:
                dump_exception_to_log(e, func=command, args=args, kwargs=kwargs)
                print(f'Error: {e}', file=sys.stderr)
                exit_code = exit_code_of(e)
            except OSError as e:
                _log_expected(command, e)
                print(f'I/O error: {e}', file=sys.stderr)
                exit_code = EXIT_IO_ERROR
            except Exception as e:
                dump_exception_to_log(e, func=command, args=args, kwargs=kwargs)
                print('Internal application error; see the log for details.', file=sys.stderr)
                exit_code = EXIT_INTERNAL_ERROR
        for warn in warnings_list:
            if issubclass(warn.category, AppWarning):
                print(f'Notice: {warn.message}', file=sys.stderr)
        return EXIT_OK if exit_code is None else exit_code
    return command_with_exception_handling
