from .log import (
    start_logging,
    logger,
    log_args,
    log_exception,
    log_exectime,
    dump_exception_to_log,
)
