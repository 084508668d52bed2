import dataclasses
from typing import Optional

import dacite

import config
from utils.exception_handler import InvalidInputError


FORMAT_TABLE = 'table'
FORMAT_JSON = 'json'
FORMAT_CSV = 'csv'

FORMATS_BY_COMMAND = {
    'frame': (FORMAT_JSON, FORMAT_CSV),
    'enumerate': (FORMAT_JSON, FORMAT_CSV, FORMAT_TABLE),
    'classify': (FORMAT_TABLE, FORMAT_JSON, FORMAT_CSV),
    'tpi': (FORMAT_TABLE, FORMAT_JSON),
    'oracle': (FORMAT_JSON, FORMAT_TABLE),
    'basins': (FORMAT_JSON, ),
    'verify': (FORMAT_TABLE, FORMAT_JSON),
}

MAX_SEED = 2 ** 64 - 1


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    Parsed and validated command line of one run. The first format in FORMATS_BY_COMMAND is the default.
    """
    command: str
    n: Optional[int] = None
    d: Optional[int] = None
    format: Optional[str] = None
    tol: float = config.TPI_TOL
    max_iter: int = config.TPI_MAX_ITER
    start: Optional[str] = None
    grid: Optional[int] = None
    resolution: Optional[int] = None
    res_phi: Optional[int] = None
    out: Optional[str] = None
    csv: Optional[str] = None
    render: str = 'disk'
    mark_generators: bool = False
    seed: int = 0
    log_file: Optional[str] = None
    verbose: bool = False
    cache_dir: Optional[str] = None
    no_cache: bool = False

    @property
    def output_format(self):
        return self.format if self.format is not None else FORMATS_BY_COMMAND[self.command][0]

    def validate(self):
        if self.command not in FORMATS_BY_COMMAND:
            raise InvalidInputError(f'unknown command={self.command!r}')
        if self.n is None or self.n < 2:
            raise InvalidInputError(f'n must be an integer >= 2; got n={self.n}')
        if self.command != 'frame' and (self.d is None or self.d < 2):
            raise InvalidInputError(f'd must be an integer >= 2; got d={self.d}')
        if self.output_format not in FORMATS_BY_COMMAND[self.command]:
            raise InvalidInputError(
                f'{self.command} supports --format {"|".join(FORMATS_BY_COMMAND[self.command])}; '
                f'got format={self.format!r}'
            )
        if not self.tol > 0.:
            raise InvalidInputError(f'tol must be > 0; got tol={self.tol}')
        if self.max_iter < 1:
            raise InvalidInputError(f'max_iter must be >= 1; got max_iter={self.max_iter}')
        if self.grid is not None and self.grid < 100:
            raise InvalidInputError(f'grid must be >= 100; got grid={self.grid}')
        for name in ('resolution', 'res_phi'):
            value = getattr(self, name)
            if value is not None and value < config.BASIN_MIN_RESOLUTION:
                raise InvalidInputError(f'{name} must be >= {config.BASIN_MIN_RESOLUTION}; got {name}={value}')
        if not 0 <= self.seed <= MAX_SEED:
            raise InvalidInputError(f'seed must be an unsigned 64-bit integer; got seed={self.seed}')
        if self.command == 'tpi' and self.start is None:
            raise InvalidInputError('tpi requires --start x1,...,xn')
        if self.command == 'basins':
            if self.resolution is None:
                raise InvalidInputError('basins requires --resolution')
            if self.out is None:
                raise InvalidInputError('basins requires --out')
        return self


def run_config_from_args(args):
    """
    Builds a validated RunConfig from an argparse.Namespace.
    """
    try:
        run_config = dacite.from_dict(RunConfig, vars(args), config=dacite.Config(check_types=True))
    except dacite.DaciteError as e:
        raise InvalidInputError(f'bad command line: {e}') from e
    return run_config.validate()


def parse_start(text, n):
    """
    Parses '--start x1,...,xn' into a vector of n floats.
    """
    try:
        x = [float(item) for item in text.split(',')]
    except ValueError:
        raise InvalidInputError(f'--start must be comma-separated numbers; got {text!r}')
    if len(x) != n:
        raise InvalidInputError(f'--start must have n={n} components; got {len(x)}')
    return x
