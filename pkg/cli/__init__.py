import argparse
import logging

import config
import tasks
from log import start_logging
from utils.exception_handler import handle_exception
from .run_config import RunConfig, FORMATS_BY_COMMAND, run_config_from_args, parse_start
from .commands import COMMANDS
from .verify import CheckStatus, CheckResult, run_verify


def _global_options():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--seed', type=int, default=0, help='seed of all randomized checks (unsigned 64-bit)')
    parser.add_argument('--log-file', dest='log_file', default=None, help='write the log to this file')
    parser.add_argument('--verbose', action='store_true', help='log at INFO level and show progress bars')
    parser.add_argument('--cache-dir', dest='cache_dir', default=None, help='directory of the result cache')
    parser.add_argument('--no-cache', dest='no_cache', action='store_true', help='do not use the result cache')
    return parser


def _add_n_d(parser, with_d=True):
    parser.add_argument('--n', type=int, required=True, help='local dimension, >= 2')
    if with_d:
        parser.add_argument('--d', type=int, required=True, help='order of the tensor, >= 2')


def _add_format(parser, command):
    formats = FORMATS_BY_COMMAND[command]
    parser.add_argument('--format', choices=formats, default=None, help=f'output format (default: {formats[0]})')


def _add_tpi_options(parser):
    parser.add_argument('--tol', type=float, default=config.TPI_TOL, help='convergence tolerance of the iteration')
    parser.add_argument('--max-iter', dest='max_iter', type=int, default=config.TPI_MAX_ITER,
                        help='maximal number of iterations')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='app.py',
        description='Eigenpairs, power iteration dynamics and robustness of regular simplex tensors',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    common = [_global_options()]

    p = subparsers.add_parser('frame', parents=common, help='print the simplex frame and its Gramian')
    _add_n_d(p, with_d=False)
    _add_format(p, 'frame')

    p = subparsers.add_parser('enumerate', parents=common, help='list all normalized eigenpairs')
    _add_n_d(p)
    _add_format(p, 'enumerate')

    p = subparsers.add_parser('classify', parents=common, help='robustness of every eigenpair')
    _add_n_d(p)
    _add_format(p, 'classify')

    p = subparsers.add_parser('tpi', parents=common, help='run one tensor power iteration')
    _add_n_d(p)
    p.add_argument('--start', required=True, help='start vector x1,...,xn (normalized before iterating)')
    _add_tpi_options(p)
    _add_format(p, 'tpi')

    p = subparsers.add_parser('oracle', parents=common, help='brute-force zeros of h, compared with the enumeration')
    _add_n_d(p)
    p.add_argument('--grid', type=int, default=None, help='grid cells per simplex edge, >= 100')
    _add_format(p, 'oracle')

    p = subparsers.add_parser('basins', parents=common, help='rasterize the regions of attraction')
    _add_n_d(p)
    p.add_argument('--resolution', type=int, required=True, help='number of angles (polar angles for n = 3)')
    p.add_argument('--res-phi', dest='res_phi', type=int, default=None,
                   help='number of azimuthal angles for n = 3 (default: 2 * resolution)')
    p.add_argument('--out', required=True, help='path of the PPM image')
    p.add_argument('--csv', default=None, help='path of the per-cell CSV file')
    p.add_argument('--render', choices=('disk', 'strip'), default='disk', help='image layout for n = 2')
    p.add_argument('--mark-generators', dest='mark_generators', action='store_true',
                   help='mark the frame vectors +-v_k in the image')
    _add_tpi_options(p)
    _add_format(p, 'basins')

    p = subparsers.add_parser('verify', parents=common, help='run all consistency checks')
    _add_n_d(p)
    p.add_argument('--grid', type=int, default=None, help='oracle grid cells per simplex edge, >= 100')
    _add_format(p, 'verify')

    return parser


@handle_exception
def run(args):
    cfg = run_config_from_args(args)
    start_logging(log_filename=cfg.log_file, logging_level=logging.INFO if cfg.verbose else logging.WARNING)
    if cfg.cache_dir is not None:
        tasks.set_cache_dir(cfg.cache_dir)
    tasks.enable_cache(not cfg.no_cache)
    return COMMANDS[cfg.command](cfg)


def main(argv=None):
    """
    Parses the command line and runs the command.
    :return: exit status
    """
    args = build_parser().parse_args(argv)
    return run(args)
