import sys

import numpy as np
import pandas as pd

from basins import write_image, write_csv
from dynamics import RobustnessClass, tpi_run, table_rows, table_summary
from eigen_analysis import enumerate_barycentric
from oracle import compare_with_enumeration, oracle_eigen_residuals
from simplex_tensor import build_simplex_frame, gramian, simplex_tensor
from tasks import EnumerateRequest, ClassifyRequest, OracleRequest, RasterizeRequest
from utils.exception_handler import EXIT_OK, InvalidInputError, VerificationError, WholeSphereContinuum
from utils.helper import to_json, format_float
from .run_config import FORMAT_JSON, FORMAT_CSV, parse_start
from .verify import CheckStatus, run_verify


CSV_FLOAT_FORMAT = '%.17g'


def _print_csv(df):
    df.to_csv(sys.stdout, index=False, float_format=CSV_FLOAT_FORMAT)


def _print_json(obj):
    print(to_json(obj))


def _fmt(x, digits=12):
    return '-' if x is None else f'{x:.{digits}g}'


def _vector_columns(n):
    return [f'x{i + 1}' for i in range(n)]


def frame_command(cfg):
    frame = build_simplex_frame(cfg.n)
    vectors = frame.vectors.T
    if cfg.output_format == FORMAT_CSV:
        _print_csv(pd.DataFrame(vectors, columns=_vector_columns(cfg.n)))
    else:
        _print_json({'n': cfg.n, 'vectors': vectors, 'gramian': gramian(frame)})
    return EXIT_OK


def enumerate_command(cfg):
    structure = EnumerateRequest(cfg.n, cfg.d).compute()
    if cfg.output_format == FORMAT_JSON:
        _print_json(structure.to_dict())
    elif structure.is_whole_sphere:
        if cfg.output_format == FORMAT_CSV:
            _print_csv(pd.DataFrame({'kind': [structure.kind.value], 'mu': [structure.mu]}))
        else:
            print(f'n={cfg.n}, d={cfg.d}: every unit vector is an eigenvector, mu={format_float(structure.mu)}')
    elif cfg.output_format == FORMAT_CSV:
        df = pd.DataFrame(structure.vectors(), columns=_vector_columns(cfg.n))
        df['mu'] = structure.eigenvalues()
        df['residual'] = [pair.residual for pair in structure.pairs]
        _print_csv(df)
    else:
        print(f'n={cfg.n}, d={cfg.d}: {len(structure.pairs)} eigenvector lines, '
              f'{structure.count_normalized} normalized eigenpairs')
        print(f'{"#":>4}  {"mu":>20}  {"residual":>10}  {"kind":<10}  vector')
        for i, pair in enumerate(structure.pairs):
            vector = ', '.join(f'{x:+.12f}' for x in pair.vector)
            print(f'{i:>4}  {pair.eigenvalue:>20.15g}  {pair.residual:>10.3e}  '
                  f'{pair.solution.kind.value:<10}  ({vector})')
    return EXIT_OK


def _continuum_report(e):
    return {
        'kind': 'whole_sphere',
        'n': e.n,
        'd': e.d,
        'mu': e.mu,
        'rho': e.spectral_radius,
        'class': RobustnessClass.MARGINAL.value,
    }


def classify_command(cfg):
    try:
        records = ClassifyRequest(cfg.n, cfg.d).compute()
        rows = table_rows(cfg.n, cfg.d)
    except WholeSphereContinuum as e:
        report = _continuum_report(e)
        if cfg.output_format == FORMAT_JSON:
            _print_json(report)
        elif cfg.output_format == FORMAT_CSV:
            _print_csv(pd.DataFrame([report]))
        else:
            print(f'n={e.n}, d={e.d}: continuum; every unit vector is an eigenvector with mu={format_float(e.mu)}, '
                  f'rho={_fmt(e.spectral_radius)} ({report["class"]}) everywhere; no robust eigenvectors')
        return EXIT_OK

    if cfg.output_format == FORMAT_JSON:
        _print_json({
            'n': cfg.n,
            'd': cfg.d,
            'records': [rec.to_dict() for rec in records],
            'table': [row.to_dict() for row in rows],
            'summary': table_summary(rows),
        })
    elif cfg.output_format == FORMAT_CSV:
        _print_csv(pd.DataFrame([row.to_dict() for row in rows], columns=['label', 'mu', 'rho', 'class']))
    else:
        width = max(len('label'), max((len(row.label) for row in rows), default=0))
        print(f'{"label":<{width}}  {"mu":>20}  {"rho":>20}  class')
        for row in rows:
            print(f'{row.label:<{width}}  {_fmt(row.mu, 15):>20}  {_fmt(row.spectral_radius, 15):>20}  '
                  f'{row.robustness_class.value}')
        summary = ', '.join(f'{cls}: {count}' for cls, count in table_summary(rows).items())
        print(f'{len(rows)} canonical zeros ({summary}); {len(records)} eigenvector lines')
    return EXIT_OK


def tpi_command(cfg):
    x0 = np.array(parse_start(cfg.start, cfg.n))
    norm = np.linalg.norm(x0)
    if norm == 0.:
        raise InvalidInputError('--start must not be the zero vector')
    structure = EnumerateRequest(cfg.n, cfg.d).compute()
    result = tpi_run(simplex_tensor(cfg.n, cfg.d), x0 / norm, tol=cfg.tol, max_iter=cfg.max_iter, structure=structure)
    matched_mu = None
    if result.matched_eigenpair is not None:
        pair = structure.pairs[result.matched_eigenpair]
        matched_mu = pair.eigenvalue * result.matched_sign ** cfg.d

    if cfg.output_format == FORMAT_JSON:
        _print_json(dict(result.to_dict(), matched_mu=matched_mu))
    else:
        print(f'status: {result.status.name.lower()}')
        print(f'iterations: {result.iterations}')
        if result.limit is not None:
            print('limit: (' + ', '.join(f'{x:+.15f}' for x in result.limit) + ')')
        if result.matched_eigenpair is not None:
            sign = '+' if result.matched_sign > 0 else '-'
            print(f'matched eigenpair: #{result.matched_eigenpair} ({sign}), mu={_fmt(matched_mu, 15)}')
        elif structure.is_whole_sphere:
            print(f'matched eigenpair: continuum, mu={_fmt(structure.mu, 15)}')
        else:
            print('matched eigenpair: none')
    return EXIT_OK


def oracle_command(cfg):
    zero_set = OracleRequest(cfg.n, cfg.d, cfg.grid, cfg.seed).compute()
    report = compare_with_enumeration(zero_set, enumerate_barycentric(cfg.n, cfg.d))
    residuals = oracle_eigen_residuals(zero_set)
    max_residual = float(np.max(residuals, initial=0.))

    if cfg.output_format == FORMAT_JSON:
        _print_json({'zero_set': zero_set.to_dict(), 'match': report.to_dict(), 'max_eigen_residual': max_residual})
    else:
        if zero_set.continuum:
            print(f'n={cfg.n}, d={cfg.d}: h vanishes identically on the simplex (continuum)')
        else:
            print(f'n={cfg.n}, d={cfg.d}, grid={zero_set.grid}: {len(zero_set.zeros)} zeros, '
                  f'{zero_set.dropped} dropped candidates')
            for s, r in zip(zero_set.zeros, zero_set.residuals):
                print(f'  ({", ".join(f"{x:.15f}" for x in s[:-1])})  |h|={r:.3e}')
        print('match: ' + ', '.join(f'{k}={v}' for k, v in report.to_dict().items()))
    if not report.ok:
        raise VerificationError(['oracle_match'])
    return EXIT_OK


def basins_command(cfg):
    basin_map = RasterizeRequest(
        cfg.n, cfg.d, cfg.resolution, res_phi=cfg.res_phi, tol=cfg.tol, max_iter=cfg.max_iter
    ).compute()
    write_image(basin_map, cfg.out, mode=cfg.render, mark_generators=cfg.mark_generators)
    if cfg.csv is not None:
        write_csv(basin_map, cfg.csv)
    _print_json(basin_map.summary())
    return EXIT_OK


def verify_command(cfg):
    results = run_verify(cfg.n, cfg.d, seed=cfg.seed, grid=cfg.grid, progress=cfg.verbose)
    if cfg.output_format == FORMAT_JSON:
        _print_json({'n': cfg.n, 'd': cfg.d, 'seed': cfg.seed, 'checks': [res.to_dict() for res in results]})
    else:
        for res in results:
            print(f'{res.status.value.upper():<4}  {res.name}: {res.detail}')
    failed = [res.name for res in results if res.status is CheckStatus.FAIL]
    if failed:
        raise VerificationError(failed)
    return EXIT_OK


COMMANDS = {
    'frame': frame_command,
    'enumerate': enumerate_command,
    'classify': classify_command,
    'tpi': tpi_command,
    'oracle': oracle_command,
    'basins': basins_command,
    'verify': verify_command,
}
