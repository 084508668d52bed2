import dataclasses
import enum
import math
import warnings
from fractions import Fraction

import numpy as np
import toolz
import tqdm

import config
from dynamics import (
    RobustnessClass,
    classify_radius,
    jacobian,
    fd_jacobian,
    spectral_radius_sym,
    family_of,
    closed_form_radius_n2,
    table_rows,
    tpi_survey,
)
from eigen_analysis import (
    SolutionKind,
    ScalarFunctions,
    enumerate_barycentric,
    permutation_image,
    h_n2_direct,
    h_n2_factorized,
)
from oracle import ORACLE_DIMENSIONS, default_grid, compare_with_enumeration, oracle_eigen_residuals
from simplex_tensor import (
    build_simplex_frame,
    frame_deviations,
    frame_invariants_hold,
    tight_frame_deviation,
    random_unit_vectors,
    simplex_tensor,
    contract_pow,
)
from tasks import EnumerateRequest, ClassifyRequest, OracleRequest
from utils.exception_handler import AppWarning


FD_POINTS = 100
FD_MIN_MAP_NORM = 1e-2
ORACLE_RESIDUAL_TOL = config.ORACLE_EIGEN_RESIDUAL_TOL


class CheckStatus(enum.Enum):
    PASS = 'pass'
    FAIL = 'fail'
    SKIP = 'skip'


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    detail: str = ''

    def to_dict(self):
        return {'check': self.name, 'status': self.status.value, 'detail': self.detail}


def _result(name, passed, detail):
    return CheckResult(name, CheckStatus.PASS if passed else CheckStatus.FAIL, detail)


# the reference robustness table for n = 3: tabulated radius (None where mu = 0) and number of canonical zeros.
# The tabulated radii are (d+1)/(d-1) times the spectral radius of the Jacobian of phi.
REFERENCE_TABLE_N3 = {
    3: [(Fraction(2), 4), (None, 3)],
    4: [(Fraction(5, 7), 4), (Fraction(5), 3), (Fraction(5, 2), 3)],
    5: [(Fraction(3, 10), 4), (None, 3)],
    6: [(Fraction(7, 61), 4), (Fraction(7), 3), (Fraction(7, 2), 3)],
    7: [(Fraction(4, 91), 4), (None, 3)],
}


def reference_scale(d):
    return Fraction(d + 1, d - 1)


def expected_table_n3(d):
    """
    (rho, class) of every canonical zero for n = 3, derived from the reference table.
    :return: list of (Fraction or None, RobustnessClass)
    """
    entries = []
    for tabulated, count in REFERENCE_TABLE_N3[d]:
        if tabulated is None:
            entries += [(None, RobustnessClass.UNDEFINED)] * count
        else:
            rho = tabulated / reference_scale(d)
            entries += [(rho, classify_radius(float(rho), 1.))] * count
    return entries


def golden_eigenvalues(n, d):
    """
    Known eigenvalue sets (absolute values, for odd d) and numbers of normalized eigenpairs; None if not tabulated.
    :return: (sorted list of eigenvalues, count or None) or None
    """
    if n == 2 and d % 2 == 1:
        return [1. - 2. ** (1 - d)], 6
    if n == 2 and d % 2 == 0 and d >= 6:
        return sorted([1. + 2. ** (1 - d), 3. ** (d / 2) * 2. ** (1 - d)]), 12
    if (n, d) == (3, 4):
        return sorted([28 / 27, 4 / 9, 8 / 9]), None
    return None


def check_frame(n, rng):
    frame = build_simplex_frame(n)
    deviations = frame_deviations(frame)
    tight = tight_frame_deviation(frame, random_unit_vectors(n, 10, rng))
    passed = frame_invariants_hold(frame) and tight <= config.TIGHT_FRAME_RTOL
    detail = ', '.join(f'{k}={v:.3e}' for k, v in deviations.items()) + f', tight_frame={tight:.3e}'
    return _result('frame', passed, detail)


def check_residuals(structure):
    residuals = [pair.residual for pair in structure.pairs]
    worst = max(residuals, default=0.)
    return _result('residuals', worst <= config.RESIDUAL_TOL, f'{len(residuals)} eigenpairs, max residual={worst:.3e}')


def check_two_level(structure):
    f = ScalarFunctions(structure.n, structure.d)
    worst_sum, worst_p = 0., 0.
    solutions = toolz.unique((pair.solution for pair in structure.pairs), key=id)
    two_level = [s for s in solutions if s.kind is SolutionKind.TWO_LEVEL]
    for solution in two_level:
        k1, k2 = solution.sizes
        worst_sum = max(worst_sum, abs(k1 * solution.s_low + k2 * solution.s_high - 1.))
        p_low, p_high = float(f.p(solution.s_low)), float(f.p(solution.s_high))
        worst_p = max(worst_p, abs(p_low - p_high) / max(1., abs(p_low)))
    passed = worst_sum <= config.TWO_LEVEL_SUM_TOL and worst_p <= config.TWO_LEVEL_P_RTOL
    return _result(
        'two_level', passed,
        f'{len(two_level)} two-level orbits, max |k1 s_low + k2 s_high - 1|={worst_sum:.3e}, '
        f'max relative p mismatch={worst_p:.3e}'
    )


def check_golden(structure):
    n, d = structure.n, structure.d
    golden = golden_eigenvalues(n, d)
    mus = structure.eigenvalues()
    if d % 2 == 1:
        mus = np.abs(mus)
    found = sorted(set(np.round(mus, 12).tolist()))
    details = [f'eigenvalues {found}', f'count={structure.count_normalized}']
    passed = True
    if golden is not None:
        expected, count = golden
        passed = len(found) == len(expected) and np.allclose(found, expected, rtol=0., atol=1e-12)
        if count is not None:
            passed = passed and structure.count_normalized == count
        details.append(f'expected {[round(x, 12) for x in expected]}' + (f', count={count}' if count else ''))
    if d % 2 == 1:
        # zero eigenvalues exactly on the lines of uniform solutions with 2|K| = n+1
        zero = {pair.solution.sizes[0] for pair in structure.pairs if abs(pair.eigenvalue) <= config.MU_ZERO_TOL
                and pair.solution.kind is SolutionKind.UNIFORM}
        zero_count = sum(abs(pair.eigenvalue) <= config.MU_ZERO_TOL for pair in structure.pairs)
        expected_zero = {(n + 1) // 2} if n % 2 == 1 else set()
        expected_count = math.comb(n + 1, (n + 1) // 2) // 2 if n % 2 == 1 else 0
        passed = passed and zero == expected_zero and zero_count == expected_count
        details.append(f'{zero_count} zero-eigenvalue lines')
    return _result('golden', passed, '; '.join(details))


def check_permutations(structure, rng):
    n = structure.n
    permutation = rng.permutation(n + 1)
    vectors = structure.vectors()
    worst = 0.
    for pair in structure.pairs:
        image = permutation_image(pair, permutation)
        distance = min(np.min(np.linalg.norm(vectors - image, axis=1)), np.min(np.linalg.norm(vectors + image, axis=1)))
        worst = max(worst, float(distance))
    return _result(
        'permutations', worst <= 1e-9, f'permutation {(permutation + 1).tolist()}, max distance to the list={worst:.3e}'
    )


def check_oracle(n, d, grid, seed):
    if n not in ORACLE_DIMENSIONS:
        warnings.warn(f'oracle skipped: the brute-force oracle supports n <= 4; got n={n}', AppWarning)
        return CheckResult('oracle', CheckStatus.SKIP, f'n={n} > 4')
    zero_set = OracleRequest(n, d, grid if grid is not None else default_grid(n), seed).compute()
    report = compare_with_enumeration(zero_set, enumerate_barycentric(n, d))
    if report.continuum:
        return _result('oracle', True, 'both flag the continuum')
    residuals = oracle_eigen_residuals(zero_set)
    worst = float(np.max(residuals, initial=0.))
    passed = report.ok and worst <= ORACLE_RESIDUAL_TOL
    return _result(
        'oracle', passed,
        f'{len(report.matched)} matched, {len(report.unmatched_oracle)} unmatched oracle zeros, '
        f'{len(report.unmatched_enumeration)} unmatched enumerated zeros, {zero_set.dropped} dropped candidates, '
        f'max eigencondition residual={worst:.3e}'
    )


def check_jacobian_fd(n, d, rng):
    T = simplex_tensor(n, d)
    worst, used = 0., 0
    for x in random_unit_vectors(n, FD_POINTS, rng):
        if np.linalg.norm(contract_pow(T, x)) < FD_MIN_MAP_NORM:
            continue
        J = jacobian(T, x)
        error = float(np.max(np.abs(J - fd_jacobian(T, x)))) / max(1., float(np.max(np.abs(J))))
        worst = max(worst, error)
        used += 1
    return _result('jacobian_fd', worst <= config.FD_RTOL, f'{used} points, max relative deviation={worst:.3e}')


def check_kernel(structure):
    T = simplex_tensor(structure.n, structure.d)
    worst = 0.
    for pair in structure.pairs:
        if abs(pair.eigenvalue) <= config.MU_ZERO_TOL:
            continue
        J = jacobian(T, pair.vector)
        worst = max(worst, float(np.linalg.norm(J @ pair.vector)) / max(1., float(np.linalg.norm(J))))
    return _result('kernel', worst <= config.KERNEL_TOL, f'max |J x| / max(1, |J|)={worst:.3e}')


def check_closed_forms(records):
    worst = 0.
    for rec in records:
        expected = closed_form_radius_n2(rec.eigenpair.solution.d, family_of(rec.eigenpair.solution))
        worst = max(worst, abs(rec.spectral_radius - expected))
    return _result('closed_form_radii', worst <= config.TABLE_TOL, f'max deviation={worst:.3e}')


def check_table(n, d):
    rows = table_rows(n, d)
    found = [(row.spectral_radius, row.robustness_class) for row in rows]
    expected = expected_table_n3(d)

    def key(entry):
        rho, cls = entry
        return (cls.value, -1. if rho is None else float(rho))

    found, expected = sorted(found, key=key), sorted(expected, key=key)
    passed = len(found) == len(expected) and all(
        cls_f is cls_e and (rho_e is None and rho_f is None or
                            rho_e is not None and rho_f is not None and abs(rho_f - float(rho_e)) <= config.TABLE_TOL)
        for (rho_f, cls_f), (rho_e, cls_e) in zip(found, expected)
    )
    scale = float(reference_scale(d))
    detail = ', '.join(
        f'{row.label}: -' if row.spectral_radius is None else
        f'{row.label}: {row.spectral_radius:.12g} (tabulated {row.spectral_radius * scale:.12g})'
        for row in rows
    )
    return _result('table', passed, detail)


def check_tpi_survey(structure, records, seed):
    T = simplex_tensor(structure.n, structure.d)
    survey = tpi_survey(T, structure, seed=seed)
    attracting = {RobustnessClass.ROBUST, RobustnessClass.MARGINAL}
    bad = {label: count for label, count in survey.label_counts.items()
           if records[label // 2].robustness_class not in attracting}
    passed = not bad and survey.unmatched == 0
    return _result(
        'tpi_survey', passed,
        f'{survey.starts} starts, limits per label {survey.label_counts}, {survey.unresolved} unresolved '
        f'({survey.unmatched} unmatched), {survey.map_undefined} map undefined, non-attracting limits {bad}'
    )


def check_h_factorization(d):
    s = np.linspace(0., 1., 101)
    direct = h_n2_direct(d, s)
    factorized = h_n2_factorized(d, s)
    worst = float(np.max(np.abs(direct - factorized) / np.maximum(1., np.abs(direct))))
    return _result('h_factorization', worst <= 1e-9, f'max relative deviation={worst:.3e}')


def check_continuum(structure, rng):
    n, d = structure.n, structure.d
    T = simplex_tensor(n, d)
    worst_residual, worst_radius = 0., 0.
    for x in random_unit_vectors(n, 20, rng):
        worst_residual = max(worst_residual, float(np.linalg.norm(contract_pow(T, x) - structure.mu * x)))
        worst_radius = max(worst_radius, abs(spectral_radius_sym(jacobian(T, x)) - 1.))
    passed = worst_residual <= config.RESIDUAL_TOL and worst_radius <= config.ROBUSTNESS_MARGIN
    return _result(
        'continuum', passed,
        f'whole sphere, mu={structure.mu!r}, rho=1 everywhere; max residual={worst_residual:.3e}, '
        f'max |rho - 1|={worst_radius:.3e}'
    )


def run_verify(n, d, seed=0, grid=None, progress=False):
    """
    Runs all checks that apply to (n, d).
    :return: list of CheckResult
    """
    rng = np.random.default_rng(seed)
    structure = EnumerateRequest(n, d).compute()

    checks = [('frame', lambda: check_frame(n, rng))]
    if structure.is_whole_sphere:
        checks.append(('continuum', lambda: check_continuum(structure, rng)))
    else:
        checks += [
            ('residuals', lambda: check_residuals(structure)),
            ('two_level', lambda: check_two_level(structure)),
            ('golden', lambda: check_golden(structure)),
            ('permutations', lambda: check_permutations(structure, rng)),
        ]
    checks.append(('oracle', lambda: check_oracle(n, d, grid, seed)))
    checks.append(('jacobian_fd', lambda: check_jacobian_fd(n, d, rng)))
    if not structure.is_whole_sphere:
        records = ClassifyRequest(n, d).compute()
        checks.append(('kernel', lambda: check_kernel(structure)))
        if n == 2:
            checks.append(('closed_form_radii', lambda: check_closed_forms(records)))
        if n == 3 and d in REFERENCE_TABLE_N3:
            checks.append(('table', lambda: check_table(n, d)))
        checks.append(('tpi_survey', lambda: check_tpi_survey(structure, records, seed)))
    if n == 2 and d % 2 == 0:
        checks.append(('h_factorization', lambda: check_h_factorization(d)))

    return [check() for _, check in tqdm.tqdm(checks, disable=not progress, desc='verify')]
