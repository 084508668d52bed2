import dataclasses
import fractions

import numpy as np
import sympy

import config
from log import logger
from utils.exception_handler import DomainError, InvalidInputError
from .scalar_functions import p_coefficients


_s = sympy.Symbol('s')

_MAX_GRID_REFINEMENTS = 4


@dataclasses.dataclass(frozen=True)
class RootsOfR:
    roots: tuple
    degenerate: bool = False


def matching_polynomial(n, d, k1, k2):
    """
    r(s) = p(s) - p((1 - k1 s)/k2), with exact rational coefficients. Its zeros s give the low level of two-level
    solutions, the high level being (1 - k1 s)/k2.
    :return: sympy.Poly over QQ
    """
    p = sympy.Poly(list(reversed(p_coefficients(n, d))), _s, domain=sympy.QQ)
    s_high = sympy.Poly(
        [sympy.Rational(-k1, k2), sympy.Rational(1, k2)], _s, domain=sympy.QQ
    )
    return p - p.compose(s_high)


def _bisect(coeffs, a, b, fa):
    while True:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            return mid
        fm = np.polyval(coeffs, mid)
        if fm == 0.:
            return mid
        if (fm < 0.) == (fa < 0.):
            a, fa = mid, fm
        else:
            b = mid


def _grid_roots(coeffs, upper, points):
    grid = np.linspace(0., upper, points + 1)
    values = np.polyval(coeffs, grid)
    roots = [float(x) for x, v in zip(grid[1:-1], values[1:-1]) if v == 0.]
    sign_change = values[:-1] * values[1:] < 0.
    for i in np.flatnonzero(sign_change):
        roots.append(_bisect(coeffs, grid[i], grid[i + 1], values[i]))
    return sorted(roots)


def roots_of_r(f, k1, k2):
    """
    All real zeros of the two-level matching polynomial r in the open interval (0, s*), refined to machine precision.
    Roots within config.S_STAR_EXCLUSION of s* are rejected: there the two levels coincide with a uniform solution.
    The square-free part of r is scanned for sign changes on a grid of 64(d-1) points; the grid is refined if the
    exact Sturm count of roots disagrees with the scan.
    :param f: ScalarFunctions with even d >= 4
    :param k1: size of the low-level support, >= 1
    :param k2: size of the high-level support, >= 1, k1 + k2 <= n
    :return: RootsOfR; degenerate=True if r vanishes identically
    """
    n, d = f.n, f.d
    if d % 2 == 1 or d == 2:
        raise DomainError(f'the matching polynomial is defined for even d >= 4 only; got d={d}')
    if k1 < 1 or k2 < 1 or k1 + k2 > n:
        raise InvalidInputError(f'need k1, k2 >= 1 and k1 + k2 <= n={n}; got k1={k1}, k2={k2}')

    r = matching_polynomial(n, d, k1, k2)
    if r.is_zero:
        return RootsOfR(roots=(), degenerate=True)
    r = r.sqf_part()
    if r.degree() < 1:
        return RootsOfR(roots=())

    s_star = f.s_star()
    coeffs = np.array([float(c) for c in r.all_coeffs()])

    frac = fractions.Fraction(s_star)
    upper = sympy.Rational(frac.numerator, frac.denominator)
    expected = r.count_roots(0, upper) - (1 if r.eval(0) == 0 else 0) - (1 if r.eval(upper) == 0 else 0)

    points = config.ROOT_GRID_POINTS_PER_DEGREE * (d - 1)
    roots = _grid_roots(coeffs, s_star, points)
    refinements = 0
    while len(roots) != expected and refinements < _MAX_GRID_REFINEMENTS:
        points *= 4
        refinements += 1
        roots = _grid_roots(coeffs, s_star, points)
    if len(roots) != expected:
        logger().warning(f'n={n}, d={d}, k1={k1}, k2={k2}: found {len(roots)} roots of r in (0, s*), '
                         f'Sturm count is {expected}')

    roots = tuple(x for x in roots if 0. < x < s_star and s_star - x > config.S_STAR_EXCLUSION)
    return RootsOfR(roots=roots)
