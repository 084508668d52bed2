import pytest
import sympy

from eigen_analysis import ScalarFunctions, matching_polynomial, roots_of_r
from utils.exception_handler import DomainError, InvalidInputError


def test_matching_polynomial_n3_d4():
    s = sympy.Symbol('s')
    assert matching_polynomial(3, 4, 1, 1).as_expr() == 32 * s - 16
    assert sympy.expand(matching_polynomial(3, 4, 1, 2).as_expr() - (48 * s ** 2 - 40 * s + 8)) == 0
    assert sorted(sympy.Poly(48 * s ** 2 - 40 * s + 8, s).real_roots()) == [sympy.Rational(1, 3), sympy.Rational(1, 2)]


def test_roots_below_s_star():
    f = ScalarFunctions(3, 4)
    assert roots_of_r(f, 1, 1).roots == ()
    roots = roots_of_r(f, 1, 2).roots
    assert len(roots) == 1
    assert roots[0] == pytest.approx(1. / 3., abs=1e-13)
    # r = -16 (3s - 1)(4s - 1); both zeros lie below s* = 3/8
    assert roots_of_r(f, 2, 1).roots == pytest.approx((0.25, 1. / 3.), abs=1e-13)


@pytest.mark.parametrize('d', [6, 8, 10, 12])
def test_roots_are_zeros_of_p_difference(d):
    f = ScalarFunctions(2, d)
    rr = roots_of_r(f, 1, 1)
    assert not rr.degenerate
    for s in rr.roots:
        assert 0. < s < f.s_star()
        assert float(f.p(s)) == pytest.approx(float(f.p(1. - s)), rel=1e-10)


def test_roots_domain():
    with pytest.raises(DomainError):
        roots_of_r(ScalarFunctions(3, 5), 1, 1)
    with pytest.raises(InvalidInputError):
        roots_of_r(ScalarFunctions(3, 4), 2, 2)
    with pytest.raises(InvalidInputError):
        roots_of_r(ScalarFunctions(3, 4), 0, 1)
