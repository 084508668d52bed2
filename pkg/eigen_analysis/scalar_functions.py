import dataclasses
import math

import numpy as np

from simplex_tensor import check_dimension, int_power
from utils.exception_handler import DomainError, InvariantViolation, InvalidInputError


def p_coefficients(n, d):
    """
    Exact integer coefficients of the polynomial p(s) = g(s)/s, in ascending order of powers:
    p(s) = sum_{j=1}^{d-1} C(d-1, j) (n+1)^j (-1)^{d-1-j} s^{j-1}.
    :return: list of d-1 Python ints
    """
    return [math.comb(d - 1, j) * (n + 1) ** j * (-1) ** (d - 1 - j) for j in range(1, d)]


@dataclasses.dataclass(frozen=True)
class ScalarFunctions:
    """
    The scalar functions of the barycentric reduction for given n, d:
      g(s) = ((n+1)s - 1)^{d-1} - (-1)^{d-1},
      p(s) = g(s)/s,
      h(s) = (s_k (g(s_n) + sum_{j<n} g(s_j)) - g(s_k))_{k<n}, with s_n = 1 - sum_{j<n} s_j.
    """
    n: int
    d: int

    def __post_init__(self):
        check_dimension(self.n)
        check_dimension(self.d, name='d')
        g0 = self.g(0.)
        g1 = self.g(1.)
        expected_g1 = self.n ** (self.d - 1) + (-1) ** self.d
        if g0 != 0. or abs(g1 - expected_g1) > 1e-12 * max(1., abs(expected_g1)):
            raise InvariantViolation(f'g(0)={g0}, g(1)={g1} (expected {expected_g1}) for n={self.n}, d={self.d}')

    @property
    def sign(self):
        # (-1)^{d-1}
        return 1. if self.d % 2 == 1 else -1.

    def g(self, s):
        s = np.asarray(s, dtype=np.float64)
        return int_power((self.n + 1) * s - 1., self.d - 1) - self.sign

    def p(self, s):
        """
        p(s) = g(s)/s, continued by its limit (d-1)(n+1)(-1)^d at s = 0.
        """
        s = np.asarray(s, dtype=np.float64)
        limit_at_zero = (self.d - 1) * (self.n + 1) * (-1.) ** self.d
        with np.errstate(divide='ignore', invalid='ignore'):
            return np.where(s == 0., limit_at_zero, self.g(s) / np.where(s == 0., 1., s))

    def p_prime_numerator(self, s):
        """
        s^2 p'(s) = (d-2)u^{d-1} + (d-1)u^{d-2} + (-1)^{d-1}, u = (n+1)s - 1.
        """
        u = (self.n + 1) * np.asarray(s, dtype=np.float64) - 1.
        return (self.d - 2) * int_power(u, self.d - 1) + (self.d - 1) * int_power(u, self.d - 2) + self.sign

    def p_prime(self, s):
        s = np.asarray(s, dtype=np.float64)
        return self.p_prime_numerator(s) / s ** 2

    def h(self, s):
        """
        :param s: array of shape (..., n-1), the first n-1 barycentric coordinates
        :return: array of shape (..., n-1)
        """
        s = np.asarray(s, dtype=np.float64)
        if s.shape[-1] != self.n - 1:
            raise InvalidInputError(f'h takes n-1={self.n - 1} coordinates; got s.shape={s.shape}')
        s_last = 1. - s.sum(axis=-1, keepdims=True)
        g_s = self.g(s)
        total = g_s.sum(axis=-1, keepdims=True) + self.g(s_last)
        return s * total - g_s

    def h_norm(self, s):
        return np.linalg.norm(self.h(s), axis=-1)

    def s_star(self):
        """
        The unique minimizer of p on (0, inf) for even d >= 4, in [1/n, 2/(n+1)); found by bisection on the sign of
        the numerator of p', which changes sign exactly once on [1/(n+1), 2/(n+1)].
        """
        if self.d % 2 == 1 or self.d == 2:
            raise DomainError(f's* is defined for even d >= 4 only; got d={self.d}')
        return _s_star(self.n, self.d)


def _s_star(n, d):
    # the numerator is negative at 1/(n+1) (u = 0) and positive at 2/(n+1) (u = 1)
    sf = ScalarFunctions(n, d)
    lo, hi = 1. / (n + 1), 2. / (n + 1)
    # down to adjacent floats
    while hi - lo > 0.:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sf.p_prime_numerator(mid) < 0.:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def eigenvalue_from_barycentric(f, s):
    """
    Eigenvalue of the unnormalized vector z = sum_{k<=n} s_k v_k for a zero s of h: mu = sum_k g(s_k) / n^{d-1}.
    :param f: ScalarFunctions
    :param s: full barycentric vector of length n
    """
    s = np.asarray(s, dtype=np.float64)
    return float(np.sum(f.g(s)) / f.n ** (f.d - 1))


def normalize_eigenpair(z, mu, d):
    """
    (z, mu) -> (z/|z|, mu/|z|^{d-2})
    """
    z = np.asarray(z, dtype=np.float64)
    norm = np.linalg.norm(z)
    if norm == 0.:
        raise InvalidInputError('cannot normalize the zero vector')
    return z / norm, mu / norm ** (d - 2)


def h_n2_direct(d, s):
    """
    The scalar form h(s) = (1-s) g(s) - s g(1-s) for n = 2.
    """
    f = ScalarFunctions(2, d)
    s = np.asarray(s, dtype=np.float64)
    return (1. - s) * f.g(s) - s * f.g(1. - s)


def h_n2_factorized(d, s):
    """
    Factorized form of h for n = 2 and even d:
    -9 s (s-1)(2s-1)(3s-1)(3s-2) sum_{p,q >= 0, p+q <= d/2-3} (3s-1)^{2p} (3s-2)^{2q}
    (the sum is empty, so h vanishes identically, for d in {2, 4}).
    """
    if d % 2 == 1:
        raise DomainError(f'the factorization holds for even d only; got d={d}')
    s = np.asarray(s, dtype=np.float64)
    a = (3. * s - 1.) ** 2
    b = (3. * s - 2.) ** 2
    total = np.zeros_like(s)
    top = d // 2 - 3
    for p in range(top + 1):
        for q in range(top - p + 1):
            total = total + a ** p * b ** q
    return -9. * s * (s - 1.) * (2. * s - 1.) * (3. * s - 1.) * (3. * s - 2.) * total
