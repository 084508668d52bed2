import numba


@numba.njit
def _int_power(base, exponent):
    """
    base ** exponent for a non-negative integer exponent, by repeated squaring (O(log exponent) multiplications).
    Note that _int_power(0., 0) == 1.
    :param base: float
    :param exponent: int >= 0
    :return: float
    """
    result = 1.
    b = base
    e = exponent
    while e > 0:
        if e & 1:
            result *= b
        b *= b
        e >>= 1
    return result


@numba.vectorize(['float64(float64, int64)'])
def int_power(base, exponent):
    return _int_power(base, exponent)
