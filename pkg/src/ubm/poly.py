"""Legendre and index-1 Laguerre polynomials by upward three-term recurrence."""

import enum


class PolyFamily(enum.Enum):
    LEGENDRE = "legendre"
    LAGUERRE_ALPHA1 = "laguerre1"

    def __call__(self, n, x):
        if self is PolyFamily.LEGENDRE:
            return legendre_eval(n, x)
        return laguerre1_eval(n, x)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def legendre_eval(n, x):
    """Return P_n(x).

    Uses (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}, which is stable on [-1, 1].
    """
    n = _check_degree(n)
    x = float(x)
    p_prev, p = 1.0, x
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


def laguerre1_eval(n, x):
    """Return the generalized Laguerre polynomial L_n^{(1)}(x)."""
    n = _check_degree(n)
    x = float(x)
    l_prev, l = 1.0, 2.0 - x
    if n == 0:
        return l_prev
    for k in range(1, n):
        l_prev, l = l, ((2 * k + 2 - x) * l - (k + 1) * l_prev) / (k + 1)
    return l
