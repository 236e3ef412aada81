"""Truncated power series with complex coefficients.

Every series carries an explicit order N and holds c_0..c_N.  Binary
operations require equal orders: mixing orders raises instead of silently
truncating, because a silent truncation hides convolution-order bugs.
"""

from dataclasses import dataclass

import numpy as np


class SeriesError(ValueError):
    pass


class OrderMismatch(SeriesError):
    pass


class DivisionByZeroConstantTerm(SeriesError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(SeriesError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients c_0..c_N of a power series truncated at order N."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise SeriesError("a series needs at least the constant coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return self.coeffs.size - 1

    @classmethod
    def zeros(cls, order):
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def constant(cls, value, order):
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def identity(cls, order):
        """The series z (requires order >= 1)."""
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        return cls(c)

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __call__(self, z):
        """Evaluate the polynomial part at z (Horner)."""
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs!r})"

    def allclose(self, other, atol=1e-12):
        _check_orders(self, other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)

    def __add__(self, other):
        return series_add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return series_add(self, -_coerce(other, self.order))

    def __rsub__(self, other):
        return series_add(_coerce(other, self.order), -self)

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(self.coeffs * other)
        return series_mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(self.coeffs / other)
        return series_div(self, other)

    def __rtruediv__(self, other):
        return series_div(_coerce(other, self.order), self)


def _coerce(x, order):
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.constant(x, order)


def _check_orders(a, b):
    if a.order != b.order:
        raise OrderMismatch(f"series orders differ: {a.order} vs {b.order}")


def series_add(a, b):
    _check_orders(a, b)
    return TruncatedSeries(a.coeffs + b.coeffs)


def series_mul(a, b):
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    n = a.order + 1
    return TruncatedSeries(np.convolve(a.coeffs, b.coeffs)[:n])


def series_div(a, b):
    """Return d with b * d == a through the common order."""
    _check_orders(a, b)
    b0 = b.coeffs[0]
    if b0 == 0:
        raise DivisionByZeroConstantTerm("divisor has zero constant term")
    bc = b.coeffs
    d = np.zeros(a.order + 1, dtype=complex)
    for k in range(a.order + 1):
        # b_1 d_{k-1} + ... + b_k d_0
        acc = np.dot(bc[1 : k + 1], d[k - 1 :: -1]) if k else 0.0
        d[k] = (a.coeffs[k] - acc) / b0
    return TruncatedSeries(d)


def series_compose(outer, inner):
    """Return outer(inner(z)) truncated at the common order.

    The inner series must vanish at the origin so that only finitely many
    terms contribute to each coefficient.
    """
    _check_orders(outer, inner)
    if inner.coeffs[0] != 0:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    n = outer.order + 1
    acc = np.zeros(n, dtype=complex)
    for c in outer.coeffs[::-1]:
        acc = np.convolve(acc, inner.coeffs)[:n]
        acc[0] += c
    return TruncatedSeries(acc)
