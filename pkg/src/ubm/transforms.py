"""Transforms of probability measures on the unit circle.

Series-level conversions between the moment generating function psi, the
K-transform K = psi/(1+psi) and the boolean F-transform F = K/z, plus the
closed-form transforms of the monotone (mu_t) and boolean (nu_t) unitary
Brownian motions and their Herglotz transforms.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .series import NonzeroConstantTerm, TruncatedSeries, series_div


class DomainError(ValueError):
    pass


# -- measures ---------------------------------------------------------------


@dataclass(frozen=True)
class MomentSequence:
    """Moments m_1..m_N of a probability measure on the unit circle."""

    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=complex).ravel()
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def order(self):
        return self.m.size

    @classmethod
    def dirac_one(cls, order):
        return cls(np.ones(order))

    @classmethod
    def haar(cls, order):
        return cls(np.zeros(order))

    def is_bounded(self, slack=1e-9):
        return bool(np.all(np.abs(self.m) <= 1 + slack))


@dataclass(frozen=True)
class GeneratorSpec:
    """Herglotz data (b, rho) of a generator u(z) = ib +/- int (x+z)/(x-z) drho.

    ``rho_atoms`` is a sequence of (angle, mass) pairs.  The unitary Brownian
    motions correspond to ``GeneratorSpec(0.0, [(0.0, 0.5)])``.
    """

    b: float = 0.0
    rho_atoms: tuple = ()

    def __post_init__(self):
        atoms = tuple((float(a), float(w)) for a, w in self.rho_atoms)
        angles = [a for a, _ in atoms]
        if len(set(angles)) != len(angles):
            raise ValueError("generator atoms must have distinct angles")
        if any(w <= 0 for _, w in atoms):
            raise ValueError("generator atom masses must be positive")
        if any(not (-math.pi < a <= math.pi) for a in angles):
            raise ValueError("generator atom angles must lie in (-pi, pi]")
        object.__setattr__(self, "rho_atoms", atoms)

    def herglotz_part(self, z):
        """int (x+z)/(x-z) drho(x) for the discrete rho."""
        total = 0j
        for angle, mass in self.rho_atoms:
            x = cmath.exp(1j * angle)
            total += mass * (x + z) / (x - z)
        return total

    def u_monotone(self, z):
        return 1j * self.b + self.herglotz_part(z)

    def u_boolean(self, z):
        return 1j * self.b - self.herglotz_part(z)


BROWNIAN_GENERATOR = GeneratorSpec(0.0, ((0.0, 0.5),))


@dataclass(frozen=True)
class AbsolutelyContinuous:
    """Measure with a density w.r.t. normalized Haar measure d(theta)/(2 pi)."""

    density: Callable[[float], float]
    support: tuple = (-math.pi, math.pi)


@dataclass(frozen=True)
class Atomic:
    """Finite atomic measure: point masses ``weights`` at exp(i*angles)."""

    angles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "angles", np.asarray(self.angles, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))


@dataclass(frozen=True)
class MonotoneBM:
    t: float


@dataclass(frozen=True)
class BooleanBM:
    t: float


CircleMeasure = AbsolutelyContinuous | Atomic | MonotoneBM | BooleanBM


# -- series-level transforms --------------------------------------------------


def psi_from_moments(m):
    """psi(z) = sum_k m_k z^k as a series of order N = len(m)."""
    if isinstance(m, MomentSequence):
        m = m.m
    return TruncatedSeries(np.concatenate(([0.0], np.asarray(m, dtype=complex))))


def moments_from_psi(psi):
    return MomentSequence(psi.coeffs[1:])


def _require_origin(s, name):
    if s.coeffs[0] != 0:
        raise NonzeroConstantTerm(f"{name} must vanish at the origin")


def K_from_psi(psi):
    _require_origin(psi, "psi")
    return series_div(psi, 1 + psi)


def psi_from_K(K):
    _require_origin(K, "K")
    return series_div(K, 1 - K)


def F_from_psi(psi):
    """F = K/z, returned as a series of order N-1 with F(0) = m_1."""
    K = K_from_psi(psi)
    return TruncatedSeries(K.coeffs[1:])


def psi_from_F(F):
    """Inverse of :func:`F_from_psi`: psi = zF/(1 - zF), of order N+1."""
    zF = TruncatedSeries(np.concatenate(([0.0], F.coeffs)))
    return series_div(zF, 1 - zF)


# -- closed forms --------------------------------------------------------------


def _check_disk(z):
    if abs(z) >= 1:
        raise DomainError(f"|z| must be < 1, got |z| = {abs(z)!r}")


def _check_time(t):
    if not t >= 0:
        raise DomainError(f"time must be >= 0, got {t!r}")


def conformal_phi(z):
    """phi(z) = (z+1)^2/z, a bijection from the disk onto C minus [0, 4]."""
    if z == 0:
        raise DomainError("phi has a pole at 0")
    return (z + 1) ** 2 / z


def _on_cut(w):
    return w.imag == 0 and 0 <= w.real <= 4


def _bounded_root(w):
    """Root of Z^2 + (2-w) Z + 1 = 0 inside the closed unit disk.

    The two roots multiply to 1, so when the principal-branch candidate
    lands outside the disk its reciprocal is the other root.
    """
    Z = 0.5 * (w - 2 - w * cmath.sqrt(1 - 4 / w))
    if abs(Z) > 1:
        Z = 1 / Z
    return Z


def phi_inverse(w):
    w = complex(w)
    if _on_cut(w):
        raise DomainError(f"{w!r} lies on the branch cut [0, 4]")
    return _bounded_root(w)


def root_ambiguity(w, tol=1e-9):
    """True where both roots of Z^2 + (2-w) Z + 1 sit within ``tol`` of the circle."""
    Z = _bounded_root(complex(w))
    return abs(abs(Z) - 1) < tol


def Z_closed_form(t, z):
    """K-transform of mu_t: the bounded root Z_t(z) of (Z+1)^2/Z = e^{t/2} phi(z)."""
    _check_time(t)
    z = complex(z)
    _check_disk(z)
    if z == 0:
        return 0j
    if t == 0:
        return z
    return _bounded_root(math.exp(t / 2) * conformal_phi(z))


def psi_monotone(t, z):
    Z = Z_closed_form(t, z)
    return Z / (1 - Z)


def F_t_closed_form(t, z):
    """F-transform of nu_t: exp(t (z+1) / (2 (z-1)))."""
    _check_time(t)
    z = complex(z)
    _check_disk(z)
    return cmath.exp(t * (z + 1) / (2 * (z - 1)))


def theta_t(t, z):
    """Inner function z F_t(z), defined on the closed disk minus z = 1."""
    _check_time(t)
    z = complex(z)
    if abs(z) > 1 + 1e-15:
        raise DomainError(f"|z| must be <= 1, got {abs(z)!r}")
    if z == 1:
        raise DomainError("theta_t is singular at z = 1")
    return z * cmath.exp(t * (z + 1) / (2 * (z - 1)))


def theta_t_on_circle(t, alpha):
    """theta_t(e^{i alpha}) evaluated through its phase.

    On the circle (z+1)/(z-1) = -i cot(alpha/2), so theta_t = exp(i(alpha -
    (t/2) cot(alpha/2))) without the cancellation in z - 1 near z = 1.
    """
    if alpha == 0:
        raise DomainError("theta_t is singular at z = 1")
    return cmath.exp(1j * (alpha - 0.5 * t / math.tan(alpha / 2)))


def theta_t_derivative(t, z):
    """theta_t'(z) = theta_t(z) (1/z - t/(z-1)^2)."""
    z = complex(z)
    return theta_t(t, z) * (1 / z - t / (z - 1) ** 2)


def psi_boolean(t, z):
    th = theta_t(t, z)
    return th / (1 - th)


# -- Herglotz ------------------------------------------------------------------


def herglotz(measure, z):
    """H(z) = int (xi+z)/(xi-z) dmeasure(xi) for |z| < 1."""
    z = complex(z)
    _check_disk(z)
    if isinstance(measure, MonotoneBM):
        _check_time(measure.t)
        c = 2 * math.exp(-measure.t / 2) - 1
        return (z + 1) / cmath.sqrt(1 - 2 * z * c + z * z)
    if isinstance(measure, BooleanBM):
        th = theta_t(measure.t, z)
        return (1 + th) / (1 - th)
    if isinstance(measure, Atomic):
        xi = np.exp(1j * measure.angles)
        return complex(np.sum(measure.weights * (xi + z) / (xi - z)))
    if isinstance(measure, AbsolutelyContinuous):
        lo, hi = measure.support

        def part(fn):
            def f(th):
                xi = cmath.exp(1j * th)
                return fn((xi + z) / (xi - z)) * measure.density(th)
            return integrate.quad(f, lo, hi, limit=200)[0]

        return complex(part(lambda v: v.real), part(lambda v: v.imag)) / (2 * math.pi)
    raise TypeError(f"unsupported measure type {type(measure).__name__}")
