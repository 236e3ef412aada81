"""Spectral measure mu_t of the monotone unitary Brownian motion."""

import math
from dataclasses import dataclass

import numpy as np

from .poly import legendre_eval
from .transforms import DomainError

#: Returned by :func:`monotone_density` exactly at the support endpoints, where
#: the density has an inverse square-root singularity.
UNBOUNDED = math.inf


class QuadratureNonConvergence(RuntimeError):
    pass


def support_cos_bound(t):
    """c_t = 2 e^{-t/2} - 1; the support is {cos(theta) >= c_t}."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    return 2.0 * math.exp(-t / 2) - 1.0


def monotone_support(t):
    """Return (-theta_t, theta_t) with theta_t = arccos(2 e^{-t/2} - 1)."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")
    # arccos(1 - 2s) = 2 arcsin(sqrt(s)) keeps precision for small t
    half = 2.0 * math.asin(math.sqrt(-math.expm1(-t / 2)))
    return -half, half


@dataclass(frozen=True)
class MonotoneMeasure:
    t: float

    @property
    def support_cos_bound(self):
        return support_cos_bound(self.t)

    @property
    def support_half_angle(self):
        return monotone_support(self.t)[1]

    def moment(self, n):
        return monotone_moment(self.t, n)

    def density(self, theta):
        return monotone_density(self.t, theta)


def monotone_moment(t, n):
    """n-th moment of mu_t, (P_n(c) + P_{n-1}(c)) / 2 with c = 2e^{-t/2} - 1."""
    if n < 1:
        raise ValueError(f"moment index must be >= 1, got {n!r}")
    c = support_cos_bound(t)
    return 0.5 * (legendre_eval(n, c) + legendre_eval(n - 1, c))


def monotone_moments(t, n_max):
    """Moments m_1..m_{n_max} in one recurrence sweep."""
    c = support_cos_bound(t)
    p = np.empty(n_max + 1)
    p[0] = 1.0
    if n_max:
        p[1] = c
    for k in range(1, n_max):
        p[k + 1] = ((2 * k + 1) * c * p[k] - k * p[k - 1]) / (k + 1)
    return 0.5 * (p[1:] + p[:-1])


def monotone_density(t, theta):
    """Density of mu_t with respect to d(theta)/(2 pi).

    Zero off the support arc, :data:`UNBOUNDED` exactly at its endpoints.
    """
    if t <= 0:
        raise DomainError("mu_0 is the point mass at 1 and has no density")
    c = support_cos_bound(t)
    gap = math.cos(theta) - c
    if gap < 0:
        return 0.0
    if gap == 0:
        return UNBOUNDED
    return math.sqrt(2.0) * math.cos(theta / 2) / math.sqrt(gap)


def _simpson(y, h):
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


def _moment_integral(t, n, grid):
    # cos(theta) - c = u^2 removes the endpoint singularity at theta_t; the
    # further u = sqrt(1-c) sin(phi) removes the one it creates at theta = 0.
    # Together: theta(phi) = 2 arcsin(k cos phi), k^2 = 1 - e^{-t/2}, and
    # density * dtheta / (2 pi) over the half arc becomes dphi / pi.
    k = math.sqrt(-math.expm1(-t / 2))
    phi = np.linspace(0.0, math.pi / 2, grid + 1)
    theta = 2.0 * np.arcsin(k * np.cos(phi))
    h = (math.pi / 2) / grid
    # the measure is even, so the sine part cancels exactly
    return 2.0 / math.pi * _simpson(np.cos(n * theta), h)


def monotone_moment_by_quadrature(t, n, grid=256, tol=1e-12):
    """(1/2pi) int e^{i n theta} density(theta) dtheta by composite Simpson.

    The result is compared against the same rule on ``2*grid`` panels and
    :class:`QuadratureNonConvergence` is raised if they differ by more than
    ``tol``; the refined value is returned.
    """
    if t <= 0:
        raise DomainError("quadrature needs t > 0")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    grid += grid % 2
    coarse = _moment_integral(t, n, grid)
    fine = _moment_integral(t, n, 2 * grid)
    if abs(fine - coarse) > tol:
        raise QuadratureNonConvergence(
            f"n={n}, t={t}: refinement changed the moment by {abs(fine - coarse):.3e}"
        )
    return complex(fine, 0.0)
