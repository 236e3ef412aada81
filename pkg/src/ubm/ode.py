"""Fixed-step RK4 re-derivation of the monotone closed forms.

Each integrator solves one of the evolution equations satisfied by mu_t and
can be compared against the closed forms in :mod:`ubm.transforms` and
:mod:`ubm.monotone`:

* the K-transform equation 2 dK/dt = -K (1+K)/(1-K), K(0) = z;
* the general generator equation dK/dt = -K u(K);
* the moment generating function equation d rho/dt = -rho(1+rho)(1+2 rho)/2,
  rho(0) = z/(1-z);
* the triangular system of moment ODEs obtained from the vacuum expectation
  of the stochastic equation for U_t^n.
"""

import math
from dataclasses import dataclass

import numpy as np

from .transforms import DomainError


class StepInstability(RuntimeError):
    pass


@dataclass(frozen=True)
class ODEConfig:
    step: float = 1e-4
    t_end: float = 1.0
    tolerance: float = 1e-8
    method: str = "RK4"

    def __post_init__(self):
        if self.method != "RK4":
            raise ValueError(f"unsupported method {self.method!r}")
        if not self.step > 0 or not self.tolerance > 0:
            raise ValueError("step and tolerance must be positive")
        if self.t_end > 0 and self.step > self.t_end:
            raise ValueError("step must not exceed t_end")

    def steps_for(self, t_end):
        """Number of equal steps covering [0, t_end] with size <= self.step."""
        return max(1, math.ceil(t_end / self.step - 1e-9))


def rk4(f, y0, t_end, cfg, guard=None):
    """Integrate y' = f(y) from 0 to t_end with equal steps of size <= cfg.step.

    ``guard(y)`` is called after each step and should return False when the
    trajectory left its admissible region.
    """
    if t_end < 0:
        raise DomainError("t_end must be >= 0")
    y = y0
    if t_end == 0:
        return y
    n = cfg.steps_for(t_end)
    h = t_end / n
    for _ in range(n):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if guard is not None and not guard(y):
            raise StepInstability(f"trajectory left the admissible region: {y!r}")
    return y


def _in_disk(z):
    return abs(z) < 1


def integrate_K_ode(z0, t_end, cfg=ODEConfig()):
    z0 = complex(z0)
    if abs(z0) >= 1:
        raise DomainError("z0 must lie in the open unit disk")

    def f(K):
        return -0.5 * K * (1 + K) / (1 - K)

    return rk4(f, z0, t_end, cfg, _in_disk)


def integrate_generic_monotone_ode(z0, gen, t_end, cfg=ODEConfig()):
    """dK/dt = -K u(K) with u(z) = ib + sum_j m_j (x_j+z)/(x_j-z)."""
    z0 = complex(z0)
    if abs(z0) >= 1:
        raise DomainError("z0 must lie in the open unit disk")
    return rk4(lambda K: -K * gen.u_monotone(K), z0, t_end, cfg, _in_disk)


def integrate_rho_ode(z, t_end, cfg=ODEConfig()):
    """Moment generating function psi_{mu_t}(z) from rho(0, z) = z/(1-z)."""
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("z must lie in the open unit disk")

    def f(r):
        return -0.5 * r * (1 + r) * (1 + 2 * r)

    def guard(r):
        return abs(r / (1 + r)) < 1

    return rk4(f, z / (1 - z), t_end, cfg, guard)


def rho_implicit_residual(rho, z, t):
    """rho(1+rho)/(1+2 rho)^2 - z e^{-t/2}/(1+z)^2."""
    return rho * (1 + rho) / (1 + 2 * rho) ** 2 - z * math.exp(-t / 2) / (1 + z) ** 2


def moment_system_rhs(m):
    """Time derivative of (m_1..m_N) with m_0 = 1 held fixed.

    dm_n/dt = -1/2 sum_{l=1}^n m_{n-l} m_l
              - sum_{k=2}^n m_{n-k} sum_{l=1}^{k-1} m_{k-l} m_l.
    """
    N = m.size
    a = np.concatenate(([1.0], m))
    conv = np.convolve(a, a)[: N + 1]
    # S_k = sum_{l=1}^k m_{k-l} m_l = conv_k - m_k  (drops the l = 0 term)
    S = conv - a
    S[0] = 0.0
    inner = S - a  # sum_{l=1}^{k-1} m_{k-l} m_l, valid for k >= 1
    inner[0] = 0.0
    inner[1] = 0.0
    second = np.convolve(a, inner)[: N + 1]
    return -0.5 * S[1:] - second[1:]


def integrate_monotone_moment_system(t_end, n_max, cfg=ODEConfig()):
    """Moments m_1..m_{n_max} of mu_{t_end} by integrating the moment ODEs."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")

    def guard(m):
        return bool(np.all(np.abs(m) <= 1 + 1e-9))

    return rk4(moment_system_rhs, np.ones(n_max), t_end, cfg, guard)

