import cmath
import math

import numpy as np
import pytest

from ubm.checks import disk_points
from ubm.monotone import monotone_moments
from ubm.ode import (
    ODEConfig,
    StepInstability,
    integrate_generic_monotone_ode,
    integrate_K_ode,
    integrate_monotone_moment_system,
    integrate_rho_ode,
    moment_system_rhs,
    rho_implicit_residual,
    rk4,
)
from ubm.transforms import BROWNIAN_GENERATOR, DomainError, GeneratorSpec, Z_closed_form, psi_monotone

CFG = ODEConfig(step=1e-4)


def test_fixed_points():
    assert integrate_K_ode(0, 1.0, CFG) == 0
    assert integrate_rho_ode(0, 1.0, CFG) == 0
    assert integrate_generic_monotone_ode(0, BROWNIAN_GENERATOR, 1.0, CFG) == 0


def test_K_matches_closed_form():
    assert abs(integrate_K_ode(0.4, 1.0, CFG) - Z_closed_form(1.0, 0.4)) < 1e-8
    for z in disk_points(10):
        for t in (0.5, 2.0):
            assert abs(integrate_K_ode(z, t, CFG) - Z_closed_form(t, z)) < 1e-8


def test_flow_property():
    z, s, t = 0.3 + 0.2j, 0.4, 0.7
    two = integrate_K_ode(integrate_K_ode(z, s, CFG), t, CFG)
    assert abs(two - integrate_K_ode(z, s + t, CFG)) < 1e-8
    r = integrate_rho_ode(z, s, CFG)
    # restart from rho: rho(0) = z'/(1-z') with z' = r/(1+r)
    two = integrate_rho_ode(r / (1 + r), t, CFG)
    assert abs(two - integrate_rho_ode(z, s + t, CFG)) < 1e-8


def test_generic_generator_specializes():
    a = integrate_generic_monotone_ode(0.4, BROWNIAN_GENERATOR, 1.0, CFG)
    assert abs(a - integrate_K_ode(0.4, 1.0, CFG)) < 1e-12


@pytest.mark.parametrize("b", [0.7, -1.3])
def test_generic_rotation(b):
    z, t = 0.5 - 0.2j, 1.5
    K = integrate_generic_monotone_ode(z, GeneratorSpec(b, ()), t, CFG)
    assert abs(K - z * cmath.exp(-1j * b * t)) < 1e-12


def test_rho_matches_psi_and_implicit_relation():
    z = 0.3
    Z = Z_closed_form(1.0, z)
    assert abs(integrate_rho_ode(z, 1.0, CFG) - Z / (1 - Z)) < 1e-8
    for z in disk_points(10):
        rho = integrate_rho_ode(z, 2.0, CFG)
        assert abs(rho - psi_monotone(2.0, z)) < 1e-8
        assert abs(rho_implicit_residual(rho, z, 2.0)) < 1e-8


def test_rk4_order_ratio():
    exact = Z_closed_form(1.0, 0.4)
    e1 = abs(integrate_K_ode(0.4, 1.0, ODEConfig(step=0.01)) - exact)
    e2 = abs(integrate_K_ode(0.4, 1.0, ODEConfig(step=0.005)) - exact)
    assert 12 <= e1 / e2 <= 20


def test_moment_system():
    # n = 1 reduces to dm_1/dt = -m_1/2
    assert moment_system_rhs(np.array([0.8])) == pytest.approx([-0.4])
    m = integrate_monotone_moment_system(1.0, 10, ODEConfig(step=1e-3))
    assert np.max(np.abs(m - monotone_moments(1.0, 10))) < 1e-7
    assert m[0] == pytest.approx(math.exp(-0.5), abs=1e-12)
    assert np.all(integrate_monotone_moment_system(0.0, 5) == 1)


def test_moment_system_rhs_brute_force():
    rng = np.random.default_rng(5)
    m = rng.uniform(-1, 1, 7)
    a = np.concatenate(([1.0], m))
    expected = []
    for n in range(1, 8):
        first = sum(a[n - l] * a[l] for l in range(1, n + 1))
        second = sum(a[n - k] * a[k - l] * a[l] for k in range(2, n + 1) for l in range(1, k))
        expected.append(-0.5 * first - second)
    assert np.allclose(moment_system_rhs(m), expected, atol=1e-14)


def test_trajectories_stay_in_disk():
    def leaves(y):
        return 2 * y

    with pytest.raises(StepInstability):
        rk4(leaves, 0.5 + 0j, 2.0, ODEConfig(step=0.1), guard=lambda y: abs(y) < 1)


def test_config_and_domain_errors():
    with pytest.raises(ValueError):
        ODEConfig(method="Euler")
    with pytest.raises(ValueError):
        ODEConfig(step=0.0)
    with pytest.raises(DomainError):
        integrate_K_ode(1.0, 1.0)
    with pytest.raises(DomainError):
        integrate_rho_ode(0.1, -1.0)
    assert ODEConfig(step=0.3).steps_for(1.0) == 4
