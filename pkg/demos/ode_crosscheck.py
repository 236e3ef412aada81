"""
Re-deriving the closed forms with RK4
=====================================

The K-transform of mu_t satisfies an autonomous ODE in t.  Integrating it
with a fixed-step RK4 and comparing against the closed form is an
independent check on both.
"""

import math

from ubm import ODEConfig, Z_closed_form, integrate_K_ode, integrate_monotone_moment_system, monotone_moments

z = 0.4
for step in (0.04, 0.02, 0.01, 0.005):
    err = abs(integrate_K_ode(z, 1.0, ODEConfig(step=step)) - Z_closed_form(1.0, z))
    print(f"step {step:<6} error {err:.3e}")

###############################################################################
# Halving the step cuts the error by roughly 2^4 once the step is small.
# The moment ODE system gives the Legendre moments without any closed form.

m = integrate_monotone_moment_system(1.0, 6, ODEConfig(step=1e-3))
print(m - monotone_moments(1.0, 6))
print("m_1 vs exp(-1/2):", m[0] - math.exp(-0.5))
