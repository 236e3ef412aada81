"""
The spectral measure of the monotone unitary Brownian motion
=============================================================

mu_t lives on an arc around 1 that opens up as t grows, and fills the
whole circle (Haar measure) in the limit.
"""

import math

import numpy as np

from ubm import monotone_density, monotone_moment_by_quadrature, monotone_moments, monotone_support

###############################################################################
# The support arc.  At t = 2 ln 2 it is exactly the right half circle.

for t in (0.1, 2 * math.log(2), 3.0, 20.0):
    lo, hi = monotone_support(t)
    print(f"t = {t:6.3f}   support = [{lo:+.6f}, {hi:+.6f}]")

###############################################################################
# The density blows up like an inverse square root at both ends of the arc
# and flattens towards 1 for large t.

t = 1.0
hi = monotone_support(t)[1]
for theta in np.linspace(0, hi, 6):
    print(f"theta = {theta:.4f}   density = {monotone_density(t, theta):.6f}")
print("t = 200, theta = 1:", monotone_density(200.0, 1.0))

###############################################################################
# Moments from the Legendre closed form, and again by integrating the density.

exact = monotone_moments(t, 8)
quad = [monotone_moment_by_quadrature(t, n).real for n in range(1, 9)]
for n, (a, b) in enumerate(zip(exact, quad), 1):
    print(f"m_{n} = {a:+.15f}   quadrature gap {abs(a - b):.1e}")
