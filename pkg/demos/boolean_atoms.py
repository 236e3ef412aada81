"""
Atoms of the boolean unitary Brownian motion
============================================

nu_t is purely atomic.  Its atoms come in conjugate pairs that pile up at
z = 1, so a finite list only ever captures most of the mass.
"""

from ubm import TruncationPolicy, boolean_moment, boolean_moment_from_atoms, solve_atoms, x0_curve

###############################################################################
# The first few atoms at t = 1, and how much mass a list of a given length
# holds.  The tail shrinks like t / (2 pi^2 N).

atoms = solve_atoms(1.0, TruncationPolicy(n_max=2000))
for n, alpha, x, c in atoms.entries(limit=5):
    print(f"n = {n}   alpha = {alpha:.10f}   x = {x:+.10f}   c = {c:.10f}")
print("captured mass with 2001 pairs:", atoms.captured_mass)

###############################################################################
# Asking for a mass target instead of a count.

atoms = solve_atoms(1.0, TruncationPolicy(mass_tol=1e-8))
print("pairs needed for 1 - 1e-8:", len(atoms))

###############################################################################
# The atom sum reproduces the Laguerre moments up to the missing tail mass.

for n in range(1, 6):
    a, b = boolean_moment(1.0, n), boolean_moment_from_atoms(atoms, n)
    print(f"m_{n} = {a:+.12f}   atom sum gap {abs(a - b):.1e}")

###############################################################################
# The outermost atom x_0 = cos(alpha_0) drifts towards -1 as t grows.

ts = [0.1, 1, 10, 100]
for t, x in zip(ts, x0_curve(ts)):
    print(f"t = {t:6}   x_0 = {x:+.6f}")
