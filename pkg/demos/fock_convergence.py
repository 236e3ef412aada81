"""
A boolean Fock space on a grid
==============================

The explicit solution U_t of the boolean quantum stochastic differential
equation becomes an (M+1) x (M+1) matrix once L^2([0, T]) is sampled at M
midpoints.  Its vacuum moments approach the moments of nu_t at rate dt.
"""

import numpy as np

from ubm import FockGrid, boolean_moments, build_U, moment_recursion, unitarity_defect, vacuum_moments

t = 1.0
exact = boolean_moments(t, 6)
for M in (128, 256, 512, 1024):
    U = build_U(t, FockGrid(t, M))
    err = np.abs(np.real(vacuum_moments(U, 6)) - exact)
    print(f"M = {M:5d}   errors {np.array2string(err, precision=2)}   |U*U - I| = {unitarity_defect(U):.1e}")

###############################################################################
# The same moments without any grid: the recursion obtained by eliminating
# the Fock space operators analytically.

print(np.array(moment_recursion(t, 6)) - exact)
