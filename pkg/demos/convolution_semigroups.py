"""
Convolution semigroups
======================

Both families are semigroups: mu_s |> mu_t = mu_{s+t} for monotone
convolution and nu_s x nu_t = nu_{s+t} for boolean convolution.  Here the
convolutions run purely on truncated power series of the moments.
"""

import numpy as np

from ubm import boolean_convolve, boolean_moments, monotone_convolve, monotone_moments
from ubm.transforms import MomentSequence

N = 12

out = monotone_convolve(monotone_moments(0.5, N), monotone_moments(1.0, N))
print("monotone gap:", np.max(np.abs(out.m - monotone_moments(1.5, N))))

out = boolean_convolve(boolean_moments(0.5, N), boolean_moments(1.0, N))
print("boolean gap: ", np.max(np.abs(out.m - boolean_moments(1.5, N))))

###############################################################################
# Haar measure (all moments zero) absorbs everything under the boolean
# product, while the point mass at 1 is a unit for both operations.

haar, one = MomentSequence.haar(N), MomentSequence.dirac_one(N)
print(boolean_convolve(haar, boolean_moments(0.7, N)).m[:4])
print(np.allclose(monotone_convolve(one, monotone_moments(0.7, N)).m, monotone_moments(0.7, N)))
