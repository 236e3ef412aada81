"""Multiplicative monotone and boolean convolution of moment sequences.

Inputs are taken at face value: no check is made that a sequence really is
the moment sequence of a probability measure on the circle (that would be a
Toeplitz positivity problem).
"""

from .series import OrderMismatch, series_compose
from .transforms import (
    F_from_psi,
    K_from_psi,
    MomentSequence,
    moments_from_psi,
    psi_from_F,
    psi_from_K,
    psi_from_moments,
)

MAX_ORDER = 64


def _prepare(m1, m2, max_order):
    m1 = m1 if isinstance(m1, MomentSequence) else MomentSequence(m1)
    m2 = m2 if isinstance(m2, MomentSequence) else MomentSequence(m2)
    if m1.order != m2.order:
        raise OrderMismatch(f"moment orders differ: {m1.order} vs {m2.order}")
    if m1.order > max_order:
        raise ValueError(
            f"order {m1.order} exceeds {max_order}; series composition loses "
            "accuracy beyond it (pass max_order to override)"
        )
    return m1, m2


def monotone_convolve(m1, m2, max_order=MAX_ORDER):
    """Moments of mu1 |> mu2 through K_nu = K_mu1 o K_mu2."""
    m1, m2 = _prepare(m1, m2, max_order)
    K1 = K_from_psi(psi_from_moments(m1))
    K2 = K_from_psi(psi_from_moments(m2))
    return moments_from_psi(psi_from_K(series_compose(K1, K2)))


def boolean_convolve(m1, m2, max_order=MAX_ORDER):
    """Moments of the boolean product through F_nu = F_mu1 * F_mu2."""
    m1, m2 = _prepare(m1, m2, max_order)
    F1 = F_from_psi(psi_from_moments(m1))
    F2 = F_from_psi(psi_from_moments(m2))
    return moments_from_psi(psi_from_F(F1 * F2))
