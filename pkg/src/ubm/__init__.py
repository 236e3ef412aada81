"""Spectral measures of the monotone and boolean unitary Brownian motions.

Closed-form moments, densities, atoms and transforms, together with
independent numerical re-derivations (ODE integration, series convolution,
quadrature and a discretized boolean Fock space).
"""

from .boolean import (
    AtomList,
    TruncationPolicy,
    boolean_moment,
    boolean_moment_from_atoms,
    boolean_moments,
    g_t_eval,
    solve_atoms,
    x0_curve,
)
from .convolution import boolean_convolve, monotone_convolve
from .fock import (
    FockGrid,
    build_U,
    moment_recursion,
    unitarity_defect,
    vacuum_moment,
    vacuum_moments,
    verify_lem_identities,
)
from .monotone import (
    MonotoneMeasure,
    monotone_density,
    monotone_moment,
    monotone_moment_by_quadrature,
    monotone_moments,
    monotone_support,
)
from .ode import (
    ODEConfig,
    integrate_generic_monotone_ode,
    integrate_K_ode,
    integrate_monotone_moment_system,
    integrate_rho_ode,
)
from .poly import PolyFamily, laguerre1_eval, legendre_eval
from .series import TruncatedSeries, series_add, series_compose, series_div, series_mul
from .transforms import (
    Atomic,
    AbsolutelyContinuous,
    BooleanBM,
    DomainError,
    F_from_psi,
    F_t_closed_form,
    GeneratorSpec,
    K_from_psi,
    MomentSequence,
    MonotoneBM,
    Z_closed_form,
    conformal_phi,
    herglotz,
    phi_inverse,
    psi_from_F,
    psi_from_K,
    psi_from_moments,
    theta_t,
)

__version__ = "0.1.0"
