"""Cross-checks between closed forms and their independent re-derivations.

Each suite returns a list of :class:`Check` records; the CLI ``verify``
command serializes them.  Test points are fixed deterministic grids.
"""

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import boolean, convolution, fock, monotone, ode, transforms
from .transforms import MomentSequence


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self):
        return asdict(self)


def _leq(name, value, tol, detail=""):
    value = float(value)
    return Check(name, value, tol, bool(value <= tol), detail)


def _within(name, value, lo, hi, detail=""):
    value = float(value)
    return Check(name, value, hi, bool(lo <= value <= hi), f"required in [{lo}, {hi}]" + detail)


def disk_points(count, r_min=0.05, r_max=0.9):
    """Deterministic spiral of points in the disk (golden-angle spacing)."""
    k = np.arange(count)
    r = r_min + (r_max - r_min) * k / max(count - 1, 1)
    return r * np.exp(2.399963229728653j * k)


def empirical_orders(errors):
    """log2 of successive error ratios under grid doubling."""
    e = np.asarray(errors, dtype=float)
    return np.log2(e[:-1] / e[1:])


# -- suites --------------------------------------------------------------------


def suite_ode(tol=None):
    out = []
    cfg = ode.ODEConfig(step=1e-4)
    pts = disk_points(10)
    worst_K = worst_psi = worst_rel = 0.0
    for t in (0.5, 1.0, 2.0):
        for z in pts:
            worst_K = max(worst_K, abs(ode.integrate_K_ode(z, t, cfg) - transforms.Z_closed_form(t, z)))
            rho = ode.integrate_rho_ode(z, t, cfg)
            worst_psi = max(worst_psi, abs(rho - transforms.psi_monotone(t, z)))
            worst_rel = max(worst_rel, abs(ode.rho_implicit_residual(rho, z, t)))
    out.append(_leq("ode.K_vs_closed_form", worst_K, tol or 1e-8))
    out.append(_leq("ode.rho_vs_psi", worst_psi, tol or 1e-8))
    out.append(_leq("ode.rho_implicit_relation", worst_rel, tol or 1e-8))

    exact = transforms.Z_closed_form(1.0, 0.4)
    e1 = abs(ode.integrate_K_ode(0.4, 1.0, ode.ODEConfig(step=0.01)) - exact)
    e2 = abs(ode.integrate_K_ode(0.4, 1.0, ode.ODEConfig(step=0.005)) - exact)
    out.append(_within("ode.rk4_order_ratio", e1 / e2, 12.0, 20.0))

    worst = 0.0
    for t in (0.5, 1.0, 2.0, 4.0):
        m = ode.integrate_monotone_moment_system(t, 20, ode.ODEConfig(step=1e-3))
        worst = max(worst, np.max(np.abs(m - monotone.monotone_moments(t, 20))))
    out.append(_leq("ode.moment_system_vs_legendre", worst, tol or 1e-7))
    return out


def suite_semigroup(tol=None):
    out = []
    N = 12
    mono = convolution.monotone_convolve(
        MomentSequence(monotone.monotone_moments(0.5, N)),
        MomentSequence(monotone.monotone_moments(1.0, N)),
    )
    err = np.max(np.abs(mono.m - monotone.monotone_moments(1.5, N)))
    out.append(_leq("semigroup.monotone_moments", err, tol or 1e-9))
    boo = convolution.boolean_convolve(
        MomentSequence(boolean.boolean_moments(0.5, N)),
        MomentSequence(boolean.boolean_moments(1.0, N)),
    )
    err = np.max(np.abs(boo.m - boolean.boolean_moments(1.5, N)))
    out.append(_leq("semigroup.boolean_moments", err, tol or 1e-9))

    worst_Z = worst_F = 0.0
    times = (0.3, 0.7, 1.5)
    for z in disk_points(20, r_max=0.95):
        for s in times:
            for t in times:
                Zst = transforms.Z_closed_form(s, transforms.Z_closed_form(t, z))
                worst_Z = max(worst_Z, abs(Zst - transforms.Z_closed_form(s + t, z)))
                FsFt = transforms.F_t_closed_form(s, z) * transforms.F_t_closed_form(t, z)
                worst_F = max(worst_F, abs(FsFt - transforms.F_t_closed_form(s + t, z)))
    out.append(_leq("semigroup.Z_composition", worst_Z, tol or 1e-10))
    out.append(_leq("semigroup.F_product", worst_F, tol or 1e-10))
    return out


def suite_quadrature(tol=None):
    worst = 0.0
    for t in (0.5, 1.0, 2.0, 4.0):
        for n in range(0, 21):
            q = monotone.monotone_moment_by_quadrature(t, n)
            exact = 1.0 if n == 0 else monotone.monotone_moment(t, n)
            worst = max(worst, abs(q - exact))
    return [_leq("quadrature.monotone_moments", worst, tol or 1e-8)]


def suite_fock(tol=None, sizes=(256, 512, 1024, 2048)):
    out = []
    worst = 0.0
    for t in (0.25, 1.0, 3.0):
        rec = np.array(fock.moment_recursion(t, 12))
        worst = max(worst, np.max(np.abs(rec - boolean.boolean_moments(t, 12))))
    out.append(_leq("fock.recursion_vs_laguerre", worst, tol or 1e-12))

    t = 1.0
    exact = boolean.boolean_moments(t, 8)
    errs = []
    for M in sizes:
        U = fock.build_U(t, fock.FockGrid(t, M))
        vm = np.real(fock.vacuum_moments(U, 8))
        errs.append(np.abs(vm - exact))
    errs = np.array(errs)
    out.append(_leq("fock.first_moment_exact", errs[:, 0].max(), 1e-15))
    out.append(_leq("fock.second_moment_finest", errs[-1, 1], 2e-3))
    for n in range(2, 9):
        col = errs[:, n - 1]
        if np.all(col < 1e-12):
            out.append(Check(f"fock.order_n{n}", 0.0, 0.9, True, "exact on the grid (round-off floor)"))
            continue
        order = empirical_orders(col).min()
        out.append(Check(f"fock.order_n{n}", float(order), 0.9, bool(order >= 0.9),
                         "minimum empirical order, required >= 0.9"))
    return out


def suite_lem(tol=None, sizes=(256, 512, 1024), i_max=4):
    out = []
    t = 1.0
    runs = [fock.verify_lem_identities(t, fock.FockGrid(t, M), i_max) for M in sizes]
    for i in range(i_max):
        for field in ("volterra_power", "composed_row", "scalar"):
            vals = np.array([getattr(r[i], field) for r in runs])
            if np.all(vals == 0):
                out.append(Check(f"lem.{field}_i{i + 1}", 0.0, 0.0, True, "exact on the grid"))
                continue
            ratios = vals[:-1] / vals[1:]
            ok = bool(np.all((ratios >= 1.6) & (ratios <= 2.4)))
            out.append(Check(f"lem.{field}_i{i + 1}", float(ratios.min()), 1.6, ok,
                             f"halving ratios {np.round(ratios, 3).tolist()}"))
    value = fock.verify_lem_identities(t, fock.FockGrid(t, 1024), 1)[0].scalar_value
    out.append(_leq("lem.scalar_i1_value", abs(value - 0.5 * math.exp(-0.5)), tol or 1e-3))
    return out


SUITES = {
    "ode": suite_ode,
    "semigroup": suite_semigroup,
    "quadrature": suite_quadrature,
    "fock": suite_fock,
    "lem": suite_lem,
}


def run(suite="all", tol=None, grid=None):
    """Run one suite or all of them.

    ``grid`` sets the finest Fock grid; the fock suite then refines over
    grid/8, grid/4, grid/2, grid.
    """
    names = list(SUITES) if suite == "all" else [suite]
    results = []
    for name in names:
        if name == "fock" and grid is not None:
            results.extend(suite_fock(tol, sizes=tuple(grid >> k for k in (3, 2, 1, 0))))
        else:
            results.extend(SUITES[name](tol))
    return results


def herglotz_boundary_gap(t, theta, r=1 - 1e-6):
    """|Re H_{mu_t}(r e^{i theta}) - density(theta)| at an interior support point."""
    H = transforms.herglotz(transforms.MonotoneBM(t), r * cmath.exp(1j * theta))
    return abs(H.real - monotone.monotone_density(t, theta))
