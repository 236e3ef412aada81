"""Spectral measure nu_t of the boolean unitary Brownian motion.

nu_t is purely atomic.  Its atoms are the conjugate pairs exp(+-i alpha_n),
n = 0, 1, 2, ..., where alpha_n solves

    g_t(alpha) = (t/2) cot(alpha/2) - alpha = 2 n pi,

and each member of the pair carries mass c_n = 2(1-cos a)/(t + 2(1-cos a)).
The angles decrease to 0, so the atoms accumulate at z = 1 and the total mass
2 * sum(c_n) approaches 1 only through a tail of order t / (2 pi^2 N).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .poly import laguerre1_eval
from .transforms import DomainError


class BracketFailure(RuntimeError):
    pass


class TruncationNotReached(RuntimeError):
    pass


def boolean_moment(t, n):
    """n-th moment of nu_t as a signed sum of index-1 Laguerre polynomials."""
    if n < 1:
        raise ValueError(f"moment index must be >= 1, got {n!r}")
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t!r}")

    def s(shift):
        return sum(
            laguerre1_eval(n - k - shift, k * t) * math.exp(-k * t / 2)
            for k in range(1, n - shift + 1)
        )

    return s(0) - 2.0 * s(1) + s(2)


def boolean_moments(t, n_max):
    return np.array([boolean_moment(t, n) for n in range(1, n_max + 1)])


def g_t_eval(t, theta):
    """g_t in the angle variable: (t/2) cot(theta/2) - theta, theta in (0, pi]."""
    if t <= 0:
        raise DomainError("g_t needs t > 0")
    if not 0 < theta <= math.pi:
        raise DomainError(f"theta must lie in (0, pi], got {theta!r}")
    if theta == math.pi:
        return -math.pi
    return 0.5 * t / math.tan(theta / 2) - theta


def g_t_of_x(t, x):
    """g_t(x) = (t/2) sqrt((1+x)/(1-x)) - arccos(x) on [-1, 1)."""
    return 0.5 * t * math.sqrt((1 + x) / (1 - x)) - math.acos(x)


# -- atoms ----------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationPolicy:
    """Stop after index ``n_max``, or once 1 - 2 sum(c_n) < ``mass_tol``."""

    n_max: int | None = None
    mass_tol: float | None = 1e-8
    hard_cap: int = 20_000_000

    def __post_init__(self):
        if self.n_max is None and self.mass_tol is None:
            raise ValueError("policy needs n_max or mass_tol")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError("n_max must be >= 0")


@dataclass(frozen=True, eq=False)
class AtomList:
    """Atoms of nu_t for n = 0..truncation_index (one entry per conjugate pair)."""

    t: float
    alpha: np.ndarray
    weight: np.ndarray
    captured_mass: float

    @property
    def truncation_index(self):
        return self.alpha.size - 1

    @property
    def x(self):
        return np.cos(self.alpha)

    @property
    def index(self):
        return np.arange(self.alpha.size)

    def __len__(self):
        return self.alpha.size

    def entries(self, limit=None):
        """Yield (n, alpha_n, x_n, c_n) tuples in index order."""
        stop = self.alpha.size if limit is None else min(limit, self.alpha.size)
        for n in range(stop):
            a = float(self.alpha[n])
            yield n, a, math.cos(a), float(self.weight[n])

    def as_measure(self):
        from .transforms import Atomic

        return Atomic(
            np.concatenate((self.alpha, -self.alpha)),
            np.concatenate((self.weight, self.weight)),
        )


def _half_angles(t, n, iters=60):
    """Solve s = arctan(t / (4 (n pi + s))) for every index in ``n``.

    This is g_t(2s) = 2 n pi rewritten so that the residual
    F(s) = s - arctan(...) is increasing with slope in [1, 2).  The root lies
    in [arctan(t/(4(n pi + pi/2))), arctan(t/(4 n pi))] (upper end pi/2 for
    n = 0), and a bracketed Newton iteration converges in a handful of steps.
    """
    n = np.asarray(n, dtype=float)
    a = t / 4.0
    npi = n * math.pi
    lo = np.arctan(a / (npi + math.pi / 2))
    with np.errstate(divide="ignore"):
        hi = np.where(n > 0, np.arctan(a / npi), math.pi / 2)

    def resid(s):
        return s - np.arctan(a / (npi + s))

    if np.any(resid(lo) > 0) or np.any(resid(hi) < 0):
        raise BracketFailure(f"root not bracketed for t={t}")
    s = 0.5 * (lo + hi)
    for _ in range(iters):
        f = resid(s)
        lo = np.where(f < 0, s, lo)
        hi = np.where(f > 0, s, hi)
        d = npi + s
        step = f / (1.0 + a / (d * d + a * a))
        new = s - step
        outside = (new < lo) | (new > hi)
        new = np.where(outside, 0.5 * (lo + hi), new)
        done = np.all(np.abs(new - s) <= 4e-16 * s)
        s = new
        if done:
            break
    return s


def _weights(t, s):
    one_minus_cos = 2.0 * np.sin(s) ** 2
    return 2.0 * one_minus_cos / (t + 2.0 * one_minus_cos)


def solve_atoms(t, policy=None):
    """Locate the atoms of nu_t and their masses, truncated per ``policy``."""
    if t <= 0:
        raise DomainError("nu_t is atomic only for t > 0")
    policy = policy or TruncationPolicy()

    if policy.n_max is not None:
        if policy.n_max > policy.hard_cap:
            raise TruncationNotReached("n_max exceeds the hard cap")
        s = _half_angles(t, np.arange(policy.n_max + 1))
        w = _weights(t, s)
        return _finish(t, s, w)

    chunks_s, chunks_w = [], []
    total, start, size = 0.0, 0, 4096
    while start <= policy.hard_cap:
        stop = min(start + size, policy.hard_cap + 1)
        s = _half_angles(t, np.arange(start, stop))
        w = _weights(t, s)
        running = total + 2.0 * np.cumsum(w)
        hit = np.flatnonzero(1.0 - running < policy.mass_tol)
        if hit.size:
            # the running sum only locates the cut; the reported mass is an
            # fsum, so step forward until that one meets the target as well
            all_w = np.concatenate(chunks_w + [w])
            k = sum(c.size for c in chunks_w) + hit[0] + 1
            while k < all_w.size and 1.0 - 2.0 * math.fsum(all_w[:k]) >= policy.mass_tol:
                k += 1
            all_s = np.concatenate(chunks_s + [s])
            return _finish(t, all_s[:k].copy(), all_w[:k].copy())
        chunks_s.append(s)
        chunks_w.append(w)
        total = running[-1]
        start, size = stop, 2 * size
    raise TruncationNotReached(
        f"captured mass {total:.12f} after {policy.hard_cap} atoms (t={t})"
    )


def _finish(t, s, w):
    mass = 2.0 * math.fsum(w)
    if mass > 1 + 1e-9:
        warnings.warn(f"captured atomic mass {mass!r} exceeds 1", RuntimeWarning)
    alpha = 2.0 * s
    alpha.setflags(write=False)
    w.setflags(write=False)
    return AtomList(t=t, alpha=alpha, weight=w, captured_mass=mass)


def boolean_moment_from_atoms(atoms, n):
    """2 * sum_k c_k cos(n alpha_k): the n-th moment of the truncated measure."""
    if n < 1:
        raise ValueError(f"moment index must be >= 1, got {n!r}")
    if 1 - atoms.captured_mass > 1e-3:
        warnings.warn(
            f"atom list captures only {atoms.captured_mass:.6f} of the mass",
            RuntimeWarning,
        )
    return 2.0 * float(np.sum(atoms.weight * np.cos(n * atoms.alpha)))


def x0_curve(t_values):
    """x_0(t) = cos(alpha_0(t)) for each t; decreasing in t towards -1."""
    out = []
    for t in t_values:
        if t <= 0:
            raise DomainError("x_0(t) needs t > 0")
        s = _half_angles(t, np.array([0]))[0]
        # cos(2s) = 1 - 2 sin^2 s, kept accurate near x = 1
        out.append(1.0 - 2.0 * math.sin(s) ** 2)
    return out
