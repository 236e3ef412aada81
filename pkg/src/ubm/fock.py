"""Discretized boolean Fock space realization of the boolean unitary BM.

The boolean Fock space over L^2([0, T]) is C + L^2([0, T]); with the time
axis cut into M cells of width dt and sampled at the midpoints s_j, a
function f becomes the vector (f(s_j) sqrt(dt))_j so that L^2 inner products
are plain dot products.  Operators are then (M+1) x (M+1) matrices in block
form [[scalar, row], [col, bulk]], and the vacuum expectation is the (0, 0)
entry.
"""

import math
from dataclasses import dataclass

import numpy as np


class GridTooCoarse(ValueError):
    pass


MIN_CELLS = 8


@dataclass(frozen=True)
class FockGrid:
    T: float
    M: int

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("time horizon must be positive")
        if self.M < MIN_CELLS:
            raise GridTooCoarse(f"need at least {MIN_CELLS} cells, got {self.M}")

    @property
    def dt(self):
        return self.T / self.M

    @property
    def nodes(self):
        return (np.arange(self.M) + 0.5) * self.dt

    def active(self, t):
        """Mask of nodes inside [0, t)."""
        return self.nodes < t


@dataclass(frozen=True, eq=False)
class BlockOperator:
    scalar: complex
    row: np.ndarray
    col: np.ndarray
    bulk: np.ndarray

    @property
    def M(self):
        return self.row.size

    def assemble(self):
        M = self.M
        dtype = np.result_type(self.row, self.col, self.bulk, type(self.scalar))
        out = np.empty((M + 1, M + 1), dtype=dtype)
        out[0, 0] = self.scalar
        out[0, 1:] = self.row
        out[1:, 0] = self.col
        out[1:, 1:] = self.bulk
        return out

    @classmethod
    def from_matrix(cls, A):
        return cls(A[0, 0], A[0, 1:].copy(), A[1:, 0].copy(), A[1:, 1:].copy())

    def adjoint(self):
        return BlockOperator(
            np.conj(self.scalar), np.conj(self.col), np.conj(self.row), self.bulk.conj().T
        )


def _check_time(t, grid):
    if not 0 <= t <= grid.T * (1 + 1e-12):
        raise ValueError(f"t must lie in [0, {grid.T}], got {t!r}")


def volterra_kernel(grid, t, power=1):
    """Grid matrix of M*_{t,u,zeta^i}: kernel zeta^i_{s_j}(s_k) dt on s_k < s_j < t.

    zeta^i_s(r) = (-1)^i (s-r)^{i-1}/(i-1)! exp(-(s-r)/2).
    """
    s = grid.nodes
    act = grid.active(t)
    diff = s[:, None] - s[None, :]
    mask = (diff > 0) & act[:, None] & act[None, :]
    kern = np.zeros_like(diff)
    d = diff[mask]
    kern[mask] = (-1.0) ** power * d ** (power - 1) / math.factorial(power - 1) * np.exp(-0.5 * d)
    return kern * grid.dt


def delta_row(grid, t, power=1):
    """Row of L_{t,-u,delta^i}: f -> -int_0^t delta^i_t(s) f(s) ds.

    delta^i_t(s) = (-1)^{i-1} (t-s)^{i-1}/(i-1)! exp(-(t-s)/2).
    """
    s = grid.nodes
    act = grid.active(t)
    d = t - s[act]
    row = np.zeros(grid.M)
    row[act] = -((-1.0) ** (power - 1)) * d ** (power - 1) / math.factorial(power - 1) * np.exp(-0.5 * d)
    return row * math.sqrt(grid.dt)


def gamma_col(grid, t):
    """Column of L*_{t,u,gamma_1}: lambda -> lambda exp(-s/2) on [0, t)."""
    s = grid.nodes
    col = np.where(grid.active(t), np.exp(-0.5 * s), 0.0)
    return col * math.sqrt(grid.dt)


def build_U(t, grid):
    """Grid version of the explicit solution U_t of the boolean QSDE."""
    _check_time(t, grid)
    bulk = np.eye(grid.M) + volterra_kernel(grid, t)
    return BlockOperator(math.exp(-t / 2), delta_row(grid, t), gamma_col(grid, t), bulk)


def vacuum_moment(U, n):
    """<Omega, U^n Omega>, the (0, 0) entry of U^n.

    Computed as e_0^T U^n e_0 by n matrix-vector products, which equals the
    corresponding entry of the matrix power.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    A = U.assemble() if isinstance(U, BlockOperator) else U
    v = np.zeros(A.shape[0], dtype=A.dtype)
    v[0] = 1.0
    for _ in range(n):
        v = A @ v
    return complex(v[0])


def vacuum_moments(U, n_max):
    A = U.assemble() if isinstance(U, BlockOperator) else U
    v = np.zeros(A.shape[0], dtype=A.dtype)
    v[0] = 1.0
    out = []
    for _ in range(n_max):
        v = A @ v
        out.append(complex(v[0]))
    return out


def unitarity_defect(U):
    """max |U* U - I| over all entries."""
    A = U.assemble()
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0]))))


def lem_scalar(t, i):
    """Exact value of L_{t,-u,delta^{i+1}} o L*_{t,u,gamma_1}."""
    return (-t) ** (i + 1) / math.factorial(i + 1) * math.exp(-t / 2)


def moment_recursion(t, n_max):
    """Vacuum moments Phi(U_t^n), n = 1..n_max, without any grid.

    Phi(U^{n+1}) = e^{-t/2} [Phi(U^n) + sum_{k=0}^{n-1} Phi(U^{n-1-k}) b_k],
    b_k = sum_{i=0}^k C(k, i) (-t)^{i+1}/(i+1)!, with Phi(U^0) = 1.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    e = math.exp(-t / 2)
    b = [
        math.fsum(math.comb(k, i) * (-t) ** (i + 1) / math.factorial(i + 1) for i in range(k + 1))
        for k in range(n_max)
    ]
    phi = [1.0, e]
    for n in range(1, n_max):
        acc = phi[n] + math.fsum(phi[n - 1 - k] * b[k] for k in range(n))
        phi.append(e * acc)
    return phi[1:]


@dataclass(frozen=True)
class LemResidual:
    i: int
    volterra_power: float
    composed_row: float
    scalar: float
    scalar_value: float


def verify_lem_identities(t, grid, i_max):
    """Grid residuals of the three kernel identities, one entry per i <= i_max.

    * ``volterra_power``: max |(M*)^i - M*_{zeta^i}| / dt (kernel scale);
    * ``composed_row``: max |L_{-u,delta} (M*)^i - L_{-u,delta^{i+1}}| / sqrt(dt),
      composing with the grid power so that all three checks exercise the
      operator actually used in :func:`build_U`;
    * ``scalar``: |L_{-u,delta} (M*)^i L*_{gamma_1} - (-t)^{i+1}/(i+1)! e^{-t/2}|,
      with ``scalar_value`` the grid composition itself.
    """
    if not 1 <= i_max <= 6:
        raise ValueError("i_max must lie in 1..6")
    _check_time(t, grid)
    V = volterra_kernel(grid, t)
    row = delta_row(grid, t)
    col = gamma_col(grid, t)
    out = []
    power = np.eye(grid.M)
    for i in range(1, i_max + 1):
        power = power @ V
        kern_i = volterra_kernel(grid, t, i)
        a = np.max(np.abs(power - kern_i)) / grid.dt
        b = np.max(np.abs(row @ power - delta_row(grid, t, i + 1))) / math.sqrt(grid.dt)
        value = float(row @ power @ col)
        out.append(LemResidual(i, float(a), float(b), abs(value - lem_scalar(t, i)), value))
    return out


def increment(U_t, U_s):
    """U_t U_s^*."""
    return U_t.assemble() @ U_s.assemble().conj().T


def increment_factorization(grid, first, second, k, l):
    """Compare Phi((U_{st} - 1)^k (U_{uv} - 1)^l) with the product of its factors.

    ``first`` = (s, t) and ``second`` = (u, v) are disjoint time intervals.
    Returns (joint, product).
    """
    eye = np.eye(grid.M + 1)
    (s, t), (u, v) = first, second
    X = increment(build_U(t, grid), build_U(s, grid)) - eye
    Y = increment(build_U(v, grid), build_U(u, grid)) - eye
    Xk = np.linalg.matrix_power(X, k)
    Yl = np.linalg.matrix_power(Y, l)
    joint = (Xk @ Yl)[0, 0]
    return complex(joint), complex(Xk[0, 0] * Yl[0, 0])
