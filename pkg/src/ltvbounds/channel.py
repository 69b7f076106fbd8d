"""Cell-model spreading functions and the channel operators they generate.

A spreading function here is piecewise constant on a ``K x K`` grid of
square cells; the channel operator is its weak-sense superposition of
time-frequency shifts, discretized by midpoint quadrature on subdivided
cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core_tf import (
    Signal,
    TFGrid,
    TimeGrid,
    dual_grid,
    shift_many,
    symplectic_fourier,
)
from .errors import ShapeMismatch


@dataclass(frozen=True, eq=False)
class CellSpreading:
    """Spreading function built from ``k_grid x k_grid`` square cells.

    Cell ``k = (k1, k2)`` carries the constant coefficient ``coeffs[k1, k2]``
    on the square of side ``u`` with center ``lo + u (k + (1/2, 1/2))``.
    With the default corner anchoring the support is ``[0, k_grid*u]^2``;
    ``centered=True`` moves it to a square centered at the origin (Kozek's
    rectangular-support setting).
    """

    k_grid: int
    u: float
    coeffs: np.ndarray
    alpha: float = 0.0
    centered: bool = False

    def __post_init__(self):
        if self.k_grid < 1:
            raise ValueError("k_grid must be positive")
        if self.u <= 0:
            raise ValueError("u must be positive")
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.k_grid, self.k_grid):
            raise ValueError("coeffs must be k_grid x k_grid")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def support_lo(self) -> float:
        return -0.5 * self.k_grid * self.u if self.centered else 0.0

    @property
    def support_measure(self) -> float:
        return (self.k_grid * self.u) ** 2

    def norm(self, a: float) -> float:
        """``||Sigma||_a = u^(2/a) ||c||_a`` (exact for piecewise constants)."""
        mag = np.abs(self.coeffs)
        if np.isinf(a):
            return float(mag.max())
        return float(self.u ** (2.0 / a) * (mag**a).sum() ** (1.0 / a))

    def subcell_grid(self, subdiv: int) -> TFGrid:
        """Midpoint sampling grid: every cell split ``subdiv x subdiv``."""
        if subdiv < 1:
            raise ValueError("subdiv must be positive")
        n = self.k_grid * subdiv
        d = self.u / subdiv
        return TFGrid(n, n, d, d, (self.support_lo, self.support_lo))

    def subcell_values(self, subdiv: int) -> np.ndarray:
        """Sigma sampled on :meth:`subcell_grid` (piecewise constant)."""
        return np.kron(self.coeffs, np.ones((subdiv, subdiv)))

    def subcells(self, subdiv: int):
        """Flattened subcell centers, values and the common quadrature weight.

        Returns ``(nu1, nu2, sigma, weight)`` with ``nu1``/``nu2``/``sigma``
        of length ``(k_grid*subdiv)^2`` (row-major over the subcell grid).
        """
        tf = self.subcell_grid(subdiv)
        m1, m2 = np.meshgrid(tf.centers1, tf.centers2, indexing="ij")
        sigma = self.subcell_values(subdiv)
        return m1.ravel(), m2.ravel(), sigma.ravel(), tf.cell_area


def sample_cell_spreading(
    k_grid: int,
    U_measure: float,
    seed: int,
    alpha: float = 0.0,
    centered: bool = False,
) -> CellSpreading:
    """Draw i.i.d. circularly-symmetric unit-variance complex normal cells.

    ``u = sqrt(U_measure) / k_grid``; real and imaginary parts of each
    coefficient are N(0, 1/2).  Reproducible from ``seed``.
    """
    if k_grid < 1:
        raise ValueError("k_grid must be positive")
    if U_measure <= 0:
        raise ValueError("U_measure must be positive")
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((k_grid, k_grid)) + 1j * rng.standard_normal((k_grid, k_grid))
    u = np.sqrt(U_measure) / k_grid
    return CellSpreading(k_grid, u, c / np.sqrt(2.0), alpha, centered)


def spreading_norm(s: CellSpreading, a: float) -> float:
    """Closed-form a-norm of the piecewise-constant spreading function."""
    return s.norm(a)


def apply_channel(s: CellSpreading, f: Signal, subdiv: int = 4) -> Signal:
    """``H f`` by midpoint quadrature of the spreading representation."""
    nu1, nu2, sigma, w = s.subcells(subdiv)
    cols = shift_many(f, nu1, nu2, s.alpha)
    return Signal(f.grid, cols @ (sigma * w))


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """The channel operator materialized on the sample basis.

    ``entries @ f.samples`` are the samples of ``H f``; the kernel of the
    integral operator is ``entries / dt``.
    """

    entries: np.ndarray
    grid: TimeGrid

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        n = self.grid.n_samples
        if entries.shape != (n, n):
            raise ValueError("entries must be n_samples x n_samples")
        object.__setattr__(self, "entries", entries)

    def apply(self, f: Signal) -> Signal:
        return Signal(self.grid, self.entries @ f.samples)

    def hs_norm(self) -> float:
        """Hilbert-Schmidt norm (dt-weighted L2 norm of the kernel)."""
        return float(np.linalg.norm(self.entries))

    def trace(self) -> complex:
        """Operator trace (dt-weighted diagonal sum of the kernel)."""
        return complex(np.trace(self.entries))


def _shift_phase_matrix(grid: TimeGrid, alpha: float) -> np.ndarray:
    # S_nu(alpha)[m, n] = exp(2i pi nu2 * Z[m, n]) * C(nu1)[m, n]
    t = grid.times
    return (0.5 + alpha) * t[:, None] + (0.5 - alpha) * t[None, :]


def _circulant_index(n: int) -> np.ndarray:
    return (np.arange(n)[:, None] - np.arange(n)[None, :]) % n


def channel_matrix(s: CellSpreading, grid: TimeGrid, subdiv: int = 4) -> ChannelMatrix:
    """Materialize the channel on the sample basis.

    Sums the shift-operator matrices over subcells, grouping the frequency
    axis into one tensor contraction per time-shift row.
    """
    tf = s.subcell_grid(subdiv)
    w = tf.cell_area
    n = grid.n_samples
    z = _shift_phase_matrix(grid, s.alpha)
    idx = _circulant_index(n)
    csub = s.subcell_values(subdiv)
    # P[j] = exp(2i pi nu2_j Z); G[i] = sum_j csub[i, j] P[j]
    phases = np.exp(2j * np.pi * tf.centers2[:, None, None] * z[None, :, :])
    g = np.tensordot(csub, phases, axes=(1, 0))
    entries = np.zeros((n, n), dtype=complex)
    for i, nu1 in enumerate(tf.centers1):
        v = np.fft.ifft(np.exp(-2j * np.pi * grid.freqs * nu1))
        entries += v[idx] * g[i]
    return ChannelMatrix(w * entries, grid)


def shift_operator_matrix(grid: TimeGrid, mu1: float, mu2: float, alpha: float) -> np.ndarray:
    """Sample-basis matrix of ``S_mu(alpha)`` on the periodic grid."""
    n = grid.n_samples
    v = np.fft.ifft(np.exp(-2j * np.pi * grid.freqs * mu1))
    circ = v[_circulant_index(n)]
    return np.exp(2j * np.pi * mu2 * _shift_phase_matrix(grid, alpha)) * circ


def spreading_from_matrix(H: ChannelMatrix, tf: TFGrid, alpha: float) -> np.ndarray:
    """Spreading samples ``<S_mu(alpha), H>`` at the cell centers of ``tf``.

    The trace inner product is discretized with dt weights, so the value at
    ``mu = 0`` is exactly the operator trace.
    """
    out = np.empty((tf.n1, tf.n2), dtype=complex)
    for i, m1 in enumerate(tf.centers1):
        for j, m2 in enumerate(tf.centers2):
            u = shift_operator_matrix(H.grid, m1, m2, alpha)
            out[i, j] = np.vdot(u, H.entries)
    return out


def weyl_symbol(s: CellSpreading, tf: TFGrid | None = None, subdiv: int = 4):
    """Weyl symbol: symplectic Fourier transform of the sampled spreading.

    Returns ``(values, grid)``; with ``tf=None`` the canonical dual grid of
    the subcell sampling grid is used, on which the discrete transform is
    unitary and the Parseval identity ``||L||_2 = ||Sigma||_2`` is exact.
    """
    sigma_grid = s.subcell_grid(subdiv)
    out_grid = dual_grid(sigma_grid) if tf is None else tf
    vals = symplectic_fourier(s.subcell_values(subdiv), sigma_grid, out_grid)
    return vals, out_grid


def lambda_value(s: CellSpreading, B, mu, subdiv: int = 4) -> complex:
    """Approximate eigenvalue ``lambda(mu) = F_s(Sigma * B)(mu)``.

    ``B`` is ``None`` for the plain Weyl symbol (case B = 1), an array on
    the subcell grid, or an :class:`~ltvbounds.core_tf.AmbiguitySurface`
    sampled on exactly that grid (case B = cross ambiguity).
    """
    nu1, nu2, sigma, w = s.subcells(subdiv)
    if B is None:
        b = 1.0
    elif isinstance(B, np.ndarray):
        if B.size != sigma.size:
            raise ShapeMismatch("B array does not match the subcell grid")
        b = B.ravel()
    else:  # AmbiguitySurface
        if B.grid != s.subcell_grid(subdiv):
            raise ShapeMismatch("B surface is not sampled on the subcell grid")
        b = B.values.ravel()
    phase = np.exp(-2j * np.pi * (nu1 * mu[1] - nu2 * mu[0]))
    return complex(np.sum(sigma * b * phase) * w)
