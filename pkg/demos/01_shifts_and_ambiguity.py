#!/usr/bin/env python3
"""Tour of the time-frequency layer: shifts, their algebra, ambiguity surfaces.

Walks through the exact operator identities the rest of the package leans on:
unitarity of the generalized shifts, the polarization phase law, the Weyl
commutation relation, and the Gaussian ambiguity function against its closed
form.
"""

import numpy as np

from ltvbounds import (
    TFGrid,
    TFShift,
    ambiguity,
    ambiguity_surface,
    commutation_defect,
    default_grid,
    make_gaussian,
    shift,
)

grid = default_grid()
g = make_gaussian(grid)
print(f"grid: {grid.n_samples} samples, dt = {grid.dt}, window [{grid.t0}, {grid.t0 + grid.duration})")
print(f"gaussian 2-norm: {g.norm(2.0):.15f}")

# --- shifts act isometrically -------------------------------------------------
mu = TFShift(1.3, -0.7, alpha=0.0)
shifted = shift(g, mu)
print("\nisometry:")
for p in (1.0, 2.0, 4.0):
    print(f"  | ||S_mu g||_{p} - ||g||_{p} | = {abs(shifted.norm(p) - g.norm(p)):.2e}")

# --- polarization phase law ---------------------------------------------------
# S_mu(alpha) differs from S_mu(1/2) by a pure phase depending on mu1*mu2
alpha = 0.2
lhs = shift(g, TFShift(1.3, -0.7, alpha)).samples
phase = np.exp(-2j * np.pi * 1.3 * (-0.7) * (0.5 - alpha))
rhs = phase * shift(g, TFShift(1.3, -0.7, 0.5)).samples
print(f"\npolarization phase law deviation: {np.abs(lhs - rhs).max():.2e}")

# --- Weyl commutation ---------------------------------------------------------
nu = TFShift(-0.4, 0.9, alpha=0.0)
print(f"commutation defect |S_mu S_nu - e^(-2 pi i eta) S_nu S_mu| g: "
      f"{commutation_defect(mu, nu, g):.2e}")

# --- Gaussian ambiguity -------------------------------------------------------
print("\nambiguity of the symmetric Gaussian (alpha = 0) vs exp(-pi |mu|^2 / 2):")
for m1, m2 in [(0.0, 0.0), (0.5, 0.0), (1.0, 1.0), (2.0, -1.0)]:
    val = ambiguity(g, g, TFShift(m1, m2, 0.0))
    ref = np.exp(-np.pi * (m1**2 + m2**2) / 2.0)
    print(f"  A({m1:+.1f}, {m2:+.1f}) = {val.real:+.6f}{val.imag:+.6f}j   closed form {ref:.6f}")

tf = TFGrid.centered(41, 41, 0.15, 0.15)
surf = ambiguity_surface(g, g, tf, 0.0)
ref = np.exp(-np.pi * (tf.centers1[:, None] ** 2 + tf.centers2[None, :] ** 2) / 2.0)
print(f"max closed-form deviation on a 41x41 surface: {np.abs(surf.values - ref).max():.2e}")
