#!/usr/bin/env python3
"""The main event: approximation error vs the bound hierarchy.

For one random channel per support size, evaluates the error ratio
E_2 / ||Sigma||_2 of the approximate eigenstructure and every bound on it,
then prints the sweep as a table.  Run the `ltv-experiment` CLI for the
full Monte-Carlo version of the same sweep.
"""

from ltvbounds import (
    ErrorConfig,
    default_grid,
    full_report,
    make_gaussian,
    necessary_u_bound,
    sample_cell_spreading,
)

grid = default_grid()
g = make_gaussian(grid)
cfg = ErrorConfig(p=2.0, a=2.0, mode="C2", alpha=0.0)

print("plain-symbol smoothing (B = 1), p = 2, a = 2, Gaussian pulses g = gamma")
print(f"{'|U|':>5} {'ratio':>9} {'optimal':>9} {'R_inf':>9} {'coarse':>9} "
      f"{'r2':>9} {'feasible':>8}")
for u_measure in (0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0):
    s = sample_cell_spreading(10, u_measure, seed=1, centered=True)
    rep = full_report(s, g, g, cfg)
    r2 = f"{rep.r2:9.4f}" if rep.r2 is not None else "      --"
    print(f"{u_measure:5.2f} {rep.ratio:9.4f} {rep.thm2_bound:9.4f} "
          f"{rep.r_inf_bound:9.4f} {rep.general_bound:9.4f} {r2} "
          f"{str(rep.c2_feasible):>8}")

print("\nlargest support admissible for a target error level (k = 2, b = 1):")
for delta in (0.1, 0.3, 0.5):
    root = necessary_u_bound(delta, k=2, b=1.0)
    tag = " (saturated at e)" if root.saturated else ""
    print(f"  delta = {delta:.1f}  ->  |U| <= {root.u_measure:.5f}{tag}")
