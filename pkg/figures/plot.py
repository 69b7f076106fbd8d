#!/usr/bin/env python3
"""Render the error-ratio sweep figure from an `ltv-experiment` CSV.

Scatter of every trial's error ratio against the spreading support size,
with the selected bound columns overlaid as per-|U| mean curves.

Usage:
    figures/plot.py --in sweep.csv --out sweep.png [--bounds col1,col2,...] [--log-y]

The script talks to the experiment harness only through its CSV schema: a
header row naming at least `u_measure` and `ratio`, plus one column per
overlaid bound.
"""

from __future__ import annotations

import argparse
import csv
import sys
import warnings
from collections import defaultdict
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

DEFAULT_BOUNDS = ("general_bound", "r_inf_bound", "thm2_bound", "necessary_level")

#: legend names for the bound columns, mirroring the usual figure captions
LABELS = {
    "general_bound": "general bound",
    "r_inf_bound": "R-sup bound",
    "thm2_bound": "optimal-smoothing bound",
    "necessary_level": "necessary-condition level",
    "kozek_simplified": "simplified bound",
    "r1": "fidelity bound r1",
    "r2": "fidelity bound r2",
}


class MissingColumnError(KeyError):
    """A requested column is absent from the CSV header."""


@dataclass(frozen=True)
class PlotSpec:
    csv_in: str
    image_out: str
    bounds: tuple = DEFAULT_BOUNDS
    log_y: bool = False


@dataclass
class RenderResult:
    """What ended up on the canvas; returned for callers and tests."""

    scatter_points: int = 0
    curves: list = field(default_factory=list)


def _read_rows(path: str):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        rows = list(reader)
    return header, rows


def _column(rows, name: str):
    """Float values of one column, None where the cell is empty."""
    out = []
    for row in rows:
        cell = row[name]
        out.append(float(cell) if cell not in ("", None) else None)
    return out


def render(spec: PlotSpec) -> RenderResult:
    header, rows = _read_rows(spec.csv_in)
    needed = ("u_measure", "ratio") + tuple(spec.bounds)
    for name in needed:
        if name not in header:
            raise MissingColumnError(name)

    result = RenderResult()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        if not rows:
            warnings.warn(f"{spec.csv_in} has no data rows; writing an empty plot")
        u_all = _column(rows, "u_measure")
        ratio_all = _column(rows, "ratio")
        pts = [(u, r) for u, r in zip(u_all, ratio_all) if r is not None]
        if pts:
            ax.scatter(*zip(*pts), s=12, alpha=0.6, color="black", label="trial ratio")
        result.scatter_points = len(pts)

        for name in spec.bounds:
            by_u = defaultdict(list)
            for u, val in zip(u_all, _column(rows, name)):
                if val is not None:
                    by_u[u].append(val)
            if not by_u:
                continue
            xs = sorted(by_u)
            ys = [sum(by_u[x]) / len(by_u[x]) for x in xs]
            ax.plot(xs, ys, marker=".", label=LABELS.get(name, name))
            result.curves.append((name, xs, ys))

        if spec.log_y:
            ax.set_yscale("log")
        ax.set_xlabel("spreading support size |U|")
        ax.set_ylabel("error ratio and bounds")
        if pts or result.curves:
            ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        # strip the creation date so identical inputs give identical bytes
        fig.savefig(spec.image_out, dpi=120, metadata={"Software": None})
    finally:
        plt.close(fig)
    return result


def parse_spec(argv) -> PlotSpec:
    parser = argparse.ArgumentParser(
        prog="plot.py", description="Error-ratio sweep figure from an experiment CSV."
    )
    parser.add_argument("--in", dest="csv_in", required=True, help="input CSV path")
    parser.add_argument("--out", dest="image_out", required=True, help="output image path")
    parser.add_argument(
        "--bounds",
        default=",".join(DEFAULT_BOUNDS),
        help="comma-separated bound columns to overlay",
    )
    parser.add_argument("--log-y", action="store_true", help="logarithmic ratio axis")
    args = parser.parse_args(argv)
    bounds = tuple(b.strip() for b in args.bounds.split(",") if b.strip())
    return PlotSpec(args.csv_in, args.image_out, bounds, args.log_y)


def main(argv=None) -> int:
    spec = parse_spec(sys.argv[1:] if argv is None else argv)
    try:
        render(spec)
    except MissingColumnError as exc:
        print(f"error: column {exc.args[0]!r} not in the CSV header", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
