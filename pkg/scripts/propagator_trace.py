#!/usr/bin/env python3
"""Trace the space-time propagator across the layered structure.

Samples g(x, x', tau) over a time window for a source in the first
layer, next to the same trace in a uniform reference medium.  The
layered curve leaves the free plateau when the interface echoes arrive.
"""
import argparse
import csv
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

from layerwave import TrilayerMedium, propagator_g


def trace(medium, x, x_src, taus):
    return np.array([propagator_g(x, x_src, float(tau), medium) for tau in taus])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--x", type=float, default=-0.3, help="observation point")
    parser.add_argument("--x-src", type=float, default=-1.2, help="source point")
    parser.add_argument("--a", type=float, default=2.0, help="v2 / v1")
    parser.add_argument("--b", type=float, default=2.0, help="v2 / v3")
    parser.add_argument("--tau-max", type=float, default=10.0)
    parser.add_argument("--count", type=int, default=320)
    parser.add_argument("--csv", default=None, help="also dump the samples")
    parser.add_argument("--out", default="propagator_trace.png")
    args = parser.parse_args()

    layered = TrilayerMedium(v1=1.0 / args.a, v2=1.0, v3=1.0 / args.b, d=1.0)
    uniform = TrilayerMedium(v1=1.0 / args.a, v2=1.0 / args.a, v3=1.0 / args.a, d=1.0)
    taus = np.linspace(0.0, args.tau_max, args.count)
    g_layered = trace(layered, args.x, args.x_src, taus)
    g_uniform = trace(uniform, args.x, args.x_src, taus)

    fig, ax = plt.subplots(figsize=(7.0, 4.0), constrained_layout=True)
    ax.plot(taus, g_layered, label=f"layered (a={args.a}, b={args.b})")
    ax.plot(taus, g_uniform, "--", color="0.5", label="uniform reference")
    ax.set_xlabel("tau v2 / d")
    ax.set_ylabel("g")
    ax.legend()
    fig.savefig(args.out, dpi=160)
    print(f"wrote {args.out}")

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["tau_tilde", "g_layered", "g_uniform"])
            writer.writerows(zip(taus, g_layered, g_uniform))
        print(f"wrote {Path(args.csv)}")


if __name__ == "__main__":
    main()
