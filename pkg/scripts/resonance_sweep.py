#!/usr/bin/env python3
"""Sweep transmission through the spacer for a few velocity contrasts.

Produces the classic resonance picture: every time the spacer holds an
integer number of half wavelengths the stack turns transparent, and the
plateau level between resonances drops as the outer layers detune.

    python3 scripts/resonance_sweep.py --out sweeps/
"""
import argparse
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

from layerwave import SpectralPoint, TrilayerMedium, probabilities

CONTRASTS = [
    ("matched outer layers", 2.0, 2.0),
    ("mild mismatch", 2.0, 3.0),
    ("strong mismatch", 4.0, 1.5),
]


def sweep(a: float, b: float, omegas: np.ndarray) -> np.ndarray:
    medium = TrilayerMedium(v1=1.0 / a, v2=1.0, v3=1.0 / b, d=1.0)
    t_probs = np.empty_like(omegas)
    for i, omega in enumerate(omegas):
        t_probs[i], _ = probabilities(medium, SpectralPoint.at(medium, float(omega)))
    return t_probs


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--omega-max", type=float, default=4.0 * np.pi)
    parser.add_argument("--count", type=int, default=600)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    omegas = np.linspace(0.05, args.omega_max, args.count)

    fig, ax = plt.subplots(figsize=(7.0, 4.2), constrained_layout=True)
    for label, a, b in CONTRASTS:
        ax.plot(omegas, sweep(a, b, omegas), label=f"{label} (a={a}, b={b})")
    for m in range(1, int(args.omega_max / np.pi) + 1):
        ax.axvline(m * np.pi, color="0.85", lw=0.8, zorder=0)
    ax.set_xlabel("omega d / v2")
    ax.set_ylabel("transmission probability")
    ax.set_ylim(0, 1.02)
    ax.legend(loc="lower right", fontsize=9)
    target = out / "resonance_sweep.png"
    fig.savefig(target, dpi=160)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
