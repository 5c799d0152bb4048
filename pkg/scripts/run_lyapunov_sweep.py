#!/usr/bin/env python3
"""Stability sweep over spectral radii; writes CSVs under results/lyapunov."""
import sys

from spherical_esn.cli import main

if __name__ == "__main__":
    args = [
        "lyapunov",
        "--family", "spherical",
        "--sr", "0.2,1,5,15,50",
        "--n", "100",
        "--steps", "5000",
        "--seeds", "10",
        "--threads", "2",
        "--out-dir", "results/lyapunov",
    ] + sys.argv[1:]
    sys.exit(main(args))
