#!/usr/bin/env python3
"""Memory/nonlinearity trade-off grid for the three families."""
import sys

from spherical_esn.cli import main

if __name__ == "__main__":
    extra = sys.argv[1:]
    for family in ["spherical", "linear", "tanh"]:
        code = main([
            "tradeoff",
            "--family", family,
            "--nus", "0.5,1.0,1.5,2.0,2.5",
            "--taus", "0,5,10,15,20",
            "--threads", "2",
            "--out-dir", f"results/tradeoff_{family}",
        ] + extra)
        if code != 0:
            sys.exit(code)
    sys.exit(0)
