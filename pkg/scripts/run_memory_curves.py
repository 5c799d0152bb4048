#!/usr/bin/env python3
"""Delay-reconstruction curves for every benchmark; one results dir each."""
import sys

from spherical_esn.cli import main

BENCHMARKS = ["white_noise", "mso", "lorenz", "mackey_glass"]

if __name__ == "__main__":
    extra = sys.argv[1:]
    for benchmark in BENCHMARKS:
        code = main([
            "memory",
            "--benchmark", benchmark,
            "--family", "all",
            "--out-dir", f"results/memory_{benchmark}",
        ] + extra)
        if code != 0:
            sys.exit(code)
    sys.exit(0)
