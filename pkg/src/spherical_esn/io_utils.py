"""Deterministic CSV and manifest writing.

Floats are rendered with ``repr`` (shortest round-trip form), lines end with
LF, and manifests are key-sorted JSON without timestamps, so identical runs
produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np


def format_value(value) -> str:
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    if isinstance(value, (np.integer, int)):
        return str(int(value))
    return str(value)


def write_csv(path: str | Path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.split("\n") if line]
    if not lines:
        raise ValueError(f"{path}: empty CSV")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def sha256_of(path: str | Path) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


def write_manifest(path: str | Path, command: str, argv, master_seed, flags,
                   outputs, inputs=None) -> Path:
    """Record everything needed to reproduce a run: the exact argv, the master
    seed, resolved flags, and content hashes of outputs (and input datasets)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "command": command,
        "argv": list(argv),
        "master_seed": master_seed,
        "flags": {k: _jsonable(v) for k, v in flags.items()},
        "outputs": {Path(p).name: sha256_of(p) for p in outputs},
    }
    if inputs:
        payload["inputs"] = {str(p): sha256_of(p) for p in inputs}
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8", newline="\n")
    return path


def _jsonable(value):
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


__all__ = ["format_value", "write_csv", "read_csv", "sha256_of", "write_manifest"]
