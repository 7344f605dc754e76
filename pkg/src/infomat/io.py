"""JSON formats for distributions, matrices, atom tables and search run logs.

Floats are written with Python's shortest round-trip repr, so every
document loads back to bit-identical values.
"""

from __future__ import annotations

import json
import sys

import numpy as np

from .distribution import JointDistribution, mask_to_indices, new_joint
from .errors import InfomatError
from .info import AtomTable
from .linalg import sym_matrix
from .search import SearchResult


def dist_to_dict(dist: JointDistribution) -> dict:
    d = {"shape": list(dist.shape)}
    if dist.names is not None:
        d["names"] = list(dist.names)
    d["support"] = [{"o": list(o), "p": p} for o, p in dist]
    return d


def dist_from_dict(d: dict) -> JointDistribution:
    try:
        entries = [(e["o"], e["p"]) for e in d["support"]]
        return new_joint(d["shape"], entries, names=d.get("names"))
    except (KeyError, TypeError) as exc:
        raise InfomatError(f"malformed distribution document: {exc!r}") from None


def matrix_to_dict(m) -> dict:
    m = np.asarray(m, dtype=np.float64)
    return {"n": int(m.shape[0]), "entries": m.tolist()}


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        m = np.array(d["entries"], dtype=np.float64)
        n = int(d["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InfomatError(f"malformed matrix document: {exc!r}") from None
    if m.shape != (n, n):
        raise InfomatError(f"matrix entries have shape {m.shape}, expected ({n}, {n})")
    return sym_matrix(m)


def subset_key(mask: int) -> str:
    """Comma-joined ascending 1-based indices, e.g. mask 0b011 -> ``"1,2"``."""
    return ",".join(str(i + 1) for i in mask_to_indices(mask))


def parse_subset_key(key: str) -> int:
    mask = 0
    for part in key.split(","):
        mask |= 1 << (int(part) - 1)
    return mask


def atoms_to_dict(table: AtomTable) -> dict:
    ordered = sorted(table.values, key=lambda m: (bin(m).count("1"), mask_to_indices(m)))
    return {"n": table.n, "atoms": {subset_key(m): table.values[m] for m in ordered}}


def atoms_from_dict(d: dict) -> AtomTable:
    return AtomTable(int(d["n"]), {parse_subset_key(k): float(v) for k, v in d["atoms"].items()})


def run_log_to_dict(result: SearchResult) -> dict:
    return {
        "config": result.config.to_dict(),
        "best_lambda_min": result.best_lambda_min,
        "trace": [[k, v] for k, v in result.trace],
        "best_distribution": dist_to_dict(result.best_distribution),
        "best_restart": result.best_restart,
        "restart_best": [r.best_lambda_min for r in result.restarts],
        "rejected_no_convergence": result.rejected_no_convergence,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def read_json(path: str) -> dict:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InfomatError(f"{path}: invalid JSON ({exc})") from None


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def load_distribution(path: str) -> JointDistribution:
    return dist_from_dict(read_json(path))


def load_matrix(path: str) -> np.ndarray:
    return matrix_from_dict(read_json(path))
