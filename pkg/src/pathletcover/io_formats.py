"""Trajectory CSV input and JSON output with exact float round-trips."""

from __future__ import annotations

import csv
import json
import math

import numpy as np

SCHEMA_VERSION = 1


class InputError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def read_trajectory(path) -> np.ndarray:
    """One vertex per row; ``#`` comments, blank lines and one leading header row are skipped."""
    rows = []
    dim = None
    content = 0
    with open(path, newline="") as fh:
        for lineno, rec in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in rec]
            if not cells or all(c == "" for c in cells) or cells[0].startswith("#"):
                continue
            content += 1
            try:
                vals = [float(c) for c in cells]
            except ValueError:
                if content == 1:
                    continue
                raise InputError(f"non-numeric row {','.join(rec)!r}", lineno) from None
            if not all(math.isfinite(v) for v in vals):
                raise InputError("non-finite coordinate", lineno)
            if dim is None:
                dim = len(vals)
            elif len(vals) != dim:
                raise InputError(f"expected {dim} coordinates, found {len(vals)}", lineno)
            rows.append(vals)
    if not rows:
        raise InputError("no vertices in input")
    return np.array(rows, dtype=float)


def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "inf" not in s and "nan" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 0) -> str:
    """JSON text with every float at 17 significant digits; short lists stay on one line."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + "  " + dumps(v, indent + 1) for v in seq) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    return _num(obj)


def write_json(path, obj) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def pathlet_json(p) -> dict:
    return {
        "kind": p.kind,
        "reference": {"curve": "S", "from": p.start, "to": p.end, "vertices": np.asarray(p.reference).tolist()},
        "intervals": [[a, b] for a, b in p.intervals],
        "residual_score": int(p.score),
    }


def simplification_json(simp) -> dict:
    return {"breakpoints": np.asarray(simp.breakpoints).tolist(), "vertices": np.asarray(simp.vertices).tolist()}


def clustering_json(clustering, status: str = "ok", uncovered=None) -> dict:
    out = {
        "schema": f"pathletcover.clustering/{SCHEMA_VERSION}",
        "status": status,
        "params": dict(clustering.params),
        "simplification": simplification_json(clustering.simplification),
        "pathlets": [pathlet_json(p) for p in clustering.pathlets],
        "stats": dict(clustering.stats),
    }
    if uncovered is not None:
        out["uncovered"] = [[a, b] for a, b in uncovered]
    return out


def read_clustering_json(path):
    """Pathlets back from a clustering file, as ``(reference, intervals)`` pairs."""
    with open(path) as fh:
        data = json.load(fh)
    return data, [(np.array(p["reference"]["vertices"], float), [tuple(iv) for iv in p["intervals"]])
                  for p in data["pathlets"]]
