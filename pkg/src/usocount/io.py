"""JSON file formats.

Orientation: ``{"n": int, "out": [mask, ...]}`` with ``out[v]`` the outgoing
mask of vertex ``v``.
Matrix: ``{"n": int, "entries": [["p/q", ...], ...]}``; vector:
``{"n": int, "entries": ["p/q", ...]}``.  Integers may be given bare.
Monotone function: ``{"k": int, "table": [0, 1, ...]}``.
Antichain: ``{"k": int, "members": ["10", ...]}`` (bit strings, coordinate 1 first).
Beta: ``{"n": int, "beta": {"i,j": "p/q", ...}}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .constructions import BetaAssignment, MonotoneFunction
from .cube import Orientation, parse_bits
from .linalg import format_fraction, matrix, vector


def _fraction(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError(f"expected an integer or 'p/q' string, got {x!r}")
    return Fraction(x)


def orientation_to_json(phi: Orientation) -> dict:
    return {"n": phi.n, "out": list(phi.out)}


def orientation_from_json(data: dict) -> Orientation:
    n, out = data["n"], data["out"]
    if not isinstance(n, int) or not all(isinstance(x, int) for x in out):
        raise ValueError("orientation fields must be integers")
    return Orientation(n, tuple(out))


def matrix_to_json(M) -> dict:
    return {"n": len(M), "entries": [[format_fraction(x) for x in row] for row in M]}


def matrix_from_json(data: dict):
    M = matrix([_fraction(x) for x in row] for row in data["entries"])
    n = data.get("n", len(M))
    if len(M) != n or any(len(row) != n for row in M):
        raise ValueError(f"expected an {n}x{n} matrix")
    return M


def vector_to_json(q) -> dict:
    return {"n": len(q), "entries": [format_fraction(x) for x in q]}


def vector_from_json(data):
    if isinstance(data, list):
        data = {"entries": data}
    q = vector(_fraction(x) for x in data["entries"])
    if len(q) != data.get("n", len(q)):
        raise ValueError("vector length does not match n")
    return q


def monotone_from_json(data: dict) -> MonotoneFunction:
    return MonotoneFunction(int(data["k"]), tuple(data["table"]))


def antichain_from_json(data: dict) -> tuple[int, list[int]]:
    k = int(data["k"])
    members = []
    for m in data["members"]:
        if isinstance(m, str):
            if len(m) != k:
                raise ValueError(f"member {m!r} has the wrong length")
            members.append(parse_bits(m))
        else:
            members.append(int(m))
    return k, members


def beta_to_json(beta: BetaAssignment) -> dict:
    return {
        "n": beta.n,
        "beta": {f"{i},{j}": format_fraction(b) for (i, j), b in sorted(beta.values.items())},
    }


def beta_from_json(data: dict) -> BetaAssignment:
    vals = {}
    for key, b in data["beta"].items():
        i, j = (int(x) for x in key.split(","))
        vals[(i, j)] = _fraction(b)
    return BetaAssignment(int(data["n"]), vals)


def read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True) + "\n"


def write_json(path, data):
    Path(path).write_text(dumps(data))
