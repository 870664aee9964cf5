"""JSON serialization for matrices, states, channels, and reports.

Matrix JSON: {"rows": n, "cols": m, "re": [[...]], "im": [[...]]} with
row-major nested arrays.  States add "dims" and optional "labels";
channels add "d_in" and "d_out".
"""

from __future__ import annotations

import json

import numpy as np

from .channels import ChoiMatrix, choi_from_state
from .linalg import LinalgError, as_matrix
from .states import DensityMatrix


def matrix_to_dict(m: np.ndarray) -> dict:
    m = as_matrix(m)
    return {"rows": m.shape[0], "cols": m.shape[1],
            "re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        re = np.array(d["re"], dtype=float)
        im = np.array(d["im"], dtype=float)
        rows, cols = int(d["rows"]), int(d["cols"])
    except (KeyError, TypeError, ValueError) as exc:
        raise LinalgError(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise LinalgError("matrix JSON shape mismatch")
    return re + 1j * im


def density_to_dict(rho: DensityMatrix) -> dict:
    out = matrix_to_dict(rho.mat)
    out["dims"] = list(rho.dims)
    if rho.labels is not None:
        out["labels"] = list(rho.labels)
    return out


def density_from_dict(d: dict) -> DensityMatrix:
    mat = matrix_from_dict(d)
    dims = tuple(int(x) for x in d.get("dims", [mat.shape[0]]))
    labels = tuple(d["labels"]) if "labels" in d else None
    return DensityMatrix(mat, dims, labels)


def choi_to_dict(c: ChoiMatrix) -> dict:
    out = density_to_dict(c.state)
    out["d_in"] = c.d_in
    out["d_out"] = c.d_out
    return out


def choi_from_dict(d: dict) -> ChoiMatrix:
    try:
        d_in, d_out = int(d["d_in"]), int(d["d_out"])
    except (KeyError, TypeError, ValueError) as exc:
        raise LinalgError(f"malformed channel JSON: {exc}") from exc
    return choi_from_state(density_from_dict(d), d_in, d_out)


def write_json(path: str, payload: dict) -> None:
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")


def read_json(path: str) -> dict:
    with open(path) as f:
        return json.load(f)
