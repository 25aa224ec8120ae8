"""JSON file formats for algebras, Omega matrices, product specs and decompositions.

Floats go through :func:`json.dumps`, whose ``repr`` formatting is the
shortest string that round-trips to the same double.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import LieAlgebra, MetricLieAlgebra, ValidationError
from .gqp import OmegaMatrix
from .sl2 import ProductSpec, Sl2CyclicMetric


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ValidationError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise ValidationError(f"field {key!r} must be a list")
    return val


def algebra_from_dict(data: dict) -> MetricLieAlgebra:
    n = _require(data, "dim", int)
    if n < 1:
        raise ValidationError("dim must be positive")
    brackets = {}
    for entry in _require(data, "brackets", list):
        i, j = _require(entry, "i", int), _require(entry, "j", int)
        if (i, j) in brackets:
            raise ValidationError(f"bracket ({i}, {j}) given twice")
        brackets[(i, j)] = _require(entry, "coeffs", list)
    try:
        alg = LieAlgebra.from_brackets(n, brackets)
        gram = data.get("gram")
        return MetricLieAlgebra(alg, None if gram is None else np.asarray(gram, dtype=float))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc


def algebra_to_dict(mla: MetricLieAlgebra) -> dict:
    n = mla.dim
    brackets = [
        {"i": i, "j": j, "coeffs": mla.structure[i, j].tolist()}
        for i in range(n)
        for j in range(i + 1, n)
        if np.any(mla.structure[i, j] != 0)
    ]
    return {"dim": n, "brackets": brackets, "gram": mla.gram.tolist()}


def omega_from_dict(data: dict) -> OmegaMatrix:
    q, p = _require(data, "q", int), _require(data, "p", int)
    rows = _require(data, "rows", list)
    try:
        w = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"rows are not a numeric matrix: {exc}") from exc
    if w.shape != (q, p):
        raise ValidationError(f"rows have shape {w.shape}, expected ({q}, {p})")
    return OmegaMatrix(w)


def omega_to_dict(omega: OmegaMatrix) -> dict:
    return {"q": omega.q, "p": omega.p, "rows": omega.entries.tolist()}


def product_spec_from_dict(data: dict) -> ProductSpec:
    r = _require(data, "r", int)
    om = data.get("omega")
    sl2 = [Sl2CyclicMetric(float(_require(e, "mu", float)), float(_require(e, "nu", float))) for e in data.get("sl2", [])]
    return ProductSpec(r=r, omega=None if om is None else omega_from_dict(om), sl2_factors=sl2)


def product_spec_to_dict(spec: ProductSpec) -> dict:
    return {
        "r": spec.r,
        "omega": None if spec.omega is None else omega_to_dict(spec.omega),
        "sl2": [{"mu": m.mu, "nu": m.nu} for m in spec.sl2_factors],
    }


def decomposition_to_dict(dec) -> dict:
    return {
        "r": dec.r,
        "omega": None if dec.omega is None else omega_to_dict(dec.omega),
        "sl2": [{"mu": mu, "nu": nu} for mu, nu in dec.sl2_params],
        "basis": np.asarray(dec.change_of_basis).tolist(),
    }


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj) -> str:
    return json.dumps(_plain(obj), indent=2, allow_nan=False)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj
