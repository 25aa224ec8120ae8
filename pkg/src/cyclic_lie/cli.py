"""Command line front end.

Exit codes: 0 success, 2 validation failure, 3 I/O or parse error,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize
from .algebra import (
    DEFAULT_TOL,
    InvariantError,
    MetricLieAlgebra,
    ToleranceConfig,
    ValidationError,
    check_cyclic,
    check_jacobi,
    structural_flags,
)
from .connection import (
    check_constant_curvature,
    check_vectorial,
    curvature_report,
    curvature_residuals,
    ricci_cyclic_formula,
)
from .decompose import catalog, decompose
from .gqp import build, classify, closed_forms, isometric
from .sl2 import Sl2CyclicMetric, build_sl2, sl2_canonical_parameters, sl2_closed_ricci

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INTERNAL = 4

CLOSED_FORM_RTOL = 1e-8


def _curvature_summary(mla: MetricLieAlgebra, tol: ToleranceConfig) -> tuple:
    lc, K, data = curvature_report(mla, tol)
    summary = {
        "ricci": data.ricci,
        "scalar": data.scalar,
        "residuals": curvature_residuals(mla, K),
    }
    return summary, lc, K, data


def _discrepancy(generic, closed) -> float:
    generic = np.asarray(generic, dtype=float)
    closed = np.asarray(closed, dtype=float)
    return float(np.abs(generic - closed).max() / max(1.0, float(np.abs(closed).max())))


def cmd_analyze(data: dict, tol: ToleranceConfig) -> dict:
    mla = serialize.algebra_from_dict(data)
    if not check_jacobi(mla, tol):
        raise ValidationError("structure constants violate the Jacobi identity")
    cyclic = check_cyclic(mla, tol)
    summary, _, K, _ = _curvature_summary(mla, tol)
    vec = check_vectorial(mla, tol)
    report = {
        "command": "analyze",
        "input": serialize.algebra_to_dict(mla),
        "status": "ok",
        "flags": {
            "cyclic": cyclic,
            **structural_flags(mla, tol),
            "constant_curvature": check_constant_curvature(mla, K, tol),
            "vectorial": None if vec is None else vec,
        },
        "curvature": summary,
        "provenance": {"ricci": "koszul"},
    }
    if cyclic:
        closed = ricci_cyclic_formula(mla, tol)
        disc = _discrepancy(summary["ricci"], closed)
        report["provenance"] = {
            "ricci": {"generic": "koszul", "closed_form": "killing_and_mean_curvature", "max_discrepancy": disc}
        }
        if disc > tol.eps_eq * mla.scale**2:
            raise InvariantError(f"Ricci closed form disagrees with the generic pipeline by {disc:.3e}")
    return report


def cmd_gqp(data: dict, tol: ToleranceConfig) -> dict:
    omega = serialize.omega_from_dict(data)
    mla = build(omega)
    summary, lc, K, gen = _curvature_summary(mla, tol)
    cf = closed_forms(omega)
    disc = {
        "levi_civita": _discrepancy(lc.product, cf.levi_civita),
        "curvature": _discrepancy(K.K, cf.curvature),
        "ricci": _discrepancy(gen.ricci, cf.ricci),
        "scalar": _discrepancy(gen.scalar, cf.scalar),
        "nabla_ricci": _discrepancy(gen.nabla_ricci, cf.nabla_ricci),
        "nabla_K": _discrepancy(gen.nabla_K, cf.nabla_K),
    }
    worst = max(disc.values())
    if worst > CLOSED_FORM_RTOL:
        raise InvariantError(f"closed forms disagree with the generic pipeline by {worst:.3e}")
    flags = classify(omega, tol).as_dict()
    return {
        "command": "gqp",
        "input": serialize.omega_to_dict(omega),
        "status": "ok",
        "flags": {**flags, "symmetric": flags["locally_symmetric"]},
        "curvature": summary,
        "provenance": {"generic": "koszul", "closed_form": "model_formulas", "max_discrepancy": disc},
    }


def cmd_isometry(a: dict, b: dict, tol: ToleranceConfig) -> dict:
    oa, ob = serialize.omega_from_dict(a), serialize.omega_from_dict(b)
    w = isometric(oa, ob, tol)
    witness = None
    if w is not None:
        witness = {"Q": w.Q, "perm": list(w.perm), "P": w.P, "residual": w.residual}
    return {
        "command": "isometry",
        "input": {"a": serialize.omega_to_dict(oa), "b": serialize.omega_to_dict(ob)},
        "status": "ok",
        "isometric": witness is not None,
        "witness": witness,
    }


def cmd_sl2(mu: float, nu: float, tol: ToleranceConfig) -> dict:
    m = Sl2CyclicMetric(mu, nu)
    mla = build_sl2(m)
    summary, _, K, gen = _curvature_summary(mla, tol)
    ric_c, sigma_c = sl2_closed_ricci(m)
    disc = {"ricci": _discrepancy(gen.ricci, ric_c), "scalar": _discrepancy(gen.scalar, sigma_c)}
    if max(disc.values()) > CLOSED_FORM_RTOL:
        raise InvariantError("sl(2, R) closed forms disagree with the generic pipeline")
    params = sl2_canonical_parameters(mla, tol)
    return {
        "command": "sl2",
        "input": {"mu": mu, "nu": nu},
        "status": "ok",
        "flags": {
            "cyclic": check_cyclic(mla, tol),
            "constant_curvature": check_constant_curvature(mla, K, tol),
            "vectorial": check_vectorial(mla, tol),
            "canonical_parameters": None if params is None else list(params),
        },
        "curvature": summary,
        "provenance": {"generic": "koszul", "closed_form": "sl2_formulas", "max_discrepancy": disc},
    }


def cmd_decompose(data: dict, tol: ToleranceConfig, seed: int) -> dict:
    mla = serialize.algebra_from_dict(data)
    return serialize.decomposition_to_dict(decompose(mla, tol, seed=seed))


def cmd_catalog(dim: int) -> list:
    return [
        {"dim": e.dim, "label": e.label, "family": e.family, "constraints": e.constraints}
        for e in catalog(dim)
    ]


def _text(obj, prefix="") -> list:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            lines.extend(_text(v, f"{prefix}{k}." if isinstance(v, dict) else f"{prefix}{k}"))
        return lines
    if isinstance(obj, list) and obj and all(isinstance(v, dict) for v in obj):
        lines = []
        for i, v in enumerate(obj):
            lines.extend(_text(v, f"{prefix}[{i}]."))
        return lines
    return [f"{prefix}: {json.dumps(obj)}"]


def emit(result, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    plain = json.loads(serialize.dumps(result))
    if fmt == "json":
        stream.write(serialize.dumps(plain) + "\n")
    else:
        stream.write("\n".join(_text(plain)) + "\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="equality tolerance (eps_eq)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomised steps")
    common.add_argument("--output", choices=["json", "text"], default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="cyclic-lie", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="curvature and flags of an algebra JSON file")
    p.add_argument("path")
    p = sub.add_parser("gqp", parents=[common], help="model group G(q,p,Omega) from an Omega JSON file")
    p.add_argument("path")
    p = sub.add_parser("isometry", parents=[common], help="isometry test between two Omega JSON files")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("sl2", parents=[common], help="cyclic metric on sl(2,R)")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    p = sub.add_parser("decompose", parents=[common], help="factor a cyclic algebra JSON file")
    p.add_argument("path")
    p = sub.add_parser("catalog", parents=[common], help="families of dimension 2 to 5")
    p.add_argument("--dim", type=int, required=True)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = _parser().parse_args(argv)
    fmt = getattr(args, "output", "json")
    seed = getattr(args, "seed", 0)
    try:
        tol = ToleranceConfig(eps_eq=args.tol) if hasattr(args, "tol") else DEFAULT_TOL
        if args.command == "analyze":
            result = cmd_analyze(serialize.load_json(args.path), tol)
        elif args.command == "gqp":
            result = cmd_gqp(serialize.load_json(args.path), tol)
        elif args.command == "isometry":
            result = cmd_isometry(serialize.load_json(args.a), serialize.load_json(args.b), tol)
        elif args.command == "sl2":
            result = cmd_sl2(args.mu, args.nu, tol)
        elif args.command == "decompose":
            result = cmd_decompose(serialize.load_json(args.path), tol, seed)
        else:
            result = cmd_catalog(args.dim)
    except (OSError, json.JSONDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except InvariantError as exc:
        stderr.write(f"internal invariant violated: {exc}\n")
        return EXIT_INTERNAL
    except (ValidationError, ValueError, TypeError) as exc:
        stderr.write(f"invalid input: {exc}\n")
        return EXIT_VALIDATION
    emit(result, fmt, stdout)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
