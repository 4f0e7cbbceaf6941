"""Serialization of results: ``key: value`` text, JSON. Rationals always print as ``p/q``."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .density import (
    DensityCertificate,
    LemmaFReport,
    MinimizerResult,
    WeightFunction,
)
from .graph import format_rational, members
from .homcount import HomCountReport
from .verify import ChainReport, VerificationReport


def _value(v: Any) -> Any:
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, int):
        return v
    if hasattr(v, "value"):  # enums
        return v.value
    if isinstance(v, WeightFunction):
        return [format_rational(x) for x in v.values]
    if isinstance(v, (list, tuple)):
        return [_value(x) for x in v]
    return v


def to_record(obj: Any) -> dict[str, Any]:
    """Flat, ordered ``dict`` for any result type of the library."""
    if isinstance(obj, DensityCertificate):
        return {
            "kind": "density-certificate", "n": obj.n, "eps": obj.eps, "d": obj.d,
            "status": obj.status, "witness": obj.witness_members,
            "checked_subsets": obj.checked_subsets,
        }
    if isinstance(obj, MinimizerResult):
        return {
            "kind": "weighted-minimum", "omega": obj.omega, "minimizer": obj.minimizer,
            "ones": members(obj.ones), "z": obj.z, "delta": obj.delta,
        }
    if isinstance(obj, LemmaFReport):
        return {
            "kind": "weighted-density-check", "n": obj.n, "eps": obj.eps, "d": obj.d,
            "trials": obj.trials, "violations": len(obj.violations), "min_gap": obj.min_gap,
            "omega": obj.omega, "omega_ge_minus_n": obj.omega_ok,
            "gap_to_minus_n": None if obj.omega is None else obj.omega + obj.n,
            "holds": obj.holds,
        }
    if isinstance(obj, HomCountReport):
        return {"kind": "path-hom-bound", "count": obj.count, "bound": obj.bound,
                "holds": obj.holds}
    if isinstance(obj, VerificationReport):
        return {
            "kind": "odd-cycle-bound", "n": obj.n, "m": obj.m, "r": obj.r, "eps": obj.eps,
            "d": obj.d, "precondition_n_ok": obj.precondition_n_ok,
            "density_status": obj.density_status, "c_r": obj.c_r, "bound": obj.bound,
            "holds": obj.holds, "slack": obj.slack, "conditional": obj.conditional,
        }
    if isinstance(obj, ChainReport):
        rec = {
            "kind": "chain-audit", "n": obj.n, "r": obj.r, "eps": obj.eps, "d": obj.d,
            "z_set": obj.z_members, "precondition_n_ok": obj.precondition_n_ok,
            "density_status": obj.density_status, "decomposition_ok": obj.decomposition_ok,
        }
        for s in obj.steps:
            rec[f"step.{s.name}.lhs"] = s.lhs
            rec[f"step.{s.name}.rhs"] = s.rhs
            rec[f"step.{s.name}.holds"] = s.holds
            rec[f"step.{s.name}.requires"] = ",".join(s.requires) or "none"
        rec["all_hold"] = obj.all_hold
        rec["sound"] = obj.sound
        return rec
    raise TypeError(f"no record format for {type(obj).__name__}")


def _text_value(v: Any) -> str:
    v = _value(v)
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(str(x) for x in v) if v else "-"
    return str(v)


def to_text(obj: Any) -> str:
    return "".join(f"{k}: {_text_value(v)}\n" for k, v in to_record(obj).items())


def to_json(obj: Any) -> str:
    rec = {k: _value(v) for k, v in to_record(obj).items()}
    return json.dumps(rec, indent=2) + "\n"
