"""JSON encoding: schema 1, exact rationals as "p/q" strings, sorted keys."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any

from .arith import RatFun, RatMatrix, UniPoly
from .bsroots import RootSet, RootVerdict
from .resolution import ResolutionGraph, graph_to_dict
from .standardform import StandardFormData
from .zeta import PoleInfo, ResidueExpr

SCHEMA = 1


def frac(x: Fraction | int) -> str:
    return str(Fraction(x))


def unipoly_to_list(p: UniPoly) -> list[str]:
    return [frac(c) for c in p.coeffs]


def ratfun_to_dict(f: RatFun, var: str = "s") -> dict:
    return {
        "variable": var,
        "numerator": unipoly_to_list(f.num),
        "denominator": unipoly_to_list(f.den),
        "text": f"({f.num.to_str(var)}) / ({f.den.to_str(var)})",
    }


def sf_to_dict(sf: StandardFormData) -> dict:
    return {
        "a1": sf.a1, "a2": sf.a2, "a3": sf.a3,
        "t": sf.t, "u": sf.u, "m": sf.m,
        "b": list(sf.b),
        "c": None if sf.c is None else [frac(x) for x in sf.c],
        "d": sf.d,
        "perm": list(sf.permutation_applied),
    }


def matrix_to_list(q: RatMatrix) -> list[list[str]]:
    return [[frac(q[r, c]) for c in range(q.n)] for r in range(q.n)]


def rootset_to_dict(rs: RootSet) -> dict:
    roots = rs.sorted()
    out: dict[str, Any] = {
        "roots": [frac(r) for r in roots],
        "provenance": {frac(r): list(rs.provenance[r]) for r in roots},
        "notes": list(rs.notes),
    }
    if rs.multiplicities is not None:
        out["multiplicities"] = {frac(r): rs.multiplicities[r] for r in roots}
    return out


def residue_to_dict(r: ResidueExpr) -> dict:
    zero = r.is_zero()
    out = {"d": r.d, "is_zero": zero, "euler_value": frac(r.euler_specialization())}
    out["reduced"] = ratfun_to_dict(r.to_ratfun(), "M")
    return out


def pole_to_dict(p: PoleInfo) -> dict:
    return {
        "pole": frac(p.pole),
        "candidate_order": p.candidate_order,
        "topological_order": p.topological_order,
        "actual_order": p.actual_order,
        "basis": p.basis,
    }


def verdict_to_dict(v: RootVerdict) -> dict:
    return {
        "d": v.d,
        "target_root": frac(Fraction(-3, v.d)),
        "c_holds": v.c_holds,
        "c_source": v.c_source,
        "b_holds": "unknown" if v.b_holds is None else v.b_holds,
        "b_source": v.b_source,
        "a_verdict": v.a_verdict,
        "notes": list(v.notes),
    }


def to_jsonable(obj: Any) -> Any:
    """Generic fallback walk; the typed helpers above fix the shape of known objects."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return frac(obj)
    if isinstance(obj, RatFun):
        return ratfun_to_dict(obj)
    if isinstance(obj, UniPoly):
        return unipoly_to_list(obj)
    if isinstance(obj, RatMatrix):
        return matrix_to_list(obj)
    if isinstance(obj, StandardFormData):
        return sf_to_dict(obj)
    if isinstance(obj, ResolutionGraph):
        return to_jsonable(graph_to_dict(obj))
    if isinstance(obj, RootSet):
        return rootset_to_dict(obj)
    if isinstance(obj, RootVerdict):
        return verdict_to_dict(obj)
    if isinstance(obj, ResidueExpr):
        return residue_to_dict(obj)
    if isinstance(obj, PoleInfo):
        return pole_to_dict(obj)
    if isinstance(obj, dict):
        return {str(frac(k) if isinstance(k, Fraction) else k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj) if not f.name.startswith("_")}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(payload: dict, kind: str) -> str:
    body = {"schema": SCHEMA, "kind": kind, "data": to_jsonable(payload)}
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False)
