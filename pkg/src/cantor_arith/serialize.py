"""JSON encoding with exact fractions as "p/q" strings."""

from __future__ import annotations

import enum
from dataclasses import fields, is_dataclass
from fractions import Fraction

from ._dynamics import Decomposition, DecompPoint, TraceStep
from .cantor_model import EndpointAddress, as_ratio
from .phi import parse_phi

SCHEMA = "cantor-arith/1"


def frac(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def to_jsonable(obj):
    """Recursively turn fractions, addresses and dataclasses into JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return frac(obj)
    if isinstance(obj, EndpointAddress):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Decomposition):
        return decomposition_to_json(obj)
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "label"):
        return obj.label
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decomposition_to_json(d: Decomposition) -> dict:
    return {
        "kind": d.kind,
        "x": frac(d.x),
        "phi": d.phi.label if d.phi is not None else None,
        "ref_alpha": frac(d.ref_alpha),
        "bound_constant": frac(d.bound_constant),
        "status": d.status,
        "residual": frac(d.residual),
        "certified_bound": frac(d.certified_bound),
        "caps": list(d.caps) if d.caps is not None else None,
        "prefixes": list(d.prefixes) if d.prefixes is not None else None,
        "points": [
            {"index": p.index, "role": p.role, "alpha": frac(p.alpha), "address": str(p.address),
             "value": frac(p.value)}
            for p in d.points
        ],
        "trace": [
            {"round": s.round, "kind": s.kind, "delta_before": frac(s.delta_before),
             "delta_after": frac(s.delta_after), "moved": [list(m) for m in s.moved],
             "scale": s.scale, "bound": frac(s.bound)}
            for s in d.trace
        ],
    }


def decomposition_from_json(data: dict) -> Decomposition:
    return Decomposition(
        kind=data["kind"],
        x=as_ratio(data["x"]),
        points=tuple(
            DecompPoint(p["index"], p["role"], as_ratio(p["alpha"]), EndpointAddress.parse(p["address"]),
                        as_ratio(p["value"]))
            for p in data["points"]
        ),
        residual=as_ratio(data["residual"]),
        certified_bound=as_ratio(data["certified_bound"]),
        trace=tuple(
            TraceStep(s["round"], s["kind"], as_ratio(s["delta_before"]), as_ratio(s["delta_after"]),
                      tuple(tuple(m) for m in s["moved"]), s["scale"], as_ratio(s["bound"]))
            for s in data["trace"]
        ),
        ref_alpha=as_ratio(data["ref_alpha"]),
        bound_constant=as_ratio(data["bound_constant"]),
        phi=parse_phi(data["phi"]) if data.get("phi") else None,
        status=data["status"],
        caps=tuple(data["caps"]) if data.get("caps") is not None else None,
        prefixes=tuple(data["prefixes"]) if data.get("prefixes") is not None else None,
    )
