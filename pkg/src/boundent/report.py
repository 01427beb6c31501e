"""JSON wire format for operators, certificates and run reports.

Complex numbers are ``[re, im]`` pairs; matrices are row-major nested
lists of those pairs. Floats go through Python's shortest round-trip
``repr`` so every double reloads bit-identically.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import ToleranceConfig
from .errors import ContractViolation
from .tensor import HermitianOperator, TensorSpace
from .tiles import ProductState, SeparabilityCertificate

TIMING_FIELDS = ("wall_time_ms",)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return np.stack([obj.real, obj.imag], axis=-1).tolist()
        return obj.tolist()
    if isinstance(obj, HermitianOperator):
        return operator_to_dict(obj)
    if isinstance(obj, ProductState):
        return {"a_local": to_jsonable(obj.a_local), "b_local": to_jsonable(obj.b_local)}
    if isinstance(obj, SeparabilityCertificate):
        return certificate_to_dict(obj)
    if isinstance(obj, ToleranceConfig):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def complex_array(data) -> np.ndarray:
    """Inverse of the ``[re, im]`` encoding."""
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ContractViolation("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def operator_to_dict(op: HermitianOperator) -> dict:
    return {
        "space": [[p, d] for p, d in op.space.factors],
        "matrix": to_jsonable(op.matrix),
    }


def operator_from_dict(data: dict) -> HermitianOperator:
    space = TensorSpace(tuple((p, d) for p, d in data["space"]))
    return HermitianOperator(complex_array(data["matrix"]), space)


def certificate_to_dict(cert: SeparabilityCertificate) -> dict:
    return {
        "target": operator_to_dict(cert.target),
        "terms": [{"weight": float(w), "state": to_jsonable(s)} for w, s in cert.terms],
        "residual": cert.residual(),
    }


def certificate_from_dict(data: dict) -> SeparabilityCertificate:
    terms = tuple(
        (
            float(t["weight"]),
            ProductState(complex_array(t["state"]["a_local"]), complex_array(t["state"]["b_local"])),
        )
        for t in data["terms"]
    )
    return SeparabilityCertificate(terms, operator_from_dict(data["target"]))


def dumps(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True, allow_nan=False, ensure_ascii=False)


@dataclass
class RunReport:
    command: str
    config_echo: ToleranceConfig
    args: dict[str, Any]
    results: dict[str, Any]
    checks: list[dict[str, str]] = field(default_factory=list)
    wall_time_ms: float = 0.0
    version: str = ""

    @property
    def failed(self) -> list[str]:
        return [c["name"] for c in self.checks if c["status"] == "fail"]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "config_echo": self.config_echo.to_dict(),
            "args": self.args,
            "results": self.results,
            "checks": self.checks,
            "status": "fail" if self.failed else "pass",
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def strip_timing(payload: dict) -> dict:
    """Copy of a report dict without wall-clock fields (for replay comparisons)."""
    return {k: v for k, v in payload.items() if k not in TIMING_FIELDS}
