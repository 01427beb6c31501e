"""Run configuration: numerical tolerances, iteration budgets and the RNG seed."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ContractViolation

_TOLERANCE_FIELDS = ("eig_tol", "psd_tol", "cert_tol", "seesaw_tol", "herm_tol")


@dataclass(frozen=True)
class ToleranceConfig:
    """Every knob that can change a numerical result.

    A report echoes this object verbatim; feeding the echo back reproduces
    the results payload exactly.
    """

    eig_tol: float = 1e-14
    psd_tol: float = 1e-10
    cert_tol: float = 1e-10
    seesaw_tol: float = 1e-10
    herm_tol: float = 1e-10
    max_sweeps: int = 100
    max_iter: int = 500
    restarts_n1: int = 200
    restarts_n2: int = 500
    grid_resolution: int = 16
    seed: int = 42
    dim_limit: int = 6561
    include_n2: bool = True
    eig_method: str = "jacobi"

    def __post_init__(self) -> None:
        for name in _TOLERANCE_FIELDS:
            value = getattr(self, name)
            if not 0.0 < value <= 1e-3:
                raise ContractViolation(f"{name}={value} outside (0, 1e-3]")
        if self.dim_limit < 81:
            raise ContractViolation(f"dim_limit={self.dim_limit} must be >= 81")
        if not 0 <= self.seed < 2**64:
            raise ContractViolation("seed must fit in an unsigned 64-bit integer")
        for name in ("max_sweeps", "max_iter", "restarts_n1", "restarts_n2"):
            if getattr(self, name) < 1:
                raise ContractViolation(f"{name} must be >= 1")
        if self.grid_resolution < 8:
            raise ContractViolation("grid_resolution must be >= 8")
        if self.eig_method not in ("jacobi", "lapack"):
            raise ContractViolation(f"unknown eig_method {self.eig_method!r}")

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ToleranceConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ContractViolation(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> ToleranceConfig:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def replace(self, **changes: Any) -> ToleranceConfig:
        return dataclasses.replace(self, **changes)


DEFAULT_CONFIG = ToleranceConfig()
