"""Pydantic request/response models for the bounds service.

These mirror the JSON wire formats in :mod:`sequam.serialization`; the
models validate structure and ranges, and the conversion to core objects
(with the mathematical invariant checks) happens in the endpoint handlers.
"""

from __future__ import annotations

import math
from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

# a complex matrix as row-major nested [re, im] pairs
MatrixPairs = list[list[list[float]]]
VectorPairs = list[list[float]]


class PovmPayload(BaseModel):
    dim: int = Field(ge=1, le=64)
    elements: list[MatrixPairs] = Field(min_length=1)
    labels: list[str] | None = None


class ProcessPayload(BaseModel):
    dim_sys: int = Field(ge=1, le=16)
    dim_probe: int = Field(ge=1, le=16)
    probe_state: VectorPairs
    unitary: MatrixPairs
    probe_pvm: PovmPayload


class InstrumentSpec(BaseModel):
    """Which A-compatible instrument to use for the first measurement."""

    kind: Literal["luders", "process"] = "luders"
    process: ProcessPayload | None = None

    @model_validator(mode="after")
    def _process_requires_payload(self) -> "InstrumentSpec":
        if self.kind == "process" and self.process is None:
            raise ValueError("instrument kind 'process' needs a 'process' payload")
        if self.kind == "luders" and self.process is not None:
            raise ValueError("instrument kind 'luders' takes no 'process' payload")
        return self


class StateSpec(BaseModel):
    """Input state: maximally mixed, seeded random, or an explicit matrix."""

    kind: Literal["maximally-mixed", "random", "matrix"] = "maximally-mixed"
    seed: int | None = None
    dim: int | None = None
    matrix: MatrixPairs | None = None

    @model_validator(mode="after")
    def _fields_match_kind(self) -> "StateSpec":
        if self.kind == "random" and self.seed is None:
            raise ValueError("state kind 'random' needs a 'seed'")
        if self.kind == "matrix" and (self.matrix is None or self.dim is None):
            raise ValueError("state kind 'matrix' needs 'dim' and 'matrix'")
        return self


class Fig2Request(BaseModel):
    preset: Literal["a", "b", "c"] | None = None
    s: float | None = Field(default=None, ge=0.0, le=1.0)
    t: float | None = Field(default=None, ge=0.0, le=1.0)
    points: int = Field(default=181, ge=2, le=100_000)
    theta_max: float = Field(default=math.pi / 2, gt=0.0, le=math.pi)
    threads: int = Field(default=1, ge=1, le=64)

    @model_validator(mode="after")
    def _preset_xor_params(self) -> "Fig2Request":
        if self.preset is not None:
            if self.s is not None or self.t is not None:
                raise ValueError("give either 'preset' or explicit 's'/'t', not both")
        elif self.s is None or self.t is None:
            raise ValueError("either 'preset' or both 's' and 't' are required")
        return self


class Fig3Request(BaseModel):
    points: int = Field(default=101, ge=2, le=100_000)
    threads: int = Field(default=1, ge=1, le=64)


class TableResponse(BaseModel):
    header: list[str]
    rows: list[list[float]]


class ReportRequest(BaseModel):
    a: PovmPayload
    b: PovmPayload
    instrument: InstrumentSpec = InstrumentSpec()
    state: StateSpec = StateSpec()


class ReportResponse(BaseModel):
    H_first: float
    H_second: float
    H_joint: float
    D_rho: float
    D1: float
    D2: float
    c_maassen_uffink: float
    srinivas_bound: float | None = None
    luders_joint_bound: float
    metadata: dict[str, Any]
    violations: list[str]


class VerifyRequest(BaseModel):
    trials: int = Field(ge=1, le=1_000_000)
    dim: Literal[2, 3, 4] = 2
    seed: int = 0
    threads: int = Field(default=1, ge=1, le=64)


class CheckResult(BaseModel):
    name: str
    worst_slack: float
    passed: bool


class VerifyResponse(BaseModel):
    passed: bool
    trials: int
    dim: int
    seed: int
    checks: list[CheckResult]


class HealthResponse(BaseModel):
    status: str
    version: str
