"""FastAPI application wrapping the measurement-bound computations.

Error mapping: structurally bad payloads answer 422 with category
"parse", invariant violations (bad POVMs, non-unitary dilations...) answer
422 with category "validation", and mismatched Hilbert-space dimensions
answer 422 with category "dimension".  Inequality violations inside an
otherwise valid report are not transport errors; they are returned in the
report body for the client to act on.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DimensionMismatch, InvariantViolation, PayloadError
from ..figures import FIG2_PRESETS, fig2_table, fig3_table
from ..instruments import Instrument, from_measuring_process, induced_povm, luders
from ..linalg import max_abs
from ..quantum import maximally_mixed_state, random_mixed_state, validate_state
from ..serialization import (
    matrix_from_pairs,
    povm_from_payload,
    process_from_payload,
)
from ..uncertainty import full_report
from ..verification import run_verification
from .schemas import (
    CheckResult,
    Fig2Request,
    Fig3Request,
    HealthResponse,
    ReportRequest,
    ReportResponse,
    StateSpec,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
)


def _error_response(category: str, status_code: int = 422):
    async def handler(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=status_code,
            content={"detail": {"category": category, "message": str(exc)}},
        )

    return handler


def _resolve_instrument(request: ReportRequest) -> tuple[Instrument, str]:
    a = povm_from_payload(request.a.model_dump(), what="observable A")
    if request.instrument.kind == "luders":
        return luders(a), "luders"
    mp = process_from_payload(request.instrument.process.model_dump())
    ins = from_measuring_process(mp)
    if ins.dim != a.dim:
        raise DimensionMismatch(
            f"measuring process acts on dim {ins.dim}, observable A has dim {a.dim}"
        )
    if ins.n_outcomes != a.n_outcomes:
        raise InvariantViolation(
            f"measuring process has {ins.n_outcomes} outcomes, observable A has "
            f"{a.n_outcomes}"
        )
    induced = induced_povm(ins)
    deviation = max(
        max_abs(x - y) for x, y in zip(induced.elements, a.elements)
    )
    if deviation > 1e-9:
        raise InvariantViolation(
            f"measuring process is not compatible with observable A: "
            f"max element deviation {deviation:.3e}"
        )
    return ins, "process"


def _resolve_state(spec: StateSpec, dim: int) -> tuple[np.ndarray, str]:
    if spec.kind == "maximally-mixed":
        return maximally_mixed_state(dim), "maximally-mixed"
    if spec.kind == "random":
        return random_mixed_state(dim, spec.seed), f"random:{spec.seed}"
    rho = validate_state(matrix_from_pairs(spec.matrix, spec.dim, "state matrix"))
    if rho.shape[0] != dim:
        raise DimensionMismatch(f"state dim {rho.shape[0]} != observable dim {dim}")
    return rho, "matrix"


def create_app() -> FastAPI:
    app = FastAPI(
        title="sequam",
        description="Entropic uncertainty bounds for successive generalized measurements.",
        version=__version__,
    )
    app.add_exception_handler(PayloadError, _error_response("parse"))
    app.add_exception_handler(DimensionMismatch, _error_response("dimension"))
    app.add_exception_handler(InvariantViolation, _error_response("validation"))

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/fig2", response_model=TableResponse)
    def fig2(request: Fig2Request) -> TableResponse:
        if request.preset is not None:
            s, t = FIG2_PRESETS[request.preset]
        else:
            s, t = request.s, request.t
        table = fig2_table(
            s, t, points=request.points, theta_max=request.theta_max, threads=request.threads
        )
        return TableResponse(header=list(table.header), rows=[list(r) for r in table.rows])

    @app.post("/fig3", response_model=TableResponse)
    def fig3(request: Fig3Request) -> TableResponse:
        table = fig3_table(points=request.points, threads=request.threads)
        return TableResponse(header=list(table.header), rows=[list(r) for r in table.rows])

    @app.post("/report", response_model=ReportResponse, response_model_exclude_none=True)
    def report(request: ReportRequest) -> ReportResponse:
        ins, instrument_kind = _resolve_instrument(request)
        b = povm_from_payload(request.b.model_dump(), what="observable B")
        if b.dim != ins.dim:
            raise DimensionMismatch(
                f"observable B dim {b.dim} != instrument dim {ins.dim}"
            )
        rho, state_kind = _resolve_state(request.state, ins.dim)
        result = full_report(
            ins, b, rho, metadata={"instrument": instrument_kind, "state": state_kind}
        )
        return ReportResponse(**result.as_dict())

    @app.post("/verify", response_model=VerifyResponse)
    def verify(request: VerifyRequest) -> VerifyResponse:
        summary = run_verification(
            request.trials, request.dim, seed=request.seed, threads=request.threads
        )
        return VerifyResponse(
            passed=summary.passed,
            trials=summary.trials,
            dim=summary.dim,
            seed=summary.seed,
            checks=[
                CheckResult(name=c.name, worst_slack=c.worst_slack, passed=c.passed)
                for c in summary.checks
            ],
        )

    return app
