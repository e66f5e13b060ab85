"""JSON wire formats shared by the service, the CLI, and on-disk files.

Complex matrices travel as row-major nested arrays of [re, im] pairs:

    {"dim": 2, "elements": [[[[1,0],[0,0]],[[0,0],[0,0]]], ...], "labels": ["+","-"]}

Shape problems raise :class:`PayloadError` (a parse-level failure);
mathematical problems surface from the validating constructors as
:class:`InvariantViolation` or :class:`DimensionMismatch`.
"""

from __future__ import annotations

from typing import Any, Mapping, Sequence

import numpy as np

from .errors import PayloadError
from .instruments import MeasuringProcess, make_measuring_process
from .quantum import Povm, validate_povm, validate_state
from .uncertainty import BoundReport


def matrix_to_pairs(m: np.ndarray) -> list[list[list[float]]]:
    """Encode a complex matrix as row-major [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_pairs(data: Sequence, dim: int, what: str = "matrix") -> np.ndarray:
    """Decode a dim x dim matrix from nested [re, im] pairs."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise PayloadError(f"{what}: not a numeric array: {exc}") from None
    if arr.shape != (dim, dim, 2):
        raise PayloadError(f"{what}: expected shape ({dim}, {dim}, 2), got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def vector_from_pairs(data: Sequence, dim: int, what: str = "vector") -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise PayloadError(f"{what}: not a numeric array: {exc}") from None
    if arr.shape != (dim, 2):
        raise PayloadError(f"{what}: expected shape ({dim}, 2), got {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


def _require_key(payload: Mapping, key: str, what: str) -> Any:
    if key not in payload:
        raise PayloadError(f"{what}: missing key {key!r}")
    return payload[key]


def povm_from_payload(payload: Mapping, what: str = "POVM") -> Povm:
    dim = int(_require_key(payload, "dim", what))
    if dim < 1:
        raise PayloadError(f"{what}: dim must be >= 1, got {dim}")
    raw_elements = _require_key(payload, "elements", what)
    if not isinstance(raw_elements, Sequence) or isinstance(raw_elements, (str, bytes)):
        raise PayloadError(f"{what}: elements must be a list")
    elements = [
        matrix_from_pairs(e, dim, what=f"{what} element {k}")
        for k, e in enumerate(raw_elements)
    ]
    labels = payload.get("labels")
    if labels is not None:
        labels = tuple(str(lab) for lab in labels)
    return validate_povm(elements, labels=labels)


def povm_to_payload(povm: Povm) -> dict:
    return {
        "dim": povm.dim,
        "elements": [matrix_to_pairs(e) for e in povm.elements],
        "labels": list(povm.labels),
    }


def process_from_payload(payload: Mapping) -> MeasuringProcess:
    dim_sys = int(_require_key(payload, "dim_sys", "process"))
    dim_probe = int(_require_key(payload, "dim_probe", "process"))
    if dim_sys < 1 or dim_probe < 1:
        raise PayloadError(f"process: dimensions must be >= 1, got {dim_sys}, {dim_probe}")
    probe_state = vector_from_pairs(
        _require_key(payload, "probe_state", "process"), dim_probe, "probe_state"
    )
    unitary = matrix_from_pairs(
        _require_key(payload, "unitary", "process"), dim_sys * dim_probe, "unitary"
    )
    probe_pvm = povm_from_payload(
        _require_key(payload, "probe_pvm", "process"), what="probe_pvm"
    )
    return make_measuring_process(dim_sys, dim_probe, probe_state, unitary, probe_pvm)


def process_to_payload(mp: MeasuringProcess) -> dict:
    return {
        "dim_sys": mp.dim_sys,
        "dim_probe": mp.dim_probe,
        "probe_state": [[float(v.real), float(v.imag)] for v in mp.probe_state],
        "unitary": matrix_to_pairs(mp.unitary),
        "probe_pvm": povm_to_payload(mp.probe_pvm),
    }


def state_from_payload(payload: Mapping) -> np.ndarray:
    """Decode a density matrix from {"dim": d, "matrix": pairs}."""
    dim = int(_require_key(payload, "dim", "state"))
    if dim < 1:
        raise PayloadError(f"state: dim must be >= 1, got {dim}")
    matrix = matrix_from_pairs(_require_key(payload, "matrix", "state"), dim, "state matrix")
    return validate_state(matrix)


def state_to_payload(rho: np.ndarray) -> dict:
    return {"dim": int(rho.shape[0]), "matrix": matrix_to_pairs(rho)}


def report_to_payload(report: BoundReport) -> dict:
    return report.as_dict()
