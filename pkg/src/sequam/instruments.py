"""Kraus-form instruments, the Lueders construction, and unitary dilations.

An instrument assigns each measurement outcome a completely positive map;
the trace of its output is the outcome probability and the (renormalized)
output is the post-measurement state.  A measuring process realizes an
instrument through a probe system, a joint unitary, and a sharp probe
observable; :func:`from_measuring_process` converts that description to
Kraus form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .linalg import ATOL, hermitian_eig, max_abs, positive_sqrt, require_square
from .quantum import Povm, is_sharp, random_pure_state, validate_povm

#: Kraus operators with norm at or below this are dropped as exact zeros.
KRAUS_DROP_NORM = 1e-12


@dataclass(frozen=True)
class Instrument:
    """Per-outcome Kraus operator lists; total map is trace preserving."""

    dim: int
    kraus: tuple[tuple[np.ndarray, ...], ...]

    @property
    def n_outcomes(self) -> int:
        return len(self.kraus)


def make_instrument(kraus: list[list[np.ndarray]], atol: float = ATOL) -> Instrument:
    """Validate normalization sum_{i,m} K^dagger K = I and build the instrument."""
    if not kraus:
        raise InvariantViolation("instrument needs at least one outcome")
    cleaned: list[tuple[np.ndarray, ...]] = []
    dim: int | None = None
    for ops in kraus:
        kept = []
        for op in ops:
            op = np.asarray(op, dtype=complex)
            if dim is None:
                op = require_square(op, "Kraus operator")
                dim = op.shape[0]
            elif op.shape != (dim, dim):
                raise DimensionMismatch(
                    f"Kraus operator has shape {op.shape}, expected ({dim}, {dim})"
                )
            if max_abs(op) > KRAUS_DROP_NORM:
                kept.append(op)
        cleaned.append(tuple(kept))
    if dim is None:
        raise InvariantViolation("instrument has no Kraus operators at all")
    total = sum(
        (op.conj().T @ op for ops in cleaned for op in ops),
        start=np.zeros((dim, dim), dtype=complex),
    )
    residual = max_abs(total - np.eye(dim))
    if residual > atol:
        raise InvariantViolation(
            f"instrument is not normalized: ||sum K^dagger K - I||_max = {residual:.6e}"
        )
    return Instrument(dim=dim, kraus=tuple(cleaned))


def luders(a: Povm) -> Instrument:
    """Instrument with the single Kraus operator sqrt(A_i) per outcome."""
    return make_instrument([[positive_sqrt(e)] for e in a.elements])


@dataclass(frozen=True)
class MeasuringProcess:
    """Probe dimension, probe state vector, joint unitary, sharp probe PVM."""

    dim_sys: int
    dim_probe: int
    probe_state: np.ndarray
    unitary: np.ndarray
    probe_pvm: Povm


def make_measuring_process(
    dim_sys: int,
    dim_probe: int,
    probe_state: np.ndarray,
    unitary: np.ndarray,
    probe_pvm: Povm,
    atol: float = ATOL,
) -> MeasuringProcess:
    """Validate the quadruple: unit probe vector, unitary U, sharp probe PVM."""
    probe_state = np.asarray(probe_state, dtype=complex).reshape(-1)
    if probe_state.shape[0] != dim_probe:
        raise DimensionMismatch(
            f"probe state has dimension {probe_state.shape[0]}, expected {dim_probe}"
        )
    norm = float(np.linalg.norm(probe_state))
    if abs(norm - 1.0) > atol:
        raise InvariantViolation(f"probe state norm {norm!r} is not 1")
    unitary = require_square(unitary, "unitary")
    total = dim_sys * dim_probe
    if unitary.shape[0] != total:
        raise DimensionMismatch(
            f"unitary has dimension {unitary.shape[0]}, expected {dim_sys}*{dim_probe}={total}"
        )
    defect = max_abs(unitary.conj().T @ unitary - np.eye(total))
    if defect > atol:
        raise InvariantViolation(f"||U^dagger U - I||_max = {defect:.6e}")
    if probe_pvm.dim != dim_probe:
        raise DimensionMismatch(
            f"probe PVM dim {probe_pvm.dim} does not match probe dimension {dim_probe}"
        )
    if not is_sharp(probe_pvm, atol):
        raise InvariantViolation("probe observable must be sharp (a PVM)")
    return MeasuringProcess(
        dim_sys=dim_sys,
        dim_probe=dim_probe,
        probe_state=probe_state,
        unitary=unitary,
        probe_pvm=probe_pvm,
    )


def from_measuring_process(mp: MeasuringProcess) -> Instrument:
    """Convert a measuring process to Kraus form.

    For each probe PVM element F_i with eigenvalue-1 eigenbasis {|f_im>},
    the Kraus operators are K_im = (I (x) <f_im|) U (I (x) |xi>); applying
    the resulting instrument reproduces the partial-trace dilation formula
    on every state.
    """
    ds, dp = mp.dim_sys, mp.dim_probe
    u4 = mp.unitary.reshape(ds, dp, ds, dp)
    kraus: list[list[np.ndarray]] = []
    for element in mp.probe_pvm.elements:
        sd = hermitian_eig(element)
        ops = []
        for k, value in enumerate(sd.eigenvalues):
            if value < 0.5:  # sharp PVM: eigenvalues are 0 or 1
                continue
            f = sd.eigenvectors[:, k]
            ops.append(np.einsum("p,apbq,q->ab", f.conj(), u4, mp.probe_state))
        kraus.append(ops)
    return make_instrument(kraus)


def apply(ins: Instrument, rho: np.ndarray, outcome: int) -> np.ndarray:
    """Subnormalized output sum_m K rho K^dagger; its trace is the outcome probability."""
    _check_outcome(ins, outcome)
    if rho.shape[0] != ins.dim:
        raise DimensionMismatch(f"state dim {rho.shape[0]} != instrument dim {ins.dim}")
    out = np.zeros((ins.dim, ins.dim), dtype=complex)
    for op in ins.kraus[outcome]:
        out += op @ rho @ op.conj().T
    return out


def adjoint_apply(ins: Instrument, outcome: int, effect: np.ndarray) -> np.ndarray:
    """Heisenberg-picture map sum_m K^dagger E K, dual to :func:`apply`."""
    _check_outcome(ins, outcome)
    if effect.shape[0] != ins.dim:
        raise DimensionMismatch(f"effect dim {effect.shape[0]} != instrument dim {ins.dim}")
    out = np.zeros((ins.dim, ins.dim), dtype=complex)
    for op in ins.kraus[outcome]:
        out += op.conj().T @ effect @ op
    return out


def induced_povm(ins: Instrument, labels: tuple[str, ...] | None = None) -> Povm:
    """The observable measured by the instrument: elements sum_m K^dagger K."""
    identity = np.eye(ins.dim, dtype=complex)
    elements = [adjoint_apply(ins, i, identity) for i in range(ins.n_outcomes)]
    return validate_povm(elements, labels=labels)


def verify_compatibility(
    ins: Instrument,
    a: Povm,
    n_samples: int = 100,
    seed: int = 0,
) -> float:
    """Sampled check that the instrument reproduces the observable's statistics.

    Returns the max over random pure states and outcomes of
    |tr[apply(rho, i)] - tr[A_i rho]|.
    """
    if a.dim != ins.dim:
        raise DimensionMismatch(f"POVM dim {a.dim} != instrument dim {ins.dim}")
    if a.n_outcomes != ins.n_outcomes:
        raise DimensionMismatch(
            f"POVM has {a.n_outcomes} outcomes, instrument has {ins.n_outcomes}"
        )
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        rho = random_pure_state(ins.dim, rng)
        for i in range(ins.n_outcomes):
            p_ins = float(np.trace(apply(ins, rho, i)).real)
            p_povm = float(np.trace(a.elements[i] @ rho).real)
            worst = max(worst, abs(p_ins - p_povm))
    return worst


def _check_outcome(ins: Instrument, outcome: int) -> None:
    if not 0 <= outcome < ins.n_outcomes:
        raise IndexError(f"outcome {outcome} out of range [0, {ins.n_outcomes})")
