"""States, POVMs, outcome statistics, and seeded random-state generation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation, PovmValidationError
from .linalg import ATOL, hermitian_eig, max_abs, partial_trace_probe, require_hermitian

#: Probabilities may dip this far below zero from floating-point noise.
PROB_FLOOR = -1e-12


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(k) for k in range(n))


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Outcome probabilities with matched labels; sums to 1."""

    probs: np.ndarray
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.probs)

    def as_dict(self) -> dict[str, float]:
        return {lab: float(p) for lab, p in zip(self.labels, self.probs)}


@dataclass(frozen=True)
class Povm:
    """Validated positive-operator-valued measure.

    Construct through :func:`validate_povm`; direct construction skips the
    positivity and completeness checks.
    """

    dim: int
    elements: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)


def validate_povm(
    raw: list[np.ndarray] | tuple[np.ndarray, ...],
    labels: list[str] | tuple[str, ...] | None = None,
    atol: float = ATOL,
) -> Povm:
    """Check every POVM invariant and return the validated measure.

    All violations are collected before raising, so a bad input produces a
    complete report: per-element Hermiticity and eigenvalue range (each
    eigenvalue in [0, 1] within ``atol``) plus the completeness relation
    (elements sum to the identity within ``atol`` in max-norm).
    """
    if len(raw) == 0:
        raise PovmValidationError(["POVM needs at least one element"])
    elements = [np.asarray(e, dtype=complex) for e in raw]
    dim = elements[0].shape[0]
    issues: list[str] = []
    for k, e in enumerate(elements):
        if e.ndim != 2 or e.shape != (dim, dim):
            raise DimensionMismatch(
                f"element {k} has shape {e.shape}, expected ({dim}, {dim})"
            )
        try:
            require_hermitian(e, atol, what=f"element {k}")
        except InvariantViolation as exc:
            issues.append(str(exc))
            continue
        eigenvalues = np.linalg.eigvalsh(e)
        if eigenvalues[0] < -atol:
            issues.append(f"element {k} has negative eigenvalue {eigenvalues[0]:.6e}")
        if eigenvalues[-1] > 1.0 + atol:
            issues.append(f"element {k} has eigenvalue {eigenvalues[-1]:.10f} above 1")
    residual = max_abs(sum(elements) - np.eye(dim))
    if residual > atol:
        issues.append(f"completeness residual ||sum - I||_max = {residual:.6e}")
    if issues:
        raise PovmValidationError(issues)
    if labels is None:
        labels = default_labels(len(elements))
    elif len(labels) != len(elements):
        raise InvariantViolation(f"{len(labels)} labels for {len(elements)} POVM elements")
    return Povm(dim=dim, elements=tuple(elements), labels=tuple(labels))


def is_sharp(a: Povm, atol: float = ATOL) -> bool:
    """True iff every eigenvalue of every element is 0 or 1 within ``atol``."""
    for e in a.elements:
        eigenvalues = np.linalg.eigvalsh(e)
        near_edge = np.minimum(np.abs(eigenvalues), np.abs(eigenvalues - 1.0))
        if np.any(near_edge > atol):
            return False
    return True


def validate_state(rho: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, positive, unit trace."""
    rho = require_hermitian(rho, atol, what="state")
    eigenvalues = np.linalg.eigvalsh(rho)
    if eigenvalues[0] < -atol:
        raise InvariantViolation(f"state has negative eigenvalue {eigenvalues[0]:.6e}")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > atol:
        raise InvariantViolation(f"state trace {trace!r} is not 1")
    return rho


def maximally_mixed_state(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def outcome_distribution(a: Povm, rho: np.ndarray) -> ProbabilityDistribution:
    """Born-rule outcome probabilities tr[A_i rho].

    Tiny negative traces (above ``PROB_FLOOR``) are clamped to zero and the
    vector is rescaled provided its total is within 1e-9 of 1; larger
    deviations are invariant violations, not noise.
    """
    if rho.shape[0] != a.dim:
        raise DimensionMismatch(f"state dim {rho.shape[0]} != POVM dim {a.dim}")
    probs = np.array([float(np.trace(e @ rho).real) for e in a.elements])
    if probs.min() < PROB_FLOOR:
        raise InvariantViolation(f"outcome probability {probs.min():.3e} below {PROB_FLOOR}")
    probs = np.clip(probs, 0.0, None)
    total = float(probs.sum())
    if abs(total - 1.0) > ATOL:
        raise InvariantViolation(f"outcome probabilities sum to {total!r}")
    return ProbabilityDistribution(probs=probs / total, labels=a.labels)


def random_pure_state(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-random pure state |psi><psi|, deterministic per seed."""
    rng = np.random.default_rng(seed)
    psi = _gaussian_unit_vector(dim, rng)
    return np.outer(psi, psi.conj())


def random_mixed_state(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Hilbert-Schmidt-random mixed state.

    Obtained by tracing a dim-dimensional ancilla out of a Haar-random pure
    state on dim^2.
    """
    rng = np.random.default_rng(seed)
    psi = _gaussian_unit_vector(dim * dim, rng)
    return partial_trace_probe(np.outer(psi, psi.conj()), dim, dim)


def _gaussian_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def sharp_eigenbasis(a: Povm, atol: float = ATOL) -> np.ndarray | None:
    """If ``a`` is a rank-1 projective measure, return its basis as columns.

    Returns None when any element is not a rank-1 projector (so the notion
    of "the measurement basis" does not apply).
    """
    if a.n_outcomes != a.dim or not is_sharp(a, atol):
        return None
    columns = []
    for e in a.elements:
        sd = hermitian_eig(e)
        if abs(sd.eigenvalues[0] - 1.0) > atol or (a.dim > 1 and sd.eigenvalues[1] > atol):
            return None
        columns.append(sd.eigenvectors[:, 0])
    return np.column_stack(columns)
