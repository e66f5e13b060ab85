"""Dense complex matrix kernel for small Hilbert spaces (dim up to ~16).

Hermitian eigendecompositions with degeneracy grouping, operator norms,
positive square roots, Kronecker products, and partial traces.  All
functions are pure; the tensor ordering is system first, probe second,
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DimensionMismatch, InvariantViolation

#: Default tolerance for Hermiticity, orthonormality and reconstruction checks.
ATOL = 1e-9

#: Eigenvalues closer to each other than this are treated as one eigenspace.
DEGENERACY_TOL = 1e-9


def max_abs(m: np.ndarray) -> float:
    """Largest entry magnitude, the max-norm used by all invariant checks."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def hermiticity_defect(m: np.ndarray) -> float:
    """Return ||M - M^dagger||_max."""
    return max_abs(m - m.conj().T)


def require_square(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {m.shape}")
    return m


def require_hermitian(m: np.ndarray, atol: float = ATOL, what: str = "matrix") -> np.ndarray:
    """Validate M = M^dagger relative to the matrix scale; return M as complex array."""
    m = require_square(m, what)
    defect = hermiticity_defect(m)
    scale = max(1.0, max_abs(m))
    if defect > atol * scale:
        raise InvariantViolation(
            f"{what} is not Hermitian: ||M - M^dagger||_max = {defect:.3e} "
            f"exceeds {atol:.1e} * max(1, ||M||_max)"
        )
    return m


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigensystem of a Hermitian matrix, eigenvalues descending.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.  ``eigenspaces``
    groups indices whose eigenvalues agree within ``DEGENERACY_TOL``;
    consumers that only need eigenspace projectors should iterate
    :meth:`grouped` so their output does not depend on the arbitrary basis
    chosen inside a degenerate eigenspace.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    eigenspaces: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.eigenvectors.shape[0]

    def grouped(self) -> Iterator[tuple[float, np.ndarray]]:
        """Yield (eigenvalue, projector) per eigenspace, eigenvalues descending."""
        for group in self.eigenspaces:
            vecs = self.eigenvectors[:, list(group)]
            value = float(np.mean(self.eigenvalues[list(group)]))
            yield value, vecs @ vecs.conj().T

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def _group_degenerate(values: np.ndarray, tol: float) -> tuple[tuple[int, ...], ...]:
    # values are sorted descending; adjacent values within tol chain into one group
    groups: list[list[int]] = []
    for k, v in enumerate(values):
        if groups and abs(values[groups[-1][-1]] - v) <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return tuple(tuple(g) for g in groups)


def hermitian_eig(m: np.ndarray, atol: float = ATOL) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix into descending eigenvalues.

    Rejects non-Hermitian input, reporting the measured asymmetry.  The
    returned decomposition satisfies reconstruction and orthonormality to
    within ``atol``.
    """
    m = require_hermitian(m, atol)
    values, vectors = np.linalg.eigh(m)
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = vectors[:, order]
    return SpectralDecomposition(
        eigenvalues=values,
        eigenvectors=vectors,
        eigenspaces=_group_degenerate(values, DEGENERACY_TOL),
    )


def operator_norm(m: np.ndarray) -> float:
    """Largest singular value: sqrt of the top eigenvalue of M^dagger M."""
    m = require_square(m)
    if max_abs(m) == 0.0:
        return 0.0
    gram = m.conj().T @ m
    top = float(np.linalg.eigvalsh(gram)[-1])
    return float(np.sqrt(max(top, 0.0)))


def positive_sqrt(p: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Positive square root of a positive-semidefinite Hermitian matrix.

    Eigenvalues in [-atol, 0) are clamped to 0; anything below -atol is a
    genuine positivity failure and is rejected by naming the offending
    eigenvalue.  Eigenvalues that are zero up to rounding are zeroed before
    the square root: sqrt turns 1e-17 of eigensolver noise into 3e-9, which
    would dominate downstream 1e-9 comparisons.
    """
    sd = hermitian_eig(p, atol)
    low = float(sd.eigenvalues[-1])
    if low < -atol:
        raise InvariantViolation(f"matrix is not positive semidefinite: eigenvalue {low:.6e}")
    noise_floor = 1e-13 * max(1.0, float(sd.eigenvalues[0]))
    values = np.where(sd.eigenvalues > noise_floor, sd.eigenvalues, 0.0)
    return (sd.eigenvectors * np.sqrt(values)) @ sd.eigenvectors.conj().T


def tensor(m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Kronecker product, system factor first, probe factor second."""
    return np.kron(np.asarray(m, dtype=complex), np.asarray(n, dtype=complex))


def partial_trace_probe(m: np.ndarray, dim_sys: int, dim_probe: int) -> np.ndarray:
    """Trace out the probe (second) tensor factor of an operator on sys x probe."""
    m = require_square(m)
    total = dim_sys * dim_probe
    if m.shape[0] != total:
        raise DimensionMismatch(
            f"operator has dimension {m.shape[0]}, expected {dim_sys}*{dim_probe}={total}"
        )
    blocks = m.reshape(dim_sys, dim_probe, dim_sys, dim_probe)
    return np.einsum("ipjp->ij", blocks)
