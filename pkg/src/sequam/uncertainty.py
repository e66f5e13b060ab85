"""Entropies, device uncertainty, and state-independent lower bounds.

All quantities are in bits (base-2 logarithms).  Device uncertainty
measures the unsharpness of an observable: it vanishes on every state
exactly when the observable is projective, and its state-independent
minimum is the smallest eigenvalue of the unsharpness operator, which this
module computes exactly by eigendecomposition rather than by sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .instruments import Instrument, induced_povm
from .linalg import ATOL, hermitian_eig, operator_norm, positive_sqrt
from .quantum import Povm, ProbabilityDistribution, outcome_distribution, sharp_eigenbasis
from .successive import marginals, overall_observable

#: Slack allowed before an entropy inequality chain is flagged as violated.
CHAIN_SLACK = 1e-9


def clamp_unit_interval(x: float, atol: float = ATOL) -> float:
    """Snap floating-point noise at the edges of [0, 1]; reject real excursions."""
    if -atol <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + atol:
        return 1.0
    if not 0.0 <= x <= 1.0:
        raise InvariantViolation(f"value {x!r} outside [0, 1] beyond tolerance {atol:.1e}")
    return x


def h(x: float) -> float:
    """The entropy kernel -x log2 x on [0, 1], with h(0) = h(1) = 0."""
    x = clamp_unit_interval(float(x))
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x)


def shannon_entropy(p: ProbabilityDistribution | np.ndarray) -> float:
    """Shannon entropy of an outcome distribution, in bits."""
    probs = p.probs if isinstance(p, ProbabilityDistribution) else np.asarray(p, dtype=float)
    return float(sum(h(float(q)) for q in probs))


def binary_entropy(q: float) -> float:
    """h(q) + h(1 - q): entropy of a two-outcome distribution, in bits."""
    q = clamp_unit_interval(float(q))
    return h(q) + h(1.0 - q)


def device_uncertainty(a: Povm, rho: np.ndarray) -> float:
    """Unsharpness of ``a`` as seen by the state ``rho``.

    Computed eigenspace-wise, sum_i sum_{distinct lambda} h(lambda) *
    tr[rho P_lambda], so the value does not depend on the basis chosen
    inside a degenerate eigenspace.
    """
    if rho.shape[0] != a.dim:
        raise DimensionMismatch(f"state dim {rho.shape[0]} != POVM dim {a.dim}")
    total = 0.0
    for element in a.elements:
        for value, projector in hermitian_eig(element).grouped():
            weight = h(value)
            if weight:
                total += weight * float(np.trace(rho @ projector).real)
    return max(0.0, total)


def unsharpness_operator(a: Povm) -> np.ndarray:
    """Positive operator whose expectation in any state is the device uncertainty."""
    out = np.zeros((a.dim, a.dim), dtype=complex)
    for element in a.elements:
        for value, projector in hermitian_eig(element).grouped():
            weight = h(value)
            if weight:
                out += weight * projector
    return out


def min_device_uncertainty(a: Povm) -> float:
    """State-independent minimum of the device uncertainty (exact, not sampled).

    Device uncertainty is linear in the state, so the minimum over all
    states is the smallest eigenvalue of the unsharpness operator.
    """
    low = float(np.linalg.eigvalsh(unsharpness_operator(a))[0])
    return max(0.0, low)


def max_sqrt_overlap(a: Povm, b: Povm) -> float:
    """max over outcome pairs of ||sqrt(A_i) sqrt(B_j)||^2."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"POVM dims differ: {a.dim} vs {b.dim}")
    roots_a = [positive_sqrt(e) for e in a.elements]
    roots_b = [positive_sqrt(e) for e in b.elements]
    return max(operator_norm(ra @ rb) ** 2 for ra in roots_a for rb in roots_b)


def incompatibility_mu(a: Povm, b: Povm) -> float:
    """Overlap-based incompatibility -log2 max_{i,j} ||sqrt(A_i) sqrt(B_j)||^2."""
    return max(0.0, -math.log2(max_sqrt_overlap(a, b)))


def bound_D1(ins_a: Instrument, b: Povm) -> float:
    """State-independent floor of the joint entropy of measuring A then B.

    The minimal device uncertainty of the merged overall observable.
    """
    return min_device_uncertainty(overall_observable(ins_a, b).povm)


def bound_D2(ins_a: Instrument, b: Povm) -> float:
    """State-independent floor of the entropy sum of the two marginals.

    Smallest eigenvalue of the sum of the marginals' unsharpness operators;
    exact because the sum of device uncertainties is linear in the state.
    """
    pair = marginals(overall_observable(ins_a, b))
    combined = unsharpness_operator(pair.first) + unsharpness_operator(pair.second)
    return max(0.0, float(np.linalg.eigvalsh(combined)[0]))


def srinivas_bound(basis_a: np.ndarray, basis_b: np.ndarray, atol: float = ATOL) -> float:
    """Minimum row entropy of the overlap matrix of two orthonormal bases.

    ``basis_a`` and ``basis_b`` hold basis vectors as columns.  This is the
    entropy floor for successive projective measurements: min over i of
    -sum_j |<a_i|b_j>|^2 log2 |<a_i|b_j>|^2.  Ties take the smallest i.
    """
    basis_a = _require_orthonormal(basis_a, atol, "basis_a")
    basis_b = _require_orthonormal(basis_b, atol, "basis_b")
    if basis_a.shape != basis_b.shape:
        raise DimensionMismatch(
            f"bases have different shapes {basis_a.shape} vs {basis_b.shape}"
        )
    overlaps = np.abs(basis_a.conj().T @ basis_b) ** 2
    row_entropies = [sum(h(float(w)) for w in row) for row in overlaps]
    return float(min(row_entropies))


def _require_orthonormal(basis: np.ndarray, atol: float, what: str) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    if basis.ndim != 2 or basis.shape[0] != basis.shape[1]:
        raise DimensionMismatch(f"{what} must be a square matrix of column vectors")
    gram = basis.conj().T @ basis
    defect = float(np.max(np.abs(gram - np.eye(basis.shape[0]))))
    if defect > atol:
        raise InvariantViolation(f"{what} is not orthonormal: defect {defect:.3e}")
    return basis


def luders_joint_bound(a: Povm, b: Povm) -> float:
    """Incompatibility floor from the disturbed second observable.

    -log2 max_j ||sum_i sqrt(A_i) B_j sqrt(A_i)||; the operator inside the
    norm is the j-th element of the second marginal after a Lueders
    measurement of A.  Never exceeds :func:`incompatibility_mu` (the norm
    of a sum of positive operators dominates each term), which is why the
    report carries both for comparison.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"POVM dims differ: {a.dim} vs {b.dim}")
    roots_a = [positive_sqrt(e) for e in a.elements]
    worst = 0.0
    for bj in b.elements:
        disturbed = sum(ra @ bj @ ra for ra in roots_a)
        worst = max(worst, operator_norm(disturbed))
    return max(0.0, -math.log2(worst))


@dataclass(frozen=True)
class BoundReport:
    """Entropies and every lower bound for one (instrument, B, state) input.

    All values in bits.  ``srinivas_bound`` is only defined when both
    observables are rank-1 projective measures and is None otherwise.
    ``violations`` lists any entropy-chain inequality that failed beyond
    ``CHAIN_SLACK``; an empty tuple means the report is consistent.
    """

    H_first: float
    H_second: float
    H_joint: float
    D_rho: float
    D1: float
    D2: float
    c_maassen_uffink: float
    srinivas_bound: float | None
    luders_joint_bound: float
    metadata: dict[str, Any] = field(default_factory=dict)
    violations: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "H_first": self.H_first,
            "H_second": self.H_second,
            "H_joint": self.H_joint,
            "D_rho": self.D_rho,
            "D1": self.D1,
            "D2": self.D2,
            "c_maassen_uffink": self.c_maassen_uffink,
            "luders_joint_bound": self.luders_joint_bound,
        }
        if self.srinivas_bound is not None:
            out["srinivas_bound"] = self.srinivas_bound
        out["metadata"] = dict(self.metadata)
        out["violations"] = list(self.violations)
        return out


def full_report(
    ins_a: Instrument,
    b: Povm,
    rho: np.ndarray,
    metadata: dict[str, Any] | None = None,
) -> BoundReport:
    """Assemble every entropy and bound for one successive-measurement input.

    The joint chain H(A,B) >= D_rho(C) >= D1 and the marginal chain
    H(A) + H(B') >= D(A) + D(B') >= D2 are checked with ``CHAIN_SLACK``;
    failures land in ``violations`` (they indicate an implementation bug,
    since both chains are theorems).
    """
    c = overall_observable(ins_a, b)
    pair = marginals(c)
    dist_joint = outcome_distribution(c.povm, rho)
    dist_first = outcome_distribution(pair.first, rho)
    dist_second = outcome_distribution(pair.second, rho)

    h_joint = shannon_entropy(dist_joint)
    h_first = shannon_entropy(dist_first)
    h_second = shannon_entropy(dist_second)
    d_rho_c = device_uncertainty(c.povm, rho)
    d_marginals = device_uncertainty(pair.first, rho) + device_uncertainty(pair.second, rho)
    d1 = min_device_uncertainty(c.povm)
    combined = unsharpness_operator(pair.first) + unsharpness_operator(pair.second)
    d2 = max(0.0, float(np.linalg.eigvalsh(combined)[0]))

    a = induced_povm(ins_a)
    c_mu = incompatibility_mu(a, b)
    lj = luders_joint_bound(a, b)

    srinivas: float | None = None
    basis_a = sharp_eigenbasis(a)
    basis_b = sharp_eigenbasis(b)
    if basis_a is not None and basis_b is not None:
        srinivas = srinivas_bound(basis_a, basis_b)

    violations = []
    for name, lhs, rhs in (
        ("H_joint >= D_rho(C)", h_joint, d_rho_c),
        ("D_rho(C) >= D1", d_rho_c, d1),
        ("H_first + H_second >= D(A) + D(B')", h_first + h_second, d_marginals),
        ("D(A) + D(B') >= D2", d_marginals, d2),
    ):
        if lhs + CHAIN_SLACK < rhs:
            violations.append(f"{name} violated: {lhs!r} < {rhs!r}")

    meta = dict(metadata or {})
    meta.setdefault("dim", ins_a.dim)
    meta.setdefault("n_first", ins_a.n_outcomes)
    meta.setdefault("n_second", b.n_outcomes)
    meta["D_marginal_sum"] = d_marginals
    return BoundReport(
        H_first=h_first,
        H_second=h_second,
        H_joint=h_joint,
        D_rho=d_rho_c,
        D1=d1,
        D2=d2,
        c_maassen_uffink=c_mu,
        srinivas_bound=srinivas,
        luders_joint_bound=lj,
        metadata=meta,
        violations=tuple(violations),
    )
