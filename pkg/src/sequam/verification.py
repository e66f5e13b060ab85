"""Randomized verification of the entropy inequality chains.

The general statements behind the bounds are theorems, so they cannot be
checked against tabulated numbers; instead this module samples random
observables, Lueders instruments, and states, and confirms every chain
holds within a small slack.  Any failure indicates an implementation bug.

Trials are seeded through ``numpy`` seed sequences spawned per trial, so a
run is reproducible for a given seed and bitwise independent of the thread
count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import log2

import numpy as np

from .instruments import luders
from .linalg import operator_norm
from .quantum import Povm, outcome_distribution, random_mixed_state, validate_povm
from .successive import joint_distribution, marginals, overall_observable
from .uncertainty import (
    device_uncertainty,
    incompatibility_mu,
    luders_joint_bound,
    min_device_uncertainty,
    shannon_entropy,
    unsharpness_operator,
)

#: An inequality "lhs >= rhs" passes while lhs - rhs >= -SLACK_TOL.
SLACK_TOL = 1e-9

#: The nine checked inequalities, in chain order.
CHECK_NAMES: tuple[str, ...] = (
    "H(A) >= D_rho(A)",
    "D_rho(A) >= min D(A)",
    "min D(A) >= -log2 max||A_i||",
    "H(A,B) >= D_rho(C)",
    "D_rho(C) >= D1",
    "D1 >= c",
    "H(A)+H(B') >= D(A)+D(B')",
    "D(A)+D(B') >= D2",
    "D2 >= -log2 max||sum sqrt(A) B sqrt(A)||",
)


@dataclass(frozen=True)
class ChainCheck:
    name: str
    worst_slack: float

    @property
    def passed(self) -> bool:
        return self.worst_slack >= -SLACK_TOL


@dataclass(frozen=True)
class VerificationSummary:
    trials: int
    dim: int
    seed: int
    checks: tuple[ChainCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def format_lines(self) -> list[str]:
        lines = [
            f"verify: trials={self.trials} dim={self.dim} seed={self.seed}"
        ]
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            lines.append(f"{status}  worst_slack={check.worst_slack:+.6e}  {check.name}")
        lines.append("all inequalities hold" if self.passed else "INEQUALITY VIOLATION")
        return lines


def random_povm(dim: int, n_outcomes: int, rng: np.random.Generator) -> Povm:
    """Random POVM: Gaussian positive operators whitened by their sum.

    Draws G_i = A_i^dagger A_i and returns S^{-1/2} G_i S^{-1/2} with
    S = sum_i G_i, which is complete by construction.
    """
    gs = []
    for _ in range(n_outcomes):
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        gs.append(a.conj().T @ a)
    total = sum(gs)
    values, vectors = np.linalg.eigh(total)
    inv_root = (vectors / np.sqrt(values)) @ vectors.conj().T
    return validate_povm([inv_root @ g @ inv_root for g in gs])


def _trial_slacks(dim: int, child: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(child)
    n_a = int(rng.integers(2, dim + 2))
    n_b = int(rng.integers(2, dim + 2))
    a = random_povm(dim, n_a, rng)
    b = random_povm(dim, n_b, rng)
    rho = random_mixed_state(dim, rng)

    slacks = np.empty(len(CHECK_NAMES))

    # single-observable chain
    h_a = shannon_entropy(outcome_distribution(a, rho))
    d_a = device_uncertainty(a, rho)
    min_d_a = min_device_uncertainty(a)
    norm_floor = -log2(max(operator_norm(e) for e in a.elements))
    slacks[0] = h_a - d_a
    slacks[1] = d_a - min_d_a
    slacks[2] = min_d_a - norm_floor

    # merged-observable chain for the Lueders instrument of A
    c = overall_observable(luders(a), b)
    h_joint = shannon_entropy(joint_distribution(c, rho))
    d_c = device_uncertainty(c.povm, rho)
    d1 = min_device_uncertainty(c.povm)
    mu = incompatibility_mu(a, b)
    slacks[3] = h_joint - d_c
    slacks[4] = d_c - d1
    slacks[5] = d1 - mu

    # marginal chain
    pair = marginals(c)
    h_first = shannon_entropy(outcome_distribution(pair.first, rho))
    h_second = shannon_entropy(outcome_distribution(pair.second, rho))
    d_sum = device_uncertainty(pair.first, rho) + device_uncertainty(pair.second, rho)
    combined = unsharpness_operator(pair.first) + unsharpness_operator(pair.second)
    d2 = max(0.0, float(np.linalg.eigvalsh(combined)[0]))
    lj = luders_joint_bound(a, b)
    slacks[6] = h_first + h_second - d_sum
    slacks[7] = d_sum - d2
    slacks[8] = d2 - lj
    return slacks


def run_verification(
    trials: int, dim: int, seed: int = 0, threads: int = 1
) -> VerificationSummary:
    """Run the full inequality suite on ``trials`` random inputs."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if dim not in (2, 3, 4):
        raise ValueError(f"dim must be 2, 3 or 4, got {dim}")
    children = np.random.SeedSequence(seed).spawn(trials)

    def one(child: np.random.SeedSequence) -> np.ndarray:
        return _trial_slacks(dim, child)

    if threads <= 1:
        all_slacks = [one(child) for child in children]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            all_slacks = list(pool.map(one, children))
    worst = np.min(np.vstack(all_slacks), axis=0)
    checks = tuple(
        ChainCheck(name=name, worst_slack=float(w))
        for name, w in zip(CHECK_NAMES, worst)
    )
    return VerificationSummary(trials=trials, dim=dim, seed=seed, checks=checks)


def random_orthonormal_basis(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random orthonormal basis as columns (QR of a Gaussian matrix)."""
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
