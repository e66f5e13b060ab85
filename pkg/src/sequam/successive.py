"""Composition of two measurements into one overall observable and its marginals.

Measuring A (through an A-compatible instrument) and then B is statistically
identical to a single measurement whose element for the outcome pair (i, j)
is the Heisenberg-picture image of B_j under the i-th instrument map.  Flat
outcome indexing is fixed as ``i * n_second + j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .instruments import Instrument, adjoint_apply
from .quantum import Povm, ProbabilityDistribution, outcome_distribution, validate_povm


@dataclass(frozen=True)
class OverallObservable:
    """POVM over outcome pairs, flattened in row-major (first, second) order."""

    povm: Povm
    n_first: int
    n_second: int

    def flat_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.n_first and 0 <= j < self.n_second):
            raise IndexError(f"outcome pair ({i}, {j}) out of range")
        return i * self.n_second + j

    def element(self, i: int, j: int) -> np.ndarray:
        return self.povm.elements[self.flat_index(i, j)]


@dataclass(frozen=True)
class MarginalPair:
    """First and second marginal observables of an overall observable."""

    first: Povm
    second: Povm


def overall_observable(ins_a: Instrument, b: Povm) -> OverallObservable:
    """Merge instrument-then-B into one observable with n_A * n_B outcomes.

    Element (i, j) is adjoint_apply(ins_a, i, B_j); positivity and
    completeness are inherited from the instrument normalization, and
    validation re-checks them.
    """
    if b.dim != ins_a.dim:
        raise DimensionMismatch(f"POVM dim {b.dim} != instrument dim {ins_a.dim}")
    elements = []
    labels = []
    for i in range(ins_a.n_outcomes):
        for j, bj in enumerate(b.elements):
            elements.append(adjoint_apply(ins_a, i, bj))
            labels.append(f"{i},{b.labels[j]}")
    povm = validate_povm(elements, labels=tuple(labels))
    return OverallObservable(povm=povm, n_first=ins_a.n_outcomes, n_second=b.n_outcomes)


def marginals(c: OverallObservable) -> MarginalPair:
    """Row sums give the first observable, column sums the disturbed second one."""
    zero = np.zeros((c.povm.dim, c.povm.dim), dtype=complex)
    first = [
        sum((c.element(i, j) for j in range(c.n_second)), start=zero)
        for i in range(c.n_first)
    ]
    second = [
        sum((c.element(i, j) for i in range(c.n_first)), start=zero)
        for j in range(c.n_second)
    ]
    return MarginalPair(first=validate_povm(first), second=validate_povm(second))


def joint_distribution(c: OverallObservable, rho: np.ndarray) -> ProbabilityDistribution:
    """Probabilities p(i, j) = tr[C_ij rho] over flattened outcome pairs."""
    return outcome_distribution(c.povm, rho)
