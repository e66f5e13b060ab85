"""Exception types shared across the package.

The service layer maps these onto HTTP error categories and the CLI maps
the categories onto exit codes, so the distinction between "the payload is
not even well-formed", "the object violates a mathematical invariant" and
"the objects do not fit together" is load-bearing.
"""

from __future__ import annotations


class PayloadError(ValueError):
    """Structurally malformed input (wrong shapes, ragged arrays, bad enums)."""


class InvariantViolation(ValueError):
    """A mathematical invariant failed (positivity, completeness, unitarity...)."""


class DimensionMismatch(ValueError):
    """Operands live on Hilbert spaces of different dimensions."""


class PovmValidationError(InvariantViolation):
    """Carries the full list of violated POVM invariants, not just the first."""

    def __init__(self, issues: list[str]):
        self.issues = tuple(issues)
        super().__init__("; ".join(issues))
