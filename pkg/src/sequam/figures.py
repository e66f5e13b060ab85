"""Sweep tables for the two reference figures, cross-checked per row.

Every row of the angle sweep evaluates both the closed forms and the
generic eigendecomposition pipeline and refuses to emit data if they
disagree, so a published table is simultaneously a regression check.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

import numpy as np

from .errors import InvariantViolation
from .instruments import luders
from .qubit_models import c_closed, d1_closed, tradeoff, x_povm, z_povm
from .uncertainty import bound_D1, incompatibility_mu

#: Closed forms and the generic pipeline must agree to this tolerance per row.
CROSS_CHECK_TOL = 1e-9

FIG2_PRESETS: dict[str, tuple[float, float]] = {
    "a": (1.0, 1.0),
    "b": (1.0 / math.sqrt(2.0), 1.0),
    "c": (1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)),
}

_T = TypeVar("_T")
_R = TypeVar("_R")


@dataclass(frozen=True)
class CsvTable:
    """Numeric table with a fixed header; rows match the header width."""

    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.header):
                raise InvariantViolation(
                    f"row width {len(row)} != header width {len(self.header)}"
                )

    def to_csv(self) -> str:
        # '.' decimal separator and '\n' line endings regardless of locale;
        # repr() of a float is its shortest lossless decimal form
        lines = [",".join(self.header)]
        lines.extend(",".join(repr(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict[str, float]]:
        return [dict(zip(self.header, row)) for row in self.rows]


def _map_ordered(
    fn: Callable[[_T], _R], items: Sequence[_T], threads: int
) -> list[_R]:
    # results are assembled in input order, so they are identical for any
    # thread count (every row computation is a pure function)
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def fig2_table(
    s: float,
    t: float,
    points: int = 181,
    theta_max: float = math.pi / 2,
    threads: int = 1,
) -> CsvTable:
    """Angle sweep of the two state-independent bounds for Z(s) then X(theta, t).

    Columns ``theta,D1,c``.  The emitted values come from the closed forms;
    each row is cross-checked against the generic pipeline within
    ``CROSS_CHECK_TOL`` before being accepted.
    """
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    if not 0.0 < theta_max <= math.pi:
        raise ValueError(f"theta_max must lie in (0, pi], got {theta_max!r}")
    thetas = np.linspace(0.0, theta_max, points)

    def row(theta: float) -> tuple[float, float, float]:
        d1 = d1_closed(s, t, theta)
        c = c_closed(s, t, theta)
        ins = luders(z_povm(s))
        xt = x_povm(theta, t)
        d1_generic = bound_D1(ins, xt)
        c_generic = incompatibility_mu(z_povm(s), xt)
        if abs(d1 - d1_generic) > CROSS_CHECK_TOL:
            raise InvariantViolation(
                f"D1 cross-check failed at theta={theta!r}: "
                f"closed {d1!r} vs pipeline {d1_generic!r}"
            )
        if abs(c - c_generic) > CROSS_CHECK_TOL:
            raise InvariantViolation(
                f"c cross-check failed at theta={theta!r}: "
                f"closed {c!r} vs pipeline {c_generic!r}"
            )
        return (float(theta), d1, c)

    rows = _map_ordered(row, [float(v) for v in thetas], threads)
    return CsvTable(header=("theta", "D1", "c"), rows=tuple(rows))


def fig3_table(points: int = 101, threads: int = 1) -> CsvTable:
    """Unsharpness trade-off sweep over s in [0, 1].

    Columns ``s,D_Z,D_Xprime,total`` from the closed-form trade-off.
    """
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    grid = np.linspace(0.0, 1.0, points)

    def row(s: float) -> tuple[float, float, float, float]:
        point = tradeoff(s)
        return (float(s), point.d_z, point.d_x_prime, point.total)

    rows = _map_ordered(row, [float(v) for v in grid], threads)
    return CsvTable(header=("s", "D_Z", "D_Xprime", "total"), rows=tuple(rows))
