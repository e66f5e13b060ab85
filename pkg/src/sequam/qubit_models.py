"""Closed-form spin-1/2 family: unsharp Z and rotated-X observables.

This module is the oracle layer for the generic pipeline.  The closed
forms below (the four-element merged observable, its minimal device
uncertainty ``d1_closed``, and the overlap incompatibility ``c_closed``)
are evaluated with scalar math only and share no code with the
eigendecomposition pipeline, so agreement between the two is a genuine
cross-check.

Parameters: ``s`` and ``t`` are unsharpness parameters in [0, 1] (1 means
projective) and ``theta`` in [0, pi] is the angle between the two
measurement axes in the x-z plane.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .instruments import MeasuringProcess, make_measuring_process
from .quantum import Povm, validate_povm
from .successive import OverallObservable

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def _check_angle(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    return theta


def z_povm(s: float) -> Povm:
    """Two-outcome unsharp spin-z observable (I +- s sigma_z)/2."""
    s = _check_unit("s", s)
    return validate_povm(
        [(IDENTITY2 + s * SIGMA_Z) / 2, (IDENTITY2 - s * SIGMA_Z) / 2],
        labels=("+", "-"),
    )


def x_povm(theta: float, t: float) -> Povm:
    """Two-outcome unsharp spin observable along (sin theta, 0, cos theta)."""
    theta = _check_angle(theta)
    t = _check_unit("t", t)
    axis = math.sin(theta) * SIGMA_X + math.cos(theta) * SIGMA_Z
    return validate_povm(
        [(IDENTITY2 + t * axis) / 2, (IDENTITY2 - t * axis) / 2],
        labels=("+", "-"),
    )


def overall_S(s: float, t: float, theta: float) -> OverallObservable:
    """The four-element observable merging a Lueders Z-measurement with X(theta).

    Elements are assembled directly from their Pauli decomposition in flat
    order (+,+), (+,-), (-,+), (-,-); they must agree with the generic
    construction ``overall_observable(luders(z_povm(s)), x_povm(theta, t))``.
    """
    s = _check_unit("s", s)
    t = _check_unit("t", t)
    theta = _check_angle(theta)
    ct, st_ = math.cos(theta), math.sin(theta)
    x_coeff = math.sqrt(max(1.0 - s * s, 0.0)) * t * st_

    def element(mu: int, nu: int) -> np.ndarray:
        # mu: first outcome sign, nu: second outcome sign
        same = mu * nu
        return (
            (1.0 + same * s * t * ct) * IDENTITY2
            + nu * x_coeff * SIGMA_X
            + (mu * s + nu * t * ct) * SIGMA_Z
        ) / 4.0

    povm = validate_povm(
        [element(+1, +1), element(+1, -1), element(-1, +1), element(-1, -1)],
        labels=("+,+", "+,-", "-,+", "-,-"),
    )
    return OverallObservable(povm=povm, n_first=2, n_second=2)


def _h(x: float) -> float:
    # local entropy kernel; keeps the closed forms free of pipeline code
    if x < 0.0:
        if x < -1e-12:
            raise ValueError(f"entropy argument {x!r} negative")
        return 0.0
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x)


def d1_closed(s: float, t: float, theta: float) -> float:
    """Closed-form minimal device uncertainty of the merged Z-then-X observable.

    Sum over the four sign pairs (mu, nu) of h of the eigenvalue
    (1 + mu s t cos(theta) + nu sqrt(s^2 + t^2 + 2 mu s t cos(theta)
    + s^2 t^2 (cos^2(theta) - 1))) / 4.
    """
    s = _check_unit("s", s)
    t = _check_unit("t", t)
    theta = _check_angle(theta)
    ct = math.cos(theta)
    total = 0.0
    for mu in (1.0, -1.0):
        radicand = s * s + t * t + 2.0 * mu * s * t * ct + s * s * t * t * (ct * ct - 1.0)
        root = math.sqrt(max(radicand, 0.0))
        for nu in (1.0, -1.0):
            total += _h((1.0 + mu * s * t * ct + nu * root) / 4.0)
    return total


def c_closed(s: float, t: float, theta: float) -> float:
    """Closed-form overlap incompatibility of Z(s) and X(theta, t).

    -log2 of (1 + s t |cos(theta)| + sqrt(s^2 + t^2 + 2 s t |cos(theta)|
    + s^2 t^2 (cos^2(theta) - 1))) / 4.
    """
    s = _check_unit("s", s)
    t = _check_unit("t", t)
    theta = _check_angle(theta)
    act = abs(math.cos(theta))
    radicand = s * s + t * t + 2.0 * s * t * act + s * s * t * t * (act * act - 1.0)
    overlap = (1.0 + s * t * act + math.sqrt(max(radicand, 0.0))) / 4.0
    return max(0.0, -math.log2(overlap))


def cnot_measuring_process(s: float) -> MeasuringProcess:
    """Two-qubit CNOT dilation realizing the Lueders instrument for Z(s).

    Probe starts in sqrt((1+s)/2)|0> + sqrt((1-s)/2)|1>, the joint unitary
    is a CNOT controlled by the system z-basis, and the probe is read out
    in its own z-basis.
    """
    s = _check_unit("s", s)
    probe = np.array([math.sqrt((1.0 + s) / 2.0), math.sqrt((1.0 - s) / 2.0)], dtype=complex)
    cnot = np.eye(4, dtype=complex)[:, [0, 1, 3, 2]]  # flips the probe when the system is |1>
    probe_pvm = validate_povm(
        [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)],
        labels=("+", "-"),
    )
    return make_measuring_process(
        dim_sys=2, dim_probe=2, probe_state=probe, unitary=cnot, probe_pvm=probe_pvm
    )


def x_prime(s: float) -> Povm:
    """The x observable as disturbed by a Lueders Z(s) measurement.

    Unsharpness drops to t = sqrt(1 - s^2), the boundary of joint
    measurability for an unbiased pair.
    """
    s = _check_unit("s", s)
    t = math.sqrt(max(1.0 - s * s, 0.0))
    return validate_povm(
        [(IDENTITY2 + t * SIGMA_X) / 2, (IDENTITY2 - t * SIGMA_X) / 2],
        labels=("+", "-"),
    )


def jointly_measurable_unbiased(s: float, t: float) -> bool:
    """Joint measurability of unbiased Z(s), X(t): s^2 + t^2 <= 1."""
    s = _check_unit("s", s)
    t = _check_unit("t", t)
    return s * s + t * t <= 1.0 + 1e-12


class TradeoffPoint(NamedTuple):
    d_z: float
    d_x_prime: float
    total: float


def tradeoff(s: float) -> TradeoffPoint:
    """Device uncertainties of Z(s) and its jointly measurable partner X'.

    Both are state independent: H_bin((1+s)/2) and H_bin((1+sqrt(1-s^2))/2).
    The total is symmetric under s <-> sqrt(1-s^2), equals 1 bit at the
    endpoints, and peaks at s = 1/sqrt(2).
    """
    s = _check_unit("s", s)
    t = math.sqrt(max(1.0 - s * s, 0.0))
    d_z = _h((1.0 + s) / 2.0) + _h((1.0 - s) / 2.0)
    d_x = _h((1.0 + t) / 2.0) + _h((1.0 - t) / 2.0)
    return TradeoffPoint(d_z=d_z, d_x_prime=d_x, total=d_z + d_x)
