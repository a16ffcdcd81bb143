"""Dual-rotor variable aerodynamic damping actuator.

Two counter-facing rotors on a common translation axis see opposite
inflows (+nu on the forward rotor, -nu on the backward one). Net force,
trim-linearized damping, promptness, the bridge into the antagonistic
core, and the inverse (force, damping) -> speeds allocation live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .aero import (
    AffineThrustModel,
    hardening_rate,
    inflow_sensitivity,
    monotone_regime_bound,
    speed_sensitivity,
)
from .antagonistic import AntagonisticActuator, ChannelLaw, ConvergenceError

__all__ = [
    "DualRotor",
    "TrimPoint",
    "AllocationResult",
    "net_force",
    "damping_at_trim",
    "force_promptness",
    "as_antagonistic_at_trim",
    "allocate",
    "wind_trim",
]

# contract is 1e-9 relative; iterate to 1e-12 so round-trip checks have margin
_ALLOC_TOL = 1e-12
_ALLOC_MAX_ITERS = 50


@dataclass(frozen=True)
class DualRotor:
    rotor_fwd: AffineThrustModel   # contributes +T(v1, nu)
    rotor_bwd: AffineThrustModel   # contributes -T(v2, -nu)
    # per-rotor admissible open speed intervals, rad/s
    speed_box: tuple[tuple[float, float], tuple[float, float]] = (
        (0.0, math.inf),
        (0.0, math.inf),
    )

    def __post_init__(self):
        for lo, hi in self.speed_box:
            if lo < 0.0 or not hi > lo:
                raise ValueError(f"invalid speed box {self.speed_box}")

    @classmethod
    def identical(cls, model: AffineThrustModel, speed_box=None) -> "DualRotor":
        if speed_box is None:
            return cls(rotor_fwd=model, rotor_bwd=model)
        return cls(rotor_fwd=model, rotor_bwd=model, speed_box=speed_box)

    def in_box(self, v: Sequence[float]) -> bool:
        (lo1, hi1), (lo2, hi2) = self.speed_box
        return lo1 < v[0] < hi1 and lo2 < v[1] < hi2

    def require_in_box(self, v: Sequence[float]) -> None:
        if not self.in_box(v):
            raise ValueError(f"speeds {tuple(v)} outside admissible box {self.speed_box}")


@dataclass(frozen=True)
class TrimPoint:
    nu_bar: float       # air-relative trim velocity, m/s
    force_level: float  # commanded net force, N


@dataclass(frozen=True)
class AllocationResult:
    speeds: tuple[float, float]
    achieved_force: float
    achieved_damping: float
    feasible: bool
    reason: str = ""


def net_force(dr: DualRotor, v: Sequence[float], nu: float) -> float:
    """F(v, nu) = T1(v1, nu) - T2(v2, -nu)."""
    dr.require_in_box(v)
    return _raw_force(dr, v[0], v[1], nu)


def _raw_force(dr: DualRotor, v1: float, v2: float, nu: float) -> float:
    # polynomial form, valid for report-only evaluation at any real speeds
    t1 = dr.rotor_fwd.k_thrust * v1 * v1 - dr.rotor_fwd.k_inflow * v1 * nu
    t2 = dr.rotor_bwd.k_thrust * v2 * v2 + dr.rotor_bwd.k_inflow * v2 * nu
    return t1 - t2


def damping_at_trim(dr: DualRotor, v: Sequence[float], nu_bar: float = 0.0) -> float:
    """sigma_a(v; nu_bar) = lambda1(v1, nu_bar) + lambda2(v2, -nu_bar).

    For affine models this reduces to k_D1 v1 + k_D2 v2, independent of
    the trim inflow.
    """
    dr.require_in_box(v)
    return inflow_sensitivity(dr.rotor_fwd, v[0], nu_bar) + inflow_sensitivity(
        dr.rotor_bwd, v[1], -nu_bar
    )


def force_promptness(dr: DualRotor, v: Sequence[float], nu_bar: float = 0.0) -> float:
    """Norm of the force task-map gradient at the trim."""
    dr.require_in_box(v)
    return math.hypot(
        speed_sensitivity(dr.rotor_fwd, v[0], nu_bar),
        speed_sensitivity(dr.rotor_bwd, v[1], -nu_bar),
    )


def as_antagonistic_at_trim(dr: DualRotor, nu_bar: float = 0.0) -> AntagonisticActuator:
    """View the dual rotor at a fixed trim as a generic antagonistic actuator.

    Channel maps: h1(v) = T1(v, nu_bar), h2(v) = T2(v, -nu_bar), with the
    per-rotor inflow sensitivities as passive coefficients. Requires the
    whole speed box to sit in the monotone regime (dT/dv > 0), checked at
    the box lower bounds.
    """
    (lo1, _), (lo2, _) = dr.speed_box
    if nu_bar > 0.0 and nu_bar >= monotone_regime_bound(dr.rotor_fwd, lo1):
        raise ValueError(
            f"trim inflow {nu_bar} violates the monotone regime on the forward rotor box"
        )
    if nu_bar < 0.0 and -nu_bar >= monotone_regime_bound(dr.rotor_bwd, lo2):
        raise ValueError(
            f"trim inflow {nu_bar} violates the monotone regime on the backward rotor box"
        )

    def channel(model: AffineThrustModel, inflow: float) -> ChannelLaw:
        return ChannelLaw(
            output_fn=lambda v: model.k_thrust * v * v - model.k_inflow * v * inflow,
            output_sensitivity_fn=lambda v: speed_sensitivity(model, v, inflow),
            passive_coeff_fn=lambda v: inflow_sensitivity(model, v, inflow),
            passive_hardening_fn=lambda v: hardening_rate(model, v, inflow),
        )

    return AntagonisticActuator(
        channel_plus=channel(dr.rotor_fwd, nu_bar),
        channel_minus=channel(dr.rotor_bwd, -nu_bar),
        admissible_box=dr.speed_box,
    )


def allocate(dr: DualRotor, trim: TrimPoint, sigma_des: float) -> AllocationResult:
    """Invert (net force, damping) -> rotor speeds at the trim.

    Identical rotors admit a closed form in common/differential modes:
    s = sigma_des / k_D and d = (F_bar / s + k_D nu_bar) / k_T. Distinct
    rotors fall back to a 2-D Newton seeded from that closed form. An
    infeasible request (|d| >= s or a box violation) is reported with the
    unconstrained candidate, never clamped.
    """
    if not sigma_des > 0.0:
        raise ValueError(f"requested damping must be positive, got {sigma_des}")
    fwd, bwd = dr.rotor_fwd, dr.rotor_bwd
    nu_bar, f_bar = trim.nu_bar, trim.force_level

    # closed-form candidate using averaged coefficients as the seed
    k_t = 0.5 * (fwd.k_thrust + bwd.k_thrust)
    k_d = 0.5 * (fwd.k_inflow + bwd.k_inflow)
    s = sigma_des / k_d
    d = (f_bar / s + k_d * nu_bar) / k_t
    v1, v2 = 0.5 * (s + d), 0.5 * (s - d)

    if fwd != bwd:
        try:
            v1, v2 = _newton_allocate(dr, nu_bar, f_bar, sigma_des, v1, v2)
        except ConvergenceError:
            return AllocationResult(
                speeds=(v1, v2),
                achieved_force=_raw_force(dr, v1, v2, nu_bar),
                achieved_damping=fwd.k_inflow * v1 + bwd.k_inflow * v2,
                feasible=False,
                reason="newton-divergence",
            )

    achieved_force = _raw_force(dr, v1, v2, nu_bar)
    achieved_damping = fwd.k_inflow * v1 + bwd.k_inflow * v2
    if not dr.in_box((v1, v2)):
        reason = "differential mode exceeds common mode" if min(v1, v2) <= 0 else "speed box violation"
        return AllocationResult(
            speeds=(v1, v2),
            achieved_force=achieved_force,
            achieved_damping=achieved_damping,
            feasible=False,
            reason=reason,
        )
    return AllocationResult(
        speeds=(v1, v2),
        achieved_force=achieved_force,
        achieved_damping=achieved_damping,
        feasible=True,
    )


def _newton_allocate(
    dr: DualRotor, nu_bar: float, f_bar: float, sigma_des: float, v1: float, v2: float
) -> tuple[float, float]:
    fwd, bwd = dr.rotor_fwd, dr.rotor_bwd
    tol_f = _ALLOC_TOL * max(1.0, abs(f_bar))
    tol_s = _ALLOC_TOL * max(1.0, sigma_des)
    for _ in range(_ALLOC_MAX_ITERS):
        rf = _raw_force(dr, v1, v2, nu_bar) - f_bar
        rs = fwd.k_inflow * v1 + bwd.k_inflow * v2 - sigma_des
        if abs(rf) <= tol_f and abs(rs) <= tol_s:
            return v1, v2
        # J = [[dF/dv1, dF/dv2], [k_D1, k_D2]]
        a = 2.0 * fwd.k_thrust * v1 - fwd.k_inflow * nu_bar
        b = -(2.0 * bwd.k_thrust * v2 + bwd.k_inflow * nu_bar)
        c, e = fwd.k_inflow, bwd.k_inflow
        det = a * e - b * c
        if det == 0.0:
            raise ConvergenceError("singular allocation Jacobian")
        v1 -= (e * rf - b * rs) / det
        v2 -= (-c * rf + a * rs) / det
    raise ConvergenceError("allocation Newton did not converge")


def wind_trim(body_speed: float, wind_speed: float) -> float:
    """Air-relative trim velocity under steady wind along the axis."""
    return body_speed - wind_speed
