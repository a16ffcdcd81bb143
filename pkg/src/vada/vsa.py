"""Antagonistic variable-stiffness actuator: hardening tendons on a pulley.

Joint torque tau(x, theta) = R (r(x1 - R theta) - r(x2 + R theta)); the
deflection theta is a query parameter, stiffness and promptness are
evaluated at theta = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .antagonistic import AntagonisticActuator, ChannelLaw

__all__ = [
    "TendonLaw",
    "VsaConfig",
    "joint_torque",
    "stiffness",
    "torque_promptness",
    "as_antagonistic",
]


@dataclass(frozen=True)
class TendonLaw:
    """Tendon force-extension law r(x) with r' > 0 and r'' > 0 for x > 0."""

    kind: str
    r: Callable[[float], float]
    r_prime: Callable[[float], float]
    r_double_prime: Callable[[float], float]

    @classmethod
    def quadratic(cls, k: float) -> "TendonLaw":
        """r(x) = k x^2 / 2; linearly hardening, the canonical choice."""
        if not k > 0.0:
            raise ValueError(f"k must be positive, got {k}")
        return cls(
            kind=f"quadratic(k={k})",
            r=lambda x: 0.5 * k * x * x,
            r_prime=lambda x: k * x,
            r_double_prime=lambda x: k,
        )

    @classmethod
    def exponential(cls, k: float, alpha: float) -> "TendonLaw":
        """r(x) = k (exp(alpha x) - 1)."""
        if not (k > 0.0 and alpha > 0.0):
            raise ValueError(f"k and alpha must be positive, got k={k}, alpha={alpha}")
        return cls(
            kind=f"exponential(k={k}, alpha={alpha})",
            r=lambda x: k * (math.exp(alpha * x) - 1.0),
            r_prime=lambda x: k * alpha * math.exp(alpha * x),
            r_double_prime=lambda x: k * alpha * alpha * math.exp(alpha * x),
        )

    @classmethod
    def cubic(cls, k: float) -> "TendonLaw":
        """r(x) = k (x + x^3 / 3); r'' = 2 k x > 0 only for x > 0."""
        if not k > 0.0:
            raise ValueError(f"k must be positive, got {k}")
        return cls(
            kind=f"cubic(k={k})",
            r=lambda x: k * (x + x ** 3 / 3.0),
            r_prime=lambda x: k * (1.0 + x * x),
            r_double_prime=lambda x: 2.0 * k * x,
        )


@dataclass(frozen=True)
class VsaConfig:
    law: TendonLaw
    pulley_radius: float          # R, m
    state: tuple[float, float]    # tendon displacements (x1, x2), m

    def __post_init__(self):
        if not self.pulley_radius > 0.0:
            raise ValueError(f"pulley_radius must be positive, got {self.pulley_radius}")
        if not (self.state[0] > 0.0 and self.state[1] > 0.0):
            raise ValueError(f"tendon displacements must be positive, got {self.state}")


def joint_torque(cfg: VsaConfig, theta: float) -> float:
    """Net elastic torque at deflection theta; errors outside the
    admissibility window rather than extrapolating the tendon law."""
    R = cfg.pulley_radius
    x1, x2 = cfg.state
    e1, e2 = x1 - R * theta, x2 + R * theta
    if not (e1 > 0.0 and e2 > 0.0):
        raise ValueError(
            f"deflection {theta} leaves the admissible window: extensions ({e1}, {e2})"
        )
    return R * (cfg.law.r(e1) - cfg.law.r(e2))


def stiffness(cfg: VsaConfig) -> float:
    """sigma = R^2 (r'(x1) + r'(x2)), the passive stiffness at theta = 0."""
    R = cfg.pulley_radius
    x1, x2 = cfg.state
    return R * R * (cfg.law.r_prime(x1) + cfg.law.r_prime(x2))


def torque_promptness(cfg: VsaConfig) -> float:
    """rho = R sqrt(r'(x1)^2 + r'(x2)^2), the fiber density at theta = 0."""
    x1, x2 = cfg.state
    return cfg.pulley_radius * math.hypot(cfg.law.r_prime(x1), cfg.law.r_prime(x2))


def as_antagonistic(cfg: VsaConfig) -> AntagonisticActuator:
    """Bridge into the generic core: h_i = R r, g_i = R r', p_i = R^2 r'."""
    R = cfg.pulley_radius
    law = cfg.law

    def channel() -> ChannelLaw:
        return ChannelLaw(
            output_fn=lambda x: R * law.r(x),
            output_sensitivity_fn=lambda x: R * law.r_prime(x),
            passive_coeff_fn=lambda x: R * R * law.r_prime(x),
            passive_hardening_fn=lambda x: R * R * law.r_double_prime(x),
        )

    return AntagonisticActuator(channel_plus=channel(), channel_minus=channel())
