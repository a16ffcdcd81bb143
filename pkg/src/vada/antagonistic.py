"""Generic two-channel antagonistic actuator with a scalar task map.

Both the tendon-driven VSA and the dual-rotor damping actuator reduce to
this structure: channel 1 adds h1(u1) to the task output, channel 2
subtracts h2(u2), and each channel carries a passive coefficient that
hardens with its command. Constant-output fibers are traced numerically
with an Euler predictor and a 1-D Newton corrector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

__all__ = [
    "ChannelLaw",
    "AntagonisticActuator",
    "FiberPath",
    "SweepReport",
    "RelationReport",
    "ConvergenceError",
    "FIBER_TOLERANCE",
    "task_output",
    "passive_coefficient",
    "promptness",
    "fiber_tangent",
    "trace_fiber",
    "monotonicity_sweep",
    "passive_promptness_relation",
]

# Relative tolerance on |f(u) - level| for accepted fiber points.
FIBER_TOLERANCE = 1e-10

_NEWTON_MAX_ITERS = 50


class ConvergenceError(RuntimeError):
    """Newton correction failed to meet tolerance within the iteration cap."""


@dataclass(frozen=True)
class ChannelLaw:
    """One channel's output map h, sensitivity g = h', passive coefficient p
    and its hardening dp/du. Derivatives are supplied analytically."""

    output_fn: Callable[[float], float]
    output_sensitivity_fn: Callable[[float], float]
    passive_coeff_fn: Callable[[float], float]
    passive_hardening_fn: Callable[[float], float]


@dataclass(frozen=True)
class AntagonisticActuator:
    channel_plus: ChannelLaw
    channel_minus: ChannelLaw
    # per-channel open intervals (lower > 0, upper may be inf)
    admissible_box: tuple[tuple[float, float], tuple[float, float]] = (
        (0.0, math.inf),
        (0.0, math.inf),
    )

    def in_box(self, u: Sequence[float]) -> bool:
        (lo1, hi1), (lo2, hi2) = self.admissible_box
        return lo1 < u[0] < hi1 and lo2 < u[1] < hi2

    def require_in_box(self, u: Sequence[float]) -> None:
        if not self.in_box(u):
            raise ValueError(f"command {tuple(u)} outside admissible box {self.admissible_box}")


@dataclass(frozen=True)
class FiberPath:
    """Discrete constant-output fiber, parameterized by increasing u1."""

    level: float
    points: list[tuple[float, float]]
    residuals: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class SweepReport:
    values: list[float]
    is_strictly_increasing: bool
    min_increment: float | None


@dataclass(frozen=True)
class RelationReport:
    pairs: list[tuple[float, float]]
    is_monotone: bool


def task_output(act: AntagonisticActuator, u: Sequence[float]) -> float:
    """f(u) = h1(u1) - h2(u2)."""
    act.require_in_box(u)
    return act.channel_plus.output_fn(u[0]) - act.channel_minus.output_fn(u[1])


def passive_coefficient(act: AntagonisticActuator, u: Sequence[float]) -> float:
    """p1(u1) + p2(u2): stiffness for a VSA, incremental damping for a VADA."""
    act.require_in_box(u)
    return act.channel_plus.passive_coeff_fn(u[0]) + act.channel_minus.passive_coeff_fn(u[1])


def promptness(act: AntagonisticActuator, u: Sequence[float]) -> float:
    """Euclidean norm of the task-map gradient, sqrt(g1^2 + g2^2)."""
    act.require_in_box(u)
    g1 = act.channel_plus.output_sensitivity_fn(u[0])
    g2 = act.channel_minus.output_sensitivity_fn(u[1])
    return math.hypot(g1, g2)


def fiber_tangent(act: AntagonisticActuator, u: Sequence[float]) -> float:
    """du2/du1 along the fiber: g1(u1)/g2(u2), positive on admissible points."""
    act.require_in_box(u)
    g2 = act.channel_minus.output_sensitivity_fn(u[1])
    if g2 <= 0.0:
        raise ValueError(f"channel sensitivity must be positive, got g2={g2} at u2={u[1]}")
    return act.channel_plus.output_sensitivity_fn(u[0]) / g2


def _correct_u2(act: AntagonisticActuator, u1: float, u2_guess: float, level: float) -> tuple[float, float]:
    """Newton in u2 on h1(u1) - h2(u2) = level; returns (u2, residual)."""
    h1 = act.channel_plus.output_fn(u1)
    target = h1 - level  # want h2(u2) = target
    tol = FIBER_TOLERANCE * max(1.0, abs(level))
    u2 = u2_guess
    for _ in range(_NEWTON_MAX_ITERS):
        residual = act.channel_minus.output_fn(u2) - target
        if abs(residual) <= tol:
            return u2, abs(residual)
        g2 = act.channel_minus.output_sensitivity_fn(u2)
        if g2 <= 0.0:
            raise ValueError(f"channel sensitivity must be positive, got g2={g2} at u2={u2}")
        u2 = u2 - residual / g2
    raise ConvergenceError(
        f"fiber correction did not converge at u1={u1} (last residual {residual:.3e})"
    )


def trace_fiber(
    act: AntagonisticActuator,
    start: Sequence[float],
    u1_end: float,
    steps: int,
) -> FiberPath:
    """Trace the constant-output fiber through `start` up to u1 = u1_end.

    Returns `steps` points at equally spaced u1 values (the first is the
    corrected start). Each step is an Euler predictor along the fiber
    tangent followed by Newton projection back onto the level set; a point
    leaving the admissible box is an error, never a silently clipped result.
    """
    act.require_in_box(start)
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if steps > 1 and not u1_end > start[0]:
        raise ValueError(f"u1_end ({u1_end}) must exceed start u1 ({start[0]})")

    level = task_output(act, start)
    if steps == 1:
        u1_values = [start[0]]
    else:
        du1 = (u1_end - start[0]) / (steps - 1)
        u1_values = [start[0] + i * du1 for i in range(steps)]

    points: list[tuple[float, float]] = []
    residuals: list[float] = []
    u1_prev, u2 = float(start[0]), float(start[1])
    for i, u1 in enumerate(u1_values):
        if i > 0:
            u2 = u2 + fiber_tangent(act, (u1_prev, u2)) * (u1 - u1_prev)
        u2, res = _correct_u2(act, u1, u2, level)
        if not act.in_box((u1, u2)):
            raise ValueError(
                f"fiber left the admissible box at step {i}: u=({u1}, {u2})"
            )
        points.append((u1, u2))
        residuals.append(res)
        u1_prev = u1
    return FiberPath(level=level, points=points, residuals=residuals)


def monotonicity_sweep(act: AntagonisticActuator, path: FiberPath, which: str) -> SweepReport:
    """Evaluate passive coefficient or promptness along the path and check
    for strict pointwise increase (no epsilon: ties are failures)."""
    if which == "passive":
        fn = passive_coefficient
    elif which == "promptness":
        fn = promptness
    else:
        raise ValueError(f"which must be 'passive' or 'promptness', got {which!r}")
    values = [fn(act, u) for u in path.points]
    if len(values) < 2:
        return SweepReport(values=values, is_strictly_increasing=True, min_increment=None)
    increments = [b - a for a, b in zip(values, values[1:])]
    return SweepReport(
        values=values,
        is_strictly_increasing=all(d > 0.0 for d in increments),
        min_increment=min(increments),
    )


def passive_promptness_relation(act: AntagonisticActuator, path: FiberPath) -> RelationReport:
    """Paired (passive, promptness) samples along the path.

    is_monotone is true when promptness is a strictly increasing function of
    the passive coefficient (discretely: same-sign nonzero increments),
    regardless of traversal direction.
    """
    if len(path.points) < 2:
        raise ValueError("relation needs a path with at least 2 points")
    pairs = [
        (passive_coefficient(act, u), promptness(act, u)) for u in path.points
    ]
    monotone = True
    for (s0, r0), (s1, r1) in zip(pairs, pairs[1:]):
        ds, dr = s1 - s0, r1 - r0
        if ds == 0.0 and dr == 0.0:
            raise ValueError("degenerate path: adjacent points coincide")
        if ds * dr <= 0.0:
            monotone = False
    return RelationReport(pairs=pairs, is_monotone=monotone)
