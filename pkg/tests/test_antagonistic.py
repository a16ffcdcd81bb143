import math

import numpy as np
import pytest

from vada.antagonistic import (
    FIBER_TOLERANCE,
    AntagonisticActuator,
    ChannelLaw,
    fiber_tangent,
    monotonicity_sweep,
    passive_coefficient,
    passive_promptness_relation,
    promptness,
    task_output,
    trace_fiber,
)

FD_H = 1e-5


def quadratic_channel(k=1.0):
    """h = k u^2 / 2, p = k u: the canonical hardening channel."""
    return ChannelLaw(
        output_fn=lambda u: 0.5 * k * u * u,
        output_sensitivity_fn=lambda u: k * u,
        passive_coeff_fn=lambda u: k * u,
        passive_hardening_fn=lambda u: k,
    )


def exponential_channel(k=1.0):
    return ChannelLaw(
        output_fn=lambda u: k * math.exp(u) - k,
        output_sensitivity_fn=lambda u: k * math.exp(u),
        passive_coeff_fn=lambda u: k * math.exp(u),
        passive_hardening_fn=lambda u: k * math.exp(u),
    )


def cubic_channel(k=1.0):
    return ChannelLaw(
        output_fn=lambda u: k * (u + u ** 3 / 3.0),
        output_sensitivity_fn=lambda u: k * (1.0 + u * u),
        passive_coeff_fn=lambda u: k * (1.0 + u * u),
        passive_hardening_fn=lambda u: 2.0 * k * u,
    )


def constant_passive_channel(k=1.0):
    """Hardening violated: passive coefficient independent of the command."""
    return ChannelLaw(
        output_fn=lambda u: 0.5 * k * u * u,
        output_sensitivity_fn=lambda u: k * u,
        passive_coeff_fn=lambda u: k,
        passive_hardening_fn=lambda u: 0.0,
    )


def symmetric_actuator(make_channel=quadratic_channel, **kwargs):
    return AntagonisticActuator(
        channel_plus=make_channel(**kwargs), channel_minus=make_channel(**kwargs)
    )


CHANNEL_FAMILIES = [quadratic_channel, exponential_channel, cubic_channel]


class TestTaskOutput:
    def test_symmetric_zero(self):
        act = symmetric_actuator()
        assert task_output(act, (2.3, 2.3)) == 0.0

    def test_quadratic_example(self):
        act = symmetric_actuator()
        assert task_output(act, (3.0, 1.0)) == 4.0

    def test_swap_negates(self):
        act = symmetric_actuator(cubic_channel)
        assert task_output(act, (1.0, 2.5)) == -task_output(act, (2.5, 1.0))

    def test_out_of_box_rejected(self):
        act = AntagonisticActuator(
            channel_plus=quadratic_channel(),
            channel_minus=quadratic_channel(),
            admissible_box=((1.0, 5.0), (1.0, 5.0)),
        )
        with pytest.raises(ValueError):
            task_output(act, (0.5, 2.0))


class TestPassiveCoefficient:
    def test_linear_hardening_sum(self):
        act = symmetric_actuator()
        assert passive_coefficient(act, (2.0, 2.0)) == 4.0
        # same sum, different fiber point
        assert passive_coefficient(act, (1.0, 3.0)) == 4.0

    def test_positive_on_random_grid(self):
        rng = np.random.default_rng(3)
        for make in CHANNEL_FAMILIES:
            act = symmetric_actuator(make)
            for _ in range(50):
                u = rng.uniform(0.1, 5.0, size=2)
                assert passive_coefficient(act, u) > 0.0


class TestPromptness:
    def test_pythagorean_example(self):
        # g(u) = 2u from h = u^2
        act = symmetric_actuator(quadratic_channel, k=2.0)
        assert promptness(act, (3.0, 4.0)) == pytest.approx(10.0, rel=1e-15)

    def test_constant_gradient(self):
        g = 1.7
        const = ChannelLaw(
            output_fn=lambda u: g * u,
            output_sensitivity_fn=lambda u: g,
            passive_coeff_fn=lambda u: 1.0,
            passive_hardening_fn=lambda u: 0.0,
        )
        act = AntagonisticActuator(channel_plus=const, channel_minus=const)
        for u in [(0.5, 0.5), (1.0, 9.0), (4.2, 0.1)]:
            assert promptness(act, u) == pytest.approx(g * math.sqrt(2), rel=1e-15)

    def test_quadratic_thrust_form(self):
        k_t = 0.8
        chan = ChannelLaw(
            output_fn=lambda u: k_t * u * u,
            output_sensitivity_fn=lambda u: 2 * k_t * u,
            passive_coeff_fn=lambda u: u,
            passive_hardening_fn=lambda u: 1.0,
        )
        act = AntagonisticActuator(channel_plus=chan, channel_minus=chan)
        u = (3.0, 7.0)
        assert promptness(act, u) == pytest.approx(
            2 * k_t * math.hypot(*u), rel=1e-14
        )


class TestFiberTangent:
    def test_symmetric_unity(self):
        act = symmetric_actuator(exponential_channel)
        assert fiber_tangent(act, (1.3, 1.3)) == pytest.approx(1.0, rel=1e-15)

    def test_quadratic_ratio(self):
        act = symmetric_actuator(quadratic_channel, k=2.0)
        assert fiber_tangent(act, (4.0, 2.0)) == pytest.approx(2.0, rel=1e-15)

    def test_directional_derivative_vanishes(self):
        act = symmetric_actuator(cubic_channel)
        u = (2.0, 1.5)
        t = fiber_tangent(act, u)
        f_plus = task_output(act, (u[0] + FD_H, u[1] + t * FD_H))
        f_minus = task_output(act, (u[0] - FD_H, u[1] - t * FD_H))
        assert abs((f_plus - f_minus) / (2 * FD_H)) < 1e-9

    def test_positive_on_random_grid(self):
        rng = np.random.default_rng(5)
        for make in CHANNEL_FAMILIES:
            act = symmetric_actuator(make)
            for _ in range(100):
                u = rng.uniform(0.1, 5.0, size=2)
                assert fiber_tangent(act, u) > 0.0


class TestTraceFiber:
    def test_symmetric_fiber_is_diagonal(self):
        act = symmetric_actuator()
        path = trace_fiber(act, (1.5, 1.5), 4.0, 20)
        for u1, u2 in path.points:
            assert u2 == pytest.approx(u1, abs=1e-9)

    def test_analytic_point(self):
        # h = u^2/2, level 4: at u1 = 5, u2 = sqrt(25 - 8) = sqrt(17)
        act = symmetric_actuator()
        path = trace_fiber(act, (3.0, 1.0), 5.0, 21)
        u1, u2 = path.points[-1]
        assert u1 == pytest.approx(5.0, abs=1e-14)
        assert u2 == pytest.approx(4.123105625617661, rel=1e-10)

    def test_residuals_within_tolerance(self):
        for make in CHANNEL_FAMILIES:
            act = symmetric_actuator(make)
            path = trace_fiber(act, (2.0, 0.7), 4.5, 50)
            bound = FIBER_TOLERANCE * max(1.0, abs(path.level))
            assert all(r <= bound for r in path.residuals)
            # recomputed consistency, not just the stored residual
            for u in path.points:
                assert abs(task_output(act, u) - path.level) <= bound

    def test_u1_strictly_increasing(self):
        act = symmetric_actuator(exponential_channel)
        path = trace_fiber(act, (0.5, 0.9), 2.5, 30)
        u1s = [u1 for u1, _ in path.points]
        assert all(b > a for a, b in zip(u1s, u1s[1:]))

    def test_box_violation_is_an_error(self):
        act = AntagonisticActuator(
            channel_plus=quadratic_channel(),
            channel_minus=quadratic_channel(),
            admissible_box=((0.0, math.inf), (0.0, 2.0)),
        )
        # the level-4 fiber needs u2 > 2 once u1 is large enough
        with pytest.raises(ValueError, match="box"):
            trace_fiber(act, (3.0, 1.0), 10.0, 40)

    def test_bad_direction_rejected(self):
        act = symmetric_actuator()
        with pytest.raises(ValueError):
            trace_fiber(act, (3.0, 1.0), 2.0, 10)


class TestMonotonicitySweep:
    def test_hardening_channels_increase(self):
        for make in CHANNEL_FAMILIES:
            act = symmetric_actuator(make)
            path = trace_fiber(act, (1.0, 0.8), 3.0, 40)
            for which in ("passive", "promptness"):
                report = monotonicity_sweep(act, path, which)
                assert report.is_strictly_increasing
                assert report.min_increment > 0.0

    def test_constant_passive_flagged(self):
        act = symmetric_actuator(constant_passive_channel)
        path = trace_fiber(act, (1.0, 0.8), 3.0, 20)
        report = monotonicity_sweep(act, path, "passive")
        assert not report.is_strictly_increasing
        assert report.min_increment == 0.0

    def test_single_point_vacuous(self):
        act = symmetric_actuator()
        path = trace_fiber(act, (1.0, 1.0), 1.0, 1)
        report = monotonicity_sweep(act, path, "passive")
        assert report.is_strictly_increasing
        assert report.min_increment is None

    def test_unknown_quantity_rejected(self):
        act = symmetric_actuator()
        path = trace_fiber(act, (1.0, 1.0), 2.0, 5)
        with pytest.raises(ValueError):
            monotonicity_sweep(act, path, "stiffness")


class TestPassivePromptnessRelation:
    def test_monotone_for_hardening(self):
        act = symmetric_actuator()
        path = trace_fiber(act, (2.0, 1.0), 5.0, 30)
        report = passive_promptness_relation(act, path)
        assert report.is_monotone
        assert len(report.pairs) == 30

    def test_order_free(self):
        from vada.antagonistic import FiberPath

        act = symmetric_actuator()
        path = trace_fiber(act, (2.0, 1.0), 5.0, 30)
        reversed_path = FiberPath(
            level=path.level,
            points=list(reversed(path.points)),
            residuals=list(reversed(path.residuals)),
        )
        assert passive_promptness_relation(act, reversed_path).is_monotone

    def test_degenerate_path_rejected(self):
        from vada.antagonistic import FiberPath

        act = symmetric_actuator()
        path = FiberPath(level=0.0, points=[(1.0, 1.0), (1.0, 1.0)], residuals=[0.0, 0.0])
        with pytest.raises(ValueError, match="degenerate"):
            passive_promptness_relation(act, path)

    def test_too_short_path_rejected(self):
        from vada.antagonistic import FiberPath

        act = symmetric_actuator()
        with pytest.raises(ValueError):
            passive_promptness_relation(
                act, FiberPath(level=0.0, points=[(1.0, 1.0)], residuals=[0.0])
            )


class TestGradientConsistency:
    def test_channel_derivatives_match_fd(self):
        rng = np.random.default_rng(13)
        for make in CHANNEL_FAMILIES:
            chan = make()
            for _ in range(100):
                u = rng.uniform(0.2, 4.0)
                fd_g = (chan.output_fn(u + FD_H) - chan.output_fn(u - FD_H)) / (2 * FD_H)
                g = chan.output_sensitivity_fn(u)
                assert abs(g - fd_g) <= 1e-6 * max(1.0, abs(g))
                fd_dp = (chan.passive_coeff_fn(u + FD_H) - chan.passive_coeff_fn(u - FD_H)) / (
                    2 * FD_H
                )
                dp = chan.passive_hardening_fn(u)
                assert abs(dp - fd_dp) <= 1e-6 * max(1.0, abs(dp))


class TestIsomorphism:
    def test_vsa_and_thrust_channels_share_passive_coefficient(self):
        # VSA instance (R = 1, h = k u^2 / 2, p = k u) against the thrust
        # instance (h = k_T u^2, p = k_D u) with k = k_D
        rng = np.random.default_rng(17)
        k_d = 0.85
        vsa_chan = quadratic_channel(k=k_d)
        thrust_chan = ChannelLaw(
            output_fn=lambda u: 1.4 * u * u,
            output_sensitivity_fn=lambda u: 2.8 * u,
            passive_coeff_fn=lambda u: k_d * u,
            passive_hardening_fn=lambda u: k_d,
        )
        vsa = AntagonisticActuator(channel_plus=vsa_chan, channel_minus=vsa_chan)
        vada = AntagonisticActuator(channel_plus=thrust_chan, channel_minus=thrust_chan)
        for _ in range(100):
            u = rng.uniform(0.2, 20.0, size=2)
            assert abs(passive_coefficient(vsa, u) - passive_coefficient(vada, u)) <= 1e-12
