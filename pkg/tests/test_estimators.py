"""Message handling, estimator resets, and the model-based estimator ODE."""

import numpy as np
import pytest

from etform.estimators import (
    EstimatorKind,
    EstimatorSlot,
    Message,
    ProtocolError,
    estimation_error,
    estimator_rate,
    reset_on_message,
    zoh_estimate,
)
from etform.models import coriolis_matrix, double_integrator, mass_matrix, regressor

from test_formation import hexagon_spec

DI = double_integrator()


def make_slot(kind=EstimatorKind.ZOH, owner=0, subject=1):
    return EstimatorSlot(owner=owner, subject=subject, kind=kind)


def make_message(sender=1, t=0.0, n=2, p=2, rng=None):
    rng = rng or np.random.default_rng(0)
    return Message(sender=sender, t=t, q=rng.standard_normal(n),
                   qdot=rng.standard_normal(n), theta_bar=rng.standard_normal(p))


class TestReset:
    def test_reset_copies_payload_exactly(self):
        slot = make_slot()
        msg = make_message()
        reset_on_message(slot, msg)
        np.testing.assert_array_equal(slot.qhat, msg.q)
        np.testing.assert_array_equal(slot.qhat_dot, msg.qdot)
        np.testing.assert_array_equal(slot.theta_hat, msg.theta_bar)
        assert slot.last_reset == msg.t

    def test_post_reset_error_exactly_zero(self):
        slot = make_slot()
        msg = make_message()
        reset_on_message(slot, msg)
        e, edot = estimation_error(slot, msg.q, msg.qdot)
        assert np.all(e == 0.0) and np.all(edot == 0.0)

    def test_reset_does_not_alias_message_arrays(self):
        slot = make_slot()
        msg = make_message()
        reset_on_message(slot, msg)
        msg.q[0] += 1.0
        assert slot.qhat[0] != msg.q[0]

    def test_wrong_sender_rejected(self):
        slot = make_slot(subject=2)
        with pytest.raises(ProtocolError):
            reset_on_message(slot, make_message(sender=1))

    def test_stale_message_rejected(self):
        slot = make_slot()
        reset_on_message(slot, make_message(t=1.0))
        with pytest.raises(ProtocolError):
            reset_on_message(slot, make_message(t=0.5))

    def test_same_time_reset_allowed(self):
        slot = make_slot()
        reset_on_message(slot, make_message(t=1.0))
        reset_on_message(slot, make_message(t=1.0))


class TestZOH:
    def test_holds_last_values(self):
        slot = make_slot()
        msg = make_message()
        reset_on_message(slot, msg)
        for t in (0.0, 0.37, 5.0):
            qhat, qhat_dot = zoh_estimate(slot, t)
            np.testing.assert_array_equal(qhat, msg.q)
            np.testing.assert_array_equal(qhat_dot, msg.qdot)


class TestAccurateEstimatorRate:
    def test_formation_rate_reduces_to_damped_velocity(self):
        # With k_0 = 0 the DI regressor input is zero, so the estimated torque
        # is pure velocity feedback: qhat_ddot = -(k_s + C)/theta0 * qhat_dot.
        spec = hexagon_spec(k_0=0.0)
        rng = np.random.default_rng(3)
        qhat = rng.standard_normal(2)
        qhat_dot = rng.standard_normal(2)
        theta_hat = np.array([1.2, 0.08])
        qdd, thd = estimator_rate((qhat, qhat_dot, theta_hat), 1, 0.0, DI, spec)
        C = coriolis_matrix(DI, qhat, qhat_dot, theta_hat)
        expected = (-spec.gains.k_s * qhat_dot - C @ qhat_dot) / theta_hat[0]
        np.testing.assert_allclose(qdd, expected, atol=1e-12)
        # both regressor inputs are zero, so the adapted parameters stay frozen
        np.testing.assert_array_equal(thd, np.zeros(2))

    def test_tracking_rate_solves_estimated_dynamics(self):
        spec = hexagon_spec(k_0=2.0)
        rng = np.random.default_rng(4)
        qhat = rng.standard_normal(2)
        qhat_dot = rng.standard_normal(2)
        theta_hat = np.array([0.9, 0.12])
        subject = 3
        qdd, _ = estimator_rate((qhat, qhat_dot, theta_hat), subject, 0.7, DI, spec)
        g = spec.gains
        from etform.formation import agent_reference

        q_star, qd_star, qdd_star = agent_reference(subject, 0.7, spec)
        eps = qhat - q_star
        eps_dot = qhat_dot - qd_star
        m_hat = g.k_p * g.k_0 * eps - qd_star
        m_hat_dot = g.k_p * g.k_0 * eps_dot - qdd_star
        Y = regressor(DI, qhat, qhat_dot, m_hat_dot, m_hat)
        fb = eps_dot + g.k_p * g.k_0 * eps
        tau_hat = -g.k_s * fb - g.k_g * g.k_0 * eps - Y @ theta_hat
        M = mass_matrix(DI, qhat, theta_hat)
        C = coriolis_matrix(DI, qhat, qhat_dot, theta_hat)
        np.testing.assert_allclose(M @ qdd + C @ qhat_dot, tau_hat, atol=1e-12)
