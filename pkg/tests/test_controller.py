"""Control law and adaptation law against direct formula evaluation."""

import numpy as np

from etform.controller import control_input, theta_bar_rate
from etform.models import double_integrator, regressor, surface_ship

from test_formation import hexagon_spec

DI = double_integrator()
SS = surface_ship()


def random_inputs(rng, model, spec):
    return dict(
        q_i=rng.standard_normal(model.n),
        qdot_i=rng.standard_normal(model.n),
        gbar_i=rng.standard_normal(model.n),
        gbar_dot_i=rng.standard_normal(model.n),
        sbar_i=rng.standard_normal(model.n),
        qdot_star_i=rng.standard_normal(model.n),
        qddot_star_i=rng.standard_normal(model.n),
        gains=spec.gains,
    )


class TestControlInput:
    def test_matches_direct_formula(self):
        rng = np.random.default_rng(0)
        for model, dim in ((DI, 2), (SS, 3)):
            spec = hexagon_spec(dim=dim)
            kw = random_inputs(rng, model, spec)
            theta = model.theta_true * rng.uniform(0.8, 1.2, model.p)
            tau = control_input(model, theta_bar_i=theta, **kw)
            g = spec.gains
            pbar = g.k_p * kw["gbar_i"] - kw["qdot_star_i"]
            pbar_dot = g.k_p * kw["gbar_dot_i"] - kw["qddot_star_i"]
            Y = regressor(model, kw["q_i"], kw["qdot_i"], pbar_dot, pbar)
            expected = (-g.k_s * kw["sbar_i"] - g.k_g * kw["gbar_i"]
                        + model.gravity - Y @ theta)
            np.testing.assert_allclose(tau, expected, atol=1e-12)

    def test_zero_at_converged_rest(self):
        # At the target with zero velocities, zero reference, and any theta,
        # every term vanishes, so the torque is exactly the gravity feedforward.
        spec = hexagon_spec()
        z = np.zeros(2)
        tau = control_input(
            DI, q_i=z, qdot_i=z, gbar_i=z, gbar_dot_i=z, sbar_i=z,
            qdot_star_i=z, qddot_star_i=z, theta_bar_i=DI.theta_true,
            gains=spec.gains,
        )
        np.testing.assert_allclose(tau, DI.gravity, atol=1e-14)


class TestAdaptation:
    def test_matches_direct_formula(self):
        rng = np.random.default_rng(1)
        for model, dim in ((DI, 2), (SS, 3)):
            spec = hexagon_spec(dim=dim, Gamma=0.5 * np.eye(model.p))
            kw = random_inputs(rng, model, spec)
            rate = theta_bar_rate(model, **kw)
            g = spec.gains
            pbar = g.k_p * kw["gbar_i"] - kw["qdot_star_i"]
            pbar_dot = g.k_p * kw["gbar_dot_i"] - kw["qddot_star_i"]
            Y = regressor(model, kw["q_i"], kw["qdot_i"], pbar_dot, pbar)
            np.testing.assert_allclose(rate, 0.5 * (Y.T @ kw["sbar_i"]), atol=1e-12)

    def test_lyapunov_cross_term_cancellation(self):
        # The adaptation direction makes d/dt (0.5 dtheta' Gamma^-1 dtheta)
        # equal dtheta' Y' sbar, the term the control error injects.
        rng = np.random.default_rng(2)
        spec = hexagon_spec()
        kw = random_inputs(rng, DI, spec)
        rate = theta_bar_rate(DI, **kw)
        dtheta = rng.standard_normal(2)
        g = spec.gains
        pbar = g.k_p * kw["gbar_i"] - kw["qdot_star_i"]
        pbar_dot = g.k_p * kw["gbar_dot_i"] - kw["qddot_star_i"]
        Y = regressor(DI, kw["q_i"], kw["qdot_i"], pbar_dot, pbar)
        lhs = dtheta @ np.linalg.inv(np.asarray(g.Gamma)) @ rate
        rhs = dtheta @ (Y.T @ kw["sbar_i"])
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)
