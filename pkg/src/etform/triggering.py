"""Event-triggered communication conditions and the convergence-bound constants."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .formation import Gains, SpringMatrix


@dataclass(frozen=True)
class TriggerInputs:
    """Everything one agent needs to evaluate the primary triggering condition."""

    sbar: np.ndarray
    gbar: np.ndarray
    e: np.ndarray  # self-estimation error qhat_i^i - q_i
    edot: np.ndarray
    qdot: np.ndarray
    qdot_star: np.ndarray
    neighbor_qhat_dot: list[tuple[float, np.ndarray]]  # (k_ji, qhat_dot_j^i)
    Y: np.ndarray  # regressor at (q_i, qdot_i, pbar_dot_i, pbar_i)
    delta_theta_max: np.ndarray
    gains: Gains
    alpha_M: float


def delta_theta_max(theta_bar, theta_min, theta_max) -> np.ndarray:
    """Componentwise max distance of theta_bar to its known bounds."""
    theta_bar = np.asarray(theta_bar, dtype=float)
    return np.maximum(
        np.abs(theta_bar - np.asarray(theta_min)),
        np.abs(theta_bar - np.asarray(theta_max)),
    )


def ctc_primary_sides(inp: TriggerInputs) -> tuple[float, float]:
    """(lhs, rhs) of the primary condition; a broadcast fires when lhs <= rhs."""
    g = inp.gains
    k_e = g.k_s * g.k_p**2 + g.k_g * g.k_p + g.k_g / g.b_i
    lhs = (
        g.k_s * float(inp.sbar @ inp.sbar)
        + g.k_p * g.k_g * float(inp.gbar @ inp.gbar)
        + g.eta
    )
    e_sq = float(inp.e @ inp.e)
    e_norm = np.sqrt(e_sq)
    edot_sq = float(inp.edot @ inp.edot)
    vel_err = inp.qdot - inp.qdot_star
    neigh = sum(k_ji * (np.linalg.norm(qd) + g.eta2) ** 2 for k_ji, qd in inp.neighbor_qhat_dot)
    y_dtheta_sq = float(np.sum((np.abs(inp.Y) @ inp.delta_theta_max) ** 2))
    rhs = (
        inp.alpha_M**2 * (k_e * e_sq + g.k_p * g.k_M * edot_sq)
        + inp.alpha_M * g.k_C**2 * g.k_p * e_sq * neigh
        + g.k_g * g.b_i * float(vel_err @ vel_err)
        + g.k_p
        * e_norm
        * (inp.alpha_M**2 * (1.0 + y_dtheta_sq) + y_dtheta_sq / (1.0 + y_dtheta_sq))
    )
    return lhs, rhs


def ctc_primary(inp: TriggerInputs) -> bool:
    lhs, rhs = ctc_primary_sides(inp)
    return lhs <= rhs


def ctc_velocity(qdot_i, qhat_dot_ii, eta2: float) -> bool:
    """Secondary condition: own speed exceeds the self-estimated speed by eta2."""
    return np.linalg.norm(qdot_i) >= np.linalg.norm(qhat_dot_ii) + eta2


def c3(gains: Gains, k_M: float, spring: SpringMatrix, k_0: float | None = None) -> float:
    """Decay-rate constant of the closed-loop convergence bound."""
    k_0 = gains.k_0 if k_0 is None else k_0
    k_1 = gains.k_s - (1.0 + gains.k_p * (k_M + 1.0))
    alpha_min = float(spring.alpha.min())
    ratio = alpha_min * spring.k_min / spring.k_max
    num = min(1.0, k_1, gains.k_p, k_0, 2.0 * k_0 * (2.0 * k_0 + ratio))
    return num / max(1.0, k_M)


def xi_bound(
    n_agents: int, k_g: float, c3_value: float, d_max: float, eta: float, delta_max: float
) -> float:
    """Asymptotic bound xi on k_0 sum ||eps_i||^2 + P/2; +inf when c3 <= 0."""
    if c3_value <= 0:
        warnings.warn("c3 <= 0: the convergence bound degenerates to +inf", RuntimeWarning)
        return np.inf
    return (n_agents / (k_g * c3_value)) * (d_max**2 + eta + c3_value * delta_max)


@dataclass(frozen=True)
class TheoryConstants:
    c3: float
    xi: float
    delta_max: float
    alpha_min: float
    alpha_M: float
    k_min: float
    k_max: float
