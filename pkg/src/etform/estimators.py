"""Between-message estimation of neighbor (and own) broadcast-visible state.

Two estimator kinds: a zero-order hold that freezes the last received state,
and a model-based one that integrates an estimated closed-loop dynamics built
from the linear parametrization and the last received adapted parameters.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .formation import FormationSpec, agent_reference
from .models import ModelSpec, mass_matrix, coriolis_matrix, regressor


class EstimatorKind(enum.Enum):
    ACCURATE = "accurate"
    ZOH = "zoh"


class ProtocolError(RuntimeError):
    pass


class EstimatorDivergenceError(RuntimeError):
    pass


@dataclass
class Message:
    """Broadcast payload: exact sender state and adapted parameters at send time."""

    sender: int
    t: float
    q: np.ndarray
    qdot: np.ndarray
    theta_bar: np.ndarray


@dataclass
class EstimatorSlot:
    """Agent `owner`'s running estimate of agent `subject`'s state."""

    owner: int
    subject: int
    kind: EstimatorKind
    qhat: np.ndarray = field(default_factory=lambda: np.zeros(0))
    qhat_dot: np.ndarray = field(default_factory=lambda: np.zeros(0))
    theta_hat: np.ndarray = field(default_factory=lambda: np.zeros(0))
    last_reset: float = -np.inf


def reset_on_message(slot: EstimatorSlot, msg: Message) -> None:
    """Overwrite the slot with the message payload."""
    if msg.sender != slot.subject:
        raise ProtocolError(f"message from {msg.sender} applied to slot of {slot.subject}")
    if msg.t < slot.last_reset:
        raise ProtocolError("stale message: delivery out of order")
    slot.qhat = msg.q.copy()
    slot.qhat_dot = msg.qdot.copy()
    slot.theta_hat = msg.theta_bar.copy()
    slot.last_reset = msg.t


def estimation_error(slot: EstimatorSlot, q: np.ndarray, qdot: np.ndarray):
    """(e, edot) = (qhat - q, qhat_dot - qdot)."""
    return slot.qhat - q, slot.qhat_dot - qdot


def zoh_estimate(slot: EstimatorSlot, t: float):
    """Held state: the last message values, for any t since the reset."""
    return slot.qhat, slot.qhat_dot


def estimator_rate(
    slot_values: tuple[np.ndarray, np.ndarray, np.ndarray],
    subject: int,
    t: float,
    model: ModelSpec,
    spec: FormationSpec,
):
    """Rates (qhat_ddot, theta_hat_dot) of the model-based estimator.

    The estimated plant solves Mhat qhat_ddot + Chat qhat_dot + G = tau_hat
    with Mhat, Chat built from theta_hat; tau_hat mimics the subject's control
    using only the estimate's own trajectory error.
    """
    qhat, qhat_dot, theta_hat = slot_values
    gains = spec.gains
    if gains.k_0 > 0:
        q_star, qdot_star, qddot_star = agent_reference(subject, t, spec)
        eps = qhat - q_star
        eps_dot = qhat_dot - qdot_star
        m_hat = gains.k_p * gains.k_0 * eps - qdot_star
        m_hat_dot = gains.k_p * gains.k_0 * eps_dot - qddot_star
    else:
        eps = np.zeros(model.n)
        eps_dot = qhat_dot
        m_hat = np.zeros(model.n)
        m_hat_dot = np.zeros(model.n)

    Y = regressor(model, qhat, qhat_dot, m_hat_dot, m_hat)
    feedback = eps_dot + gains.k_p * gains.k_0 * eps
    tau_hat = (
        -gains.k_s * feedback
        - gains.k_g * gains.k_0 * eps
        + model.gravity
        - Y @ theta_hat
    )
    M_hat = mass_matrix(model, qhat, theta_hat)
    C_hat = coriolis_matrix(model, qhat, qhat_dot, theta_hat)
    rhs = tau_hat - C_hat @ qhat_dot - model.gravity
    try:
        qhat_ddot = np.linalg.solve(M_hat, rhs)
    except np.linalg.LinAlgError as exc:
        raise EstimatorDivergenceError(
            f"singular estimated inertia matrix for subject {subject}"
        ) from exc
    theta_hat_dot = np.asarray(gains.Gamma) @ (Y.T @ feedback)
    return qhat_ddot, theta_hat_dot
