"""Broadcast bookkeeping: event log, message delivery, communication metrics.

Delivery is instantaneous and lossless. A broadcast from agent j resets the
slot every neighbor of j keeps for j, plus j's own self-slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .estimators import EstimatorSlot, Message, reset_on_message
from .formation import SpringMatrix


@dataclass(frozen=True)
class EventRecord:
    """One broadcast event with the trigger-side values that caused it."""

    t: float
    sender: int
    ctc1_lhs: float
    ctc1_rhs: float
    ctc2_fired: bool


@dataclass
class EventLog:
    """Ordered broadcast history plus per-agent last-send times."""

    n_agents: int
    records: list[EventRecord] = field(default_factory=list)
    last_send: np.ndarray = field(init=False)

    def __post_init__(self):
        self.last_send = np.full(self.n_agents, -np.inf)

    @property
    def n_messages(self) -> int:
        return len(self.records)

    def log(self, rec: EventRecord) -> None:
        self.records.append(rec)
        self.last_send[rec.sender] = rec.t

    def send_times(self, sender: int) -> np.ndarray:
        return np.array([r.t for r in self.records if r.sender == sender])


def broadcast(
    msg: Message,
    slots: dict[tuple[int, int], EstimatorSlot],
    spring: SpringMatrix,
) -> None:
    """Deliver a message to every slot tracking the sender (neighbors + self)."""
    for owner in spring.neighbors(msg.sender) + [msg.sender]:
        reset_on_message(slots[(owner, msg.sender)], msg)


def residual_comm_ratio(n_messages: int, n_agents: int, t_final: float, dt: float) -> float:
    """Messages sent as a percentage of the every-step-every-agent budget."""
    budget = n_agents * round(t_final / dt)
    return 100.0 * n_messages / budget
