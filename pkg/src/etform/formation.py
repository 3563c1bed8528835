"""Formation geometry: spring couplings, target offsets, disagreement terms.

The formation is displacement-based: spring coefficients k_ij weight the
squared deviation of each relative coordinate vector r_ij = q_i - q_j from
its target r*_ij, and the same nonzero pattern defines the communication
topology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np


class FormationError(ValueError):
    pass


class GainError(ValueError):
    pass


# Spring matrix of the six-agent hexagon scenario.
HEXAGON_K = 0.1 * np.array(
    [
        [0.0, 1.85, 0.0, 0.926, 0.0, 1.85],
        [1.85, 0.0, 1.85, 0.0, 0.926, 0.0],
        [0.0, 1.85, 0.0, 1.85, 0.0, 0.926],
        [0.926, 0.0, 1.85, 0.0, 1.85, 0.0],
        [0.0, 0.926, 0.0, 1.85, 0.0, 1.85],
        [1.85, 0.0, 0.926, 0.0, 1.85, 0.0],
    ]
)

# Hexagonal target offsets of each agent relative to agent 1 (x, y, heading).
SQ3 = np.sqrt(3.0)
HEXAGON_OFFSETS_3D = np.array(
    [
        [0.0, 0.0, 0.0],
        [2.0, 0.0, 0.0],
        [3.0, SQ3, 0.0],
        [2.0, 2 * SQ3, 0.0],
        [0.0, 2 * SQ3, 0.0],
        [-1.0, SQ3, 0.0],
    ]
)
HEXAGON_OFFSETS_2D = HEXAGON_OFFSETS_3D[:, :2].copy()


@dataclass(frozen=True)
class SpringMatrix:
    """Symmetric nonnegative spring coefficients with a connected pattern."""

    K: np.ndarray

    def __post_init__(self):
        K = np.asarray(self.K, dtype=float)
        object.__setattr__(self, "K", K)
        self.validate()

    def validate(self) -> None:
        K = self.K
        if K.ndim != 2 or K.shape[0] != K.shape[1]:
            raise FormationError("spring matrix must be square")
        if not np.allclose(K, K.T, rtol=0, atol=0):
            raise FormationError("spring matrix must be symmetric")
        if np.any(np.diag(K) != 0):
            raise FormationError("spring matrix must have a zero diagonal")
        if np.any(K < 0):
            raise FormationError("spring coefficients must be nonnegative")
        n = K.shape[0]
        if np.count_nonzero(np.triu(K)) < n - 1:
            raise FormationError("too few springs to define a formation")
        if not self._connected():
            raise FormationError("spring-induced graph must be connected")

    def _connected(self) -> bool:
        n = self.K.shape[0]
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if self.K[i, j] > 0 and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n

    @property
    def n_agents(self) -> int:
        return self.K.shape[0]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n_agents) if self.K[i, j] > 0]

    @property
    def alpha(self) -> np.ndarray:
        """Row sums alpha_i of the spring coefficients."""
        return self.K.sum(axis=1)

    @property
    def k_min(self) -> float:
        nz = self.K[self.K > 0]
        return float(nz.min())

    @property
    def k_max(self) -> float:
        return float(self.K.max())


@dataclass(frozen=True)
class ReferenceTrajectory:
    """Reference position/velocity/acceleration of agent 1 as functions of t."""

    q1: Callable[[float], np.ndarray]
    q1dot: Callable[[float], np.ndarray]
    q1ddot: Callable[[float], np.ndarray]

    @staticmethod
    def zero(n: int) -> "ReferenceTrajectory":
        z = np.zeros(n)
        return ReferenceTrajectory(lambda t: z, lambda t: z, lambda t: z)


def circular_reference(n: int, q1_initial: np.ndarray) -> ReferenceTrajectory:
    """Reference whose velocity is [4 sin(0.4t), 4 cos(0.4t), 0.4t][:n].

    The position is anchored at the agent's initial position and obtained by
    closed-form integration; the acceleration by differentiation.
    """
    q0 = np.asarray(q1_initial, dtype=float)[:n].copy()

    def q1(t: float) -> np.ndarray:
        full = np.array([10.0 - 10.0 * np.cos(0.4 * t), 10.0 * np.sin(0.4 * t), 0.2 * t * t])
        return q0 + full[:n]

    def q1dot(t: float) -> np.ndarray:
        full = np.array([4.0 * np.sin(0.4 * t), 4.0 * np.cos(0.4 * t), 0.4 * t])
        return full[:n]

    def q1ddot(t: float) -> np.ndarray:
        full = np.array([1.6 * np.cos(0.4 * t), -1.6 * np.sin(0.4 * t), 0.4])
        return full[:n]

    return ReferenceTrajectory(q1, q1dot, q1ddot)


@dataclass(frozen=True)
class Gains:
    """Control, triggering, and run parameters."""

    k_p: float
    k_g: float
    k_s: float
    k_0: float
    b_i: float
    eta: float
    eta2: float
    Gamma: np.ndarray
    dt: float
    T: float
    D_max: float
    k_M: float
    k_C: float

    def validate(self) -> None:
        if self.k_p <= 0:
            raise GainError("k_p must be positive")
        if self.k_g <= 0:
            raise GainError("k_g must be positive")
        if self.k_0 < 0:
            raise GainError("k_0 must be nonnegative")
        if self.eta < 0:
            raise GainError("eta must be nonnegative")
        if self.eta2 <= 0:
            raise GainError("eta2 must be positive")
        floor = 1.0 + self.k_p * (self.k_M + 1.0)
        if self.k_s < floor - 1e-12:
            raise GainError(f"k_s must be at least 1 + k_p (k_M + 1) = {floor}")
        cap = self.k_s / (self.k_s * self.k_p + self.k_g)
        if not 0 < self.b_i < cap:
            raise GainError(f"b_i must lie in (0, {cap})")
        G = np.asarray(self.Gamma, dtype=float)
        if not np.allclose(G, G.T):
            raise GainError("Gamma must be symmetric")
        if np.any(np.linalg.eigvalsh(G) <= 0):
            raise GainError("Gamma must be positive definite")
        if self.dt <= 0:
            raise GainError("dt must be positive")
        if self.T <= 0 or abs(round(self.T / self.dt) - self.T / self.dt) > 1e-9:
            raise GainError("T must be a positive multiple of dt")
        if self.D_max < 0:
            raise GainError("D_max must be nonnegative")


@dataclass(frozen=True)
class FormationSpec:
    """Target geometry, couplings, reference, and gains for one scenario."""

    offsets: np.ndarray  # (N, n) target offset of each agent from agent 1
    spring: SpringMatrix
    reference: ReferenceTrajectory
    gains: Gains

    def __post_init__(self):
        offsets = np.asarray(self.offsets, dtype=float)
        object.__setattr__(self, "offsets", offsets)
        if offsets.shape[0] != self.spring.n_agents:
            raise FormationError("offsets and spring matrix disagree on N")
        if np.any(offsets[0] != 0):
            raise FormationError("agent 1 offset must be zero")

    @property
    def n_agents(self) -> int:
        return self.offsets.shape[0]

    @property
    def dim(self) -> int:
        return self.offsets.shape[1]

    def r_star(self, i: int, j: int) -> np.ndarray:
        """Target relative coordinate vector r*_ij = q*_i - q*_j."""
        return self.offsets[i] - self.offsets[j]


def potential_energy(q: np.ndarray, spec: FormationSpec) -> float:
    """Formation potential 0.5 sum_ij k_ij ||r_ij - r*_ij||^2."""
    q = np.asarray(q, dtype=float)
    if q.shape != (spec.n_agents, spec.dim):
        raise FormationError(f"configuration must have shape {(spec.n_agents, spec.dim)}")
    K = spec.spring.K
    total = 0.0
    for i in range(spec.n_agents):
        for j in range(spec.n_agents):
            if K[i, j] > 0:
                diff = (q[i] - q[j]) - spec.r_star(i, j)
                total += K[i, j] * float(diff @ diff)
    return 0.5 * total


def g_term(
    i: int,
    q_i: np.ndarray,
    neighbor_positions: Mapping[int, np.ndarray],
    spec: FormationSpec,
    eps_i: np.ndarray,
) -> np.ndarray:
    """Formation disagreement g_i = sum_j k_ij (r_ij - r*_ij) + k_0 eps_i.

    Feeding true neighbor positions yields g_i; feeding estimated positions
    yields the bar variant the controller actually uses.
    """
    g = spec.gains.k_0 * np.asarray(eps_i, dtype=float)
    for j in spec.spring.neighbors(i):
        if j not in neighbor_positions:
            raise FormationError(f"missing position of neighbor {j}")
        g = g + spec.spring.K[i, j] * ((q_i - neighbor_positions[j]) - spec.r_star(i, j))
    return g


def gdot_term(
    i: int,
    qdot_i: np.ndarray,
    neighbor_velocities: Mapping[int, np.ndarray],
    spec: FormationSpec,
    epsdot_i: np.ndarray,
) -> np.ndarray:
    """Time derivative of g_i for constant targets: sum_j k_ij rdot_ij + k_0 epsdot_i."""
    g = spec.gains.k_0 * np.asarray(epsdot_i, dtype=float)
    for j in spec.spring.neighbors(i):
        if j not in neighbor_velocities:
            raise FormationError(f"missing velocity of neighbor {j}")
        g = g + spec.spring.K[i, j] * (qdot_i - neighbor_velocities[j])
    return g


def s_term(qdot_i, qdot_star_i, k_p: float, g_i) -> np.ndarray:
    """Composite velocity error s_i = qdot_i - qdot*_i + k_p g_i."""
    return np.asarray(qdot_i) - np.asarray(qdot_star_i) + k_p * np.asarray(g_i)


def agent_reference(i: int, t: float, spec: FormationSpec):
    """Per-agent reference (q*_i, qdot*_i, qddot*_i) = agent-1 reference + offset."""
    ref = spec.reference
    return ref.q1(t) + spec.offsets[i], ref.q1dot(t), ref.q1ddot(t)
