"""Agent dynamics: double-integrator and surface-ship Euler-Lagrange models.

Both models expose mass/Coriolis evaluators that are linear in a constant
parameter vector theta, plus the regressor factorization
M(q) x1 + C(q, qdot) x2 = Y(q, qdot, x1, x2) theta used by the adaptive
controller and the model-based estimator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class ModelKind(enum.Enum):
    DI = "di"
    SS = "ss"


# Body-frame constants of the surface ship (3-DOF planar vessel).
SHIP_M_BODY = np.array(
    [
        [25.8, 0.0, 0.0],
        [0.0, 33.8, 1.0115],
        [0.0, 1.0115, 2.76],
    ]
)
SHIP_D_BODY = np.array(
    [
        [0.72, 0.0, 0.0],
        [0.0, 0.86, -0.11],
        [0.0, -0.11, -0.5],
    ]
)

# Rotation generator d/dpsi of the yaw rotation, pulled back to the body frame.
_OMEGA = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


class InvalidInputError(ValueError):
    """Raised on non-finite or mis-shaped numeric input."""


class ModelViolationError(RuntimeError):
    """Raised when a structural model assumption breaks down numerically."""


@dataclass(frozen=True)
class ShipBodyParams:
    """Constant body-frame matrices of the surface-ship model."""

    M_b: np.ndarray = field(default_factory=lambda: SHIP_M_BODY.copy())
    D_b: np.ndarray = field(default_factory=lambda: SHIP_D_BODY.copy())

    def C_b(self, v: np.ndarray) -> np.ndarray:
        """Body-frame Coriolis matrix for body velocity v = [u, v, r]."""
        u, vv, r = v
        a = self.M_b[1, 1] * vv + self.M_b[1, 2] * r
        b = self.M_b[0, 0] * u
        return np.array([[0.0, 0.0, -a], [0.0, 0.0, b], [a, -b, 0.0]])


@dataclass(frozen=True)
class AgentState:
    """Position/velocity pair of one agent in the fixed frame."""

    q: np.ndarray
    qdot: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        qdot = np.asarray(self.qdot, dtype=float)
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(qdot))):
            raise InvalidInputError("agent state must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "qdot", qdot)


@dataclass(frozen=True)
class ModelSpec:
    """One agent dynamics model with its linear parametrization.

    theta_true holds the physical parameters; mass/coriolis evaluators accept
    an alternative theta so the same structure serves the plant (true theta)
    and the model-based estimator (adapted theta).
    """

    kind: ModelKind
    n: int
    theta_true: np.ndarray
    theta_min: np.ndarray
    theta_max: np.ndarray
    k_M: float
    k_C: float
    gravity: np.ndarray

    @property
    def p(self) -> int:
        return self.theta_true.shape[0]

    def validate(self) -> None:
        if not np.all(self.theta_min < self.theta_true):
            raise ModelViolationError("theta_min must be below theta_true")
        if not np.all(self.theta_true < self.theta_max):
            raise ModelViolationError("theta_max must be above theta_true")
        if self.k_M <= 0 or self.k_C <= 0:
            raise ModelViolationError("k_M and k_C must be positive")


def double_integrator() -> ModelSpec:
    """Planar double integrator with a velocity-proportional Coriolis term.

    M = I, C = 0.1 ||qdot|| I; theta = (mass scale, Coriolis scale).
    """
    theta = np.array([1.0, 0.1])
    return ModelSpec(
        kind=ModelKind.DI,
        n=2,
        theta_true=theta,
        theta_min=0.5 * theta,
        theta_max=1.5 * theta,
        k_M=1.0,
        k_C=0.1,
        gravity=np.zeros(2),
    )


def surface_ship() -> ModelSpec:
    """3-DOF surface ship in the earth-fixed frame, q = [x, y, psi].

    theta stacks the body-matrix coefficients:
      [0:5]   M_b entries (m11, m22, m23, m32, m33)
      [5:11]  C_b coefficients by entry occurrence
              (c13_v, c13_r, c23_u, c31_v, c31_r, c32_u)
      [11:16] D_b entries (d11, d22, d23, d32, d33)
    Entrywise bounds span +-30% of the nominal values, wide enough to contain
    the +-10% Bernoulli model errors.
    """
    mb, db = SHIP_M_BODY, SHIP_D_BODY
    theta = np.array(
        [
            mb[0, 0], mb[1, 1], mb[1, 2], mb[2, 1], mb[2, 2],
            mb[1, 1], mb[1, 2], mb[0, 0], mb[1, 1], mb[1, 2], mb[0, 0],
            db[0, 0], db[1, 1], db[1, 2], db[2, 1], db[2, 2],
        ]
    )
    margin = 0.3 * np.abs(theta)
    return ModelSpec(
        kind=ModelKind.SS,
        n=3,
        theta_true=theta,
        theta_min=theta - margin,
        theta_max=theta + margin,
        # lambda_max(M_b) = 33.833; 33.84 is a strict A1-style bound.
        k_M=33.84,
        # Sampled spectral bound on ||C(q,qdot)|| / ||qdot|| for ||qdot|| >= 0.1;
        # the constant damping term makes the ratio unbounded as qdot -> 0.
        k_C=75.0,
        gravity=np.zeros(3),
    )


def body_to_earth(psi: float) -> np.ndarray:
    """Yaw rotation J(psi) mapping body velocities to the earth frame."""
    if not np.isfinite(psi):
        raise InvalidInputError("psi must be finite")
    c, s = np.cos(psi), np.sin(psi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _check_vec(x, n: int, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise InvalidInputError(f"{name} must have shape ({n},), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError(f"{name} must be finite")
    return x


def _ship_matrices_from_theta(theta: np.ndarray):
    mb = np.zeros((3, 3))
    mb[0, 0], mb[1, 1], mb[1, 2], mb[2, 1], mb[2, 2] = theta[0:5]
    db = np.zeros((3, 3))
    db[0, 0], db[1, 1], db[1, 2], db[2, 1], db[2, 2] = theta[11:16]
    return mb, db


def mass_matrix(model: ModelSpec, q, theta=None) -> np.ndarray:
    """Inertia matrix M(q), optionally for a non-nominal parameter vector."""
    q = _check_vec(q, model.n, "q")
    theta = model.theta_true if theta is None else np.asarray(theta, dtype=float)
    if model.kind is ModelKind.DI:
        return theta[0] * np.eye(2)
    mb, _ = _ship_matrices_from_theta(theta)
    J = body_to_earth(q[2])
    return J @ mb @ J.T


def coriolis_matrix(model: ModelSpec, q, qdot, theta=None) -> np.ndarray:
    """Coriolis/centripetal (plus, for the ship, damping) matrix C(q, qdot)."""
    q = _check_vec(q, model.n, "q")
    qdot = _check_vec(qdot, model.n, "qdot")
    theta = model.theta_true if theta is None else np.asarray(theta, dtype=float)
    if model.kind is ModelKind.DI:
        return theta[1] * np.linalg.norm(qdot) * np.eye(2)
    mb, db = _ship_matrices_from_theta(theta)
    J = body_to_earth(q[2])
    v = J.T @ qdot
    cb = np.array(
        [
            [0.0, 0.0, -(theta[5] * v[1] + theta[6] * v[2])],
            [0.0, 0.0, theta[7] * v[0]],
            [theta[8] * v[1] + theta[9] * v[2], -theta[10] * v[0], 0.0],
        ]
    )
    return J @ (cb - mb @ (qdot[2] * _OMEGA) + db) @ J.T


def damping_matrix(model: ModelSpec, q, theta=None) -> np.ndarray:
    """Earth-frame image of the constant damping term (zero for the DI).

    Splitting it off lets tests check the skew property of Mdot - 2C on the
    damping-free part.
    """
    q = _check_vec(q, model.n, "q")
    if model.kind is ModelKind.DI:
        return np.zeros((2, 2))
    theta = model.theta_true if theta is None else np.asarray(theta, dtype=float)
    _, db = _ship_matrices_from_theta(theta)
    J = body_to_earth(q[2])
    return J @ db @ J.T


def regressor(model: ModelSpec, q, qdot, x1, x2) -> np.ndarray:
    """Regressor Y with Y(q, qdot, x1, x2) @ theta = M(q) x1 + C(q, qdot) x2."""
    q = _check_vec(q, model.n, "q")
    qdot = _check_vec(qdot, model.n, "qdot")
    x1 = _check_vec(x1, model.n, "x1")
    x2 = _check_vec(x2, model.n, "x2")
    if model.kind is ModelKind.DI:
        return np.column_stack([x1, np.linalg.norm(qdot) * x2])

    J = body_to_earth(q[2])
    u = J.T @ x1
    w = J.T @ x2
    v = J.T @ qdot
    z = qdot[2] * (_OMEGA @ w)
    a = u - z  # M_b acts on u from the mass term and on -z from the J-dot term
    y_m = np.array(
        [
            [a[0], 0.0, 0.0, 0.0, 0.0],
            [0.0, a[1], a[2], 0.0, 0.0],
            [0.0, 0.0, 0.0, a[1], a[2]],
        ]
    )
    y_c = np.array(
        [
            [-v[1] * w[2], -v[2] * w[2], 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, v[0] * w[2], 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, v[1] * w[0], v[2] * w[0], -v[0] * w[1]],
        ]
    )
    y_d = np.array(
        [
            [w[0], 0.0, 0.0, 0.0, 0.0],
            [0.0, w[1], w[2], 0.0, 0.0],
            [0.0, 0.0, 0.0, w[1], w[2]],
        ]
    )
    return J @ np.hstack([y_m, y_c, y_d])


def dynamics_accel(model: ModelSpec, state: AgentState, tau, d) -> np.ndarray:
    """Acceleration solving M(q) qddot = tau + d - C(q, qdot) qdot - G."""
    tau = _check_vec(tau, model.n, "tau")
    d = _check_vec(d, model.n, "d")
    M = mass_matrix(model, state.q)
    C = coriolis_matrix(model, state.q, state.qdot)
    rhs = tau + d - C @ state.qdot - model.gravity
    try:
        return np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise ModelViolationError("singular inertia matrix") from exc


def sample_perturbation(rng: np.random.Generator, d_max: float, n: int) -> np.ndarray:
    """Per-component uniform perturbation with ||d|| <= d_max for n <= 3."""
    if d_max < 0:
        raise InvalidInputError("d_max must be nonnegative")
    if d_max == 0:
        return np.zeros(n)
    half = d_max / np.sqrt(3.0)
    return rng.uniform(-half, half, size=n)


def perturb_ship_theta(rng: np.random.Generator, model: ModelSpec) -> np.ndarray:
    """Entrywise Bernoulli +-10% model error applied to the ship parameters.

    Each body-matrix entry gets an independent factor (1 + 0.1 xi),
    xi in {-1, +1}; C_b coefficients sharing a matrix entry share a factor.
    One draw is broadcast to all agents, matching a t=0 model exchange.
    """
    if model.kind is not ModelKind.SS:
        return model.theta_true.copy()
    xi = rng.integers(0, 2, size=9) * 2 - 1  # M:(11,22,23,32,33) C:(13,23,31,32)... see below
    f = 1.0 + 0.1 * xi
    # factors: 0..4 -> M_b entries, 5..8 -> C_b entries (1,3),(2,3),(3,1),(3,2)
    theta = model.theta_true.copy()
    theta[0:5] *= f[0:5]
    theta[5] *= f[5]
    theta[6] *= f[5]
    theta[7] *= f[6]
    theta[8] *= f[7]
    theta[9] *= f[7]
    theta[10] *= f[8]
    xi_d = rng.integers(0, 2, size=5) * 2 - 1
    theta[11:16] *= 1.0 + 0.1 * xi_d
    return theta
