"""Vectorized evaluators used by the simulation hot path.

These compute the same quantities as the per-agent functions in models.py,
stacked over a leading batch axis, so one RK4 stage costs a handful of numpy
calls instead of a Python loop over agents and estimator slots. Tests assert
agreement with the per-agent reference implementations.
"""

from __future__ import annotations

import numpy as np

from .models import ModelKind, ModelSpec, _OMEGA, _ship_matrices_from_theta


def batch_rotations(psi: np.ndarray) -> np.ndarray:
    """Stack of yaw rotations J(psi), shape (B, 3, 3)."""
    B = psi.shape[0]
    J = np.zeros((B, 3, 3))
    c, s = np.cos(psi), np.sin(psi)
    J[:, 0, 0] = c
    J[:, 0, 1] = -s
    J[:, 1, 0] = s
    J[:, 1, 1] = c
    J[:, 2, 2] = 1.0
    return J


def _ship_bodies(TH: np.ndarray):
    """Body-frame M_b, C_b-coefficient, D_b stacks from a (B, 16) theta stack."""
    B = TH.shape[0]
    mb = np.zeros((B, 3, 3))
    mb[:, 0, 0] = TH[:, 0]
    mb[:, 1, 1] = TH[:, 1]
    mb[:, 1, 2] = TH[:, 2]
    mb[:, 2, 1] = TH[:, 3]
    mb[:, 2, 2] = TH[:, 4]
    db = np.zeros((B, 3, 3))
    db[:, 0, 0] = TH[:, 11]
    db[:, 1, 1] = TH[:, 12]
    db[:, 1, 2] = TH[:, 13]
    db[:, 2, 1] = TH[:, 14]
    db[:, 2, 2] = TH[:, 15]
    return mb, db


def batch_mass(model: ModelSpec, Q: np.ndarray, TH: np.ndarray) -> np.ndarray:
    """Inertia matrices M(q), shape (B, n, n)."""
    if model.kind is ModelKind.DI:
        return TH[:, 0, None, None] * np.eye(2)
    mb, _ = _ship_bodies(TH)
    J = batch_rotations(Q[:, 2])
    return J @ mb @ np.swapaxes(J, 1, 2)


def batch_coriolis(model: ModelSpec, Q, QD, TH) -> np.ndarray:
    """Coriolis (plus ship damping) matrices C(q, qdot), shape (B, n, n)."""
    if model.kind is ModelKind.DI:
        speed = np.linalg.norm(QD, axis=1)
        return (TH[:, 1] * speed)[:, None, None] * np.eye(2)
    mb, db = _ship_bodies(TH)
    J = batch_rotations(Q[:, 2])
    v = np.einsum("bji,bj->bi", J, QD)
    B = Q.shape[0]
    cb = np.zeros((B, 3, 3))
    a = TH[:, 5] * v[:, 1] + TH[:, 6] * v[:, 2]
    cb[:, 0, 2] = -a
    cb[:, 1, 2] = TH[:, 7] * v[:, 0]
    cb[:, 2, 0] = TH[:, 8] * v[:, 1] + TH[:, 9] * v[:, 2]
    cb[:, 2, 1] = -TH[:, 10] * v[:, 0]
    inner = cb - mb @ (QD[:, 2, None, None] * _OMEGA) + db
    return J @ inner @ np.swapaxes(J, 1, 2)


def batch_regressor(model: ModelSpec, Q, QD, X1, X2) -> np.ndarray:
    """Regressor stacks Y with Y @ theta = M x1 + C x2, shape (B, n, p)."""
    B = Q.shape[0]
    if model.kind is ModelKind.DI:
        Y = np.zeros((B, 2, 2))
        Y[:, :, 0] = X1
        Y[:, :, 1] = np.linalg.norm(QD, axis=1)[:, None] * X2
        return Y
    J = batch_rotations(Q[:, 2])
    Jt = np.swapaxes(J, 1, 2)
    u = np.einsum("bij,bj->bi", Jt, X1)
    w = np.einsum("bij,bj->bi", Jt, X2)
    v = np.einsum("bij,bj->bi", Jt, QD)
    z = QD[:, 2, None] * np.einsum("ij,bj->bi", _OMEGA, w)
    a = u - z
    Y = np.zeros((B, 3, 16))
    Y[:, 0, 0] = a[:, 0]
    Y[:, 1, 1] = a[:, 1]
    Y[:, 1, 2] = a[:, 2]
    Y[:, 2, 3] = a[:, 1]
    Y[:, 2, 4] = a[:, 2]
    Y[:, 0, 5] = -v[:, 1] * w[:, 2]
    Y[:, 0, 6] = -v[:, 2] * w[:, 2]
    Y[:, 1, 7] = v[:, 0] * w[:, 2]
    Y[:, 2, 8] = v[:, 1] * w[:, 0]
    Y[:, 2, 9] = v[:, 2] * w[:, 0]
    Y[:, 2, 10] = -v[:, 0] * w[:, 1]
    Y[:, 0, 11] = w[:, 0]
    Y[:, 1, 12] = w[:, 1]
    Y[:, 1, 13] = w[:, 2]
    Y[:, 2, 14] = w[:, 1]
    Y[:, 2, 15] = w[:, 2]
    return J @ Y


def batch_accel(model: ModelSpec, Q, QD, TH, FORCE) -> np.ndarray:
    """Accelerations solving M(q) qddot = FORCE - C(q, qdot) qdot - G."""
    M = batch_mass(model, Q, TH)
    C = batch_coriolis(model, Q, QD, TH)
    rhs = FORCE - np.einsum("bij,bj->bi", C, QD) - model.gravity
    return np.linalg.solve(M, rhs[..., None])[..., 0]
