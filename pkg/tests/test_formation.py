"""Formation geometry, potential energy, disagreement terms, and gain checks."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from etform.formation import (
    HEXAGON_K,
    HEXAGON_OFFSETS_2D,
    HEXAGON_OFFSETS_3D,
    FormationError,
    FormationSpec,
    GainError,
    Gains,
    ReferenceTrajectory,
    SpringMatrix,
    agent_reference,
    circular_reference,
    g_term,
    gdot_term,
    potential_energy,
    s_term,
)


def make_gains(**overrides) -> Gains:
    base = dict(
        k_p=1.0, k_g=15.0, k_s=3.0, k_0=0.0, b_i=1.0 / 15.0,
        eta=0.0, eta2=7.5, Gamma=np.eye(2), dt=0.01, T=2.0,
        D_max=0.0, k_M=1.0, k_C=0.1,
    )
    base.update(overrides)
    return Gains(**base)


def hexagon_spec(dim=2, **gain_overrides) -> FormationSpec:
    offsets = HEXAGON_OFFSETS_2D if dim == 2 else HEXAGON_OFFSETS_3D
    return FormationSpec(
        offsets=offsets,
        spring=SpringMatrix(HEXAGON_K),
        reference=ReferenceTrajectory.zero(dim),
        gains=make_gains(**gain_overrides),
    )


class TestSpringMatrix:
    def test_hexagon_row_sums(self):
        spring = SpringMatrix(HEXAGON_K)
        np.testing.assert_allclose(spring.alpha, 0.4626)

    def test_hexagon_extremes(self):
        spring = SpringMatrix(HEXAGON_K)
        assert np.isclose(spring.k_min, 0.0926)
        assert np.isclose(spring.k_max, 0.185)

    def test_hexagon_laplacian_spectrum(self):
        # Independent oracle: circulant structure fixes the eigenvalues.
        L = np.diag(HEXAGON_K.sum(axis=1)) - HEXAGON_K
        eigs = np.sort(np.linalg.eigvalsh(L))
        expected = np.sort([0.0, 0.3702, 0.3702, 0.555, 0.555, 0.9252])
        np.testing.assert_allclose(eigs, expected, atol=1e-12)

    def test_neighbors_match_stated_graph(self):
        spring = SpringMatrix(HEXAGON_K)
        for i in range(6):
            expected = sorted({(i + 1) % 6, (i - 1) % 6, (i + 3) % 6})
            assert spring.neighbors(i) == expected

    def test_rejects_asymmetric(self):
        K = HEXAGON_K.copy()
        K[0, 1] += 0.01
        with pytest.raises(FormationError):
            SpringMatrix(K)

    def test_rejects_negative(self):
        K = HEXAGON_K.copy()
        K[0, 1] = K[1, 0] = -0.1
        with pytest.raises(FormationError):
            SpringMatrix(K)

    def test_rejects_nonzero_diagonal(self):
        K = HEXAGON_K.copy()
        K[2, 2] = 0.5
        with pytest.raises(FormationError):
            SpringMatrix(K)

    def test_rejects_disconnected(self):
        K = np.zeros((4, 4))
        K[0, 1] = K[1, 0] = 1.0
        K[2, 3] = K[3, 2] = 1.0
        with pytest.raises(FormationError):
            SpringMatrix(K)


class TestPotentialEnergy:
    def test_zero_exactly_at_target(self):
        spec = hexagon_spec()
        assert potential_energy(spec.offsets.copy(), spec) == 0.0

    @given(tx=st.floats(-5, 5, allow_nan=False), ty=st.floats(-5, 5, allow_nan=False))
    @settings(max_examples=50, deadline=None)
    def test_translation_invariance(self, tx, ty):
        spec = hexagon_spec()
        rng = np.random.default_rng(0)
        q = rng.standard_normal((6, 2))
        shifted = q + np.array([tx, ty])
        assert np.isclose(potential_energy(q, spec), potential_energy(shifted, spec))

    def test_two_agent_double_counting(self):
        # Both ordered pairs contribute: unit spring, unit gap -> P = 1, not 1/2.
        K = np.array([[0.0, 1.0], [1.0, 0.0]])
        offsets = np.zeros((2, 2))
        spec = FormationSpec(
            offsets=offsets,
            spring=SpringMatrix(K),
            reference=ReferenceTrajectory.zero(2),
            gains=make_gains(),
        )
        q = np.array([[0.0, 0.0], [1.0, 0.0]])
        assert np.isclose(potential_energy(q, spec), 1.0)

    def test_quadratic_scaling(self):
        spec = hexagon_spec()
        rng = np.random.default_rng(2)
        delta = rng.standard_normal((6, 2))
        q1 = spec.offsets + delta
        q2 = spec.offsets + 2.0 * delta
        assert np.isclose(potential_energy(q2, spec), 4.0 * potential_energy(q1, spec))

    def test_rejects_bad_shape(self):
        spec = hexagon_spec()
        with pytest.raises(FormationError):
            potential_energy(np.zeros((5, 2)), spec)


class TestDisagreementTerms:
    def test_g_zero_at_target(self):
        spec = hexagon_spec()
        q = spec.offsets
        for i in range(6):
            positions = {j: q[j] for j in spec.spring.neighbors(i)}
            g = g_term(i, q[i], positions, spec, eps_i=np.zeros(2))
            np.testing.assert_allclose(g, 0.0, atol=1e-14)

    def test_g_bar_identity(self):
        # g_i = gbar_i + E_i with E_i = sum_j k_ij (qhat_j - q_j)
        spec = hexagon_spec(k_0=2.0)
        rng = np.random.default_rng(8)
        q = rng.standard_normal((6, 2))
        qhat = q + rng.standard_normal((6, 2))
        eps = rng.standard_normal(2)
        for i in range(6):
            true_pos = {j: q[j] for j in spec.spring.neighbors(i)}
            est_pos = {j: qhat[j] for j in spec.spring.neighbors(i)}
            g = g_term(i, q[i], true_pos, spec, eps)
            gbar = g_term(i, q[i], est_pos, spec, eps)
            E = sum(spec.spring.K[i, j] * (qhat[j] - q[j]) for j in spec.spring.neighbors(i))
            np.testing.assert_allclose(g, gbar + E, atol=1e-12)

    def test_s_bar_identity(self):
        spec = hexagon_spec()
        rng = np.random.default_rng(9)
        qdot = rng.standard_normal(2)
        qdot_star = rng.standard_normal(2)
        g = rng.standard_normal(2)
        E = rng.standard_normal(2)
        s = s_term(qdot, qdot_star, spec.gains.k_p, g)
        sbar = s_term(qdot, qdot_star, spec.gains.k_p, g - E)
        np.testing.assert_allclose(s, sbar + spec.gains.k_p * E, atol=1e-12)

    def test_gdot_matches_finite_difference_of_g(self):
        spec = hexagon_spec(k_0=1.5)
        rng = np.random.default_rng(10)
        q = rng.standard_normal((6, 2))
        qd = rng.standard_normal((6, 2))
        eps = rng.standard_normal(2)
        epsd = rng.standard_normal(2)
        h = 1e-7
        i = 2
        nbrs = spec.spring.neighbors(i)
        g0 = g_term(i, q[i], {j: q[j] for j in nbrs}, spec, eps)
        g1 = g_term(i, q[i] + h * qd[i], {j: q[j] + h * qd[j] for j in nbrs},
                    spec, eps + h * epsd)
        gd = gdot_term(i, qd[i], {j: qd[j] for j in nbrs}, spec, epsd)
        np.testing.assert_allclose((g1 - g0) / h, gd, atol=1e-6)

    def test_missing_neighbor_raises(self):
        spec = hexagon_spec()
        with pytest.raises(FormationError):
            g_term(0, np.zeros(2), {}, spec, np.zeros(2))


class TestReference:
    def test_circular_velocity_profile(self):
        ref = circular_reference(3, np.array([1.0, 2.0, 0.0]))
        t = 1.3
        np.testing.assert_allclose(
            ref.q1dot(t),
            [4 * np.sin(0.4 * t), 4 * np.cos(0.4 * t), 0.4 * t],
        )

    def test_circular_anchored_at_initial_position(self):
        q0 = np.array([-0.35, -1.11])
        ref = circular_reference(2, q0)
        np.testing.assert_allclose(ref.q1(0.0), q0)

    def test_position_is_velocity_integral(self):
        ref = circular_reference(3, np.zeros(3))
        h = 1e-6
        for t in (0.0, 0.7, 2.0):
            fd = (ref.q1(t + h) - ref.q1(t - h)) / (2 * h)
            np.testing.assert_allclose(fd, ref.q1dot(t), atol=1e-6)

    def test_acceleration_is_velocity_derivative(self):
        ref = circular_reference(3, np.zeros(3))
        h = 1e-6
        for t in (0.0, 0.7, 2.0):
            fd = (ref.q1dot(t + h) - ref.q1dot(t - h)) / (2 * h)
            np.testing.assert_allclose(fd, ref.q1ddot(t), atol=1e-6)

    def test_agent_reference_offsets(self):
        spec = hexagon_spec()
        for i in range(6):
            q_star, qd_star, qdd_star = agent_reference(i, 0.5, spec)
            np.testing.assert_allclose(q_star, spec.offsets[i])
            np.testing.assert_allclose(qd_star, 0.0)
            np.testing.assert_allclose(qdd_star, 0.0)


class TestGains:
    def test_valid_baseline(self):
        make_gains().validate()

    def test_k_s_floor(self):
        with pytest.raises(GainError):
            make_gains(k_s=2.9).validate()

    def test_k_s_floor_with_ship_k_M(self):
        make_gains(k_p=6.0, k_g=20.0, k_s=1.0 + 6.0 * 34.84, b_i=0.05,
                   k_M=33.84).validate()
        with pytest.raises(GainError):
            make_gains(k_p=6.0, k_g=20.0, k_s=200.0, b_i=0.05, k_M=33.84).validate()

    def test_b_i_window(self):
        # cap = k_s / (k_s k_p + k_g) = 3/18
        make_gains(b_i=0.16).validate()
        with pytest.raises(GainError):
            make_gains(b_i=1.0).validate()
        with pytest.raises(GainError):
            make_gains(b_i=0.0).validate()

    def test_T_must_be_multiple_of_dt(self):
        with pytest.raises(GainError):
            make_gains(T=2.005).validate()

    def test_gamma_must_be_spd(self):
        with pytest.raises(GainError):
            make_gains(Gamma=-np.eye(2)).validate()
        with pytest.raises(GainError):
            make_gains(Gamma=np.array([[1.0, 2.0], [0.0, 1.0]])).validate()

    def test_negative_eta_rejected(self):
        with pytest.raises(GainError):
            make_gains(eta=-1.0).validate()


class TestFormationSpec:
    def test_first_offset_must_be_zero(self):
        offsets = HEXAGON_OFFSETS_2D.copy()
        offsets[0, 0] = 1.0
        with pytest.raises(FormationError):
            FormationSpec(
                offsets=offsets,
                spring=SpringMatrix(HEXAGON_K),
                reference=ReferenceTrajectory.zero(2),
                gains=make_gains(),
            )

    def test_r_star_antisymmetric(self):
        spec = hexagon_spec()
        for i in range(6):
            for j in range(6):
                np.testing.assert_allclose(spec.r_star(i, j), -spec.r_star(j, i))

    def test_r_star_matches_hexagon(self):
        spec = hexagon_spec()
        np.testing.assert_allclose(spec.r_star(1, 0), [2.0, 0.0])
        np.testing.assert_allclose(spec.r_star(5, 0), [-1.0, np.sqrt(3.0)])
