"""Generator structure, exact propagation vs a step integrator, trace and
positivity preservation, and steady states."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mirroratoms import coefficients as co
from mirroratoms import dynamics as dy
from conftest import random_x_state

Y = (0.0, 1.0, 0.0)


def coeffs(a1=0.25, a2=0.25, a3=0.1, b1=None, b2=None, b3=None):
    return co.CoefficientSet(a1, a2, a3,
                             a1 if b1 is None else b1,
                             a2 if b2 is None else b2,
                             a3 if b3 is None else b3)


def random_coeffs(rng):
    a1, a2 = rng.uniform(0.05, 1.0, size=2)
    a3 = rng.uniform(-1.0, 1.0) * np.sqrt(a1 * a2)
    th = rng.uniform(0.2, 1.0)
    return co.CoefficientSet(a1, a2, a3, a1 * th, a2 * th, a3 * th)


# ---------------------------------------------------------------------
# states
# ---------------------------------------------------------------------

def test_state_presets_are_valid():
    for name in "GEAS":
        s = dy.XState.preset(name)
        assert abs(np.trace(s.density_matrix()).real - 1.0) < 1e-14
    with pytest.raises(ValueError):
        dy.XState.preset("Q")


def test_state_rejects_bad_trace_and_negativity():
    with pytest.raises(ValueError):
        dy.XState(0.5, 0.5, 0.1, 0.0)
    with pytest.raises(ValueError):
        dy.XState(1.2, -0.2, 0.0, 0.0)
    with pytest.raises(ValueError):
        # coherence beyond the positivity bound
        dy.XState(0.5, 0.5, 0.0, 0.0, rho_ge=0.6)


def test_min_eigenvalue_matches_lapack(rng):
    for _ in range(200):
        s = random_x_state(rng)
        lam = np.linalg.eigvalsh(s.density_matrix()).min()
        assert abs(s.min_eigenvalue() - lam) <= 1e-12


def test_density_matrix_roundtrip(rng):
    for _ in range(50):
        s = random_x_state(rng)
        back = dy.XState.from_density_matrix(s.density_matrix())
        assert_allclose(back.vector(), s.vector(), atol=1e-13)
        assert abs(back.rho_ge - s.rho_ge) < 1e-13


def test_from_density_matrix_rejects_non_x():
    rho = np.eye(4, dtype=complex) / 4.0
    rho[0, 1] = rho[1, 0] = 0.1
    with pytest.raises(ValueError, match="X form"):
        dy.XState.from_density_matrix(rho)
    with pytest.raises(ValueError, match="hermitian"):
        dy.XState.from_density_matrix(np.triu(np.ones((4, 4))) / 4)


# ---------------------------------------------------------------------
# generator
# ---------------------------------------------------------------------

def test_generator_conserves_trace(rng):
    for _ in range(100):
        gen = dy.build_generator(random_coeffs(rng))
        colsums = gen.block_pop[:4].sum(axis=0)
        assert np.max(np.abs(colsums)) <= 1e-14


def test_generator_ge_rate():
    cs = coeffs(a1=0.3, a2=0.45)
    gen = dy.build_generator(cs)
    assert gen.rate_ge == -2.0 * (0.3 + 0.45)


def test_symmetric_atoms_decouple_as_channels():
    # with A3 = B3 = 0 and B1 = B2 the pA and pS rows become identical
    gen = dy.build_generator(coeffs(a1=0.3, a2=0.3, a3=0.0, b3=0.0))
    m = gen.block_pop
    assert_allclose(m[2, [0, 1, 4]], m[3, [0, 1, 4]], atol=0)
    assert m[2, 2] == m[3, 3]


def test_doubly_excited_decay_rate_free_space():
    cfg = co.PhysicalConfig.from_ratios(0.0, 1.0, 1e3, "parallel",
                                        d1=Y, d2=Y)
    cs = co.assemble_free_space(cfg)
    assert_allclose([cs.A1, cs.A2], [0.25, 0.25], rtol=1e-12)
    gen = dy.build_generator(cs)
    times = np.linspace(0.0, 3.0, 7)
    traj = dy.propagate(gen, dy.XState.excited(), times)
    p_e = np.array([s.pE for s in traj.states])
    assert_allclose(p_e, np.exp(-2.0 * times), rtol=1e-12)


def test_generator_rejects_nonfinite():
    with pytest.raises(ValueError):
        dy.build_generator(coeffs(a1=np.nan))


# ---------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------

def test_propagate_identity_at_zero():
    gen = dy.build_generator(coeffs())
    s0 = dy.XState.symmetric()
    out = dy.propagate(gen, s0, [0.0]).states[0]
    assert out == s0


def test_ground_state_is_free_space_fixed_point():
    gen = dy.build_generator(coeffs(a3=0.15))
    traj = dy.propagate(gen, dy.XState.ground(), [0.0, 5.0, 50.0])
    for s in traj.states:
        assert_allclose(s.vector(), dy.XState.ground().vector(), atol=1e-12)


def test_propagate_validates_times():
    gen = dy.build_generator(coeffs())
    s0 = dy.XState.ground()
    with pytest.raises(ValueError):
        dy.propagate(gen, s0, [])
    with pytest.raises(ValueError):
        dy.propagate(gen, s0, [-1.0, 0.0])
    with pytest.raises(ValueError):
        dy.propagate(gen, s0, [1.0, 0.5])


def _rk4(m, v0, t_end, dt):
    v = v0.copy()
    steps = int(round(t_end / dt))
    for _ in range(steps):
        k1 = m @ v
        k2 = m @ (v + 0.5 * dt * k1)
        k3 = m @ (v + 0.5 * dt * k2)
        k4 = m @ (v + dt * k3)
        v = v + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return v


def test_exact_propagation_matches_rk4():
    cfg = co.PhysicalConfig.from_ratios(0.5, 1.0, 0.5, "vertical",
                                        d1=(1, 0, 0), d2=(0, 1, 0))
    gen = dy.build_generator(co.assemble(cfg))
    s0 = dy.XState.symmetric()
    for t_end in (1.0, 20.0):
        exact = dy.propagate(gen, s0, [t_end]).states[0].vector()
        stepped = _rk4(gen.block_pop, s0.vector(), t_end, 1e-3)
        assert np.max(np.abs(exact - stepped)) <= 1e-8


def test_trace_and_positivity_along_trajectories(rng):
    for _ in range(20):
        gen = dy.build_generator(random_coeffs(rng))
        s0 = random_x_state(rng)
        traj = dy.propagate(gen, s0, np.linspace(0.0, 30.0, 61))
        for s in traj.states:
            assert abs(s.pG + s.pE + s.pA + s.pS - 1.0) <= 1e-12
            assert s.min_eigenvalue() >= -1e-10


def test_semigroup_property(rng):
    gen = dy.build_generator(random_coeffs(rng))
    s0 = random_x_state(rng)
    t1, t2 = 0.8, 2.3
    once = dy.propagate(gen, s0, [t1 + t2]).states[0]
    first = dy.propagate(gen, s0, [t1]).states[0]
    second = dy.propagate(gen, first, [t2]).states[0]
    assert np.max(np.abs(once.vector() - second.vector())) <= 1e-10
    assert abs(once.rho_ge - second.rho_ge) <= 1e-10


def test_ge_coherence_decays_exactly():
    cs = coeffs(a1=0.3, a2=0.2)
    gen = dy.build_generator(cs)
    s0 = dy.XState(0.5, 0.5, 0.0, 0.0, rho_ge=0.25 + 0.1j)
    taus = np.array([0.0, 0.7, 2.9])
    traj = dy.propagate(gen, s0, taus)
    for tau, s in zip(taus, traj.states):
        expected = s0.rho_ge * np.exp(-2.0 * 0.5 * tau)
        assert abs(s.rho_ge - expected) <= 1e-14


def test_trace_guard_switches_to_expm_for_near_defective_generators():
    # at small separation the collective modes are nearly defective and the
    # spectral route leaks trace at the 1e-10 level; the propagator must
    # notice and switch
    cfg = co.PhysicalConfig.from_ratios(0.0, 0.15, 0.5, "vertical",
                                        d1=(1, 0, 0), d2=(1, 0, 0))
    gen = dy.build_generator(co.assemble(cfg))
    traj = dy.propagate(gen, dy.XState.excited(), np.linspace(0.0, 12.0, 25))
    assert traj.method == "expm"
    for s in traj.states:
        assert abs(s.pG + s.pE + s.pA + s.pS - 1.0) <= 1e-12


def test_expm_fallback_agrees_with_eig(monkeypatch):
    gen = dy.build_generator(coeffs(a3=0.12))
    s0 = dy.XState.excited()
    ref = dy.propagate(gen, s0, [1.7]).states[0]
    monkeypatch.setattr(dy, "_COND_LIMIT", 0.0)
    fb = dy.propagate(gen, s0, [1.7])
    assert fb.method == "expm"
    assert np.max(np.abs(fb.states[0].vector() - ref.vector())) <= 1e-12


def test_trajectory_state_at_matches_grid():
    gen = dy.build_generator(coeffs(a3=0.05))
    traj = dy.propagate(gen, dy.XState.symmetric(), [0.0, 1.0, 2.0])
    direct = traj.state_at(1.0)
    assert np.max(np.abs(direct.vector() - traj.states[1].vector())) <= 1e-14


# ---------------------------------------------------------------------
# steady state
# ---------------------------------------------------------------------

def test_steady_state_inertial_free_space_is_ground():
    gen = dy.build_generator(coeffs(a3=0.1))
    ss = dy.steady_state(gen)
    assert_allclose(ss.vector(), dy.XState.ground().vector(), atol=1e-12)


def test_steady_state_frozen_dynamics_signal():
    gen = dy.build_generator(co.CoefficientSet(0, 0, 0, 0, 0, 0))
    with pytest.raises(dy.DynamicsFrozenError, match="frozen"):
        dy.steady_state(gen)


def test_steady_state_accelerated_matches_long_time_limit():
    cfg = co.PhysicalConfig.from_ratios(1.0, 1.0, 1e3, "parallel")
    gen = dy.build_generator(co.assemble_free_space(cfg))
    ss = dy.steady_state(gen)
    assert np.linalg.norm(gen.block_pop @ ss.vector()) <= 1e-10
    late = dy.propagate(gen, dy.XState.symmetric(), [200.0]).states[0]
    assert np.max(np.abs(late.vector() - ss.vector())) <= 1e-6
