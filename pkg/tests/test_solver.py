from math import pi

import numpy as np
import pytest

import oracles
from porosol.material import PoroelasticMaterial, diffusivity
from porosol.pddm import (BoundaryCondition, Element, Elements, FarFieldState, Fracture,
                          FractureSystem, NonFiniteSolutionError, Scenario, SingularPointError,
                          SingularSystemError, assemble_history, assemble_step, depletion_profile,
                          discretize, field_at, production_bc, simulate, time_march,
                          two_fracture_system)

FF = FarFieldState(sigma_H=56.53e6, sigma_h=55.15e6, p_r=48.26e6)


def sneddon_error(n):
    m = PoroelasticMaterial(G=6e9, nu=0.2, nu_u=0.3, B=0.6, kappa=1e-15)
    el = discretize(FractureSystem((Fracture((0.0, 0.0), 10.0, 0.0),), n))
    bc = BoundaryCondition(np.zeros(n), np.full(n, -1e6), np.zeros(n))
    hist = time_march(el, m, bc, 1.0, 1)
    w = hist.aperture()
    ref = oracles.sneddon_max_aperture(1e6, 10.0, 0.2, 6e9)
    return abs(w.max() - ref) / ref, hist, el


def test_sneddon_profile_shape():
    err, hist, el = sneddon_error(50)
    assert err < 0.02
    ref = oracles.sneddon_profile(el.mid[:, 0], 1e6, 10.0, 0.2, 6e9)
    # constant elements under-resolve only the tips
    inner = np.abs(el.mid[:, 0]) < 7.0
    np.testing.assert_allclose(hist.aperture()[inner], ref[inner], rtol=0.02)
    # the pressure unknown stays unloaded
    assert np.all(hist.Dq == 0)


def test_sneddon_error_decreases_with_refinement():
    errs = [sneddon_error(n)[0] for n in (10, 20, 40, 80)]
    assert all(b < a for a, b in zip(errs, errs[1:])), errs


def _two_fracture(rock, n=8, steps=6, horizon=1e6, p_f=27e6):
    sc = Scenario(two_fracture_system(30.0, 30.0, n), rock, FF, p_f, horizon, steps)
    return simulate(sc)


def test_zero_load_gives_zero_history(soft_rock):
    el = discretize(two_fracture_system(30.0, 30.0, 6))
    n = len(el)
    bc = BoundaryCondition(np.zeros(n), np.zeros(n), np.zeros(n))
    h = time_march(el, soft_rock, bc, 1e5, 5)
    assert not h.stacked().any()


def test_history_is_linear_in_the_loads(soft_rock):
    el = discretize(two_fracture_system(30.0, 30.0, 6))
    bc = production_bc(el, FF, 27e6)
    h1 = time_march(el, soft_rock, bc, 1e6, 5)
    h2 = time_march(el, soft_rock, bc.scaled(2.0), 1e6, 5)
    np.testing.assert_allclose(h2.stacked(), 2 * h1.stacked(), rtol=1e-10,
                               atol=1e-12 * np.abs(h1.stacked()).max())
    pts = np.array([[0.0, 10.0], [40.0, 50.0]])
    s1, s2 = field_at(h1, pts, 3.5e6), field_at(h2, pts, 3.5e6)
    for a, b in ((s1.p, s2.p), (s1.sxx, s2.sxx), (s1.syy, s2.syy), (s1.sxy, s2.sxy)):
        np.testing.assert_allclose(b, 2 * a, rtol=1e-10, atol=1e-10 * np.abs(a).max())


def test_causality(soft_rock):
    el = discretize(two_fracture_system(30.0, 30.0, 6))
    n, steps, cut = len(el), 8, 3
    rng = np.random.default_rng(1)
    loads = [rng.normal(size=(steps, n)) * s for s in (1e5, 1e6, 1e6)]
    full = time_march(el, soft_rock, BoundaryCondition(*loads), 1e5, steps)
    cut_loads = [a.copy() for a in loads]
    for a in cut_loads:
        a[cut + 1:] = 0.0
    part = time_march(el, soft_rock, BoundaryCondition(*cut_loads), 1e5, steps)
    assert np.array_equal(full.stacked()[:cut + 1], part.stacked()[:cut + 1])
    assert not np.array_equal(full.stacked()[cut + 1:], part.stacked()[cut + 1:])


def test_elastic_blocks_are_reciprocal(soft_rock):
    el = discretize(two_fracture_system(30.0, 20.0, 10))
    n = len(el)
    H0 = assemble_step(el, soft_rock, 1e5, 0)
    E = H0[:2 * n, :2 * n]
    for blk in (E[:n, :n], E[n:, n:]):
        np.testing.assert_allclose(blk, blk.T, rtol=1e-10, atol=1e-10 * np.abs(blk).max())
    np.testing.assert_allclose(E[:n, n:], E[n:, :n].T, rtol=1e-10, atol=1e-10 * np.abs(E).max())


def test_single_element_block_has_nonzero_diagonal(soft_rock):
    el = Elements([Element((0.0, 0.0), 1.0, (1.0, 0.0), (0.0, 1.0), 0)])
    H0 = assemble_step(el, soft_rock, 1e4, 0)
    assert H0.shape == (3, 3)
    assert np.all(np.diag(H0) != 0)


def test_history_blocks_decay_with_lag(soft_rock):
    el = discretize(two_fracture_system(30.0, 30.0, 6))
    H = assemble_history(el, soft_rock, 1e6, 200)
    norms = np.abs(H[1:]).max(axis=(1, 2))
    # late lags fall off like 1 / lag, the rate derivative of E1
    assert norms[-1] < 0.1 * norms[0]
    assert np.all(np.diff(norms[5:]) <= 0)
    assert norms[-1] * 199 < 2 * norms[99] * 99
    with pytest.raises(ValueError):
        assemble_step(el, soft_rock, 1e6, -1)


def test_history_window_matches_full_history(soft_rock):
    el = discretize(two_fracture_system(30.0, 30.0, 6))
    bc = production_bc(el, FF, 27e6)
    full = time_march(el, soft_rock, bc, 1e6, 30)
    win = time_march(el, soft_rock, bc, 1e6, 30, history_tol=1e-14)
    np.testing.assert_allclose(win.stacked(), full.stacked(), rtol=1e-8,
                               atol=1e-10 * np.abs(full.stacked()).max())


def test_cross_blocks_small_at_separation_100a(soft_rock):
    a = 1.0
    sysm = FractureSystem((Fracture((0.0, 0.0), a, pi / 2), Fracture((100 * a, 0.0), a, pi / 2)), 8)
    el = discretize(sysm)
    n = len(el)
    # one slab of a diffusion length comparable to the fracture size
    dt = a * a / diffusivity(soft_rock)
    H0 = assemble_step(el, soft_rock, dt, 0)
    rows = np.tile(el.fracture, 3) == 0
    f = el.fracture
    for k in range(3):
        # one unknown kind at a time: every row is in Pa per unit of that unknown
        cols = H0[:, k * n:(k + 1) * n]
        self_ = np.abs(cols[np.ix_(rows, f == 0)]).max()
        cross = np.abs(cols[np.ix_(rows, f == 1)]).max()
        assert cross / self_ < 1e-2


def test_singular_and_non_finite_systems_are_reported(soft_rock):
    e = Element((0.0, 0.0), 1.0, (1.0, 0.0), (0.0, 1.0), 0)
    twin = Elements([e, e])
    bc = BoundaryCondition(np.zeros(2), np.ones(2), np.zeros(2))
    with pytest.raises(SingularSystemError) as info:
        time_march(twin, soft_rock, bc, 1e4, 2)
    assert info.value.elements
    el = discretize(two_fracture_system(30.0, 30.0, 4))
    n = len(el)
    bad = BoundaryCondition(np.zeros(n), np.full(n, np.nan), np.zeros(n))
    with pytest.raises(NonFiniteSolutionError) as info:
        time_march(el, soft_rock, bad, 1e4, 2)
    assert info.value.step == 0


def test_field_at_initial_time_is_far_field(soft_rock):
    hist = _two_fracture(soft_rock)
    pts = np.stack([np.zeros(5), np.linspace(-50, 50, 5)], 1)
    s = field_at(hist, pts, 0.0)
    np.testing.assert_array_equal(s.p, FF.p_r)
    np.testing.assert_array_equal(s.sxx, -FF.sigma_h)
    np.testing.assert_array_equal(s.syy, -FF.sigma_H)
    np.testing.assert_array_equal(s.sxy, 0.0)
    np.testing.assert_array_equal(s.sigma_min, FF.sigma_h)


def test_field_at_guards(soft_rock):
    hist = _two_fracture(soft_rock)
    with pytest.raises(ValueError):
        field_at(hist, [[0.0, 0.0]], 2 * hist.horizon)
    with pytest.raises(SingularPointError):
        field_at(hist, [[15.0, 1.0]], hist.horizon)


def test_midline_symmetry(soft_rock):
    hist = _two_fracture(soft_rock, horizon=3e7)
    y = np.linspace(-90, 90, 19)
    s = field_at(hist, np.stack([np.zeros_like(y), y], 1), hist.horizon)
    scale = FF.sigma_H
    np.testing.assert_allclose(s.sxy, 0.0, atol=1e-9 * scale)
    for v in (s.p, s.sxx, s.syy):
        np.testing.assert_allclose(v, v[::-1], rtol=1e-10)


def test_no_drawdown_means_no_change(soft_rock):
    hist = _two_fracture(soft_rock, p_f=FF.p_r)
    s = field_at(hist, [[0.0, 5.0], [50.0, 0.0]], hist.horizon)
    np.testing.assert_allclose(s.p, FF.p_r, rtol=1e-14)
    np.testing.assert_allclose(s.sxx, -FF.sigma_h, rtol=1e-14)


def test_high_mobility_midline_reaches_production_pressure(rocks):
    hist = _two_fracture(rocks["Berea Sandstone"], horizon=365.25 * 86400, steps=10)
    s = field_at(hist, [[0.0, 0.0], [0.0, 15.0]], hist.horizon)
    np.testing.assert_allclose(s.p, 27e6, rtol=1e-2)


def test_depletion_profile_times(soft_rock):
    hist = _two_fracture(soft_rock.replace(kappa=1e-15), horizon=3e7)
    prof = depletion_profile(hist, [[0.0, 0.0]], [0.0, 1e7, 3e7])
    p = [s.p[0] for s in prof]
    assert p[0] == FF.p_r and p[0] > p[1] > p[2] > 27e6


def test_boundary_modes(soft_rock):
    el = discretize(two_fracture_system(30.0, 30.0, 4))
    for mode in ("pressure_change", "net_pressure", "fixed"):
        bc = production_bc(el, FF, 27e6, mode)
        np.testing.assert_allclose(bc.pressure, 27e6 - FF.p_r)
    # fractures run along y, so their normal traction is the x stress
    net = production_bc(el, FF, 27e6, "net_pressure")
    np.testing.assert_allclose(net.normal, -27e6 + FF.sigma_h)
    with pytest.raises(ValueError):
        production_bc(el, FF, 27e6, "bogus")


def test_coupled_mode_runs_and_differs(soft_rock):
    sysm = two_fracture_system(30.0, 30.0, 6)
    plain = simulate(Scenario(sysm, soft_rock, FF, 27e6, 1e7, 5))
    coup = simulate(Scenario(sysm, soft_rock, FF, 27e6, 1e7, 5, coupled=True))
    a = field_at(plain, [[0.0, 40.0]], 1e7).p
    b = field_at(coup, [[0.0, 40.0]], 1e7).p
    assert np.all(np.isfinite(b)) and not np.allclose(a, b, rtol=1e-12)
