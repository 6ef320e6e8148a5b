import numpy as np
import pytest

import oracles
from porosol.pddm import (SingularPointError, dd_pressure_kernel, elastic_dd_kernel,
                          fluid_source_kernel, fluid_source_point)
from porosol.pddm.kernels import e1_regular_part

G, NU = 6e9, 0.2
C, KAPPA, ETA = 1e-3, 1e-15, 0.2


@pytest.mark.parametrize("u", np.logspace(-3, 1, 13))
def test_point_source_matches_e1_reference(u):
    t = 100.0
    r = np.sqrt(4 * C * t * u)
    p = fluid_source_point(r, t, C, KAPPA, ETA)[0]
    assert p == pytest.approx(oracles.point_source_pressure(r, t, C, KAPPA), rel=1e-6)


def test_point_source_e1_at_one():
    t = 50.0
    r = np.sqrt(4 * C * t)
    p = fluid_source_point(r, t, C, KAPPA, ETA)[0]
    assert p * 4 * np.pi * KAPPA == pytest.approx(0.21938, abs=1e-5)


def test_e1_regular_part_against_mpmath():
    import mpmath
    x = np.logspace(-8, 1.5, 40)
    with mpmath.workdps(40):
        ref = np.array([float(mpmath.e1(v) + mpmath.euler + mpmath.log(v)) for v in x])
    np.testing.assert_allclose(e1_regular_part(x), ref, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("x,y,h,t", [
    (0.0, 0.0, 1.0, 100.0),      # own midpoint
    (0.3, 0.0, 1.0, 100.0),      # on the element
    (0.0, 0.01, 1.0, 1e3),       # just above it
    (2.0, 0.0, 1.0, 1e4),        # on the line, outside
    (5.0, 2.0, 1.0, 500.0),
    (0.5, 0.2, 0.5, 10.0),
    (30.0, 5.0, 1.0, 1e4),       # far on the diffusion scale
])
def test_element_source_pressure_against_quadrature(x, y, h, t):
    p = fluid_source_kernel(x, y, h, t, C, KAPPA, ETA)[0]
    assert p == pytest.approx(oracles.element_source_pressure(x, y, h, t, C, KAPPA), rel=1e-9)


@pytest.mark.parametrize("x,y,t", [(0.0, 0.5, 100.0), (2.0, 0.7, 1e3), (-3.0, 1.5, 50.0),
                                   (1.5, 0.0, 1e4), (0.2, 0.05, 1e3)])
def test_element_source_stress_against_quadrature(x, y, t):
    out = fluid_source_kernel(x, y, 1.0, t, C, KAPPA, ETA)
    ref = oracles.element_source_stress(x, y, 1.0, t, C, KAPPA, ETA)
    scale = max(abs(v) for v in ref)
    np.testing.assert_allclose(out[1:], ref, rtol=1e-7, atol=1e-9 * scale)


def test_fluid_kernel_vanishes_as_elapsed_time_goes_to_zero():
    ts = [1e2, 1.0, 1e-2, 1e-4]
    p = [fluid_source_kernel(5.0, 3.0, 1.0, t, C, KAPPA, ETA)[0] for t in ts]
    assert all(b <= a for a, b in zip(p, p[1:]))
    assert p[0] > 0 and p[-1] / p[0] < 1e-100


def test_fluid_kernel_needs_positive_time():
    with pytest.raises(ValueError):
        fluid_source_kernel(1.0, 1.0, 1.0, 0.0, C, KAPPA, ETA)


@pytest.mark.parametrize("x", [0.0, 0.4, -0.7, 1.5, -2.0, 4.0])
def test_normal_dd_stress_on_line_matches_finite_part_integral(x):
    k = elastic_dd_kernel(x, 0.0, 1.0, G, NU)
    assert k[1, 1] == pytest.approx(oracles.dn_normal_stress_on_line(x, 1.0, G, NU), rel=1e-10)


def test_normal_dd_self_term():
    h = 0.75
    k = elastic_dd_kernel(0.0, 0.0, h, G, NU)
    assert k[1, 1] == pytest.approx(G / (np.pi * (1 - NU) * h), rel=1e-14)
    # on the element line a normal DD loads sxx and syy equally and leaves sxy at zero
    assert k[1, 0] == pytest.approx(k[1, 1], rel=1e-14)
    assert k[1, 2] == 0.0


def test_elastic_far_field_decays_as_inverse_square():
    d = np.array([50.0, 100.0, 200.0, 400.0])
    k = elastic_dd_kernel(d * 0.6, d * 0.8, 1.0, G, NU)
    mag = np.abs(k[:, 1, 1])
    slopes = np.diff(np.log(mag)) / np.diff(np.log(d))
    np.testing.assert_allclose(slopes, -2.0, atol=1e-2)
    # and the finite-size correction shrinks with distance
    assert np.all(np.diff(np.abs(slopes + 2.0)) < 0)


def test_sxy_of_normal_dd_is_odd_in_s():
    x = np.array([0.3, 1.7, 4.0])
    y = np.array([0.5, -0.2, 2.0])
    a = elastic_dd_kernel(x, y, 1.0, G, NU)
    b = elastic_dd_kernel(-x, y, 1.0, G, NU)
    np.testing.assert_allclose(a[:, 1, 2], -b[:, 1, 2], rtol=1e-12)
    np.testing.assert_allclose(a[:, 1, 0], b[:, 1, 0], rtol=1e-12)


def test_elastic_kernel_rejects_tips_and_optionally_the_element():
    with pytest.raises(SingularPointError):
        elastic_dd_kernel(1.0, 0.0, 1.0, G, NU)
    with pytest.raises(SingularPointError):
        elastic_dd_kernel(0.2, 0.0, 1.0, G, NU, allow_on_element=False)


def test_dd_pressure_kernel_relaxes_to_zero():
    early = dd_pressure_kernel(2.0, 1.0, 1.0, 1e-3, G, 0.3, 0.6, C)
    late = dd_pressure_kernel(2.0, 1.0, 1.0, 1e12, G, 0.3, 0.6, C)
    assert np.all(np.abs(late) < 1e-6 * np.abs(early).max())
