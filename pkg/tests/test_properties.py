"""Property-based checks over randomly drawn inputs."""
import math
import warnings

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from porosol.inputs import BOX, VARIABLES
from porosol.material import PoroelasticMaterial, diffusivity, validate
from porosol.pddm import elastic_dd_kernel, fluid_source_point
from porosol.rom import BasisForm, RomSpec, dumps_rom, eval_rom, loads_rom
from porosol.sobol import (DesignOutputs, Dim, InputSpace, design, first_order_index,
                           second_order_index)

finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def materials(draw):
    nu = draw(st.floats(0.01, 0.45))
    nu_u = draw(st.floats(nu + 0.01, 0.49))
    return PoroelasticMaterial(G=draw(st.floats(1e8, 1e11)), nu=nu, nu_u=nu_u,
                               B=draw(st.floats(0.05, 1.0)), kappa=draw(st.floats(1e-20, 1e-10)))


@given(materials(), st.floats(0.1, 100.0))
def test_diffusivity_is_positive_and_linear_in_mobility(m, k):
    assert validate(m) == []
    c = diffusivity(m)
    assert c > 0
    assert math.isclose(diffusivity(m.replace(kappa=k * m.kappa)), k * c, rel_tol=1e-12)


@st.composite
def spaces(draw):
    n = draw(st.integers(1, 5))
    dims = []
    for i in range(n):
        lo = draw(st.floats(1e-3, 1e3))
        hi = lo * draw(st.floats(1.5, 1e3))
        dims.append(Dim(f"x{i}", lo, hi, draw(st.sampled_from(["linear", "log10"]))))
    return InputSpace(dims)


@given(spaces(), st.integers(0, 2 ** 31))
def test_unit_mapping_round_trip(space, seed):
    u = np.random.default_rng(seed).random((20, space.n))
    x = space.from_unit(u)
    assert space.contains(x).all()
    np.testing.assert_allclose(space.to_unit(x), u, atol=1e-9)


@settings(max_examples=25, deadline=None)
@given(spaces(), st.sampled_from([4, 8, 16]), st.integers(0, 1000))
def test_design_is_seeded_and_inside_the_box(space, N, seed):
    d1, d2 = design(space, N, seed), design(space, N, seed)
    X = d1.all_points()
    np.testing.assert_array_equal(X, d2.all_points())
    assert X.shape == (d1.n_evaluations, space.n) == ((2 * space.n + 2) * N, space.n)
    assert space.contains(X).all()


def _toy(X):
    return np.sin(X[:, 0]) + 0.7 * X[:, 1] ** 2 + X[:, 0] * X[:, 2]


@settings(max_examples=30, deadline=None)
@given(st.floats(-1e3, 1e3).filter(lambda a: abs(a) > 1e-3), st.floats(-1e6, 1e6))
def test_indices_ignore_affine_output_changes(scale, shift):
    space = InputSpace(Dim(f"x{i}", -math.pi, math.pi) for i in range(3))
    d = design(space, 64, seed=1)
    y = _toy(d.all_points())
    o1 = DesignOutputs.from_flat(y, 3, 64)
    o2 = DesignOutputs.from_flat(scale * y + shift, 3, 64)
    for i in range(3):
        assert math.isclose(first_order_index(o1, i), first_order_index(o2, i),
                            rel_tol=1e-6, abs_tol=1e-6)
    assert math.isclose(second_order_index(o1, 0, 2), second_order_index(o2, 0, 2),
                        rel_tol=1e-6, abs_tol=1e-6)


@given(st.floats(0.1, 10.0), st.floats(0.1, 10.0), st.floats(0.1, 5.0),
       st.floats(0.05, 0.45))
def test_dd_kernel_parity(x, y, h, nu):
    # a normal opening is even in x and y for the normal stresses and odd for shear
    assume(abs(abs(x) - h) > 1e-3 or abs(y) > 1e-3)
    K = elastic_dd_kernel(np.array([x, -x, x]), np.array([y, y, -y]), h, 1.0, nu)
    sxx, syy, sxy = K[:, 1, 0], K[:, 1, 1], K[:, 1, 2]
    np.testing.assert_allclose(sxx[1:], sxx[0], rtol=1e-9, atol=1e-14)
    np.testing.assert_allclose(syy[1:], syy[0], rtol=1e-9, atol=1e-14)
    np.testing.assert_allclose(sxy[1:], -sxy[0], rtol=1e-9, atol=1e-14)


@given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e2), st.floats(1e2, 1e6))
def test_point_source_pressure_decreases_with_distance_and_grows_in_time(r, dr, t):
    p1, _, _ = fluid_source_point(r, t, 1.0, 1.0, 0.3)
    p2, _, _ = fluid_source_point(r + dr, t, 1.0, 1.0, 0.3)
    p3, _, _ = fluid_source_point(r, 2 * t, 1.0, 1.0, 0.3)
    assert p1 > p2 >= 0
    assert p3 > p1


coeff = st.floats(-1e8, 1e8, **finite)


@st.composite
def roms(draw):
    comps = []
    for v in draw(st.lists(st.integers(1, 8), min_size=0, max_size=4, unique=True)):
        kind = draw(st.sampled_from(["linear", "quadratic", "cubic"]))
        n = {"linear": 2, "quadratic": 3, "cubic": 4}[kind]
        comps.append(BasisForm(kind, (v,), tuple(draw(coeff) for _ in range(n)),
                               scaling=draw(st.sampled_from(["raw", "unit"])), label=f"f{v}"))
    return RomSpec("pore_pressure", "P1", draw(st.floats(1.0, 1e9)), draw(coeff), tuple(comps),
                   declared_accuracy=draw(st.floats(0, 1)), name=draw(st.text(max_size=10)))


@settings(suppress_health_check=[HealthCheck.too_slow])
@given(roms(), st.lists(st.floats(0, 1), min_size=8, max_size=8))
def test_rom_text_round_trip_is_exact(rom, u):
    back = loads_rom(dumps_rom(rom))
    assert back == rom
    lo, hi = np.array(BOX).T
    x = lo + (hi - lo) * np.array(u)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert eval_rom(back, x) == eval_rom(rom, x)


@given(st.lists(st.floats(0, 1), min_size=8, max_size=8))
def test_parse_point_round_trip(u):
    from porosol.cli import parse_point
    lo, hi = np.array(BOX).T
    x = lo + (hi - lo) * np.array(u)
    text = ",".join(f"{k}={float(v)!r}" for k, v in zip(VARIABLES, x))
    np.testing.assert_array_equal(parse_point(text), x)
