import warnings

import numpy as np
import pytest
from scipy.stats import qmc

from porosol.inputs import BOX
from porosol.rom import ONE_YEAR, catalog, catalog_rom, eval_rom

F0 = {
    ("pore_pressure", "P1"): 4.01e7, ("sigma_min", "P1"): 5.13e7, ("sigma_max", "P1"): 5.55e7,
    ("pore_pressure", "P5"): 3.23e7, ("sigma_min", "P5"): 4.75e7, ("sigma_max", "P5"): 5.05e7,
    ("pore_pressure", "P6"): 2.65e7, ("sigma_min", "P6"): 5.53e7, ("sigma_max", "P6"): 5.05e7,
}

# component labels of every published summation
COMPONENTS = {
    ("pore_pressure", "P1"): {"f3", "f8", "f38"},
    ("sigma_min", "P1"): {"f3", "f5", "f6", "f7", "f8", "f38"},
    ("sigma_max", "P1"): {"f3", "f5", "f6", "f7", "f8", "f38"},
    ("pore_pressure", "P5"): {"f1", "f3", "f8", "f38"},
    ("sigma_min", "P5"): {"f1", "f3", "f5", "f6", "f7", "f8", "f38", "f13", "f16", "f17", "f18"},
    ("sigma_max", "P5"): {"f3", "f5", "f6", "f7", "f8", "f18"},
    ("pore_pressure", "P6"): {"f3", "f8", "f38", "f48"},
    ("sigma_min", "P6"): {"f1", "f12"},
    ("sigma_max", "P6"): {"f1", "f3", "f5", "f6", "f7", "f8", "f18"},
}


def test_catalog_f0_values_are_exact():
    roms = catalog()
    assert len(roms) == 9
    assert {(r.quantity, r.point): r.f0 for r in roms} == F0


def test_catalog_components_complete_and_unique():
    for r in catalog():
        names = [c.name() for c in r.components]
        assert len(names) == len(set(names)), (r.quantity, r.point)
        assert set(names) == COMPONENTS[(r.quantity, r.point)]
        for c in r.components:
            assert set(c.vars) <= set(range(1, 9))
            # the label names exactly the variables it consumes
            assert c.name() == "f" + "".join(map(str, c.vars))
        assert r.horizon == ONE_YEAR


def test_named_forms():
    assert catalog_rom("sigma_min", "P6").component("f1").kind == "octic"
    assert catalog_rom("sigma_min", "P6").component("f12").kind == "poly2d-3"
    assert catalog_rom("sigma_min", "P5").component("f1").kind == "fourier-4"
    assert catalog_rom("pore_pressure", "P1").component("f8").kind == "sine-sum-2"


def test_every_rom_is_finite_on_the_box():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)  # 10^4 is not a power of two
        u = qmc.Sobol(8, scramble=True, seed=0).random(10_000)
    lo, hi = np.array(BOX).T
    X = lo + (hi - lo) * u
    for r in catalog("literal") + catalog("centred"):
        y = eval_rom(r, X)
        assert y.shape == (10_000,)
        assert np.all(np.isfinite(y)), (r.quantity, r.point)


def test_p1_signs_as_transcribed():
    f38 = catalog_rom("pore_pressure", "P1").component("f38")
    signs = "".join("+" if c > 0 else "-" for c in f38.coeffs)
    assert signs == "----+++---"
    assert [abs(c) for c in f38.coeffs] == [1.161e6, 4.734e5, 6718, 1.856e5, 1.995e6, 1.667e5,
                                            1408, 1664, 5.835e5, 4.631e4]
    f8 = catalog_rom("pore_pressure", "P1").component("f8")
    assert f8.coeffs == (8.9e6, 0.43, 2.165, 7.8e5, 1.7, -0.14)


def test_catalog_is_immutable_shared_data():
    a = catalog_rom("pore_pressure", "P1")
    assert a is catalog_rom("pore_pressure", "P1")
    with pytest.raises(Exception):
        a.f0 = 0.0
    with pytest.raises(ValueError):
        catalog("other")
