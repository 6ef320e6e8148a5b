"""The eight design variables of the fracture-depletion study.

Variables are numbered 1..8 in this order, and index names such as ``S38``
refer to these numbers:

    1  a        fracture half-length, m
    2  b        fracture spacing, m
    3  p_f      fracture (production) pressure, Pa
    4  G        shear modulus, Pa
    5  nu_u     undrained Poisson ratio
    6  nu       drained Poisson ratio
    7  B        Skempton coefficient
    8  kappa    log10 of the mobility in m^2 Pa^-1 s^-1
"""
from __future__ import annotations

from .sobol import Dim, InputSpace

__all__ = ["VARIABLES", "BOX", "study_space", "SYMBOLS"]

VARIABLES = ("a", "b", "p_f", "G", "nu_u", "nu", "B", "kappa")
SYMBOLS = dict(zip(range(1, 9), VARIABLES))

BOX = (
    (10.0, 60.0),
    (10.0, 30.0),
    (1.0e7, 4.0e7),
    (1.0e9, 2.5e10),
    (0.30, 0.45),
    (0.10, 0.29),
    (0.3, 0.9),
    (-17.0, -10.0),
)


def study_space() -> InputSpace:
    """The study's input box; kappa is sampled as its base-10 exponent."""
    return InputSpace(Dim(n, lo, hi) for n, (lo, hi) in zip(VARIABLES, BOX))
