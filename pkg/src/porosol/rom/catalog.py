"""Built-in one-year reduced-order models at observation points P1, P5 and P6.

Coefficient magnitudes and the sign pattern of every term are stored
separately so the transcription can be audited line by line: ``signs`` lists
one ``+``/``-`` per coefficient, in coefficient order.  Where the source
forms are ambiguous the resolution is recorded in the component's
``provenance``.
"""
from __future__ import annotations

from functools import lru_cache

from .basis import BasisForm, RomSpec

__all__ = ["catalog", "catalog_rom", "ONE_YEAR"]

ONE_YEAR = 365.25 * 86400.0

A, B_, PF, G, NU_U, NU, B, K = 1, 2, 3, 4, 5, 6, 7, 8


def _c(kind, vars_, mags, signs, label, scaling="raw", exponents=None, provenance=()):
    signs = signs.split()
    if len(signs) != len(mags):
        raise ValueError(f"{label}: {len(mags)} magnitudes but {len(signs)} signs")
    coeffs = tuple(m if s == "+" else -m for m, s in zip(mags, signs))
    return BasisForm(kind, vars_, coeffs, exponents, scaling, label, tuple(provenance))


# Monomials of the six-term P1 maximum-stress interaction: 1, p, k, p k, k^2, k^3
_P1_SMAX_F38_EXP = ((0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (0, 3))

# Bivariate polynomials and the octic use the design variables normalised to
# [0, 1]: on SI inputs their terms reach 1e25 Pa and more.  The two exceptions
# (P5 f16, P1 maximum-stress f38) only balance on SI inputs.
U = "unit"


def _p1(f3_reading):
    f3_signs = {"literal": "+ +", "centred": "+ -"}[f3_reading]
    pp = RomSpec("pore_pressure", "P1", ONE_YEAR, 4.01e7, (
        _c("linear", (PF,), (0.2348, 2.93e6), f3_signs, "f3",
           provenance=(f"reading={f3_reading}",
                       "literal: A0 p_f + A1 as printed; centred: A0 p_f - A1, "
                       "which has near-zero mean over the box")),
        _c("sine-sum-2", (K,), (8.9e6, 0.43, 2.165, 7.8e5, 1.7, 0.14), "+ + + + + -", "f8"),
        _c("poly2d-3", (PF, K), (1.161e6, 4.734e5, 6718, 1.856e5, 1.995e6, 1.667e5,
                                 1408, 1664, 5.835e5, 4.631e4),
           "- - - - + + + - - -", "f38", U),
    ), 0.9, "P1 pore pressure")
    smin = RomSpec("sigma_min", "P1", ONE_YEAR, 5.13e7, (
        _c("linear", (PF,), (0.1284, 2.248e6), "+ +", "f3",
           provenance=("the printed variable symbol p_p is read as p_f",)),
        _c("linear", (NU_U,), (1.117e7, 5.529e6), "+ +", "f5"),
        _c("linear", (NU,), (8.878e6, 2.898e5), "+ -", "f6"),
        _c("cubic", (B,), (1.508e7, 3.305e7, 2.656, 5.05e6), "+ - + -", "f7",
           provenance=("A2 = 2.656 kept as tabulated although 2.656e7 would fit "
                       "the neighbouring magnitudes",)),
        _c("sine-sum-3", (K,), (1.236e6, 0.9195, 2.074, 6.497e6, 0.1707, 1.042,
                                1.97e5, 2.26, 7.68), "+ + + + + - + + +", "f8"),
        _c("poly2d-3", (PF, K), (4.47e5, 1.404e5, 1.442e5, 1.806e5, 9.587e5, 2.08e5,
                                 6396, 5117, 2.532e5, 1.505e4),
           "- + - - - + - + - +", "f38", U),
    ), 0.8, "P1 minimum horizontal stress",
        provenance=("declared accuracy not stated; 0.8 assumed",))
    smax = RomSpec("sigma_max", "P1", ONE_YEAR, 5.55e7, (
        _c("linear", (PF,), (1.0, 1.604e6), "+ -", "f3"),
        _c("linear", (NU_U,), (8.78e6, 4.468e6), "- +", "f5"),
        _c("quadratic", (NU,), (2.933e7, 4.687e6, 9.515e5), "+ - +", "f6"),
        _c("cubic", (B,), (1.392e7, 2.93e7, 2.233e7, 4.276e6), "+ - + -", "f7"),
        _c("sine-sum-3", (K,), (1.433e6, 0.8957, 1.726, 5.315e6, 0.1887, 0.804,
                                2.289e5, 2.185, 6.766), "+ + + + + - + + +", "f8"),
        _c("poly2d", (PF, K), (3.951e7, 2.278, 4.13e6, 0.2681, 7.187e4, 1797),
           "- + - + - +", "f38", exponents=_P1_SMAX_F38_EXP,
           provenance=("six-term monomial set taken as printed",
                       "SI inputs: the p_f terms are negligible on unit inputs")),
    ), 0.9, "P1 maximum horizontal stress")
    return pp, smin, smax


def _p5():
    pp = RomSpec("pore_pressure", "P5", ONE_YEAR, 3.23e7, (
        _c("quadratic", (A,), (3439, 5929, 9.585e6), "- - +", "f1"),
        _c("linear", (PF,), (0.5258, 9.196e6), "+ -", "f3"),
        _c("sine-sum-3", (K,), (2.939e7, 0.107, 1.871, 2.294e6, 1.085, 0.06293,
                                4.435e5, 2.071, 2.674), "+ + - + + - + + +", "f8"),
        _c("poly2d-3", (PF, K), (3.526e6, 1.341e6, 5.341e5, 2.164e5, 2.553e6, 5.576e5,
                                 3049, 1.674e4, 7.557e5, 1.106e5),
           "- + - - + + + - - +", "f38", U),
    ), 0.8, "P5 pore pressure", provenance=("declared accuracy not stated; 0.8 assumed",))
    smin = RomSpec("sigma_min", "P5", ONE_YEAR, 4.75e7, (
        _c("fourier-4", (A,), (0.1193, 1.95e6, 8.279e5, 4.604e6, 9.287e5, 2.434e6,
                               8.653e5, 1.009e6, 3.608e5, 2.868e5),
           "+ + - + + + + + + +", "f1"),
        _c("linear", (PF,), (0.2848, 5.914e6), "+ -", "f3"),
        _c("linear", (NU_U,), (2.227e7, 1.066e7), "- +", "f5"),
        _c("linear", (NU,), (1.8e7, 1.146e6), "+ -", "f6"),
        _c("quadratic", (B,), (1.58e7, 2.802e7, 8.152e6), "- + -", "f7"),
        _c("sine-sum-2", (K,), (1.38e6, 1.191, 1.187, 7.738e6, 0.298, 0.6055),
           "+ + + + + +", "f8"),
        _c("poly2d-3", (PF, K), (9.637e5, 9.514e4, 4.621e5, 2.127e5, 1.347e6, 3.006e5,
                                 1.411e4, 4099, 1.667e5, 2.057e5),
           "- + - - + + + + - +", "f38", U),
        _c("poly2d-4", (A, PF), (1.123e6, 4.399e5, 1.114e6, 5.819e5, 1.24e6, 9.329e5,
                                 9.442e4, 8.217e5, 1.604e4, 1.432e5, 9.507e4, 6.673e5,
                                 8912, 152.3, 2.301e5),
           "- - + + + - + - - - - + + - +", "f13", U,
           provenance=("'+ -A5' read as -A5", "'A-7' read as -A7",
                       "missing operator before A11 read as +",
                       "'A_14' read as +A14")),
        _c("poly2d-3", (A, NU), (1.06e7, 1.284e6, 9.594e7, 1.082e4, 7.181e6, 1.228e9,
                                 99.63, 9.425e4, 3.635e5, 2.268e9),
           "+ - + + + - + - - +", "f16",
           provenance=("SI inputs: the nu^2 and nu^3 magnitudes only balance for "
                       "nu of order 0.1",)),
        _c("poly2d-4", (A, B), (1.154e6, 7.664e5, 1.28e6, 3.21e5, 1.673e6, 1.64e5,
                                2.329e5, 9.159e5, 7.561e4, 1.482e5, 1.409e5, 8.554e5,
                                4.41e5, 4.697e4, 1.566e5),
           "- - + + + + + - - - - - + - -", "f17", U),
        _c("poly2d-4", (A, K), (3.744e6, 1.954e6, 2.229e6, 1.827e6, 1.111e5, 1.796e6,
                                4.715e5, 1.76e6, 7.387e5, 1.013e5, 2.414e5, 9.83e5,
                                7.301e5, 8.411e5, 3.61e5),
           "- - - + + + + + + + - + - - -", "f18", U),
    ), 0.9, "P5 minimum horizontal stress")
    smax = RomSpec("sigma_max", "P5", ONE_YEAR, 5.05e7, (
        _c("linear", (PF,), (0.339, 8.31e6), "+ -", "f3"),
        _c("linear", (NU_U,), (3.209e7, 1.293e7), "- +", "f5"),
        _c("linear", (NU,), (2.718e7, 4.38e6), "+ -", "f6"),
        _c("cubic", (B,), (2.28e7, 6e7, 5.831e7, 1.648e7), "+ - + -", "f7"),
        _c("fourier-2", (K,), (0.6016, 1.648e6, 3.453e6, 2.723e6, 1.789e4, 1.512e6),
           "+ + - + + -", "f8"),
        _c("poly2d-4", (A, K), (1.434e6, 1.274e6, 2.579e5, 7.189e5, 2.978e6, 1.117e6,
                                3.386e4, 6.242e4, 7.895e5, 4.039e4, 2.015e5, 4.165e5,
                                1.227e5, 1.066e6, 3.404e5),
           "- - + + + + + + + - - - + - -", "f18", U,
           provenance=("'A{12}' read as +A12",)),
    ), 0.9, "P5 maximum horizontal stress")
    return pp, smin, smax


def _p6():
    pp = RomSpec("pore_pressure", "P6", ONE_YEAR, 2.65e7, (
        _c("linear", (PF,), (0.824, 1.789e7), "+ -", "f3",
           provenance=("printed as f1 but written in p_f; relabelled f3",)),
        _c("sine-sum-2", (K,), (1.44e8, 0.4676, 2.499, 1.352e8, 0.5053, 6.469),
           "+ + + + + -", "f8"),
        _c("poly2d-3", (PF, K), (3.644e6, 2.137e6, 1.057e6, 1.295e5, 2.476e6, 7.658e5,
                                 6.063e4, 1060, 1.79e6, 3.814e5),
           "- + - - + + + - - +", "f38", U,
           provenance=("printed in the variables (a, kappa); read as (p_f, kappa) "
                       "to match the index label 38",)),
        _c("poly2d-5", (G, K), (3.201e6, 8.985e5, 6.924e5, 1.588e6, 2.344e6, 3.294e6,
                                9.518e5, 1.285e6, 4.197e6, 3.788e4, 8.773e5, 2.672e4,
                                1.711e5, 1.057e6, 9.727e5, 3.976e5, 2.538e4, 1.006e5,
                                7.33e5, 1.885e6, 2.617e5),
           "- + + - + + - - - - + + - - - + - + + + -", "f48", U),
    ), 0.9, "P6 pore pressure")
    smin = RomSpec("sigma_min", "P6", ONE_YEAR, 5.53e7, (
        _c("octic", (A,), (5806, 4.612e4, 1.266e5, 1.355e5, 4994, 1.696e5, 2.416e5,
                           1.984e5, 3.771e4), "- + - + + - - - -", "f1", U),
        _c("poly2d-3", (A, B_), (3.886e4, 3.676e4, 5.765e4, 3.558e4, 1.259e5, 1.47e4,
                                 2.868e4, 5.699e4, 1.4e4, 3266),
           "- + - + - + - + + -", "f12", U),
    ), 0.65, "P6 minimum horizontal stress")
    smax = RomSpec("sigma_max", "P6", ONE_YEAR, 5.05e7, (
        _c("quadratic", (A,), (1708, 1.016e5, 1.436e6), "- + -", "f1"),
        _c("linear", (PF,), (0.335, 8.67e6), "+ -", "f3"),
        _c("linear", (NU_U,), (3.19e7, 1.2e7), "- +", "f5"),
        _c("linear", (NU,), (2.72e7, 5.1e6), "+ -", "f6"),
        _c("quadratic", (B,), (2.25e7, 2.565e7, 1.46e7), "- + -", "f7"),
        _c("sine-sum-3", (K,), (2.565e7, 1.271, 3.662, 1.506e7, 1.411, 4.119,
                                1.153e7, 1.016, 10.12), "+ + + + + - + + +", "f8"),
        _c("poly2d-3", (A, K), (2.528e6, 3.111e5, 3.678e4, 4.567e4, 6.293e5, 3.488e5,
                                6.563e4, 1.54e5, 1.734e5, 4.125e4),
           "- - - - + + + - + -", "f18", U),
    ), 0.9, "P6 maximum horizontal stress",
        provenance=("coefficients follow the table captioned for the maximum stress",))
    return pp, smin, smax


@lru_cache(maxsize=2)
def _all(f3_reading: str) -> tuple[RomSpec, ...]:
    return (*_p1(f3_reading), *_p5(), *_p6())


def catalog(f3_reading: str = "literal") -> list[RomSpec]:
    """The nine built-in one-year ROMs: three quantities at P1, P5 and P6.

    ``f3_reading`` selects the sign of the constant in the P1 pore-pressure
    ``f3`` term: ``"literal"`` (as printed, ``A0 p_f + A1``) or
    ``"centred"`` (``A0 p_f - A1``).
    """
    if f3_reading not in ("literal", "centred"):
        raise ValueError(f"unknown f3 reading {f3_reading!r}")
    return list(_all(f3_reading))


def catalog_rom(quantity: str, point: str, f3_reading: str = "literal") -> RomSpec:
    for r in catalog(f3_reading):
        if r.quantity == quantity and r.point == point:
            return r
    raise KeyError(f"no catalog ROM for {quantity} at {point}")
