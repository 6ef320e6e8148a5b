"""Typed closed-form component functions and reduced-order models."""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from ..inputs import BOX, VARIABLES

__all__ = [
    "BasisForm",
    "RomSpec",
    "RomRangeWarning",
    "FormError",
    "eval_component",
    "eval_rom",
    "graded_exponents",
    "coefficient_count",
    "POLY1D_DEGREES",
]


class RomRangeWarning(UserWarning):
    """Inputs outside the box a ROM was built on; the value is an extrapolation."""


class FormError(ValueError):
    pass


POLY1D_DEGREES = {"linear": 1, "quadratic": 2, "cubic": 3, "octic": 8}


def graded_exponents(degree: int) -> tuple[tuple[int, int], ...]:
    """Monomials x^i y^j of total degree <= ``degree``: 1, x, y, x^2, xy, y^2, ..."""
    return tuple((d - j, j) for d in range(degree + 1) for j in range(d + 1))


def _parse(kind: str):
    if kind == "constant":
        return "constant", 0
    if kind in POLY1D_DEGREES:
        return "poly1d", POLY1D_DEGREES[kind]
    m = re.fullmatch(r"(poly1d|sine-sum|fourier|poly2d)-(\d+)", kind)
    if m:
        return m.group(1), int(m.group(2))
    if kind == "poly2d":
        return "poly2d", None
    raise FormError(f"unknown basis kind {kind!r}")


def coefficient_count(kind: str, exponents=None) -> int:
    family, k = _parse(kind)
    if family == "constant":
        return 1
    if family == "poly1d":
        return k + 1
    if family == "sine-sum":
        return 3 * k
    if family == "fourier":
        return 2 * k + 2
    if exponents is not None:
        return len(exponents)
    if k is None:
        raise FormError("kind 'poly2d' needs an explicit exponent list")
    return len(graded_exponents(k))


def _arity(kind: str) -> int:
    family, _ = _parse(kind)
    return {"constant": 0, "poly2d": 2}.get(family, 1)


@dataclass(frozen=True)
class BasisForm:
    """One component function with signed coefficients ``A0..Ak``.

    Kinds
    -----
    constant
        ``A0``.
    linear, quadratic, cubic, octic, poly1d-k
        Polynomial in one variable with coefficients in descending powers,
        ``A0 x^k + A1 x^(k-1) + ... + Ak``.
    sine-sum-k
        ``sum_j A(3j) sin(A(3j+1) x + A(3j+2))``.
    fourier-k
        ``A1 + sum_m [A(2m) cos(m A0 x) + A(2m+1) sin(m A0 x)]``, m = 1..k.
    poly2d-d
        Bivariate polynomial of total degree d in graded order
        ``1, x, y, x^2, xy, y^2, x^3, ...``; kind ``poly2d`` takes an
        explicit ``exponents`` list instead.

    ``vars`` are 1-based design-variable numbers.  With ``scaling="unit"``
    each variable is first mapped linearly from its box range onto [0, 1].
    """
    kind: str
    vars: tuple[int, ...]
    coeffs: tuple[float, ...]
    exponents: tuple[tuple[int, int], ...] | None = None
    scaling: str = "raw"
    label: str = ""
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(int(v) for v in self.vars))
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.exponents is not None:
            object.__setattr__(self, "exponents",
                               tuple((int(i), int(j)) for i, j in self.exponents))
        object.__setattr__(self, "provenance", tuple(self.provenance))
        if len(self.vars) != _arity(self.kind):
            raise FormError(f"{self.kind} takes {_arity(self.kind)} variables, got {self.vars}")
        if any(not 1 <= v <= len(VARIABLES) for v in self.vars):
            raise FormError(f"variable numbers must be in 1..{len(VARIABLES)}: {self.vars}")
        want = coefficient_count(self.kind, self.exponents)
        if len(self.coeffs) != want:
            raise FormError(f"{self.kind} needs {want} coefficients, got {len(self.coeffs)}")
        if self.scaling not in ("raw", "unit"):
            raise FormError(f"unknown scaling {self.scaling!r}")

    @property
    def family(self) -> str:
        return _parse(self.kind)[0]

    @property
    def monomials(self) -> tuple[tuple[int, int], ...]:
        if self.exponents is not None:
            return self.exponents
        return graded_exponents(_parse(self.kind)[1])

    def zeroed(self) -> "BasisForm":
        return replace(self, coeffs=tuple(0.0 for _ in self.coeffs))

    def name(self) -> str:
        return self.label or "f" + "".join(str(v) for v in self.vars)


def _columns(b: BasisForm, x: np.ndarray, box) -> list[np.ndarray]:
    cols = []
    for v in b.vars:
        col = x[..., v - 1]
        if b.scaling == "unit":
            lo, hi = box[v - 1]
            col = (col - lo) / (hi - lo)
        cols.append(col)
    return cols


def _check_box(x, vars_, box):
    for v in vars_:
        lo, hi = box[v - 1]
        col = x[..., v - 1]
        tol = 1e-9 * max(abs(lo), abs(hi))
        if np.any((col < lo - tol) | (col > hi + tol)):
            name = VARIABLES[v - 1] if len(box) == len(VARIABLES) else f"x{v}"
            warnings.warn(f"variable {v} ({name}) outside [{lo}, {hi}]; "
                          "ROM value is an extrapolation", RomRangeWarning, stacklevel=3)


def eval_component(b: BasisForm, x, box=BOX, *, check_range: bool = True):
    """Evaluate one component at design point(s) ``x`` of shape (..., len(box)).

    The default box holds the eight study variables; ROMs built on a custom
    input space carry their own box.
    """
    x = np.asarray(x, float)
    if x.shape[-1] != len(box):
        raise FormError(f"input points need {len(box)} coordinates, got {x.shape[-1]}")
    if check_range:
        _check_box(x, b.vars, box)
    A = np.asarray(b.coeffs)
    fam = b.family
    if fam == "constant":
        return np.full(x.shape[:-1], A[0]) if x.ndim > 1 else float(A[0])
    cols = _columns(b, x, box)
    if fam == "poly1d":
        out = np.polyval(A, cols[0])
    elif fam == "sine-sum":
        t = cols[0]
        out = sum(A[3 * j] * np.sin(A[3 * j + 1] * t + A[3 * j + 2]) for j in range(len(A) // 3))
    elif fam == "fourier":
        t = cols[0]
        w = A[0]
        out = A[1] + sum(A[2 * m] * np.cos(m * w * t) + A[2 * m + 1] * np.sin(m * w * t)
                         for m in range(1, (len(A) - 2) // 2 + 1))
    else:
        u, v = cols
        out = sum(c * u**i * v**j for c, (i, j) in zip(A, b.monomials))
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class RomSpec:
    """``f0`` plus a sum of component functions for one quantity at one point."""
    quantity: str  # pore_pressure | sigma_min | sigma_max
    point: str
    horizon: float
    f0: float
    components: tuple[BasisForm, ...]
    declared_accuracy: float = float("nan")
    name: str = ""
    box: tuple[tuple[float, float], ...] = BOX
    provenance: tuple[str, ...] = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "box", tuple(tuple(map(float, b)) for b in self.box))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def component(self, label: str) -> BasisForm:
        for c in self.components:
            if c.name() == label:
                return c
        raise KeyError(label)

    def with_f0(self, f0: float) -> "RomSpec":
        return replace(self, f0=float(f0))

    def zeroed(self) -> "RomSpec":
        return replace(self, components=tuple(c.zeroed() for c in self.components))


def eval_rom(r: RomSpec, x, *, check_range: bool = True):
    """``f0`` plus every component, at point(s) ``x`` of shape (..., 8)."""
    x = np.asarray(x, float)
    total = np.full(x.shape[:-1], r.f0, float)
    for c in r.components:
        total = total + eval_component(c, x, r.box, check_range=check_range)
    return total if total.ndim else float(total)
