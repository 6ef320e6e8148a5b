"""Poroelastic material constants and the coefficients derived from them.

A saturated rock is described by five independent constants: shear modulus
``G``, drained and undrained Poisson ratios ``nu`` and ``nu_u``, Skempton
coefficient ``B`` and mobility ``kappa`` (permeability over fluid viscosity,
m^2 Pa^-1 s^-1).  Everything else (diffusivity, Biot coefficient, the
poroelastic stress coefficient) is recomputed from these on demand.
"""
from __future__ import annotations

import configparser
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources

__all__ = [
    "MaterialError",
    "PoroelasticMaterial",
    "DerivedPoroelastic",
    "diffusivity",
    "biot_alpha",
    "stress_coefficient",
    "derived",
    "validate",
    "load_rocks",
    "rocks_from_ini",
    "DEFAULT_VISCOSITY",
]

#: Fluid viscosity (Pa s) used to turn tabulated permeabilities into mobilities.
DEFAULT_VISCOSITY = 1.0e-3


class MaterialError(ValueError):
    """Raised when a derived coefficient is undefined for the given constants."""


@dataclass(frozen=True)
class PoroelasticMaterial:
    G: float
    nu: float
    nu_u: float
    B: float
    kappa: float
    name: str = ""
    # free-form annotations (source permeability, tabulated c and alpha, ...)
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def replace(self, **changes) -> "PoroelasticMaterial":
        values = dict(G=self.G, nu=self.nu, nu_u=self.nu_u, B=self.B,
                      kappa=self.kappa, name=self.name, meta=self.meta)
        values.update(changes)
        return PoroelasticMaterial(**values)


@dataclass(frozen=True)
class DerivedPoroelastic:
    diffusivity: float
    biot_alpha: float


def diffusivity(m: PoroelasticMaterial) -> float:
    """Pore-pressure diffusivity c in m^2/s.

    Raises
    ------
    MaterialError
        If ``nu_u <= nu`` (the denominator vanishes or changes sign) or
        ``nu_u >= 1``.
    """
    if not m.nu_u > m.nu:
        raise MaterialError(
            f"diffusivity undefined: nu_u ({m.nu_u}) must exceed nu ({m.nu})")
    if m.nu_u >= 1.0:
        raise MaterialError(f"diffusivity undefined for nu_u = {m.nu_u}")
    num = 2.0 * m.kappa * m.B**2 * m.G * (1.0 - m.nu) * (1.0 + m.nu_u) ** 2
    den = 9.0 * (1.0 - m.nu_u) * (m.nu_u - m.nu)
    return num / den


def biot_alpha(m: PoroelasticMaterial) -> float:
    """Biot effective-stress coefficient from (nu, nu_u, B).

    Values above one are physically inadmissible; a ``RuntimeWarning`` is
    issued but the number is returned unchanged.
    """
    if m.nu == 0.5:
        raise MaterialError("Biot coefficient undefined for nu = 0.5")
    if m.B == 0.0:
        raise MaterialError("Biot coefficient undefined for B = 0")
    alpha = 3.0 * (m.nu_u - m.nu) / (m.B * (1.0 - 2.0 * m.nu) * (1.0 + m.nu_u))
    if alpha > 1.0:
        warnings.warn(f"Biot coefficient {alpha:.4g} exceeds 1 for {m.name or m}",
                      RuntimeWarning, stacklevel=2)
    return alpha


def stress_coefficient(m: PoroelasticMaterial) -> float:
    """Poroelastic stress coefficient eta = alpha (1 - 2 nu) / (2 (1 - nu)).

    This is the factor coupling a pore-pressure change to the in-plane total
    stress change under plane strain; it lies in [0, 0.5] for admissible rocks.
    """
    alpha = 3.0 * (m.nu_u - m.nu) / (m.B * (1.0 - 2.0 * m.nu) * (1.0 + m.nu_u))
    return alpha * (1.0 - 2.0 * m.nu) / (2.0 * (1.0 - m.nu))


def derived(m: PoroelasticMaterial) -> DerivedPoroelastic:
    return DerivedPoroelastic(diffusivity=diffusivity(m), biot_alpha=biot_alpha(m))


def validate(m: PoroelasticMaterial) -> list[str]:
    """Return every violated admissibility condition; empty when admissible."""
    problems = []
    for attr, label in (("G", "G"), ("nu", "nu"), ("nu_u", "nu_u"), ("B", "B"),
                        ("kappa", "kappa")):
        if not math.isfinite(getattr(m, attr)):
            problems.append(f"{label} must be finite")
    if not m.G > 0:
        problems.append("G > 0")
    if not m.kappa > 0:
        problems.append("kappa > 0")
    if not m.nu > 0:
        problems.append("nu > 0")
    if not m.nu < m.nu_u:
        problems.append("nu < nu_u")
    if not m.nu_u < 0.5:
        problems.append("nu_u < 0.5")
    if not m.B > 0:
        problems.append("B > 0")
    if not m.B <= 1:
        problems.append("B <= 1")
    return problems


def rocks_from_ini(text: str) -> dict[str, PoroelasticMaterial]:
    """Parse a rock catalog: one ``[section]`` per rock.

    Each section needs ``G``, ``nu``, ``nu_u``, ``B`` and either ``kappa`` or
    ``permeability`` (with optional ``viscosity``, default 1e-3 Pa s).  Any
    ``reported_*`` keys are kept as annotations in ``meta`` and never used.
    """
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    cp.read_string(text)
    rocks = {}
    for name in cp.sections():
        sec = cp[name]
        meta = {k: float(v) for k, v in sec.items()
                if k.startswith("reported_") or k in ("permeability", "viscosity")}
        if "kappa" in sec:
            kappa = sec.getfloat("kappa")
        else:
            mu = sec.getfloat("viscosity", DEFAULT_VISCOSITY)
            meta.setdefault("viscosity", mu)
            kappa = sec.getfloat("permeability") / mu
        rocks[name] = PoroelasticMaterial(
            G=sec.getfloat("G"), nu=sec.getfloat("nu"), nu_u=sec.getfloat("nu_u"),
            B=sec.getfloat("B"), kappa=kappa, name=name, meta=meta)
    return rocks


def load_rocks() -> dict[str, PoroelasticMaterial]:
    """The five reference rocks shipped with the package."""
    text = resources.files("porosol").joinpath("data/rocks.ini").read_text()
    return rocks_from_ini(text)
