"""Shipped presets: far-field states, horizons, fidelity tiers, observation points."""
from __future__ import annotations

from dataclasses import dataclass

from ..pddm import FarFieldState
from ..rom.catalog import ONE_YEAR

__all__ = ["ONE_YEAR", "ONE_MONTH", "HORIZONS", "HORIZON_SETS", "FAR_FIELDS", "Tier", "TIERS",
           "POINT_IDS", "POINT_FACTORS", "QUANTITIES", "observation_points", "horizon_seconds"]

ONE_MONTH = ONE_YEAR / 12

HORIZONS = {"1m": ONE_MONTH, "1y": ONE_YEAR, "3y": 3 * ONE_YEAR, "5y": 5 * ONE_YEAR}
# the sensitivity study uses 1 month / 1 year / 3 years; the depletion
# comparison uses 1 month / 1 year / 5 years
HORIZON_SETS = {"sobol": ("1m", "1y", "3y"), "depletion": ("1m", "1y", "5y")}

FAR_FIELDS = {
    # reservoir far field used by the sensitivity study
    "sensitivity": FarFieldState(sigma_H=58.60e6, sigma_h=55.15e6, p_r=48.26e6),
    # the two-fracture depletion example quotes a lower maximum stress
    "two_fracture": FarFieldState(sigma_H=56.53e6, sigma_h=55.15e6, p_r=48.26e6),
}


@dataclass(frozen=True)
class Tier:
    elements_per_fracture: int
    n_steps: int


TIERS = {"coarse": Tier(20, 20), "paper": Tier(40, 50)}

QUANTITIES = ("pore_pressure", "sigma_min", "sigma_max")

POINT_IDS = ("P1", "P2", "P3", "P4", "P5", "P6")

# (x / b, y / a) with the fractures at x = +-b/2 spanning |y| <= a and the
# well along the x axis.  P6 sits midway between the fractures on the well,
# P5 midway between the tips, P2/P3 one spacing outside the outer fracture
# (on the well and level with the tips), P1/P4 one half-length beyond the
# tips on the offset-well path.
POINT_FACTORS = {
    "P1": (1.5, 2.0),
    "P2": (1.5, 0.0),
    "P3": (1.5, 1.0),
    "P4": (0.0, 2.0),
    "P5": (0.0, 1.0),
    "P6": (0.0, 0.0),
}


def observation_points(a: float, b: float, overrides: dict | None = None) -> dict[str, tuple[float, float]]:
    """Coordinates (m) of the six observation points for half-length ``a`` and spacing ``b``.

    ``overrides`` maps point ids to ``(x / b, y / a)`` factor pairs.
    """
    factors = dict(POINT_FACTORS)
    for k, v in (overrides or {}).items():
        if k not in factors:
            raise KeyError(f"unknown observation point {k!r}; expected one of {POINT_IDS}")
        factors[k] = (float(v[0]), float(v[1]))
    return {k: (fx * b, fy * a) for k, (fx, fy) in factors.items()}


def horizon_seconds(label: str) -> float:
    """Seconds for a horizon label (``1m``, ``1y``, ``3y``, ``5y``) or a number of seconds."""
    if label in HORIZONS:
        return HORIZONS[label]
    try:
        return float(label)
    except ValueError:
        raise KeyError(f"unknown horizon {label!r}; use one of {sorted(HORIZONS)} or seconds") from None
