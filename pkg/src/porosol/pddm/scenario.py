"""A complete production scenario and a one-call simulation driver."""
from __future__ import annotations

from dataclasses import dataclass

from ..material import PoroelasticMaterial
from .mesh import FractureSystem, discretize
from .solver import (
    DiscontinuityHistory,
    FarFieldState,
    production_bc,
    time_march,
)

__all__ = ["Scenario", "simulate"]


@dataclass(frozen=True)
class Scenario:
    """Geometry, rock, in-situ state and production schedule of one run.

    The fracture fluid pressure drops from ``far_field.p_r`` to ``p_f`` at
    ``t = 0`` and is held for ``horizon`` seconds, marched in ``n_steps``
    uniform slabs.
    """
    system: FractureSystem
    material: PoroelasticMaterial
    far_field: FarFieldState
    p_f: float
    horizon: float
    n_steps: int = 50
    bc_mode: str = "pressure_change"
    coupled: bool = False

    @property
    def dt(self) -> float:
        return self.horizon / self.n_steps


def simulate(scenario: Scenario) -> DiscontinuityHistory:
    elements = discretize(scenario.system)
    bc = production_bc(elements, scenario.far_field, scenario.p_f, scenario.bc_mode)
    hist = time_march(elements, scenario.material, bc, scenario.dt, scenario.n_steps,
                      coupled=scenario.coupled, far_field=scenario.far_field)
    hist.meta["scenario"] = scenario
    return hist
