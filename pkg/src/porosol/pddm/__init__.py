"""Plane-strain poroelastic displacement discontinuity simulator."""
from .kernels import (
    SingularPointError,
    dd_pressure_kernel,
    elastic_dd_kernel,
    fluid_source_kernel,
    fluid_source_point,
)
from .mesh import (
    Element,
    Elements,
    Fracture,
    FractureSystem,
    GeometryError,
    discretize,
    two_fracture_system,
)
from .scenario import Scenario, simulate
from .solver import (
    BC_MODES,
    BoundaryCondition,
    DiscontinuityHistory,
    FarFieldState,
    FieldSample,
    NonFiniteSolutionError,
    SingularSystemError,
    assemble_history,
    assemble_step,
    depletion_profile,
    field_at,
    production_bc,
    time_march,
)

__all__ = [
    "BC_MODES", "BoundaryCondition", "DiscontinuityHistory", "Element", "Elements",
    "FarFieldState", "FieldSample", "Fracture", "FractureSystem", "GeometryError",
    "NonFiniteSolutionError", "Scenario", "SingularPointError", "SingularSystemError",
    "assemble_history", "assemble_step", "dd_pressure_kernel", "depletion_profile",
    "discretize", "elastic_dd_kernel", "field_at", "fluid_source_kernel",
    "fluid_source_point", "production_bc", "simulate", "time_march",
    "two_fracture_system",
]
