"""Poroelastic depletion simulation, Sobol sensitivity analysis and reduced-order models
for hydraulically fractured wells."""
__version__ = "0.1.0"

from . import material, pddm, rom, sobol  # noqa: E402
from .inputs import BOX, VARIABLES, study_space  # noqa: E402
from .material import PoroelasticMaterial, biot_alpha, diffusivity, load_rocks  # noqa: E402

__all__ = ["__version__", "material", "pddm", "rom", "sobol", "campaign", "BOX", "VARIABLES",
           "study_space", "PoroelasticMaterial", "biot_alpha", "diffusivity", "load_rocks"]


def __getattr__(name):
    # the campaign layer pulls in the whole stack; load it on first use
    if name == "campaign":
        import importlib
        return importlib.import_module(".campaign", __name__)
    raise AttributeError(name)
