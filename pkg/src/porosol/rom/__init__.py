"""Reduced-order models: closed-form components, the shipped catalog and fitting."""
from .basis import (POLY1D_DEGREES, BasisForm, FormError, RomRangeWarning, RomSpec,
                    coefficient_count, eval_component, eval_rom, graded_exponents)
from .catalog import ONE_YEAR, catalog, catalog_rom
from .fit import (ComponentFit, FitError, IllConditionedFitError, UnderPopulatedBinError,
                  fit_first_order, fit_form, fit_rom, fit_second_order)
from .io import (SCHEMA, SchemaError, dumps_rom, load_rom, loads_rom, rom_from_dict,
                 rom_to_dict, save_rom, write_fit_diagnostics)

__all__ = [
    "BasisForm", "RomSpec", "RomRangeWarning", "FormError", "POLY1D_DEGREES",
    "coefficient_count", "eval_component", "eval_rom", "graded_exponents",
    "ONE_YEAR", "catalog", "catalog_rom",
    "ComponentFit", "FitError", "IllConditionedFitError", "UnderPopulatedBinError",
    "fit_first_order", "fit_form", "fit_rom", "fit_second_order",
    "SCHEMA", "SchemaError", "dumps_rom", "load_rom", "loads_rom", "rom_from_dict",
    "rom_to_dict", "save_rom", "write_fit_diagnostics",
]
