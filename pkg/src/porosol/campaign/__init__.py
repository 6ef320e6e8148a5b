"""Studies built on the simulator: depletion profiles, sensitivity indices and ROM builds."""
from .config import ConfigError, StudyConfig, config_from_ini, config_hash, load_config
from .depletion import (PROFILE_COLUMNS, DepletionStudy, emit_depletion_outputs, midline,
                        region_of, run_depletion_study)
from .outputs import OutputError, header_lines
from .presets import (FAR_FIELDS, HORIZON_SETS, HORIZONS, ONE_MONTH, ONE_YEAR, POINT_FACTORS,
                      POINT_IDS, QUANTITIES, TIERS, Tier, horizon_seconds, observation_points)
from .rom_build import DEFAULT_FORMS, PAIR_FORM, RomBuild, run_rom_build, select_components
from .sobol_study import (INDEX_COLUMNS, OUTPUT_KEYS, WORKERS_ENV, CampaignError, CampaignRecord,
                          SobolStudy, emit_sobol_outputs, run_sobol_study, simulator_model,
                          worker_count)

__all__ = [
    "ConfigError", "StudyConfig", "config_from_ini", "config_hash", "load_config",
    "PROFILE_COLUMNS", "DepletionStudy", "emit_depletion_outputs", "midline", "region_of",
    "run_depletion_study", "OutputError", "header_lines",
    "FAR_FIELDS", "HORIZON_SETS", "HORIZONS", "ONE_MONTH", "ONE_YEAR", "POINT_FACTORS",
    "POINT_IDS", "QUANTITIES", "TIERS", "Tier", "horizon_seconds", "observation_points",
    "DEFAULT_FORMS", "PAIR_FORM", "RomBuild", "run_rom_build", "select_components",
    "INDEX_COLUMNS", "OUTPUT_KEYS", "WORKERS_ENV", "CampaignError", "CampaignRecord",
    "SobolStudy", "emit_sobol_outputs", "run_sobol_study", "simulator_model", "worker_count",
]
