"""Study configuration and its INI representation.

A study file looks like::

    [study]
    name = desk
    seed = 0
    N = 64
    tier = coarse
    horizons = 1y            ; labels 1m, 1y, 3y, 5y or seconds
    far_field = sensitivity       ; preset name, or give [far_field] values
    output_dir = out/desk

    [geometry]               ; depletion study geometry and production
    a = 30
    b = 30
    p_f = 27e6

    [rocks]                  ; depletion study: which shipped rocks to run
    names = Berea Sandstone, Weber Sandstone

    [points]                 ; observation point overrides as x/b, y/a
    P1 = 1.5, 2.0

    [space]                  ; optional input-box override: lo, hi[, log10]
    p_f = 2e7, 3e7

    [rom]
    threshold = 0.9

Relative ``output_dir`` values resolve against the config file's folder.
"""
from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from ..inputs import BOX, VARIABLES
from ..pddm import BC_MODES, FarFieldState
from ..sobol import Dim, InputSpace
from .presets import FAR_FIELDS, HORIZON_SETS, TIERS, horizon_seconds

__all__ = ["StudyConfig", "ConfigError", "load_config", "config_from_ini", "config_hash"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class StudyConfig:
    """Everything that determines a study's numbers.

    ``space`` entries are ``(name, lo, hi, scale)`` in design-variable order
    (the eight study variables unless overridden).  ``point_overrides`` maps
    point ids to ``(x / b, y / a)``.
    """
    name: str = "study"
    seed: int = 0
    N: int = 64
    tier: str = "coarse"
    horizons: tuple[str, ...] = HORIZON_SETS["sobol"]
    far_field_preset: str = "sensitivity"
    far_field: FarFieldState = FAR_FIELDS["sensitivity"]
    a: float = 30.0
    b: float = 30.0
    p_f: float = 27.0e6
    rocks: tuple[str, ...] | None = None
    point_overrides: tuple[tuple[str, tuple[float, float]], ...] = ()
    space: tuple[tuple[str, float, float, str], ...] = tuple(
        (n, lo, hi, "linear") for n, (lo, hi) in zip(VARIABLES, BOX))
    bc_mode: str = "pressure_change"
    coupled: bool = False
    method: str = "sobol"
    n_boot: int = 200
    report_threshold: float = 0.01
    failure_budget: float = 0.01
    rom_threshold: float = 0.9
    profile_points: int = 61
    profile_extent: float = 3.0
    output_dir: Path | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.horizons:
            raise ConfigError("the horizon set must not be empty")
        for h in self.horizons:
            horizon_seconds(h)
        if self.tier not in TIERS:
            raise ConfigError(f"unknown fidelity tier {self.tier!r}; choose from {sorted(TIERS)}")
        if self.bc_mode not in BC_MODES:
            raise ConfigError(f"unknown boundary mode {self.bc_mode!r}; choose from {BC_MODES}")
        if self.N < 2:
            raise ConfigError("N must be at least 2")
        if not 0 <= self.failure_budget < 1:
            raise ConfigError("failure_budget must lie in [0, 1)")

    @property
    def input_space(self) -> InputSpace:
        return InputSpace(Dim(n, lo, hi, sc) for n, lo, hi, sc in self.space)

    @property
    def points(self) -> dict[str, tuple[float, float]]:
        return dict(self.point_overrides)

    @property
    def hash(self) -> str:
        return config_hash(self)

    def with_(self, **changes) -> "StudyConfig":
        return replace(self, **changes)


def _canonical(cfg: StudyConfig) -> dict:
    d = asdict(cfg)
    d.pop("output_dir")
    d.pop("name")
    d["far_field"] = [cfg.far_field.sigma_H, cfg.far_field.sigma_h, cfg.far_field.p_r]
    d.pop("far_field_preset")
    return d


def config_hash(cfg: StudyConfig) -> str:
    """Short SHA-256 of every field that affects results (not name or output folder)."""
    text = json.dumps(_canonical(cfg), sort_keys=True, default=repr)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]


def config_from_ini(text: str, base_dir: Path | None = None) -> StudyConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as e:
        raise ConfigError(f"malformed config: {e}") from None
    kw: dict = {}
    s = cp["study"] if cp.has_section("study") else {}
    try:
        if "name" in s:
            kw["name"] = s["name"]
        for key, conv in (("seed", int), ("N", int), ("n_boot", int), ("profile_points", int),
                          ("report_threshold", float), ("failure_budget", float),
                          ("profile_extent", float)):
            if key in s:
                kw[key] = conv(s[key])
        for key in ("tier", "bc_mode", "method"):
            if key in s:
                kw[key] = s[key].strip()
        if "coupled" in s:
            kw["coupled"] = s["coupled"].strip().lower() in ("1", "true", "yes", "on")
        if "horizons" in s:
            hs = s["horizons"].strip()
            kw["horizons"] = (HORIZON_SETS[hs] if hs in HORIZON_SETS
                              else tuple(h.strip() for h in hs.split(",") if h.strip()))
        if "output_dir" in s:
            out = Path(s["output_dir"])
            kw["output_dir"] = out if out.is_absolute() or base_dir is None else base_dir / out
        preset = s.get("far_field", "sensitivity").strip()
        if cp.has_section("far_field"):
            ff = cp["far_field"]
            kw["far_field"] = FarFieldState(float(ff["sigma_H"]), float(ff["sigma_h"]), float(ff["p_r"]))
            kw["far_field_preset"] = "custom"
        else:
            if preset not in FAR_FIELDS:
                raise ConfigError(f"unknown far-field preset {preset!r}; choose from {sorted(FAR_FIELDS)}")
            kw["far_field"] = FAR_FIELDS[preset]
            kw["far_field_preset"] = preset
        if cp.has_section("geometry"):
            g = cp["geometry"]
            for key in ("a", "b", "p_f"):
                if key in g:
                    kw[key] = float(g[key])
        if cp.has_section("rocks"):
            names = cp["rocks"].get("names", "")
            kw["rocks"] = tuple(n.strip() for n in names.split(",") if n.strip())
        if cp.has_section("points"):
            pts = []
            for k, v in cp["points"].items():
                fx, fy = _floats(v)
                pts.append((k, (fx, fy)))
            kw["point_overrides"] = tuple(sorted(pts))
        if cp.has_section("space"):
            space = [list(d) for d in StudyConfig().space]
            for k, v in cp["space"].items():
                parts = [p.strip() for p in v.split(",")]
                idx = [d[0] for d in space].index(k) if k in VARIABLES else None
                entry = [k, float(parts[0]), float(parts[1]), parts[2] if len(parts) > 2 else "linear"]
                if idx is None:
                    space.append(entry)
                else:
                    space[idx] = entry
            kw["space"] = tuple(tuple(d) for d in space)
        if cp.has_section("rom") and "threshold" in cp["rom"]:
            kw["rom_threshold"] = float(cp["rom"]["threshold"])
    except (KeyError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"bad config value: {e}") from None
    return StudyConfig(**kw)


def load_config(path) -> StudyConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    return config_from_ini(text, path.parent)
