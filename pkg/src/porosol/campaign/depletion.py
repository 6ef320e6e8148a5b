"""Depletion comparison: midline profiles for a set of rocks."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..material import PoroelasticMaterial, load_rocks
from ..pddm import FieldSample, Scenario, field_at, simulate, two_fracture_system
from .config import StudyConfig
from .outputs import fmt, header_lines, write_rows
from .presets import TIERS, horizon_seconds

__all__ = ["PROFILE_COLUMNS", "DepletionStudy", "midline", "run_depletion_study",
           "emit_depletion_outputs"]

log = logging.getLogger(__name__)

PROFILE_COLUMNS = ["x_m", "y_m", "t_s", "p_Pa", "sxx_Pa", "syy_Pa", "sxy_Pa",
                   "anisotropy_Pa", "region", "horizon", "tier"]
REGION_COLUMNS = ["rock", "horizon", "t_s", "region1_mean_dp_Pa", "region2_mean_dp_Pa",
                  "region1_mean_anisotropy_Pa", "region2_mean_anisotropy_Pa", "tier"]
FAILURE_COLUMNS = ["rock", "horizon", "error"]


def midline(cfg: StudyConfig) -> np.ndarray:
    """Points on the line midway between the fractures, across both tips.

    The line runs along y through x = 0 from ``-extent a`` to ``+extent a``.
    """
    y = np.linspace(-cfg.profile_extent * cfg.a, cfg.profile_extent * cfg.a, cfg.profile_points)
    return np.stack([np.zeros_like(y), y], axis=1)


def region_of(points, a: float) -> np.ndarray:
    """1 between the fractures (|y| <= a), 2 beyond the tips."""
    return np.where(np.abs(np.asarray(points)[:, 1]) <= a, 1, 2)


@dataclass
class DepletionStudy:
    config: StudyConfig
    points: np.ndarray
    profiles: dict[str, list[tuple[str, FieldSample]]] = field(default_factory=dict)
    failures: list[tuple[str, str, str]] = field(default_factory=list)

    def region_means(self, rock: str, horizon: str) -> dict[str, float]:
        """Mean pressure drop and anisotropy in each region at one horizon."""
        ff = self.config.far_field
        for h, s in self.profiles[rock]:
            if h == horizon:
                reg = region_of(s.points, self.config.a)
                dp = ff.p_r - s.p
                an = s.sxx - s.syy
                return {"region1_dp": float(np.mean(dp[reg == 1])),
                        "region2_dp": float(np.mean(dp[reg == 2])),
                        "region1_anisotropy": float(np.mean(an[reg == 1])),
                        "region2_anisotropy": float(np.mean(an[reg == 2]))}
        raise KeyError((rock, horizon))


def _rocks(cfg: StudyConfig) -> dict[str, PoroelasticMaterial]:
    shipped = load_rocks()
    if cfg.rocks is None:
        return shipped
    missing = [r for r in cfg.rocks if r not in shipped]
    if missing:
        raise KeyError(f"unknown rocks {missing}; shipped: {sorted(shipped)}")
    return {r: shipped[r] for r in cfg.rocks}


def run_depletion_study(cfg: StudyConfig, rocks: dict[str, PoroelasticMaterial] | None = None,
                        *, emit: bool = True) -> DepletionStudy:
    """Simulate every rock to every horizon and sample the midline.

    A rock whose simulation fails is recorded in ``failures`` and the study
    carries on with the others.  The first profile of each rock is the
    initial state at ``t = 0``.
    """
    rocks = _rocks(cfg) if rocks is None else rocks
    tier = TIERS[cfg.tier]
    pts = midline(cfg)
    study = DepletionStudy(cfg, pts)
    system = two_fracture_system(cfg.a, cfg.b, tier.elements_per_fracture)
    for name, rock in rocks.items():
        rows = []
        for h in cfg.horizons:
            t = horizon_seconds(h)
            try:
                sc = Scenario(system, rock, cfg.far_field, cfg.p_f, t, tier.n_steps,
                              cfg.bc_mode, cfg.coupled)
                hist = simulate(sc)
                if not rows:
                    rows.append(("0", field_at(hist, pts, 0.0)))
                rows.append((h, field_at(hist, pts, t)))
            except Exception as e:  # isolate one rock's failure from the rest
                log.warning("rock %s, horizon %s failed: %s", name, h, e)
                study.failures.append((name, h, f"{type(e).__name__}: {e}"))
        if rows:
            study.profiles[name] = rows
    if emit and cfg.output_dir is not None:
        emit_depletion_outputs(study, cfg.output_dir)
    return study


def _slug(name: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in name).strip("_").lower()


def emit_depletion_outputs(study: DepletionStudy, out_dir) -> list[Path]:
    """One profile CSV per rock, plus region summaries and the failure log."""
    cfg = study.config
    out = Path(out_dir)
    written = []
    for rock, rows in study.profiles.items():
        body = []
        for h, s in rows:
            reg = region_of(s.points, cfg.a)
            for k in range(len(s.p)):
                body.append([fmt(s.points[k, 0]), fmt(s.points[k, 1]), fmt(s.t), fmt(s.p[k]),
                             fmt(s.sxx[k]), fmt(s.syy[k]), fmt(s.sxy[k]),
                             fmt(s.sxx[k] - s.syy[k]), int(reg[k]), h, cfg.tier])
        written.append(write_rows(out / f"profile_{_slug(rock)}.csv",
                                  header_lines(cfg, "depletion profile", rock=rock),
                                  PROFILE_COLUMNS, body))
    summary = []
    for rock, rows in study.profiles.items():
        for h, s in rows:
            m = study.region_means(rock, h)
            summary.append([rock, h, fmt(s.t), fmt(m["region1_dp"]), fmt(m["region2_dp"]),
                            fmt(m["region1_anisotropy"]), fmt(m["region2_anisotropy"]), cfg.tier])
    written.append(write_rows(out / "regions.csv", header_lines(cfg, "region means"),
                              REGION_COLUMNS, summary))
    written.append(write_rows(out / "failures.csv", header_lines(cfg, "failures"),
                              FAILURE_COLUMNS, study.failures))
    return written
