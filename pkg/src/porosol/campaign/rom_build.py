"""Reduced-order models from a completed sensitivity study."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..rom import (FitError, FormError, RomSpec, fit_rom, save_rom, write_fit_diagnostics)
from ..sobol import SobolResult
from .outputs import fmt, header_lines, write_rows
from .presets import horizon_seconds
from .sobol_study import SobolStudy

__all__ = ["DEFAULT_FORMS", "PAIR_FORM", "RomBuild", "select_components", "run_rom_build"]

log = logging.getLogger(__name__)

# closed form per variable, matching the shapes the published models use
DEFAULT_FORMS = {1: "quadratic", 2: "quadratic", 3: "linear", 4: "quadratic", 5: "linear",
                 6: "linear", 7: "cubic", 8: "sine-sum-2"}
PAIR_FORM = "poly2d-3"


def select_components(res: SobolResult, threshold: float) -> list[tuple[tuple[int, ...], float]]:
    """Largest indices first until their running sum reaches ``threshold``.

    Returns ``(vars, index)`` with 1-based variable numbers.  A threshold of
    zero selects nothing.
    """
    rows = []
    n = res.n
    for i in range(n):
        rows.append(((i + 1,), float(res.first[i])))
    for i in range(n):
        for j in range(i + 1, n):
            rows.append(((i + 1, j + 1), float(res.second[i, j])))
    rows.sort(key=lambda r: (-r[1], len(r[0]), r[0]))
    chosen, total = [], 0.0
    for vars_, s in rows:
        if total >= threshold or s <= 0:
            break
        chosen.append((vars_, s))
        total += s
    return chosen


@dataclass
class RomBuild:
    roms: dict[tuple[str, str, str], RomSpec] = field(default_factory=dict)
    dropped: list[tuple[str, str, str, str, str]] = field(default_factory=list)
    fits: dict[tuple[str, str, str], list] = field(default_factory=dict)


def _structure(chosen):
    out = []
    for vars_, _ in chosen:
        if len(vars_) == 1:
            out.append((vars_, DEFAULT_FORMS.get(vars_[0], "quadratic")))
        else:
            out.append((vars_, PAIR_FORM, "unit"))
    return out


def run_rom_build(study: SobolStudy, threshold: float | None = None, *,
                  out_dir=None, emit: bool = True) -> RomBuild:
    """Fit one ROM per (quantity, point, horizon) of the study.

    Components are chosen by :func:`select_components` and fitted on every
    successful design run.  A component whose fit fails is left out and its
    index is removed from the declared accuracy, which is the sum of the
    indices of the retained components.
    """
    cfg = study.config
    threshold = cfg.rom_threshold if threshold is None else threshold
    X = study.X
    # fit on the study's own input box, which may differ from the default one
    box = tuple((lo, hi) for _, lo, hi, _ in cfg.space)
    build = RomBuild()
    for key, res in sorted(study.results.items()):
        q, p, h = key
        y = study.output(q, p, h)
        ok = np.isfinite(y)
        chosen = select_components(res, threshold)
        struct = _structure(chosen)
        kept = list(zip(chosen, struct))
        rom, fits = None, []
        while True:
            try:
                rom, fits = fit_rom(X[ok], y[ok], [s for _, s in kept], quantity=q, point=p,
                                    horizon=horizon_seconds(h), name=f"{q} {p} {h}", box=box)
                break
            except (FitError, FormError, np.linalg.LinAlgError) as e:
                bad = getattr(e, "component", None)
                # drop the component the error points at, else the weakest one
                idx = bad if bad is not None else len(kept) - 1
                (vars_, s), _ = kept.pop(idx)
                label = "f" + "".join(map(str, vars_))
                build.dropped.append((q, p, h, label, f"{type(e).__name__}: {e}"))
                log.warning("%s %s %s: leaving out %s (%s)", q, p, h, label, e)
        accuracy = float(sum(s for (_, s), _ in kept))
        r2 = rom.declared_accuracy
        rom = replace(rom, declared_accuracy=accuracy,
                      provenance=("fitted", f"config_hash={cfg.hash}", f"tier={cfg.tier}",
                                  f"threshold={threshold}", f"in_sample_r2={r2!r}"))
        build.roms[key] = rom
        build.fits[key] = fits
    out_dir = out_dir if out_dir is not None else cfg.output_dir
    if emit and out_dir is not None:
        emit_rom_outputs(build, study, Path(out_dir), threshold)
    return build


def emit_rom_outputs(build: RomBuild, study: SobolStudy, out: Path, threshold: float) -> list[Path]:
    cfg = study.config
    written = []
    rows = []
    for (q, p, h), rom in sorted(build.roms.items()):
        stem = f"rom_{q}_{p}_{h}"
        written.append(save_rom(rom, _mk(out / "roms") / f"{stem}.json"))
        for cf in build.fits[(q, p, h)]:
            written.append(write_fit_diagnostics(
                cf, _mk(out / "fits") / f"{stem}_{cf.form.name()}.csv",
                header_lines(cfg, "component fit", quantity=q, point=p, horizon=h,
                             component=cf.form.name(), form=cf.form.kind)))
        rows.append([q, p, h, fmt(rom.f0), " ".join(c.name() for c in rom.components),
                     fmt(rom.declared_accuracy), cfg.tier])
    written.append(write_rows(out / "roms.csv", header_lines(cfg, "rom build", threshold=threshold),
                              ["quantity", "point", "horizon", "f0", "components",
                               "declared_accuracy", "tier"], rows))
    written.append(write_rows(out / "rom_dropped.csv", header_lines(cfg, "dropped components"),
                              ["quantity", "point", "horizon", "component", "error"], build.dropped))
    return written


def _mk(p: Path) -> Path:
    p.mkdir(parents=True, exist_ok=True)
    return p
