"""Sensitivity study: simulator runs over a Sobol design, indices per quantity and point.

Every design row is one run, identified by its row number in the canonical
design order (``run_id``).  Runs for one horizon are cached in
``runs_<horizon>.csv`` as they complete, so an interrupted study resumes by
computing only the missing run ids.  All other files are written once the
runs are complete, sorted by run id and free of timestamps.
"""
from __future__ import annotations

import csv
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable

import numpy as np

from ..material import PoroelasticMaterial
from ..pddm import Scenario, field_at, simulate, two_fracture_system
from ..sobol import (RESULT_COLUMNS, DesignOutputs, SampleDesign, SobolResult, ZeroVarianceError,
                     design, sobol_indices)
from .config import StudyConfig
from .outputs import OutputError, fmt, header_lines, write_rows
from .presets import POINT_IDS, QUANTITIES, TIERS, horizon_seconds, observation_points

__all__ = ["OUTPUT_KEYS", "INDEX_COLUMNS", "WORKERS_ENV", "CampaignError", "CampaignRecord",
           "SobolStudy", "simulator_model", "run_sobol_study", "emit_sobol_outputs",
           "worker_count"]

log = logging.getLogger(__name__)

OUTPUT_KEYS = tuple((q, p) for q in QUANTITIES for p in POINT_IDS)
INDEX_COLUMNS = RESULT_COLUMNS + ["point", "quantity", "horizon", "tier"]
WORKERS_ENV = "POROSOL_WORKERS"


class CampaignError(RuntimeError):
    pass


@dataclass
class CampaignRecord:
    """One simulator run: its design point, outputs and how it went."""
    run_id: int
    x: np.ndarray
    outputs: np.ndarray
    status: str = "ok"
    message: str = ""
    wall_time: float = 0.0


def worker_count() -> int:
    """Process count from ``POROSOL_WORKERS`` (default 1)."""
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise CampaignError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def simulator_model(x, horizon: float, cfg: StudyConfig) -> np.ndarray:
    """Run the simulator at one design point.

    ``x`` follows the study variables (a, b, p_f, G, nu_u, nu, B, log10
    kappa).  Returns pore pressure, minimum and maximum horizontal stress
    (Pa, compression positive) at the six observation points, ordered as
    :data:`OUTPUT_KEYS`.
    """
    v = dict(zip([d[0] for d in cfg.space], np.asarray(x, float)))
    tier = TIERS[cfg.tier]
    rock = PoroelasticMaterial(G=v["G"], nu=v["nu"], nu_u=v["nu_u"], B=v["B"],
                               kappa=10.0 ** v["kappa"])
    system = two_fracture_system(v["a"], v["b"], tier.elements_per_fracture)
    sc = Scenario(system, rock, cfg.far_field, v["p_f"], horizon, tier.n_steps,
                  cfg.bc_mode, cfg.coupled)
    hist = simulate(sc)
    pts = observation_points(v["a"], v["b"], cfg.points)
    s = field_at(hist, np.array([pts[p] for p in POINT_IDS]), horizon)
    return np.concatenate([s.p, s.sigma_min, s.sigma_max])


def _run_one(args):
    model, horizon, run_id, x = args
    t0 = time.perf_counter()
    try:
        y = np.asarray(model(x, horizon), float).reshape(-1)
        if y.shape != (len(OUTPUT_KEYS),):
            raise ValueError(f"model returned {y.shape[0]} values, expected {len(OUTPUT_KEYS)}")
        if not np.all(np.isfinite(y)):
            raise FloatingPointError("non-finite model output")
        status, msg = "ok", ""
    except Exception as e:  # a failed run is data, not a crash
        y = np.full(len(OUTPUT_KEYS), np.nan)
        status, msg = "failed", f"{type(e).__name__}: {e}"
    return CampaignRecord(run_id, np.asarray(x, float), y, status, msg, time.perf_counter() - t0)


# ------------------------------------------------------------------ run cache

def _run_columns(n: int) -> list[str]:
    return (["run_id", "sample_id", "matrix", "dim_swap"] + [f"x{i + 1}" for i in range(n)]
            + ["status"] + [f"{q}@{p}" for q, p in OUTPUT_KEYS] + ["message"])


def _record_row(r: CampaignRecord, label) -> list:
    sid, mat, swap = label
    return ([r.run_id, sid, mat, swap] + [fmt(v) for v in r.x] + [r.status]
            + ["" if not np.isfinite(v) else fmt(v) for v in r.outputs] + [r.message])


def _read_runs(path: Path, cfg_hash: str, n: int) -> dict[int, CampaignRecord]:
    if not path.exists():
        return {}
    with path.open(newline="") as fh:
        lines = fh.read().splitlines()
    head = [ln for ln in lines if ln.startswith("#")]
    if f"# config_hash={cfg_hash}" not in head:
        raise CampaignError(f"{path} belongs to a different configuration; "
                            "remove it or choose another output_dir")
    cols = _run_columns(n)
    out = {}
    for row in csv.reader(ln for ln in lines if not ln.startswith("#")):
        if row == cols or len(row) != len(cols):
            continue  # header, or a line cut short by an interruption
        try:
            rid = int(row[0])
            x = np.array([float(v) for v in row[4:4 + n]])
            status = row[4 + n]
            y = np.array([float(v) if v else np.nan for v in row[5 + n:5 + n + len(OUTPUT_KEYS)]])
        except ValueError:
            continue
        if status not in ("ok", "failed"):
            continue
        out[rid] = CampaignRecord(rid, x, y, status, row[-1])
    return out


def _run_horizon(cfg, d: SampleDesign, model, h: str, cache: Path | None, workers: int):
    X = d.all_points()
    labels = d.labels()
    horizon = horizon_seconds(h)
    cols = _run_columns(d.n)
    done = _read_runs(cache, cfg.hash, d.n) if cache is not None else {}
    todo = [i for i in range(len(X)) if i not in done]
    log.info("horizon %s: %d cached runs, %d to compute", h, len(done), len(todo))
    fh = None
    if cache is not None and todo:
        cache.parent.mkdir(parents=True, exist_ok=True)
        fresh = not cache.exists()
        fh = cache.open("a", newline="")
        if fresh:
            for line in header_lines(cfg, "runs", horizon=h):
                fh.write(f"# {line}\n")
            csv.writer(fh, lineterminator="\n").writerow(cols)
    budget = cfg.failure_budget * len(X)
    n_failed = sum(r.status == "failed" for r in done.values())
    try:
        w = csv.writer(fh, lineterminator="\n") if fh else None
        jobs = [(model, horizon, i, X[i]) for i in todo]
        if workers > 1 and len(jobs) > 1:
            ex = ProcessPoolExecutor(workers)
            results = ex.map(_run_one, jobs, chunksize=max(1, len(jobs) // (8 * workers)))
        else:
            ex = None
            results = map(_run_one, jobs)
        try:
            for r in results:
                done[r.run_id] = r
                if w is not None:
                    w.writerow(_record_row(r, labels[r.run_id]))
                    fh.flush()
                if r.status == "failed":
                    n_failed += 1
                    log.warning("run %d failed: %s", r.run_id, r.message)
                    if n_failed > budget:
                        raise CampaignError(
                            f"{n_failed} of {len(X)} runs failed at horizon {h}, above the "
                            f"{cfg.failure_budget:.0%} budget; last error: {r.message}")
        finally:
            if ex is not None:
                ex.shutdown(cancel_futures=True)
    finally:
        if fh:
            fh.close()
    records = [done[i] for i in range(len(X))]
    if cache is not None:
        write_rows(cache, header_lines(cfg, "runs", horizon=h), cols,
                   [_record_row(r, labels[r.run_id]) for r in records])
    return records


# ------------------------------------------------------------------ analysis

@dataclass
class SobolStudy:
    """Completed runs and index estimates.

    ``outputs[h]`` has shape (n_runs, 18) in design order with NaN for
    failed runs; ``results[(quantity, point, horizon)]`` holds the indices.
    """
    config: StudyConfig
    design: SampleDesign
    outputs: dict[str, np.ndarray] = field(default_factory=dict)
    records: dict[str, list[CampaignRecord]] = field(default_factory=dict)
    results: dict[tuple[str, str, str], SobolResult] = field(default_factory=dict)
    skipped: list[tuple[str, str, str, str]] = field(default_factory=list)

    @property
    def X(self) -> np.ndarray:
        return self.design.all_points()

    def output(self, quantity: str, point: str, horizon: str) -> np.ndarray:
        return self.outputs[horizon][:, OUTPUT_KEYS.index((quantity, point))]

    def failures(self) -> list[tuple[str, int, str]]:
        return [(h, r.run_id, r.message) for h, recs in self.records.items()
                for r in recs if r.status == "failed"]


def _usable(d: SampleDesign, Y: np.ndarray) -> np.ndarray:
    """Base-sample ids whose every block evaluation succeeded."""
    ok = np.isfinite(Y).all(axis=1).reshape(2 * d.n + 2, d.N)
    return np.flatnonzero(ok.all(axis=0))


def analyse(study: SobolStudy) -> SobolStudy:
    cfg, d = study.config, study.design
    names = study.config.input_space.names
    study.results.clear()
    study.skipped.clear()
    for h, Y in study.outputs.items():
        keep = _usable(d, Y)
        for k, (q, p) in enumerate(OUTPUT_KEYS):
            blocks = Y[:, k].reshape(2 * d.n + 2, d.N)[:, keep]
            out = DesignOutputs.from_flat(blocks.ravel(), d.n, len(keep))
            try:
                res = sobol_indices(out, names, n_boot=cfg.n_boot, seed=cfg.seed)
            except (ZeroVarianceError, ValueError) as e:
                study.skipped.append((q, p, h, f"{type(e).__name__}: {e}"))
                continue
            res.meta.update(dropped_samples=d.N - len(keep))
            study.results[(q, p, h)] = res
    return study


def run_sobol_study(cfg: StudyConfig, model: Callable | None = None, *,
                    workers: int | None = None, emit: bool = True) -> SobolStudy:
    """Evaluate the design at every horizon and estimate all indices.

    Parameters
    ----------
    model : callable, optional
        ``model(x, horizon_seconds) -> 18 outputs``; the poroelastic
        simulator by default.  Must be picklable when ``workers > 1``.
    workers : int, optional
        Process count; defaults to the ``POROSOL_WORKERS`` environment
        variable, else 1.

    Raises
    ------
    CampaignError
        When more than ``cfg.failure_budget`` of the runs at one horizon fail.
    """
    model = model or partial(simulator_model, cfg=cfg)
    workers = worker_count() if workers is None else workers
    d = design(cfg.input_space, cfg.N, cfg.seed, cfg.method)
    study = SobolStudy(cfg, d)
    out = Path(cfg.output_dir) if cfg.output_dir is not None else None
    for h in cfg.horizons:
        cache = out / f"runs_{h}.csv" if out is not None else None
        recs = _run_horizon(cfg, d, model, h, cache, workers)
        study.records[h] = recs
        study.outputs[h] = np.array([r.outputs for r in recs]).reshape(len(recs), len(OUTPUT_KEYS))
    analyse(study)
    if emit and out is not None:
        emit_sobol_outputs(study, out)
    return study


def emit_sobol_outputs(study: SobolStudy, out_dir) -> list[Path]:
    """Index tables, bar-chart data, per-output summary and failures."""
    cfg = study.config
    out = Path(out_dir)
    if out.exists() and not out.is_dir():
        raise OutputError(f"{out} exists and is not a folder")
    all_rows, kept_rows, summary = [], [], []
    for (q, p, h), res in sorted(study.results.items(),
                                 key=lambda kv: (cfg.horizons.index(kv[0][2]),
                                                 QUANTITIES.index(kv[0][0]), kv[0][1])):
        for name, order, est, se in res.indices():
            row = (name, order, est, se, p, q, h, cfg.tier)
            all_rows.append(row)
            if est >= cfg.report_threshold:
                kept_rows.append(row)
        summary.append([q, p, h, fmt(res.f0), fmt(res.D), res.N, res.meta.get("dropped_samples", 0),
                        fmt(res.noise_bound), fmt(res.residual()), cfg.tier])
    kept_rows.sort(key=lambda r: (cfg.horizons.index(r[6]), QUANTITIES.index(r[5]), r[4], -r[2], r[0]))

    def fmt_rows(rows):
        return [[r[0], r[1], fmt(r[2]), fmt(r[3]), *r[4:]] for r in rows]

    written = [
        write_rows(out / "indices.csv", header_lines(cfg, "sobol indices",
                                                     threshold=cfg.report_threshold),
                   INDEX_COLUMNS, fmt_rows(kept_rows)),
        write_rows(out / "indices_all.csv", header_lines(cfg, "sobol indices (unfiltered)"),
                   INDEX_COLUMNS, fmt_rows(all_rows)),
        write_rows(out / "summary.csv", header_lines(cfg, "sobol summary"),
                   ["quantity", "point", "horizon", "f0", "D", "N_used", "dropped_samples",
                    "noise_bound", "residual", "tier"], summary),
        write_rows(out / "failures.csv", header_lines(cfg, "failed runs"),
                   ["horizon", "run_id", "error"], study.failures()),
        write_rows(out / "skipped.csv", header_lines(cfg, "outputs without indices"),
                   ["quantity", "point", "horizon", "reason"], study.skipped),
    ]
    # bar-chart layout: one file per quantity and horizon, one column per point
    for h in cfg.horizons:
        for q in QUANTITIES:
            names = sorted({r[0] for r in kept_rows if r[5] == q and r[6] == h},
                           key=lambda s: (len(s), s))
            table = []
            for nm in names:
                vals = []
                for p in POINT_IDS:
                    res = study.results.get((q, p, h))
                    vals.append(fmt(res.get(nm)) if res is not None else "")
                table.append([nm] + vals)
            written.append(write_rows(out / f"bars_{q}_{h}.csv",
                                      header_lines(cfg, "index bar data", quantity=q, horizon=h),
                                      ["index_name", *POINT_IDS], table))
    return written
