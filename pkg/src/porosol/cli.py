"""Command line entry point: ``porosol simulate | sobol | rom-fit | rom-eval``."""
from __future__ import annotations

import argparse
import logging
import sys
import warnings

import numpy as np

from .inputs import BOX, VARIABLES

__all__ = ["main", "build_parser", "parse_point"]


def parse_point(text: str) -> np.ndarray:
    """``a=30,b=20,...`` into a design point; unspecified variables sit at the box centre."""
    x = np.array([0.5 * (lo + hi) for lo, hi in BOX])
    if not text:
        return x
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in VARIABLES:
            raise ValueError(f"bad assignment {item!r}; keys are {', '.join(VARIABLES)}")
        x[VARIABLES.index(key)] = float(val)
    return x


def _cmd_simulate(args) -> int:
    from .campaign import load_config, run_depletion_study
    cfg = load_config(args.config)
    if args.output_dir:
        cfg = cfg.with_(output_dir=args.output_dir)
    study = run_depletion_study(cfg)
    for rock in study.profiles:
        for h, _ in study.profiles[rock][1:]:
            m = study.region_means(rock, h)
            print(f"{rock:<20} {h:>3}  mean pressure drop  region 1 {m['region1_dp'] / 1e6:8.3f} MPa"
                  f"  region 2 {m['region2_dp'] / 1e6:8.3f} MPa")
    for rock, h, err in study.failures:
        print(f"FAILED {rock} {h}: {err}", file=sys.stderr)
    if cfg.output_dir is not None:
        print(f"profiles written to {cfg.output_dir}")
    return 1 if study.failures and not study.profiles else 0


def _cmd_sobol(args) -> int:
    from .campaign import run_sobol_study
    from .campaign.config import load_config
    from .sobol import index_report
    cfg = load_config(args.config)
    if args.output_dir:
        cfg = cfg.with_(output_dir=args.output_dir)
    study = run_sobol_study(cfg, workers=args.workers)
    for (q, p, h), res in sorted(study.results.items()):
        if args.quiet:
            continue
        print(f"== {q} at {p}, {h}")
        print(index_report(res, cfg.report_threshold))
    if cfg.output_dir is not None:
        print(f"results written to {cfg.output_dir} (config hash {cfg.hash})")
    return 0


def _cmd_rom_fit(args) -> int:
    from .campaign import load_config, run_rom_build, run_sobol_study
    cfg = load_config(args.config)
    if args.output_dir:
        cfg = cfg.with_(output_dir=args.output_dir)
    # cached runs make this a reload when the study has already been run
    study = run_sobol_study(cfg, workers=args.workers, emit=False)
    build = run_rom_build(study, args.threshold)
    for (q, p, h), rom in sorted(build.roms.items()):
        comps = " + ".join(c.name() for c in rom.components) or "(constant)"
        print(f"{q:<14} {p} {h:>3}  f0 = {rom.f0:.4g}  + {comps}"
              f"   [accuracy {rom.declared_accuracy:.2f}]")
    for q, p, h, label, err in build.dropped:
        print(f"dropped {label} from {q} {p} {h}: {err}", file=sys.stderr)
    return 0


def _cmd_rom_eval(args) -> int:
    from .rom import RomRangeWarning, catalog_rom, eval_rom, load_rom
    try:
        x = parse_point(args.at)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.rom:
        rom = load_rom(args.rom)
    else:
        if not (args.quantity and args.point):
            print("error: give --quantity and --point, or --rom FILE", file=sys.stderr)
            return 2
        try:
            rom = catalog_rom(args.quantity, args.point, f3_reading=args.f3_reading)
        except KeyError as e:
            print(f"error: no catalog ROM for {e}", file=sys.stderr)
            return 2
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RomRangeWarning)
        value = eval_rom(rom, x)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(f"{value:.6e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="porosol", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="depletion study: midline profiles per rock and horizon")
    s.add_argument("config")
    s.add_argument("-o", "--output-dir")
    s.set_defaults(func=_cmd_simulate)

    s = sub.add_parser("sobol", help="sensitivity study over the design (resumable)")
    s.add_argument("config")
    s.add_argument("-o", "--output-dir")
    s.add_argument("-j", "--workers", type=int, default=None,
                   help="process count (default: POROSOL_WORKERS or 1)")
    s.add_argument("-q", "--quiet", action="store_true", help="skip the index listing")
    s.set_defaults(func=_cmd_sobol)

    s = sub.add_parser("rom-fit", help="fit ROMs from a sensitivity study")
    s.add_argument("config")
    s.add_argument("--threshold", type=float, default=None,
                   help="cumulative index share to cover (default: the config's [rom] threshold)")
    s.add_argument("-o", "--output-dir")
    s.add_argument("-j", "--workers", type=int, default=None)
    s.set_defaults(func=_cmd_rom_fit)

    s = sub.add_parser("rom-eval", help="evaluate a catalog or saved ROM, printing Pa")
    s.add_argument("--quantity", choices=["pore_pressure", "sigma_min", "sigma_max"])
    s.add_argument("--point", choices=["P1", "P5", "P6"])
    s.add_argument("--at", default="", help="k1=v1,... over " + ", ".join(VARIABLES)
                   + " (kappa as log10); others default to the box centre")
    s.add_argument("--rom", help="ROM file to evaluate instead of the catalog")
    s.add_argument("--f3-reading", choices=["literal", "centred"], default="literal",
                   help="sign reading of the P1 pore-pressure f3 term")
    s.set_defaults(func=_cmd_rom_eval)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    from .campaign import CampaignError, ConfigError, OutputError
    try:
        return args.func(args)
    except (ConfigError, CampaignError, OutputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
