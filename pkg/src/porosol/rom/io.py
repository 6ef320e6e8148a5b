"""ROM files and fit diagnostics.

ROMs are stored as JSON text under a versioned schema tag.  Floats are
written with ``repr`` precision so a save/load cycle is exact.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .basis import BasisForm, RomSpec

__all__ = ["SCHEMA", "SchemaError", "rom_to_dict", "rom_from_dict", "save_rom", "load_rom",
           "dumps_rom", "loads_rom", "write_fit_diagnostics"]

SCHEMA = "porosol-rom/1"


class SchemaError(ValueError):
    pass


def _num(x: float):
    # JSON has no nan/inf literals; keep them as strings
    return x if math.isfinite(x) else repr(float(x))


def _unnum(x) -> float:
    return float(x)


def rom_to_dict(r: RomSpec) -> dict:
    return {
        "schema": SCHEMA,
        "name": r.name,
        "quantity": r.quantity,
        "point": r.point,
        "horizon_s": _num(r.horizon),
        "f0": _num(r.f0),
        "declared_accuracy": _num(r.declared_accuracy),
        "box": [list(b) for b in r.box],
        "provenance": list(r.provenance),
        "components": [
            {
                "label": c.label,
                "kind": c.kind,
                "vars": list(c.vars),
                "scaling": c.scaling,
                "coeffs": [_num(a) for a in c.coeffs],
                "exponents": None if c.exponents is None else [list(e) for e in c.exponents],
                "provenance": list(c.provenance),
            }
            for c in r.components
        ],
    }


def rom_from_dict(d: dict) -> RomSpec:
    if d.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported ROM schema {d.get('schema')!r}; expected {SCHEMA!r}")
    try:
        comps = tuple(
            BasisForm(c["kind"], tuple(c["vars"]), tuple(_unnum(a) for a in c["coeffs"]),
                      None if c.get("exponents") is None else tuple(map(tuple, c["exponents"])),
                      c.get("scaling", "raw"), c.get("label", ""), tuple(c.get("provenance", ())))
            for c in d["components"])
        return RomSpec(d["quantity"], d["point"], _unnum(d["horizon_s"]), _unnum(d["f0"]), comps,
                       _unnum(d.get("declared_accuracy", "nan")), d.get("name", ""),
                       tuple(map(tuple, d["box"])), tuple(d.get("provenance", ())))
    except KeyError as e:
        raise SchemaError(f"ROM file is missing field {e}") from None


def dumps_rom(r: RomSpec) -> str:
    return json.dumps(rom_to_dict(r), indent=2) + "\n"


def loads_rom(text: str) -> RomSpec:
    return rom_from_dict(json.loads(text))


def save_rom(r: RomSpec, path) -> Path:
    path = Path(path)
    path.write_text(dumps_rom(r))
    return path


def load_rom(path) -> RomSpec:
    return loads_rom(Path(path).read_text())


def write_fit_diagnostics(fit, path, header_lines=()) -> Path:
    """Write ``bin_center,conditional_mean,fitted_value`` rows of a ComponentFit.

    Two-variable fits write the bin centre as ``x;y``.
    """
    path = Path(path)
    with path.open("w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bin_center", "conditional_mean", "fitted_value"])
        for c, m, f in zip(fit.centers, fit.conditional_mean, fit.fitted):
            cell = ";".join(repr(float(v)) for v in c) if hasattr(c, "__len__") else repr(float(c))
            w.writerow([cell, repr(float(m)), repr(float(f))])
    return path
