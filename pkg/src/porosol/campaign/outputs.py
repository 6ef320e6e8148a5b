"""Shared CSV plumbing: provenance headers and path-aware error handling."""
from __future__ import annotations

import csv
from contextlib import contextmanager
from pathlib import Path

from .. import __version__
from .config import StudyConfig

__all__ = ["header_lines", "open_csv", "write_rows", "OutputError"]


class OutputError(OSError):
    pass


def header_lines(cfg: StudyConfig, kind: str, **extra) -> list[str]:
    """Comment lines written at the top of every output file.

    No timestamps: files from the same config and seed are byte-identical.
    """
    lines = [f"porosol {__version__} {kind}", f"config_hash={cfg.hash}", f"study={cfg.name}",
             f"tier={cfg.tier}", f"seed={cfg.seed}"]
    lines += [f"{k}={v}" for k, v in extra.items()]
    return lines


@contextmanager
def open_csv(path, header, columns):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fh = path.open("w", newline="")
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    try:
        for line in header:
            fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        yield w
    except OSError as e:
        raise OutputError(f"error while writing {path}: {e}") from e
    finally:
        fh.close()


def write_rows(path, header, columns, rows) -> Path:
    with open_csv(path, header, columns) as w:
        for r in rows:
            w.writerow(r)
    return Path(path)


def fmt(x) -> str:
    """Shortest round-trip text for a float."""
    return repr(float(x))
