"""Variance-based global sensitivity analysis.

First- and second-order Sobol indices are estimated from ``N(2n + 2)``
model evaluations: two independent base matrices ``A`` and ``B`` and, for
every input ``i``, the cross matrices ``A_B^(i)`` (``A`` with column ``i``
taken from ``B``) and ``B_A^(i)`` (``B`` with column ``i`` taken from ``A``).

With outputs centred on the sample mean ``f0 = mean f(A)``

    D     = mean f(A)^2
    D_i   = mean f(B) f(A_B^(i))
    D_ij  = mean f(A_B^(i)) f(B_A^(j)) - D_i - D_j

``A_B^(i)`` shares only ``x_i`` with ``B``, and ``A_B^(i)``/``B_A^(j)`` share
exactly ``x_i`` and ``x_j``, so the products estimate the closed partial
variances.  Point estimates use correctly rounded summation (``math.fsum``),
so results do not depend on evaluation order.
"""
from __future__ import annotations

import csv
import io
import math
import os
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.stats import qmc

__all__ = [
    "Dim",
    "InputSpace",
    "SampleDesign",
    "DesignOutputs",
    "SobolResult",
    "IndexReport",
    "ZeroVarianceError",
    "NonFiniteOutputError",
    "design",
    "evaluate_design",
    "estimate_mean",
    "estimate_variance",
    "first_order_index",
    "second_order_index",
    "sobol_indices",
    "bootstrap",
    "index_report",
    "index_name",
    "write_design_csv",
    "read_design_csv",
    "write_result_csv",
    "read_result_csv",
    "N_BOOTSTRAP",
]

N_BOOTSTRAP = 200


class ZeroVarianceError(ArithmeticError):
    """The model output does not vary, so sensitivity indices are undefined."""


class NonFiniteOutputError(ValueError):
    def __init__(self, msg, index):
        super().__init__(msg)
        self.index = index


@dataclass(frozen=True)
class Dim:
    name: str
    lower: float
    upper: float
    scale: str = "linear"  # or "log10": the exponent is sampled uniformly

    def __post_init__(self):
        if self.scale not in ("linear", "log10"):
            raise ValueError(f"unknown scale {self.scale!r}")
        if not self.lower < self.upper:
            raise ValueError(f"{self.name}: lower bound must be below upper bound")
        if self.scale == "log10" and not self.lower > 0:
            raise ValueError(f"{self.name}: log10 scale needs positive bounds")


class InputSpace:
    """A box of independent uniform inputs."""

    def __init__(self, dims: Iterable[Dim]):
        self.dims = tuple(dims)
        names = [d.name for d in self.dims]
        if len(set(names)) != len(names):
            raise ValueError(f"dimension names must be unique: {names}")
        if not self.dims:
            raise ValueError("input space needs at least one dimension")

    def __len__(self):
        return len(self.dims)

    def __repr__(self):
        return f"InputSpace({list(self.dims)!r})"

    def __eq__(self, other):
        return isinstance(other, InputSpace) and self.dims == other.dims

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.dims]

    def _transformed_bounds(self):
        lo = np.array([math.log10(d.lower) if d.scale == "log10" else d.lower for d in self.dims])
        hi = np.array([math.log10(d.upper) if d.scale == "log10" else d.upper for d in self.dims])
        return lo, hi

    def from_unit(self, u) -> np.ndarray:
        """Map points of the unit cube to the box."""
        u = np.asarray(u, float)
        lo, hi = self._transformed_bounds()
        z = lo + (hi - lo) * u
        logd = np.array([d.scale == "log10" for d in self.dims])
        if logd.any():
            z = z.copy()
            z[..., logd] = 10.0 ** z[..., logd]
        return z

    def to_unit(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        logd = np.array([d.scale == "log10" for d in self.dims])
        z = x.copy()
        if logd.any():
            z[..., logd] = np.log10(z[..., logd])
        lo, hi = self._transformed_bounds()
        return (z - lo) / (hi - lo)

    def contains(self, x, rtol=1e-12) -> np.ndarray:
        x = np.asarray(x, float)
        lo = np.array([d.lower for d in self.dims])
        hi = np.array([d.upper for d in self.dims])
        tol = rtol * np.maximum(np.abs(lo), np.abs(hi))
        return np.all((x >= lo - tol) & (x <= hi + tol), axis=-1)


@dataclass
class SampleDesign:
    """Paired-matrix design.  ``AB[i]`` is ``A`` with column ``i`` from ``B``
    and ``BA[i]`` is ``B`` with column ``i`` from ``A``."""
    space: InputSpace
    N: int
    seed: int | None
    A: np.ndarray
    B: np.ndarray
    AB: np.ndarray  # (n, N, n)
    BA: np.ndarray  # (n, N, n)
    method: str = "sobol"

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def n_evaluations(self) -> int:
        return self.N * (2 * self.n + 2)

    def blocks(self):
        """Yield ``(matrix_label, dim_swap, points)``; ``dim_swap`` is 1-based, 0 for A/B."""
        yield "A", 0, self.A
        yield "B", 0, self.B
        for i in range(self.n):
            yield "AB", i + 1, self.AB[i]
        for i in range(self.n):
            yield "BA", i + 1, self.BA[i]

    def all_points(self) -> np.ndarray:
        """Every design point stacked in canonical order, shape (N(2n+2), n)."""
        return np.concatenate([p for _, _, p in self.blocks()], axis=0)

    def labels(self) -> list[tuple[int, str, int]]:
        """``(sample_id, matrix, dim_swap)`` for every row of :meth:`all_points`."""
        out = []
        for label, swap, _ in self.blocks():
            out.extend((m, label, swap) for m in range(self.N))
        return out


def design(space: InputSpace, N: int, seed: int | None = 0, method: str = "sobol") -> SampleDesign:
    """Build the ``N(2n + 2)``-point design.

    ``A`` and ``B`` are the two halves of one scrambled ``2n``-dimensional
    Sobol sequence (``method="sobol"``) or of seeded pseudo-random draws
    (``method="random"``, also used when the sequence dimension is
    unavailable).
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    n = space.n
    if method == "sobol" and 2 * n <= qmc.Sobol.MAXDIM:
        eng = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
        with warnings.catch_warnings():
            # balance properties only hold for powers of two; other sizes are valid
            warnings.simplefilter("ignore", UserWarning)
            U = eng.random(N)
    elif method in ("sobol", "random"):
        method = "random"
        U = np.random.default_rng(seed).random((N, 2 * n))
    else:
        raise ValueError(f"unknown sampling method {method!r}")
    A = space.from_unit(U[:, :n])
    B = space.from_unit(U[:, n:])
    AB = np.repeat(A[None], n, axis=0)
    BA = np.repeat(B[None], n, axis=0)
    for i in range(n):
        AB[i, :, i] = B[:, i]
        BA[i, :, i] = A[:, i]
    return SampleDesign(space, N, seed, A, B, AB, BA, method)


@dataclass
class DesignOutputs:
    """Model outputs on every design block."""
    fA: np.ndarray
    fB: np.ndarray
    fAB: np.ndarray  # (n, N)
    fBA: np.ndarray  # (n, N)

    @property
    def N(self) -> int:
        return self.fA.shape[0]

    @property
    def n(self) -> int:
        return self.fAB.shape[0]

    @classmethod
    def from_flat(cls, y, n: int, N: int) -> "DesignOutputs":
        """Split outputs ordered as :meth:`SampleDesign.all_points`."""
        y = np.asarray(y, float).reshape(2 * n + 2, N)
        return cls(y[0], y[1], y[2:2 + n], y[2 + n:])

    def flat(self) -> np.ndarray:
        return np.concatenate([self.fA, self.fB, self.fAB.ravel(), self.fBA.ravel()])

    def check_finite(self):
        y = self.flat()
        bad = np.flatnonzero(~np.isfinite(y))
        if bad.size:
            raise NonFiniteOutputError(
                f"{bad.size} non-finite outputs; first at design row {bad[0]}", int(bad[0]))


def _call_chunk(args):
    model, X = args
    return [float(model(x)) for x in X]


def evaluate_design(d: SampleDesign, model: Callable, *, vectorized: bool = False,
                    workers: int | None = None) -> DesignOutputs:
    """Evaluate ``model`` on every design point.

    ``model`` maps one point (length-n array) to a scalar, or a whole
    ``(m, n)`` array to ``m`` outputs when ``vectorized``.  With ``workers >
    1`` pointwise models are spread over a process pool; results are
    collected in design order so the outcome does not depend on scheduling.
    """
    X = d.all_points()
    if vectorized:
        y = np.asarray(model(X), float)
    elif workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        chunks = np.array_split(X, workers * 4)
        with ProcessPoolExecutor(workers) as ex:
            y = np.concatenate([np.asarray(r) for r in
                                ex.map(_call_chunk, [(model, c) for c in chunks])])
    else:
        y = np.array([float(model(x)) for x in X])
    return DesignOutputs.from_flat(y, d.n, d.N)


def _check(values, what="output"):
    v = np.asarray(values, float)
    if v.size == 0:
        raise ValueError(f"need at least one {what}")
    bad = np.flatnonzero(~np.isfinite(v))
    if bad.size:
        raise NonFiniteOutputError(f"non-finite {what} at sample {bad[0]}", int(bad[0]))
    return v


def _mean(v) -> float:
    return math.fsum(v) / len(v)


def estimate_mean(fA) -> float:
    """Sample mean of the outputs on ``A``."""
    return _mean(_check(fA))


def estimate_variance(fA) -> float:
    """Total variance, ``mean(f^2) - f0^2`` evaluated on centred outputs."""
    v = _check(fA)
    f0 = _mean(v)
    return _mean((v - f0) ** 2)


def _partials(out: DesignOutputs):
    f0 = estimate_mean(out.fA)
    D = estimate_variance(out.fA)
    if not D > 0:
        raise ZeroVarianceError("model output has zero variance; indices are undefined")
    fB = _check(out.fB) - f0
    fAB = _check(out.fAB) - f0
    fBA = _check(out.fBA) - f0
    Di = np.array([_mean(fB * fAB[i]) for i in range(out.n)])
    return f0, D, fAB, fBA, Di


def first_order_index(out: DesignOutputs, i: int) -> float:
    """First-order index of input ``i`` (0-based)."""
    _, D, _, _, Di = _partials(out)
    return Di[i] / D


def second_order_index(out: DesignOutputs, i: int, j: int) -> float:
    """Second-order (interaction) index of inputs ``i`` and ``j`` (0-based)."""
    if i == j:
        raise ValueError("second-order index needs two distinct inputs")
    _, D, fAB, fBA, Di = _partials(out)
    Dij = _mean(fAB[i] * fBA[j]) - Di[i] - Di[j]
    return Dij / D


def index_name(dims: Sequence[int], n: int) -> str:
    """``S3`` / ``S38`` style names from 0-based dims; ``S1_10`` when n > 9."""
    sep = "" if n <= 9 else "_"
    return "S" + sep.join(str(d + 1) for d in dims)


@dataclass
class SobolResult:
    """Raw (unclamped) index estimates with bootstrap standard errors.

    ``second[i, j]`` (``i < j``) holds the interaction index; the other
    entries are NaN.
    """
    names: list[str]
    f0: float
    D: float
    first: np.ndarray
    second: np.ndarray
    first_stderr: np.ndarray
    second_stderr: np.ndarray
    N: int
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.first)

    @property
    def noise_bound(self) -> float:
        """Three times the largest bootstrap standard error."""
        se = np.concatenate([self.first_stderr, self.second_stderr[np.triu_indices(self.n, 1)]])
        se = se[np.isfinite(se)]
        return 3.0 * float(se.max()) if se.size else 0.0

    def clamped(self, value: float) -> float:
        eps = self.noise_bound
        return float(min(max(value, -eps), 1.0 + eps))

    def indices(self) -> list[tuple[str, int, float, float]]:
        """``(name, order, raw estimate, bootstrap stderr)`` for every index."""
        rows = [(index_name([i], self.n), 1, float(self.first[i]), float(self.first_stderr[i]))
                for i in range(self.n)]
        for i, j in combinations(range(self.n), 2):
            rows.append((index_name([i, j], self.n), 2, float(self.second[i, j]),
                         float(self.second_stderr[i, j])))
        return rows

    def get(self, name: str) -> float:
        for nm, _, est, _ in self.indices():
            if nm == name:
                return est
        raise KeyError(name)

    def residual(self) -> float:
        """Share of variance left to third and higher orders."""
        return 1.0 - float(np.sum(self.first)) - float(np.nansum(self.second[np.triu_indices(self.n, 1)]))


def _indices_from(fA, fB, fAB, fBA, mean=np.mean):
    """Vectorized estimators over the last axis (used for bootstrap replicates)."""
    f0 = mean(fA, axis=-1)
    c = lambda v: v - f0[..., None]  # noqa: E731
    A_, B_ = c(fA), c(fB)
    AB_ = fAB - f0[..., None, None]
    BA_ = fBA - f0[..., None, None]
    D = mean(A_ * A_, axis=-1)
    Di = mean(B_[..., None, :] * AB_, axis=-1)
    n = fAB.shape[-2]
    Sij = np.full(D.shape + (n, n), np.nan)
    for i, j in combinations(range(n), 2):
        Dij = mean(AB_[..., i, :] * BA_[..., j, :], axis=-1) - Di[..., i] - Di[..., j]
        Sij[..., i, j] = Dij / D
    return Di / D[..., None], Sij


def bootstrap(out: DesignOutputs, n_boot: int = N_BOOTSTRAP, seed: int | None = 0):
    """Standard errors of all indices from resampling the N base rows."""
    rng = np.random.default_rng(seed)
    N = out.N
    S1 = np.empty((n_boot, out.n))
    S2 = np.empty((n_boot, out.n, out.n))
    for b in range(n_boot):
        idx = rng.integers(0, N, N)
        with np.errstate(divide="ignore", invalid="ignore"):
            S1[b], S2[b] = _indices_from(out.fA[idx], out.fB[idx], out.fAB[:, idx], out.fBA[:, idx])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return np.nanstd(S1, axis=0, ddof=1), np.nanstd(S2, axis=0, ddof=1)


def sobol_indices(out: DesignOutputs, names: Sequence[str] | None = None, *,
                  n_boot: int = N_BOOTSTRAP, seed: int | None = 0) -> SobolResult:
    """All first- and second-order indices with bootstrap standard errors."""
    f0, D, fAB, fBA, Di = _partials(out)
    n = out.n
    first = Di / D
    second = np.full((n, n), np.nan)
    for i, j in combinations(range(n), 2):
        second[i, j] = (_mean(fAB[i] * fBA[j]) - Di[i] - Di[j]) / D
    if n_boot:
        se1, se2 = bootstrap(out, n_boot, seed)
    else:
        se1, se2 = np.full(n, np.nan), np.full((n, n), np.nan)
    names = list(names) if names is not None else [f"x{i + 1}" for i in range(n)]
    return SobolResult(names, f0, D, first, second, se1, se2, out.N)


@dataclass
class IndexReport:
    threshold: float
    entries: list[tuple[str, int, float, float]]

    @property
    def total(self) -> float:
        """Sum of the displayed indices."""
        return math.fsum(e[2] for e in self.entries)

    @property
    def names(self) -> list[str]:
        return [e[0] for e in self.entries]

    def __str__(self):
        lines = [f"{'index':<8}{'order':>6}{'estimate':>12}{'stderr':>10}"]
        lines += [f"{nm:<8}{o:>6}{est:>12.4f}{se:>10.4f}" for nm, o, est, se in self.entries]
        lines.append(f"sum of displayed indices: {self.total:.4f}")
        return "\n".join(lines)


def index_report(result: SobolResult, threshold: float = 0.01) -> IndexReport:
    """Indices at or above ``threshold``, largest first."""
    rows = [r for r in result.indices() if r[2] >= threshold]
    rows.sort(key=lambda r: (-r[2], r[0]))
    return IndexReport(threshold, rows)


# ---------------------------------------------------------------- CSV I/O

def _write_header(fh, header_lines):
    for line in header_lines or ():
        fh.write(f"# {line}\n")


def _data_lines(fh):
    return (line for line in fh if not line.startswith("#"))


def write_design_csv(path, d: SampleDesign, outputs: DesignOutputs | None = None,
                     header_lines: Sequence[str] = ()):
    """Design points (and outputs when available), one row per evaluation."""
    y = outputs.flat() if outputs is not None else np.full(d.n_evaluations, np.nan)
    X = d.all_points()
    with open(path, "w", newline="") as fh:
        _write_header(fh, header_lines)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_id", "matrix", "dim_swap"] + [f"x{i + 1}" for i in range(d.n)] + ["output"])
        for (sid, label, swap), x, out in zip(d.labels(), X, y):
            w.writerow([sid, label, swap] + [repr(float(v)) for v in x]
                       + ["" if not np.isfinite(out) else repr(float(out))])


def read_design_csv(path):
    """Return ``(points, labels, outputs)``; missing outputs are NaN."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(_data_lines(fh)))
    head, body = rows[0], rows[1:]
    nx = len(head) - 4
    labels = [(int(r[0]), r[1], int(r[2])) for r in body]
    X = np.array([[float(v) for v in r[3:3 + nx]] for r in body]).reshape(len(body), nx)
    y = np.array([float(r[-1]) if r[-1] else np.nan for r in body])
    return X, labels, y


RESULT_COLUMNS = ["index_name", "order", "estimate", "boot_stderr"]


def write_result_csv(path_or_buf, rows: Iterable[tuple], extra_columns: Sequence[str] = (),
                     header_lines: Sequence[str] = ()):
    """Write index rows ``(name, order, estimate, stderr, *extra)``."""
    own = isinstance(path_or_buf, (str, os.PathLike))
    fh = open(path_or_buf, "w", newline="") if own else path_or_buf
    try:
        _write_header(fh, header_lines)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_COLUMNS + list(extra_columns))
        for r in rows:
            name, order, est, se, *rest = r
            w.writerow([name, order, repr(float(est)), repr(float(se))] + list(rest))
    finally:
        if own:
            fh.close()


def read_result_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        text = "".join(_data_lines(fh))
    rows = list(csv.DictReader(io.StringIO(text)))
    for r in rows:
        r["order"] = int(r["order"])
        r["estimate"] = float(r["estimate"])
        r["boot_stderr"] = float(r["boot_stderr"])
    return rows
