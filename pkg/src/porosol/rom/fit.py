"""Fitting component functions to sampled model outputs.

A first-order component is estimated as the binned conditional mean of the
output given one input, minus the overall mean; a second-order component as
the 2-D binned conditional mean minus the mean and both one-dimensional
conditional means.  The requested closed form is then fitted to the bin
values by weighted least squares (variable projection for the forms with
frequencies).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial import Polynomial
import scipy.linalg
from scipy.optimize import least_squares

from ..inputs import BOX
from .basis import BasisForm, FormError, POLY1D_DEGREES, eval_component, graded_exponents

__all__ = [
    "ComponentFit",
    "FitError",
    "UnderPopulatedBinError",
    "IllConditionedFitError",
    "fit_first_order",
    "fit_second_order",
    "fit_form",
    "fit_rom",
    "MIN_PER_BIN",
]

MIN_PER_BIN = 20
DEFAULT_BINS_1D = 32
DEFAULT_BINS_2D = 16
_MAX_COND = 1e12


class FitError(RuntimeError):
    pass


class UnderPopulatedBinError(FitError):
    def __init__(self, msg, bins):
        super().__init__(msg)
        self.bins = bins


class IllConditionedFitError(FitError):
    def __init__(self, msg, condition):
        super().__init__(msg)
        self.condition = condition


@dataclass
class ComponentFit:
    """Binned conditional means of one component and the closed form fitted to them.

    ``centers`` has shape (n_bins,) for one variable and (n_bins, 2) for two;
    ``counts`` holds the samples per bin.
    """
    vars: tuple[int, ...]
    centers: np.ndarray
    conditional_mean: np.ndarray
    counts: np.ndarray
    form: BasisForm
    fitted: np.ndarray
    rms: float
    condition: float = float("nan")
    meta: dict = field(default_factory=dict)

    @property
    def weighted_mean(self) -> float:
        """Count-weighted mean of the fitted component over the bins."""
        return float(np.sum(self.counts * self.fitted) / np.sum(self.counts))


def _auto_bins(n_samples, default, per_axis_power=1, min_per_bin=MIN_PER_BIN):
    # aim for 1.5x the floor on average so sampling scatter rarely trips it
    per = int((n_samples / (1.5 * min_per_bin)) ** (1.0 / per_axis_power))
    return max(2, min(default, per))


def _populated_bins(cols, ranges, start, min_per_bin):
    """Largest bin count up to ``start`` whose every (grid) bin holds ``min_per_bin`` samples.

    Falls back to 2 so a sample too small for any grid still reaches the
    under-population error with a clear message.
    """
    for nb in range(start, 2, -1):
        flat = np.zeros(len(cols[0]), dtype=int)
        for x, (lo, hi) in zip(cols, ranges):
            flat = flat * nb + _bin_index(x, lo, hi, nb)
        if np.bincount(flat, minlength=nb ** len(cols)).min() >= min_per_bin:
            return nb
    return 2


def _bin_index(x, lo, hi, nb):
    k = np.floor((x - lo) / (hi - lo) * nb).astype(int)
    return np.clip(k, 0, nb - 1)


def _check_counts(counts, min_per_bin):
    low = np.flatnonzero(np.ravel(counts) < min_per_bin)
    if low.size:
        raise UnderPopulatedBinError(
            f"{low.size} bins have fewer than {min_per_bin} samples "
            f"(smallest holds {int(np.min(counts))}); use fewer bins or more samples",
            low.tolist())


def _conditional_1d(x, y, lo, hi, nb):
    k = _bin_index(x, lo, hi, nb)
    counts = np.bincount(k, minlength=nb)
    sums = np.bincount(k, weights=y, minlength=nb)
    with np.errstate(invalid="ignore", divide="ignore"):
        means = sums / counts
    centers = lo + (np.arange(nb) + 0.5) * (hi - lo) / nb
    return centers, means, counts, k


def _default_scaling(kind):
    return "unit" if kind.startswith("poly2d") or kind == "octic" else "raw"


def fit_first_order(X, y, dim: int, kind: str, bins: int | str = "auto", *,
                    f0: float | None = None, box=BOX, scaling: str | None = None,
                    min_per_bin: int = MIN_PER_BIN, label: str | None = None) -> ComponentFit:
    """Fit a one-variable component.

    Parameters
    ----------
    X, y : array_like
        Input points (M, 8) and outputs (M,).
    dim : int
        1-based variable number.
    kind : str
        Closed form to fit (see :class:`BasisForm`).
    bins : int or "auto"
        Number of equal-width bins over the box range; ``"auto"`` uses up to
        32, aiming at 1.5 x ``min_per_bin`` samples per bin on average and
        stepping down until every bin holds at least ``min_per_bin``.
    f0 : float, optional
        Overall mean; defaults to the sample mean of ``y``.
    """
    X = np.asarray(X, float)
    y = np.asarray(y, float)
    lo, hi = box[dim - 1]
    if bins == "auto":
        bins = _populated_bins([X[:, dim - 1]], [(lo, hi)],
                               _auto_bins(len(y), DEFAULT_BINS_1D, 1, min_per_bin), min_per_bin)
    f0 = float(np.mean(y)) if f0 is None else f0
    centers, means, counts, _ = _conditional_1d(X[:, dim - 1], y, lo, hi, bins)
    _check_counts(counts, min_per_bin)
    cond = means - f0
    scaling = scaling or _default_scaling(kind)
    form, cnum = fit_form(kind, (dim,), centers[:, None], cond, counts, box=box,
                          scaling=scaling, label=label or f"f{dim}")
    fitted = eval_component(form, _embed(centers[:, None], (dim,), box), box)
    rms = float(np.sqrt(np.average((fitted - cond) ** 2, weights=counts)))
    return ComponentFit((dim,), centers, cond, counts, form, fitted, rms, cnum)


def fit_second_order(X, y, dims: tuple[int, int], kind: str = "poly2d-3",
                     bins: int | str = "auto", *, f0: float | None = None, box=BOX,
                     scaling: str | None = None, min_per_bin: int = MIN_PER_BIN,
                     label: str | None = None, exponents=None) -> ComponentFit:
    """Fit a two-variable interaction component.

    The 2-D conditional means on a ``bins x bins`` grid have ``f0`` and the
    two 1-D conditional means (on the same bins) removed before fitting.
    """
    X = np.asarray(X, float)
    y = np.asarray(y, float)
    i, j = dims
    if i == j:
        raise ValueError("interaction needs two distinct variables")
    (lo_i, hi_i), (lo_j, hi_j) = box[i - 1], box[j - 1]
    if bins == "auto":
        bins = _populated_bins([X[:, i - 1], X[:, j - 1]], [(lo_i, hi_i), (lo_j, hi_j)],
                               _auto_bins(len(y), DEFAULT_BINS_2D, 2, min_per_bin), min_per_bin)
    f0 = float(np.mean(y)) if f0 is None else f0
    ci, mi, _, ki = _conditional_1d(X[:, i - 1], y, lo_i, hi_i, bins)
    cj, mj, _, kj = _conditional_1d(X[:, j - 1], y, lo_j, hi_j, bins)
    flat = ki * bins + kj
    counts = np.bincount(flat, minlength=bins * bins)
    _check_counts(counts, min_per_bin)
    sums = np.bincount(flat, weights=y, minlength=bins * bins)
    means = (sums / counts).reshape(bins, bins)
    cond = means - mi[:, None] - mj[None, :] + f0
    gi, gj = np.meshgrid(ci, cj, indexing="ij")
    centers = np.stack([gi.ravel(), gj.ravel()], axis=1)
    scaling = scaling or _default_scaling(kind)
    form, cnum = fit_form(kind, dims, centers, cond.ravel(), counts, box=box,
                          scaling=scaling, label=label or f"f{i}{j}", exponents=exponents)
    fitted = eval_component(form, _embed(centers, dims, box), box)
    rms = float(np.sqrt(np.average((fitted - cond.ravel()) ** 2, weights=counts)))
    return ComponentFit(tuple(dims), centers, cond.ravel(), counts, form, fitted, rms, cnum)


def _embed(cols, dims, box):
    """Place variable columns into full 8-vectors (other entries at box centre)."""
    cols = np.asarray(cols, float)
    out = np.tile([0.5 * (lo + hi) for lo, hi in box], (cols.shape[0], 1))
    for k, d in enumerate(dims):
        out[:, d - 1] = cols[:, k]
    return out


def _weighted_lstsq(M, t, w):
    sw = np.sqrt(w)
    Mw = M * sw[:, None]
    coef, *_ = np.linalg.lstsq(Mw, t * sw, rcond=None)
    s = np.linalg.svd(Mw, compute_uv=False)
    cond = float(s[0] / s[-1]) if s[-1] > 0 else float("inf")
    return coef, cond


def fit_form(kind: str, vars_, points, target, weights=None, *, box=BOX,
             scaling: str = "raw", label: str = "", exponents=None,
             init: BasisForm | None = None) -> tuple[BasisForm, float]:
    """Least-squares fit of a closed form to values at given variable points.

    ``exponents`` selects the monomials of kind ``poly2d``.  ``init`` gives
    starting parameters for the forms with frequencies and skips their
    frequency search.  Returns the fitted :class:`BasisForm` and the
    condition number of the (scaled) least-squares problem.
    """
    pts = np.asarray(points, float)
    t = np.asarray(target, float)
    w = np.ones_like(t) if weights is None else np.asarray(weights, float)
    if kind == "constant":
        c = float(np.average(t, weights=w))
        return BasisForm("constant", (), (c,), label=label), 1.0

    # work on [0, 1] inputs for conditioning, convert afterwards
    unit = np.empty_like(pts)
    for k, d in enumerate(vars_):
        lo, hi = box[d - 1]
        unit[:, k] = (pts[:, k] - lo) / (hi - lo)

    if kind in POLY1D_DEGREES or kind.startswith("poly1d-"):
        deg = POLY1D_DEGREES.get(kind) or int(kind.split("-")[1])
        M = np.vander(unit[:, 0], deg + 1)
        coef_u, cond = _weighted_lstsq(M, t, w)
        if cond > _MAX_COND:
            raise IllConditionedFitError(f"{kind} fit is ill-conditioned (cond {cond:.3g})", cond)
        if scaling == "unit":
            return BasisForm(kind, vars_, coef_u, scaling="unit", label=label), cond
        lo, hi = box[vars_[0] - 1]
        p = Polynomial(coef_u[::-1])(Polynomial([-lo / (hi - lo), 1.0 / (hi - lo)]))
        coef = np.zeros(deg + 1)
        coef[:len(p.coef)] = p.coef
        return BasisForm(kind, vars_, coef[::-1], scaling="raw", label=label), cond

    if kind.startswith("poly2d"):
        if exponents is not None:
            exps = tuple(tuple(e) for e in exponents)
        elif "-" in kind:
            exps = graded_exponents(int(kind.split("-")[1]))
        else:
            raise FormError("fitting kind 'poly2d' needs a degree or an exponent list")
        M = np.stack([unit[:, 0] ** a * unit[:, 1] ** b for a, b in exps], axis=1)
        coef_u, cond = _weighted_lstsq(M, t, w)
        if cond > _MAX_COND:
            raise IllConditionedFitError(f"{kind} fit is ill-conditioned (cond {cond:.3g})", cond)
        ex = exps if kind == "poly2d" else None
        if scaling == "unit":
            return BasisForm(kind, vars_, coef_u, ex, scaling="unit", label=label), cond
        coef = _poly2d_unit_to_raw(coef_u, exps, [box[d - 1] for d in vars_])
        return BasisForm(kind, vars_, coef, ex, scaling="raw", label=label), cond

    if kind.startswith("sine-sum-"):
        k = int(kind.split("-")[2])
        return _fit_sine_sum(k, vars_, pts[:, 0], unit[:, 0], t, w, scaling, label, init)
    if kind.startswith("fourier-"):
        k = int(kind.split("-")[1])
        return _fit_fourier(k, vars_, pts[:, 0], unit[:, 0], t, w, scaling, label, init)
    raise FormError(f"cannot fit kind {kind!r}")


def _poly2d_unit_to_raw(coef_u, exps, bounds):
    # substitute u = (x - lo) / w, v = (y - lo') / w' and collect monomials
    (lx, hx), (ly, hy) = bounds
    px = Polynomial([-lx / (hx - lx), 1.0 / (hx - lx)])
    py = Polynomial([-ly / (hy - ly), 1.0 / (hy - ly)])
    deg = max(a + b for a, b in exps)
    grid = np.zeros((deg + 1, deg + 1))
    for c, (a, b) in zip(coef_u, exps):
        ca = (px ** a).coef
        cb = (py ** b).coef
        grid[:len(ca), :len(cb)] += c * np.outer(ca, cb)
    return np.array([grid[a, b] for a, b in exps])


# Slowest admissible oscillation: a tenth of a period across the variable's
# range.  Slower sines are indistinguishable from low-degree polynomials and
# trade off against their own amplitudes without bound.
MIN_PERIODS = 0.1


def _min_frequency(f: BasisForm, box) -> float:
    if f.scaling == "unit":
        span = 1.0
    else:
        lo, hi = box[f.vars[0] - 1]
        span = hi - lo
    return 2 * np.pi * MIN_PERIODS / span


def _sin_design(x, omegas):
    cols = []
    for om in omegas:
        cols += [np.sin(om * x), np.cos(om * x)]
    return np.stack(cols, axis=1)


def _fit_sine_sum(k, vars_, x_raw, x_unit, t, w, scaling, label, init=None):
    x = x_unit if scaling == "unit" else x_raw
    sw = np.sqrt(w)

    def model(p):
        return sum(p[3 * j] * np.sin(p[3 * j + 1] * x + p[3 * j + 2]) for j in range(k))

    if init is not None:
        p0 = np.asarray(init.coeffs, float)
        res = least_squares(lambda p: sw * (model(p) - t), p0, method="lm", max_nfev=200 * (k + 1))
        p = res.x if np.sum(res.fun ** 2) <= np.sum((sw * (model(p0) - t)) ** 2) else p0
        return BasisForm(f"sine-sum-{k}", vars_, p, scaling=scaling, label=label), float("nan")
    span = float(np.ptp(x)) if np.ptp(x) > 0 else 1.0
    # candidate angular frequencies: from a tenth of a period over the range to
    # many periods; amplitudes and phases follow linearly for fixed frequencies
    grid = 2 * np.pi / span * np.geomspace(MIN_PERIODS, max(4.0, len(t) / 4), 160)
    omegas = []
    resid = t.copy()
    for _ in range(k):
        best = None
        for om in grid:
            M = _sin_design(x, omegas + [om])
            coef, _ = _weighted_lstsq(M, t, w)
            r = np.sum(w * (M @ coef - t) ** 2)
            if best is None or r < best[0]:
                best = (r, om)
        omegas.append(best[1])
    M = _sin_design(x, omegas)
    ab, cond = _weighted_lstsq(M, t, w)

    def params_from(omegas, ab):
        p = []
        for j, om in enumerate(omegas):
            s, c = ab[2 * j], ab[2 * j + 1]
            p += [np.hypot(s, c), om, np.arctan2(c, s)]
        return np.array(p)

    p0 = params_from(omegas, ab)
    res = least_squares(lambda p: sw * (model(p) - t), p0, method="lm", max_nfev=2000 * (k + 1))
    p = res.x if np.sum(res.fun ** 2) <= np.sum((sw * (model(p0) - t)) ** 2) else p0
    return BasisForm(f"sine-sum-{k}", vars_, p, scaling=scaling, label=label), cond


def _fit_fourier(k, vars_, x_raw, x_unit, t, w, scaling, label, init=None):
    x = x_unit if scaling == "unit" else x_raw
    span = float(np.ptp(x)) if np.ptp(x) > 0 else 1.0
    sw = np.sqrt(w)

    def design(om):
        cols = [np.ones_like(x)]
        for m in range(1, k + 1):
            cols += [np.cos(m * om * x), np.sin(m * om * x)]
        return np.stack(cols, axis=1)

    def resid(p):
        return sw * (design(p[0]) @ p[1:] - t)

    if init is not None:
        p0 = np.asarray(init.coeffs, float)
        res = least_squares(resid, p0, method="lm", max_nfev=400)
        p = res.x if np.sum(res.fun ** 2) <= np.sum(resid(p0) ** 2) else p0
        return BasisForm(f"fourier-{k}", vars_, p, scaling=scaling, label=label), float("nan")

    grid = 2 * np.pi / span * np.geomspace(MIN_PERIODS, 4.0, 120)
    best = None
    for om in grid:
        coef, cond = _weighted_lstsq(design(om), t, w)
        r = np.sum(w * (design(om) @ coef - t) ** 2)
        if best is None or r < best[0]:
            best = (r, om, coef, cond)
    _, om, coef, cond = best
    p0 = np.concatenate([[om], coef])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = least_squares(resid, p0, method="lm", max_nfev=4000)
    p = res.x if np.sum(res.fun ** 2) <= np.sum(resid(p0) ** 2) else p0
    return BasisForm(f"fourier-{k}", vars_, p, scaling=scaling, label=label), cond


def _center(form: BasisForm, X, box) -> tuple[BasisForm, float]:
    """Move a component's sample mean into its constant term when it has one.

    Returns the shifted form and the amount removed (to be added to f0).
    """
    fam = form.family
    if fam not in ("poly1d", "poly2d", "fourier"):
        return form, 0.0
    mean = float(np.mean(eval_component(form, X, box, check_range=False)))
    c = list(form.coeffs)
    if fam == "poly1d":
        c[-1] -= mean
    elif fam == "fourier":
        c[1] -= mean
    else:
        try:
            c[form.monomials.index((0, 0))] -= mean
        except ValueError:
            return form, 0.0
    return replace(form, coeffs=tuple(c)), mean


def _as_template(entry) -> dict:
    if isinstance(entry, BasisForm):
        return dict(vars=entry.vars, kind=entry.kind, scaling=entry.scaling,
                    exponents=entry.exponents, label=entry.label or None)
    vars_, kind = tuple(entry[0]), entry[1]
    scaling = entry[2] if len(entry) > 2 else None
    return dict(vars=vars_, kind=kind, scaling=scaling, exponents=None, label=None)


def _frequencies(f: BasisForm) -> list[float]:
    if f.family == "sine-sum":
        return list(f.coeffs[1::3])
    if f.family == "fourier":
        return [f.coeffs[0]]
    return []


def _columns_for(f: BasisForm, X, box, omegas):
    """Design columns of ``f`` given its frequencies; the form is linear in the rest."""
    cols = []
    for v in f.vars:
        c = X[:, v - 1]
        if f.scaling == "unit":
            lo, hi = box[v - 1]
            c = (c - lo) / (hi - lo)
        cols.append(c)
    fam = f.family
    if fam == "poly1d":
        return np.vander(cols[0], len(f.coeffs))
    if fam == "poly2d":
        u, v = cols
        return np.stack([u ** i * v ** j for i, j in f.monomials], axis=1)
    x = cols[0]
    if fam == "sine-sum":
        return np.stack([g(om * x) for om in omegas for g in (np.sin, np.cos)], axis=1)
    k = (len(f.coeffs) - 2) // 2
    return np.stack([np.ones_like(x)] + [g(m * omegas[0] * x) for m in range(1, k + 1)
                                         for g in (np.cos, np.sin)], axis=1)


def _coeffs_from(f: BasisForm, lin, omegas):
    fam = f.family
    if fam in ("poly1d", "poly2d"):
        return tuple(lin)
    if fam == "fourier":
        return (omegas[0], *lin)
    out = []
    for j, om in enumerate(omegas):
        s_, c_ = lin[2 * j], lin[2 * j + 1]
        out += [np.hypot(s_, c_), om, np.arctan2(c_, s_)]
    return tuple(out)


def _joint_refine(forms, f0, X, y, box):
    """Refine f0 and all coefficients together by variable projection.

    Every supported form is linear in its coefficients once the frequencies
    of the sine and Fourier forms are fixed, so the coefficients follow from
    one linear least-squares solve and only the frequencies are iterated.
    """
    split = [len(_frequencies(f)) for f in forms]
    w0 = np.array([om for f in forms for om in _frequencies(f)], float)
    w_min = np.array([_min_frequency(f, box) for f in forms for _ in _frequencies(f)])
    w0 = np.maximum(w0, w_min * (1 + 1e-9))

    def solve(w):
        blocks, k = [np.ones((len(y), 1))], 0
        for f, n in zip(forms, split):
            blocks.append(_columns_for(f, X, box, list(w[k:k + n])))
            k += n
        M = np.hstack(blocks)
        scale = np.linalg.norm(M, axis=0)
        scale[scale == 0] = 1.0
        # overlapping forms (a constant in several components, a linear term
        # shared with an interaction) make M rank deficient; a relative cutoff
        # picks the minimum-norm split between them
        lin, *_ = scipy.linalg.lstsq(M / scale, y, cond=1e-10, lapack_driver="gelsy")
        lin = lin / scale
        return lin, M @ lin - y

    def unpack(w, lin):
        out, k, j = [], 1, 0
        for f, n in zip(forms, split):
            m = _columns_for(f, X[:1], box, list(w[j:j + n])).shape[1]
            out.append(replace(f, coeffs=_coeffs_from(f, lin[k:k + m], list(w[j:j + n]))))
            k += m
            j += n
        return float(lin[0]), out

    base = float(np.sum((f0 + sum((eval_component(f, X, box, check_range=False) for f in forms),
                                  np.zeros_like(y)) - y) ** 2))
    w = w0
    if w0.size:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = least_squares(lambda w: solve(w)[1], w0, method="trf", x_scale="jac",
                                bounds=(w_min, np.inf), max_nfev=50 * (w0.size + 1))
        w = res.x
    lin, r = solve(w)
    if float(np.sum(r ** 2)) < base:
        return unpack(w, lin)
    return f0, list(forms)


def fit_rom(X, y, structure, *, quantity: str = "", point: str = "", horizon: float = float("nan"),
            bins: int | str = "auto", box=BOX, backfit: int = 3, refine: bool = True,
            name: str = "", min_per_bin: int = MIN_PER_BIN):
    """Fit ``f0`` plus a given set of components to sampled outputs.

    Each component is first estimated from binned conditional means (its
    ANOVA term).  ``backfit`` rounds of backfitting then refit every
    component to the partial residual of the raw samples, and ``refine``
    finishes with a joint least-squares pass over all coefficients; both
    remove the binning error while keeping the same closed forms.
    Components with a constant term are finally centred so their design mean
    is zero.

    Parameters
    ----------
    structure : sequence
        Items are ``(vars, kind)``, ``(vars, kind, scaling)`` or a
        :class:`BasisForm` used as a template (its coefficients are ignored).
        ``vars`` is a tuple of 1-based variable numbers (length 1 or 2).

    Returns
    -------
    rom : RomSpec
        ``declared_accuracy`` holds the in-sample R^2.
    fits : list of ComponentFit
        The binned first-pass fits (for diagnostics).

    Raises
    ------
    FitError, FormError
        With a ``component`` attribute giving the failing entry's position.
    """
    from .basis import RomSpec

    X = np.asarray(X, float)
    y = np.asarray(y, float)
    f0 = float(np.mean(y))
    fits, forms = [], []
    for k, entry in enumerate(structure):
        tpl = _as_template(entry)
        vars_ = tpl["vars"]
        kw = dict(f0=f0, box=box, scaling=tpl["scaling"], min_per_bin=min_per_bin,
                  label=tpl["label"])
        try:
            if len(vars_) == 1:
                cf = fit_first_order(X, y, vars_[0], tpl["kind"], bins, **kw)
            else:
                cf = fit_second_order(X, y, vars_, tpl["kind"], bins, exponents=tpl["exponents"],
                                      **kw)
        except (FitError, FormError) as e:
            e.component = k  # position in ``structure`` of the failing component
            raise
        fits.append(cf)
        forms.append(cf.form)

    def values(f):
        return eval_component(f, X, box, check_range=False)

    for _ in range(backfit):
        for k, f in enumerate(forms):
            others = sum((values(g) for m, g in enumerate(forms) if m != k), np.zeros_like(y))
            partial = y - f0 - others
            pts = X[:, [v - 1 for v in f.vars]]
            new, _ = fit_form(f.kind, f.vars, pts, partial, box=box, scaling=f.scaling,
                              label=f.label, exponents=f.exponents, init=f)
            if np.sum((values(new) - partial) ** 2) <= np.sum((values(f) - partial) ** 2):
                forms[k] = new
        f0 = float(np.mean(y - sum((values(g) for g in forms), np.zeros_like(y))))
    if refine and forms:
        f0, forms = _joint_refine(forms, f0, X, y, box)

    centred = []
    for f in forms:
        f, shift = _center(f, X, box)
        f0 += shift
        centred.append(f)
    pred = f0 + sum((values(g) for g in centred), np.zeros_like(y))
    var = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - float(np.sum((pred - y) ** 2)) / var if var > 0 else 1.0
    rom = RomSpec(quantity, point, horizon, f0, tuple(centred), declared_accuracy=r2,
                  name=name, box=box, provenance=("fitted",))
    return rom, fits
