"""Time marching of displacement and fluid discontinuities along fractures.

Each element carries three unknowns per time slab: shear and normal
displacement discontinuities (``Ds``, ``Dn``, m) and a fluid discontinuity
(``Dq``, fluid volume per unit time per unit length, negative for
extraction).  Values are piecewise constant in time on slabs of width
``dt``; the induced fields are sums of step responses switched on at the
slab boundaries, collocated at element midpoints at the end of each slab.

Equation rows per element are, in order, shear traction, normal traction
and pore pressure; unknown columns are ``Ds``, ``Dn``, ``Dq``.  Tractions
and stresses are tension-positive.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from ..material import PoroelasticMaterial, diffusivity, stress_coefficient
from .kernels import (
    SingularPointError,
    dd_pressure_kernel,
    elastic_dd_kernel,
    fluid_source_kernel,
    to_global,
    to_local,
)
from .mesh import Elements

__all__ = [
    "FarFieldState",
    "BoundaryCondition",
    "DiscontinuityHistory",
    "FieldSample",
    "SingularSystemError",
    "NonFiniteSolutionError",
    "BC_MODES",
    "production_bc",
    "assemble_step",
    "assemble_history",
    "time_march",
    "field_at",
    "depletion_profile",
]

BC_MODES = ("pressure_change", "net_pressure", "fixed")


class SingularSystemError(np.linalg.LinAlgError):
    """The per-step influence matrix has a (numerically) zero pivot."""

    def __init__(self, msg, elements=()):
        super().__init__(msg)
        self.elements = tuple(elements)


class NonFiniteSolutionError(FloatingPointError):
    def __init__(self, msg, step):
        super().__init__(msg)
        self.step = step


@dataclass(frozen=True)
class FarFieldState:
    """Initial in-situ state.  Stresses are compressive magnitudes in Pa.

    The minimum horizontal stress acts along x (the well axis) and the
    maximum along y, so the tension-positive tensor is
    ``(sxx, syy, sxy) = (-sigma_h, -sigma_H, 0)``.
    """
    sigma_H: float
    sigma_h: float
    p_r: float

    def tensor(self) -> tuple[float, float, float]:
        return -self.sigma_h, -self.sigma_H, 0.0


@dataclass(frozen=True)
class BoundaryCondition:
    """Induced loads the discontinuities must produce at each element.

    Arrays have shape ``(n_steps, n_elements)`` or ``(n_elements,)`` for
    loads that do not change with time.  They are changes relative to the
    far-field state: induced shear traction, induced normal traction and
    induced pore pressure.
    """
    shear: np.ndarray
    normal: np.ndarray
    pressure: np.ndarray

    def at(self, step: int) -> np.ndarray:
        def row(a):
            a = np.asarray(a, float)
            return a if a.ndim == 1 else a[step]
        return np.concatenate([row(self.shear), row(self.normal), row(self.pressure)])

    def scaled(self, factor: float) -> "BoundaryCondition":
        return BoundaryCondition(np.asarray(self.shear) * factor,
                                 np.asarray(self.normal) * factor,
                                 np.asarray(self.pressure) * factor)


def production_bc(elements: Elements, far_field: FarFieldState, p_f: float,
                  mode: str = "pressure_change") -> BoundaryCondition:
    """Loads for production at constant fracture fluid pressure ``p_f``.

    Modes
    -----
    pressure_change
        The faces see the fluid-pressure change: induced normal traction
        ``p_r - p_f``, no induced shear, induced pressure ``p_f - p_r``.
    net_pressure
        Total face traction equals ``-p_f`` and total shear vanishes, so the
        induced loads also cancel any far-field traction on the faces.
    fixed
        Mechanically inert faces: only the pressure condition is applied.
    """
    n = len(elements)
    dp = p_f - far_field.p_r
    pressure = np.full(n, dp)
    if mode == "pressure_change":
        return BoundaryCondition(np.zeros(n), np.full(n, -dp), pressure)
    if mode == "net_pressure":
        sxx, syy, sxy = far_field.tensor()
        nv, tv = elements.n, elements.t
        sn0 = nv[:, 0] ** 2 * sxx + 2 * nv[:, 0] * nv[:, 1] * sxy + nv[:, 1] ** 2 * syy
        ss0 = (tv[:, 0] * nv[:, 0] * sxx + (tv[:, 0] * nv[:, 1] + tv[:, 1] * nv[:, 0]) * sxy
               + tv[:, 1] * nv[:, 1] * syy)
        return BoundaryCondition(-ss0, -p_f - sn0, pressure)
    if mode == "fixed":
        return BoundaryCondition(np.zeros(n), np.zeros(n), pressure)
    raise ValueError(f"unknown boundary mode {mode!r}; choose from {BC_MODES}")


def _unique_rows(*cols, rel=1e-9):
    # Many observer/source pairs share the same local offset (uniform meshes on
    # parallel fractures), so kernels are evaluated once per distinct offset.
    key = np.stack([np.asarray(c, float).ravel() for c in cols], axis=1)
    scale = np.max(np.abs(key), axis=0)
    scale[scale == 0] = 1.0
    q = np.round(key / (scale * rel)).astype(np.int64)
    _, first, inverse = np.unique(q, axis=0, return_index=True, return_inverse=True)
    return first, inverse.ravel()


def _material_constants(m: PoroelasticMaterial):
    return dict(G=m.G, nu=m.nu, nu_u=m.nu_u, B=m.B, kappa=m.kappa,
                c=diffusivity(m), eta=stress_coefficient(m))


def _tractions(gxx, gyy, gxy, tangent, normal):
    t0, t1 = tangent[..., 0], tangent[..., 1]
    n0, n1 = normal[..., 0], normal[..., 1]
    sn = n0 * n0 * gxx + 2 * n0 * n1 * gxy + n1 * n1 * gyy
    ss = t0 * n0 * gxx + (t0 * n1 + t1 * n0) * gxy + t1 * n1 * gyy
    return ss, sn


class _PairGeometry:
    """Local coordinates of every observer point in every source frame."""

    def __init__(self, points, src: Elements):
        pts = np.asarray(points, float)[:, None, :]
        self.xl, self.yl = to_local(pts, src.mid[None, :, :], src.t[None, :, :])
        self.h = np.broadcast_to(src.h[None, :], self.xl.shape)
        self.tangent = np.broadcast_to(src.t[None, :, :], self.xl.shape + (2,))
        self.first, self.inverse = _unique_rows(self.xl, self.yl, self.h)

    def elastic(self, G, nu, allow_on_element):
        f = self.first
        k = elastic_dd_kernel(self.xl.ravel()[f], self.yl.ravel()[f], self.h.ravel()[f],
                              G, nu, allow_on_element=allow_on_element)
        k = k[self.inverse].reshape(self.xl.shape + (2, 3))
        # global (xx, yy, xy) per unit Ds and Dn: shape (M, N, 2, 3)
        tan = self.tangent[..., None, :]
        return np.stack(to_global(k[..., 0], k[..., 1], k[..., 2], tan), axis=-1)

    def fluid(self, times, c, kappa, eta):
        """Pressure and global stresses per unit Dq at each time: (T, M, N, 4)."""
        f = self.first
        times = np.asarray(times, float)
        xl = self.xl.ravel()[f][None, :]
        yl = self.yl.ravel()[f][None, :]
        hh = self.h.ravel()[f][None, :]
        k = fluid_source_kernel(xl, yl, hh, times[:, None], c, kappa, eta)
        k = k[:, self.inverse].reshape((len(times),) + self.xl.shape + (4,))
        gxx, gyy, gxy = to_global(k[..., 1], k[..., 2], k[..., 3], self.tangent)
        return np.stack([k[..., 0], gxx, gyy, gxy], axis=-1)

    def dd_pressure(self, times, G, nu_u, B, c):
        """Pressure per unit Ds and Dn at each time: (T, M, N, 2)."""
        f = self.first
        times = np.asarray(times, float)
        k = dd_pressure_kernel(self.xl.ravel()[f][None, :], self.yl.ravel()[f][None, :],
                               self.h.ravel()[f][None, :], times[:, None], G, nu_u, B, c)
        return k[:, self.inverse].reshape((len(times),) + self.xl.shape + (2,))


def _step_responses(elements: Elements, m: PoroelasticMaterial, times, coupled):
    """Influence of unit unknowns switched on at 0, sampled at ``times``.

    Returns the instantaneous elastic block (2N, 2N) and the time-dependent
    columns as an array (T, 3N, 3N) holding only the Dq columns and, when
    coupled, the pressure rows of the Ds/Dn columns.
    """
    mc = _material_constants(m)
    n = len(elements)
    geo = _PairGeometry(elements.mid, elements)
    ek = geo.elastic(mc["G"], mc["nu"], allow_on_element=True)  # (N, N, 2, 3)
    tan, nrm = elements.t[:, None, None, :], elements.n[:, None, None, :]
    ss, sn = _tractions(ek[..., 0], ek[..., 1], ek[..., 2], tan, nrm)  # (N, N, 2)
    E = np.empty((2 * n, 2 * n))
    E[:n, :n], E[:n, n:] = ss[..., 0], ss[..., 1]
    E[n:, :n], E[n:, n:] = sn[..., 0], sn[..., 1]

    times = np.asarray(times, float)
    K = np.zeros((len(times), 3 * n, 3 * n))
    fk = geo.fluid(times, mc["c"], mc["kappa"], mc["eta"])  # (T, N, N, 4)
    fss, fsn = _tractions(fk[..., 1], fk[..., 2], fk[..., 3],
                          elements.t[None, :, None, :], elements.n[None, :, None, :])
    K[:, :n, 2 * n:] = fss
    K[:, n:2 * n, 2 * n:] = fsn
    K[:, 2 * n:, 2 * n:] = fk[..., 0]
    if coupled:
        pk = geo.dd_pressure(times, mc["G"], mc["nu_u"], mc["B"], mc["c"])
        K[:, 2 * n:, :n] = pk[..., 0]
        K[:, 2 * n:, n:2 * n] = pk[..., 1]
    return E, K


def assemble_history(elements: Elements, m: PoroelasticMaterial, dt: float, n_steps: int,
                     coupled: bool = False) -> np.ndarray:
    """All coefficient blocks ``H[lag]`` for ``lag = 0 .. n_steps - 1``.

    ``H[0]`` multiplies the current slab's unknowns; ``H[lag]`` multiplies
    the unknowns of the slab ``lag`` steps earlier.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    n = len(elements)
    E, K = _step_responses(elements, m, dt * np.arange(1, n_steps + 1), coupled)
    H = np.empty_like(K)
    H[0] = K[0]
    H[1:] = K[1:] - K[:-1]
    H[0, :2 * n, :2 * n] += E
    return H


def assemble_step(elements: Elements, m: PoroelasticMaterial, dt: float, lag: int,
                  coupled: bool = False) -> np.ndarray:
    """Coefficient block for one lag (0 for the current slab)."""
    if lag < 0:
        raise ValueError("lag must be non-negative")
    n = len(elements)
    times = [dt] if lag == 0 else [lag * dt, (lag + 1) * dt]
    E, K = _step_responses(elements, m, times, coupled)
    if lag == 0:
        H = K[0].copy()
        H[:2 * n, :2 * n] += E
        return H
    return K[1] - K[0]


@dataclass
class DiscontinuityHistory:
    """Solved discontinuity values per slab.

    ``Ds``, ``Dn`` and ``Dq`` have shape ``(n_steps, n_elements)``; slab ``k``
    covers ``(k dt, (k + 1) dt]``.
    """
    elements: Elements
    material: PoroelasticMaterial
    dt: float
    Ds: np.ndarray
    Dn: np.ndarray
    Dq: np.ndarray
    coupled: bool = False
    far_field: FarFieldState | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n_steps(self) -> int:
        return self.Ds.shape[0]

    @property
    def times(self) -> np.ndarray:
        """Collocation times, the end of each slab."""
        return self.dt * np.arange(1, self.n_steps + 1)

    @property
    def horizon(self) -> float:
        return self.dt * self.n_steps

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.Ds, self.Dn, self.Dq], axis=1)

    def aperture(self, step: int = -1) -> np.ndarray:
        """Opening (positive) of every element at the given slab."""
        return -self.Dn[step]


def _factor(H0: np.ndarray, n: int):
    # Row/column equilibration: mechanical rows scale with G/h and pressure
    # rows with 1/kappa, which differ by many orders of magnitude.
    r = 1.0 / np.max(np.abs(H0), axis=1)
    if not np.all(np.isfinite(r)):
        bad = np.flatnonzero(~np.isfinite(r))
        raise SingularSystemError(f"zero rows in influence matrix at elements {sorted(set(bad % n))}",
                                  sorted(set(bad % n)))
    Hr = H0 * r[:, None]
    cs = 1.0 / np.max(np.abs(Hr), axis=0)
    if not np.all(np.isfinite(cs)):
        bad = np.flatnonzero(~np.isfinite(cs))
        raise SingularSystemError(f"zero columns in influence matrix at elements {sorted(set(bad % n))}",
                                  sorted(set(bad % n)))
    A = Hr * cs[None, :]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = lu_factor(A, check_finite=True)
    d = np.abs(np.diag(lu))
    small = np.flatnonzero(d <= 1e-13 * d.max())
    if small.size:
        idx = sorted(set(int(i) % n for i in small))
        raise SingularSystemError(f"singular influence matrix; pivots vanish near elements {idx}", idx)
    return (lu, piv), r, cs


def time_march(elements: Elements, m: PoroelasticMaterial, bc: BoundaryCondition,
               dt: float, n_steps: int, *, coupled: bool = False,
               far_field: FarFieldState | None = None,
               history_tol: float | None = None) -> DiscontinuityHistory:
    """Solve for the discontinuity history over ``n_steps`` slabs.

    Parameters
    ----------
    history_tol : float, optional
        Drop history blocks once their norm falls below this fraction of the
        current-step block norm.  By default the full history is kept.

    Raises
    ------
    SingularSystemError
        If the current-step matrix cannot be factored.
    NonFiniteSolutionError
        If a step produces NaN or infinite values.
    """
    n = len(elements)
    H = assemble_history(elements, m, dt, n_steps, coupled)
    (lu, r, cs) = _factor(H[0], n)
    window = n_steps
    if history_tol is not None:
        norms = np.abs(H).max(axis=(1, 2))
        below = np.flatnonzero(norms[1:] < history_tol * norms[0])
        if below.size:
            # keep lags up to the first one that is negligible for good
            tail = np.flatnonzero(norms[1:] >= history_tol * norms[0])
            last = tail.max() + 1 if tail.size else 0
            window = max(1, last + 1)
    X = np.zeros((n_steps, 3 * n))
    for k in range(n_steps):
        rhs = bc.at(k).copy()
        lags = np.arange(1, min(k, window - 1) + 1)
        if lags.size:
            rhs -= np.einsum("lij,lj->i", H[lags], X[k - lags])
        y = lu_solve(lu, rhs * r, check_finite=False)
        X[k] = y * cs
        if not np.all(np.isfinite(X[k])):
            raise NonFiniteSolutionError(f"non-finite discontinuity values at step {k}", k)
    return DiscontinuityHistory(elements, m, dt, X[:, :n].copy(), X[:, n:2 * n].copy(),
                                X[:, 2 * n:].copy(), coupled, far_field)


@dataclass
class FieldSample:
    """Fields at observation points at one time.  Stresses are tension-positive
    totals (far field included when known)."""
    points: np.ndarray
    t: float
    p: np.ndarray
    sxx: np.ndarray
    syy: np.ndarray
    sxy: np.ndarray

    @property
    def sigma_min(self) -> np.ndarray:
        """Compressive stress along the initial minimum-stress direction (x)."""
        return -self.sxx

    @property
    def sigma_max(self) -> np.ndarray:
        """Compressive stress along the initial maximum-stress direction (y)."""
        return -self.syy


def field_at(history: DiscontinuityHistory, points, t: float,
             far_field: FarFieldState | None = None) -> FieldSample:
    """Pore pressure and stress at arbitrary points at time ``t``.

    ``t`` must lie in ``[0, horizon]``.  Points on an element raise
    :class:`SingularPointError`.
    """
    pts = np.atleast_2d(np.asarray(points, float))
    ff = far_field if far_field is not None else history.far_field
    if not 0 <= t <= history.horizon * (1 + 1e-12):
        raise ValueError(f"t = {t} outside [0, {history.horizon}]")
    base = ff.tensor() if ff is not None else (0.0, 0.0, 0.0)
    p0 = ff.p_r if ff is not None else 0.0
    m = pts.shape[0]
    p = np.full(m, p0, float)
    sxx = np.full(m, base[0], float)
    syy = np.full(m, base[1], float)
    sxy = np.full(m, base[2], float)
    if t <= 0:
        return FieldSample(pts, t, p, sxx, syy, sxy)

    el = history.elements
    mc = _material_constants(history.material)
    geo = _PairGeometry(pts, el)
    on = (np.abs(geo.yl) <= 1e-12 * geo.h) & (np.abs(geo.xl) < geo.h)
    if np.any(on):
        raise SingularPointError(
            f"observation points {sorted(set(np.nonzero(on)[0].tolist()))} lie on a fracture")
    dt = history.dt
    n_slabs = min(history.n_steps, int(np.ceil(t / dt - 1e-9)))
    # elastic part: the current discontinuity values act instantaneously
    ek = geo.elastic(mc["G"], mc["nu"], allow_on_element=False)  # (M, N, 2, 3)
    cur = n_slabs - 1
    el_stress = (np.einsum("mnc,n->mc", ek[:, :, 0, :], history.Ds[cur])
                 + np.einsum("mnc,n->mc", ek[:, :, 1, :], history.Dn[cur]))
    sxx += el_stress[:, 0]
    syy += el_stress[:, 1]
    sxy += el_stress[:, 2]

    # time-dependent part: sum of step responses
    on_times = t - dt * np.arange(n_slabs)
    off_times = t - dt * np.arange(1, n_slabs + 1)
    tau = np.concatenate([on_times, off_times[off_times > 0]])
    uniq, inv = np.unique(np.round(tau / dt, 9), return_inverse=True)
    tau_u = np.array([tau[np.flatnonzero(inv == i)[0]] for i in range(len(uniq))])
    fk = geo.fluid(tau_u, mc["c"], mc["kappa"], mc["eta"])  # (T, M, N, 4)
    weights = np.zeros((len(tau_u), n_slabs))
    weights[inv[:n_slabs], np.arange(n_slabs)] += 1.0
    pos = np.flatnonzero(off_times > 0)
    weights[inv[n_slabs:], pos] -= 1.0
    contrib = np.einsum("tmnk,ts,sn->mk", fk, weights, history.Dq[:n_slabs])
    p += contrib[:, 0]
    sxx += contrib[:, 1]
    syy += contrib[:, 2]
    sxy += contrib[:, 3]
    if history.coupled:
        pk = geo.dd_pressure(tau_u, mc["G"], mc["nu_u"], mc["B"], mc["c"])
        p += (np.einsum("tmn,ts,sn->m", pk[..., 0], weights, history.Ds[:n_slabs])
              + np.einsum("tmn,ts,sn->m", pk[..., 1], weights, history.Dn[:n_slabs]))
    return FieldSample(pts, t, p, sxx, syy, sxy)


def depletion_profile(history: DiscontinuityHistory, points, times,
                      far_field: FarFieldState | None = None) -> list[FieldSample]:
    """Fields at fixed observation points for each requested time."""
    return [field_at(history, points, float(t), far_field) for t in np.atleast_1d(times)]
