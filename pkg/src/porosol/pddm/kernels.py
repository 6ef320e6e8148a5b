"""Influence kernels of constant-strength displacement and fluid discontinuities.

All stresses are tension-positive.  Kernels are written in the local frame
of the *source* element (x along the element, y along its normal, origin at
the midpoint, half-length ``h``) and rotated to the global frame by
:func:`to_global`.

The displacement discontinuity kernel is the classical plane-strain
constant-DD solution built from the derivatives of

    f(x, y) = -C [ y (atan(y/(x-h)) - atan(y/(x+h)))
                   - (x-h) ln r1 + (x+h) ln r2 ],   C = 1 / (4 pi (1 - nu)),

which is instantaneous (quasi-static, drained).  The fluid kernels are the
continuous line-source solution integrated along the element: with
``x = r^2 / (4 c t)``

    p      = Q / (4 pi kappa) E1(x)
    s_rr   = -eta Q / (4 pi kappa) [E1(x) + (1 - exp(-x)) / x]
    s_tt   =  eta Q / (4 pi kappa) [(1 - exp(-x)) / x - E1(x)]

Near the observer the logarithmic singularity of E1 is removed analytically;
everything else is integrated with a sinh-mapped Gauss rule that clusters
nodes around the observer's projection on the element.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import exp1

__all__ = [
    "SingularPointError",
    "elastic_dd_kernel",
    "fluid_source_point",
    "fluid_source_kernel",
    "dd_pressure_kernel",
    "e1_regular_part",
    "to_global",
    "to_local",
]

EULER_GAMMA = 0.57721566490153286061
_GAUSS = {n: leggauss(n) for n in (8, 16, 24, 32, 48)}


class SingularPointError(ValueError):
    """An observer coincides with an element tip, where the field is unbounded."""


def to_local(points, mid, tangent):
    """Coordinates of ``points`` in the frame of an element.

    ``points`` has shape (..., 2); ``mid`` and ``tangent`` broadcast against it.
    """
    d = np.asarray(points, float) - np.asarray(mid, float)
    t = np.asarray(tangent, float)
    xl = d[..., 0] * t[..., 0] + d[..., 1] * t[..., 1]
    yl = -d[..., 0] * t[..., 1] + d[..., 1] * t[..., 0]
    return xl, yl


def to_global(sxx, syy, sxy, tangent):
    """Rotate local stress components to the global frame."""
    t = np.asarray(tangent, float)
    c, s = t[..., 0], t[..., 1]
    cc, ss, cs = c * c, s * s, c * s
    gxx = cc * sxx + ss * syy - 2 * cs * sxy
    gyy = ss * sxx + cc * syy + 2 * cs * sxy
    gxy = cs * (sxx - syy) + (cc - ss) * sxy
    return gxx, gyy, gxy


def elastic_dd_kernel(x, y, h, G, nu, *, allow_on_element=True):
    """Stress from unit shear and normal displacement discontinuities.

    Parameters
    ----------
    x, y : array_like
        Observer coordinates in the source element's local frame.
    h : float or array_like
        Element half-length.
    G, nu : float
        Shear modulus and (drained) Poisson ratio.
    allow_on_element : bool
        Observers on the open element interval (``y == 0, |x| < h``) return
        the two-sided average, which is what self-influence needs.  Set to
        False to reject them.

    Returns
    -------
    ndarray, shape (..., 2, 3)
        ``[..., k, :]`` holds local (sxx, syy, sxy) for a unit discontinuity
        of kind ``k`` (0 = shear ``Ds``, 1 = normal ``Dn``).  Discontinuities
        are the displacement below the element minus the one above, so a
        negative ``Dn`` opens it.
    """
    x, y, h = np.broadcast_arrays(*(np.asarray(v, float) for v in (x, y, h)))
    x1, x2 = x - h, x + h
    r1 = x1 * x1 + y * y
    r2 = x2 * x2 + y * y
    tip = (r1 <= (1e-12 * h) ** 2) | (r2 <= (1e-12 * h) ** 2)
    if np.any(tip):
        raise SingularPointError("observer at an element tip")
    if not allow_on_element and np.any((y == 0) & (np.abs(x) < h)):
        raise SingularPointError("observer on a source element")

    C = 1.0 / (4.0 * np.pi * (1.0 - nu))
    fxy = C * (y / r1 - y / r2)
    fyy = -C * (x1 / r1 - x2 / r2)
    fxyy = C * ((x1 * x1 - y * y) / r1**2 - (x2 * x2 - y * y) / r2**2)
    fyyy = 2.0 * y * C * (x1 / r1**2 - x2 / r2**2)

    out = np.empty(x.shape + (2, 3))
    g2 = 2.0 * G
    out[..., 0, 0] = g2 * (2.0 * fxy + y * fxyy)
    out[..., 0, 1] = g2 * (-y * fxyy)
    out[..., 0, 2] = g2 * (fyy + y * fyyy)
    out[..., 1, 0] = g2 * (fyy + y * fyyy)
    out[..., 1, 1] = g2 * (fyy - y * fyyy)
    out[..., 1, 2] = g2 * (-y * fxyy)
    return out


def e1_regular_part(x):
    """R(x) = E1(x) + gamma + ln(x), which is entire and R(0) = 0."""
    x = np.asarray(x, float)
    out = np.empty_like(x)
    small = x < 0.5
    xs = x[small]
    # alternating series sum_{k>=1} (-1)^(k+1) x^k / (k k!), 16 terms is exact to
    # machine precision below 0.5
    term = xs.copy()
    acc = xs.copy()
    for k in range(2, 18):
        term = -term * xs / k
        acc = acc + term / k
    out[small] = acc
    xl = x[~small]
    out[~small] = exp1(xl) + EULER_GAMMA + np.log(xl)
    return out


def fluid_source_point(r, t, c, kappa, eta):
    """Pressure and polar stresses of a unit continuous line source.

    The source discharges one unit of fluid volume per unit time and unit
    out-of-plane length from ``t = 0``.

    Returns
    -------
    p, s_rr, s_tt : ndarray
        Pore pressure and radial / hoop total stress (tension positive).
    """
    r = np.asarray(r, float)
    t = np.asarray(t, float)
    x = r * r / (4.0 * c * t)
    e1 = exp1(x)
    g = -np.expm1(-x) / x
    pref = 1.0 / (4.0 * np.pi * kappa)
    return pref * e1, -eta * pref * (e1 + g), eta * pref * (g - e1)


def _log_antideriv(u, y0a):
    # integral of ln(u^2 + y0^2) du, with 0 ln 0 = 0
    r2 = u * u + y0a * y0a
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = np.where(r2 > 0, u * np.log(np.where(r2 > 0, r2, 1.0)), 0.0)
        at = np.where(y0a > 0, 2.0 * y0a * np.arctan(u / np.where(y0a > 0, y0a, 1.0)), 0.0)
    return lg - 2.0 * u + at


def _sinh_nodes(u1, u2, ell, nq):
    """Gauss nodes on [u1, u2] under u = ell sinh(mu), split at u = 0."""
    node, weight = _GAUSS[nq] if nq in _GAUSS else leggauss(nq)
    m1 = np.arcsinh(u1 / ell)
    m2 = np.arcsinh(u2 / ell)
    mc = np.clip(0.0, m1, m2)
    us, ws = [], []
    for a, b in ((m1, mc), (mc, m2)):
        half = 0.5 * (b - a)
        mu = (0.5 * (a + b))[..., None] + half[..., None] * node
        us.append(ell[..., None] * np.sinh(mu))
        ws.append((half * ell)[..., None] * np.cosh(mu) * weight)
    return np.concatenate(us, axis=-1), np.concatenate(ws, axis=-1)


def _min_distance_sq(u1, u2, y):
    du = np.where(u1 > 0, u1, np.where(u2 < 0, u2, 0.0))
    return du * du + y * y


def fluid_source_kernel(x, y, h, t, c, kappa, eta, *, nq=24):
    """Element-integrated continuous fluid source of unit strength density.

    A unit value of the fluid discontinuity ``Dq`` discharges one unit of
    volume per unit time per unit element length, switched on at ``t = 0``.

    Parameters
    ----------
    x, y : array_like
        Observer coordinates in the source element frame.
    h : float or array_like
        Element half-length.
    t : array_like
        Elapsed time since switch-on; must be positive.
    c, kappa, eta : float
        Diffusivity, mobility and poroelastic stress coefficient.
    nq : int
        Gauss points for the smooth remainder.

    Returns
    -------
    ndarray, shape (..., 4)
        Pore pressure and local (sxx, syy, sxy).
    """
    x, y, h, t = np.broadcast_arrays(*(np.asarray(v, float) for v in (x, y, h, t)))
    if np.any(t <= 0):
        raise ValueError("fluid source kernel needs t > 0")
    four_ct = 4.0 * c * t
    ya = np.abs(y)
    u1, u2 = x - h, x + h
    length = 2.0 * h

    # analytic parts
    int_log = _log_antideriv(u2, ya) - _log_antideriv(u1, ya)
    int_e1_sing = length * (np.log(four_ct) - EULER_GAMMA) - int_log

    # The log singularity of E1 is subtracted analytically only where the
    # element passes close to the observer on the diffusion scale; far away the
    # integrand is smooth and tiny, and subtracting would cancel catastrophically.
    yy = y[..., None]
    fct = four_ct[..., None]
    ell = 0.5 * np.sqrt(y * y + four_ct)
    u, w = _sinh_nodes(u1, u2, ell, nq)
    xq = (u * u + yy * yy) / fct
    near = _min_distance_sq(u1, u2, y) < four_ct
    int_r = np.sum(w * e1_regular_part(xq), axis=-1)
    with np.errstate(over="ignore"):
        int_e1_direct = np.sum(w * exp1(np.where(xq > 0, xq, 1.0)), axis=-1)
    e1_int = np.where(near, int_e1_sing + int_r, int_e1_direct)

    # g = (1 - exp(-x)) / x is bounded, so its angular terms are integrated
    # directly; nodes cluster on the smaller of the two length scales.
    ell_g = 0.5 * np.minimum(np.where(ya > 0, ya, np.inf), np.sqrt(four_ct))
    u, w = _sinh_nodes(u1, u2, ell_g, 2 * nq)
    r2 = u * u + yy * yy
    xq = r2 / fct
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(xq > 0, -np.expm1(-xq) / np.where(xq > 0, xq, 1.0), 1.0)
        inv = np.where(r2 > 0, 1.0 / np.where(r2 > 0, r2, 1.0), 0.0)
    gcos = np.sum(w * g * (u * u - yy * yy) * inv, axis=-1)
    gsin = np.sum(w * g * (2.0 * u * yy) * inv, axis=-1)

    pref = 1.0 / (4.0 * np.pi * kappa)
    out = np.empty(x.shape + (4,))
    out[..., 0] = pref * e1_int
    out[..., 1] = -eta * pref * (e1_int + gcos)
    out[..., 2] = -eta * pref * (e1_int - gcos)
    out[..., 3] = -eta * pref * gsin
    return out


def dd_pressure_kernel(x, y, h, t, G, nu_u, B, c):
    """Pore pressure from unit displacement discontinuities switched on at t = 0.

    Each element end behaves as an edge dislocation whose undrained pressure
    relaxes as ``1 - exp(-r^2 / (4 c t))``.

    Returns
    -------
    ndarray, shape (..., 2)
        Pressure per unit ``Ds`` and per unit ``Dn``.
    """
    x, y, h, t = np.broadcast_arrays(*(np.asarray(v, float) for v in (x, y, h, t)))
    x1, x2 = x - h, x + h
    r1 = x1 * x1 + y * y
    r2 = x2 * x2 + y * y
    if np.any((r1 <= (1e-12 * h) ** 2) | (r2 <= (1e-12 * h) ** 2)):
        raise SingularPointError("observer at an element tip")
    g1 = -np.expm1(-r1 / (4.0 * c * t))
    g2 = -np.expm1(-r2 / (4.0 * c * t))
    pref = -(B * (1.0 + nu_u) / 3.0) * 4.0 * G / (4.0 * np.pi * (1.0 - nu_u))
    out = np.empty(x.shape + (2,))
    out[..., 0] = pref * (y / r1 * g1 - y / r2 * g2)
    out[..., 1] = -pref * (x1 / r1 * g1 - x2 / r2 * g2)
    return out
