"""Compiled per-face kernels for the interface flux sweeps.

These mirror the reference implementations in weno.py and flux.py; the
equivalence is covered by tests. Layout conventions:

- extended conserved fields carry 3 ghost layers; interior cell 0 sits at
  extended index 3; x-face f in 0..nx lies between extended columns f+2
  and f+3.
- flux outputs are per-face time-integrated fluxes for the two windows
  (dt/2, dt), shape (..., 4, 2).
- moment scratch: per state a (5, 8) table with rows (full-u, pos-u,
  neg-u, full-v, xi); xi uses columns 0..2.

A face whose reconstructed states come out non-physical is retried once
with the zero-slope cell averages (the first-order flux); flag[2] counts
such retries. A nonzero flag[0] aborts the sweep: 1 encodes a
non-physical state even at cell-average level, 2 a singular moment
system; flag[1] holds a flat face index for diagnostics.
"""
import math

import numpy as np
from numba import njit

_GOFF = np.array([-0.5 * math.sqrt(0.6), 0.0, 0.5 * math.sqrt(0.6)])
_GW = np.array([5.0, 8.0, 5.0]) / 18.0

_EPS = 1e-6
_D0, _D1, _D2 = 0.1, 0.6, 0.3
_BHI = 0.85
_BL0, _BL1, _BL2 = 0.01125, 0.1275, 0.01125

FU, PU, NU, FV, XI = 0, 1, 2, 3, 4


@njit(cache=True, fastmath=True)
def _weno_point(w0, w1, w2, w3, w4):
    """Left-biased WENO5 value and slope (in cell units) at z = +1/2."""
    b0 = (13.0 / 12.0 * (w0 - 2.0 * w1 + w2) ** 2
          + 0.25 * (w0 - 4.0 * w1 + 3.0 * w2) ** 2)
    b1 = (13.0 / 12.0 * (w1 - 2.0 * w2 + w3) ** 2
          + 0.25 * (w1 - w3) ** 2)
    b2 = (13.0 / 12.0 * (w2 - 2.0 * w3 + w4) ** 2
          + 0.25 * (3.0 * w2 - 4.0 * w3 + w4) ** 2)
    a0 = _D0 / ((_EPS + b0) * (_EPS + b0))
    a1 = _D1 / ((_EPS + b1) * (_EPS + b1))
    a2 = _D2 / ((_EPS + b2) * (_EPS + b2))
    s = a0 + a1 + a2
    o0, o1, o2 = a0 / s, a1 / s, a2 / s
    value = (o0 * (2.0 * w0 - 7.0 * w1 + 11.0 * w2)
             + o1 * (-w1 + 5.0 * w2 + 2.0 * w3)
             + o2 * (2.0 * w2 + 5.0 * w3 - w4)) / 6.0
    slope = o0 * (w0 - 3.0 * w1 + 2.0 * w2) + (o1 + o2) * (w3 - w2)
    return value, slope


@njit(cache=True, fastmath=True)
def _blend5(p0, p1, p2, p3, p4, coeff):
    """Monomial coefficients of the tangential blend of 5 line averages."""
    c00 = -p0 / 24.0 + p1 / 12.0 + 23.0 * p2 / 24.0
    c01 = 0.5 * p0 - 2.0 * p1 + 1.5 * p2
    c02 = 0.5 * p0 - p1 + 0.5 * p2
    c10 = -p1 / 24.0 + 13.0 * p2 / 12.0 - p3 / 24.0
    c11 = 0.5 * (p3 - p1)
    c12 = 0.5 * p1 - p2 + 0.5 * p3
    c20 = 23.0 * p2 / 24.0 + p3 / 12.0 - p4 / 24.0
    c21 = -1.5 * p2 + 2.0 * p3 - 0.5 * p4
    c22 = 0.5 * p2 - p3 + 0.5 * p4
    q0 = (3.0 * p0 / 640.0 - 29.0 * p1 / 480.0 + 1067.0 * p2 / 960.0
          - 29.0 * p3 / 480.0 + 3.0 * p4 / 640.0)
    q1 = (5.0 * p0 / 48.0 - 17.0 * p1 / 24.0 + 17.0 * p3 / 24.0
          - 5.0 * p4 / 48.0)
    q2 = (-p0 / 16.0 + 0.75 * p1 - 11.0 * p2 / 8.0 + 0.75 * p3 - p4 / 16.0)
    q3 = (-p0 / 12.0 + p1 / 6.0 - p3 / 6.0 + p4 / 12.0)
    q4 = (p0 / 24.0 - p1 / 6.0 + 0.25 * p2 - p3 / 6.0 + p4 / 24.0)

    b0 = c01 * c01 + 13.0 / 3.0 * c02 * c02
    b1 = c11 * c11 + 13.0 / 3.0 * c12 * c12
    b2 = c21 * c21 + 13.0 / 3.0 * c22 * c22
    b4 = (q1 * q1 + 0.5 * q1 * q3 + 13.0 / 3.0 * q2 * q2
          + 21.0 / 5.0 * q2 * q4 + 3129.0 / 80.0 * q3 * q3
          + 87617.0 / 140.0 * q4 * q4)
    a0 = _BL0 / ((_EPS + b0) * (_EPS + b0))
    a1 = _BL1 / ((_EPS + b1) * (_EPS + b1))
    a2 = _BL2 / ((_EPS + b2) * (_EPS + b2))
    a4 = _BHI / ((_EPS + b4) * (_EPS + b4))
    s = a0 + a1 + a2 + a4
    o0, o1, o2, o4 = a0 / s, a1 / s, a2 / s, a4 / s

    f4 = o4 / _BHI
    w0 = o0 - f4 * _BL0
    w1 = o1 - f4 * _BL1
    w2 = o2 - f4 * _BL2
    coeff[0] = f4 * q0 + w0 * c00 + w1 * c10 + w2 * c20
    coeff[1] = f4 * q1 + w0 * c01 + w1 * c11 + w2 * c21
    coeff[2] = f4 * q2 + w0 * c02 + w1 * c12 + w2 * c22
    coeff[3] = f4 * q3
    coeff[4] = f4 * q4


@njit(cache=True, fastmath=True)
def _poly_vd(coeff, z):
    val = coeff[4]
    der = 0.0
    for n in range(3, -1, -1):
        der = der * z + val
        val = val * z + coeff[n]
    return val, der


@njit(cache=True, fastmath=True)
def _eigmat(w, gamma, R, L):
    """Eigenvector matrices at a conserved average state; 0 on failure."""
    rho = w[0]
    if rho <= 0.0:
        return 0
    u = w[1] / rho
    v = w[2] / rho
    ek = 0.5 * (u * u + v * v)
    p = (gamma - 1.0) * (w[3] - rho * ek)
    if p <= 0.0:
        return 0
    c = math.sqrt(gamma * p / rho)
    H = c * c / (gamma - 1.0) + ek
    R[0, 0] = 1.0; R[0, 1] = 1.0; R[0, 2] = 0.0; R[0, 3] = 1.0
    R[1, 0] = u - c; R[1, 1] = u; R[1, 2] = 0.0; R[1, 3] = u + c
    R[2, 0] = v; R[2, 1] = v; R[2, 2] = 1.0; R[2, 3] = v
    R[3, 0] = H - u * c; R[3, 1] = ek; R[3, 2] = v; R[3, 3] = H + u * c
    b1 = (gamma - 1.0) / (c * c)
    b2 = b1 * ek
    L[0, 0] = 0.5 * (b2 + u / c); L[0, 1] = -0.5 * (b1 * u + 1.0 / c)
    L[0, 2] = -0.5 * b1 * v; L[0, 3] = 0.5 * b1
    L[1, 0] = 1.0 - b2; L[1, 1] = b1 * u; L[1, 2] = b1 * v; L[1, 3] = -b1
    L[2, 0] = -v; L[2, 1] = 0.0; L[2, 2] = 1.0; L[2, 3] = 0.0
    L[3, 0] = 0.5 * (b2 - u / c); L[3, 1] = -0.5 * (b1 * u - 1.0 / c)
    L[3, 2] = -0.5 * b1 * v; L[3, 3] = 0.5 * b1
    return 1


@njit(cache=True, fastmath=True)
def _fill_tables(rho, U, V, lam, K, tab):
    """Moment table rows (full-u, pos-u, neg-u, full-v, xi) up to order 6."""
    r = 0.5 / lam
    tab[FU, 0] = 1.0
    tab[FU, 1] = U
    for n in range(2, 7):
        tab[FU, n] = U * tab[FU, n - 1] + (n - 1) * r * tab[FU, n - 2]
    tab[FV, 0] = 1.0
    tab[FV, 1] = V
    for n in range(2, 7):
        tab[FV, n] = V * tab[FV, n - 1] + (n - 1) * r * tab[FV, n - 2]
    sl = math.sqrt(lam)
    tab[PU, 0] = 0.5 * math.erfc(-sl * U)
    tab[PU, 1] = U * tab[PU, 0] + 0.5 * math.exp(-lam * U * U) / math.sqrt(math.pi * lam)
    for n in range(2, 7):
        tab[PU, n] = U * tab[PU, n - 1] + (n - 1) * r * tab[PU, n - 2]
    for n in range(7):
        tab[NU, n] = tab[FU, n] - tab[PU, n]
    tab[XI, 0] = 1.0
    tab[XI, 1] = K * r
    tab[XI, 2] = K * (K + 2.0) * r * r


@njit(cache=True, fastmath=True)
def _chol4(tab, M, Lo):
    """Gram matrix of psi from a moment table, Cholesky factored into Lo."""
    fu = tab[FU]
    fv = tab[FV]
    xi = tab[XI]
    e2 = 0.5 * (fu[2] + fv[2] + xi[1])
    M[0, 0] = 1.0
    M[1, 0] = fu[1]
    M[2, 0] = fv[1]
    M[3, 0] = e2
    M[1, 1] = fu[2]
    M[2, 1] = fu[1] * fv[1]
    M[3, 1] = 0.5 * (fu[3] + fu[1] * fv[2] + fu[1] * xi[1])
    M[2, 2] = fv[2]
    M[3, 2] = 0.5 * (fu[2] * fv[1] + fv[3] + fv[1] * xi[1])
    M[3, 3] = 0.25 * (fu[4] + fv[4] + xi[2]
                      + 2.0 * (fu[2] * fv[2] + fu[2] * xi[1] + fv[2] * xi[1]))
    for i in range(4):
        for j in range(i + 1):
            s = M[i, j]
            for k in range(j):
                s -= Lo[i, k] * Lo[j, k]
            if i == j:
                if s <= 0.0:
                    return 0
                Lo[i, i] = math.sqrt(s)
            else:
                Lo[i, j] = s / Lo[j, j]
    return 1


@njit(cache=True, fastmath=True)
def _chol_solve(Lo, b, x):
    for i in range(4):
        s = b[i]
        for k in range(i):
            s -= Lo[i, k] * x[k]
        x[i] = s / Lo[i, i]
    for i in range(3, -1, -1):
        s = x[i]
        for k in range(i + 1, 4):
            s -= Lo[k, i] * x[k]
        x[i] = s / Lo[i, i]


@njit(cache=True, fastmath=True)
def _psi_accum(um, fv, xi, p, q, k, fac, out):
    """out += fac * <u^p v^q xi^2k psi> for the given u-moment row."""
    out[0] += fac * um[p] * fv[q] * xi[k]
    out[1] += fac * um[p + 1] * fv[q] * xi[k]
    out[2] += fac * um[p] * fv[q + 1] * xi[k]
    out[3] += fac * 0.5 * (um[p + 2] * fv[q] * xi[k]
                           + um[p] * fv[q + 2] * xi[k]
                           + um[p] * fv[q] * xi[k + 1])


@njit(cache=True, fastmath=True)
def _slope_accum(um, fv, xi, c, p, q, fac, out):
    """out += fac * <(c . b) u^p v^q psi>."""
    _psi_accum(um, fv, xi, p, q, 0, fac * c[0], out)
    _psi_accum(um, fv, xi, p + 1, q, 0, fac * c[1], out)
    _psi_accum(um, fv, xi, p, q + 1, 0, fac * c[2], out)
    h = 0.5 * fac * c[3]
    _psi_accum(um, fv, xi, p + 2, q, 0, h, out)
    _psi_accum(um, fv, xi, p, q + 2, 0, h, out)
    _psi_accum(um, fv, xi, p, q, 1, h, out)


@njit(cache=True, fastmath=True)
def _heat_mono(um, fv, xi, U, V, p, q, k):
    """<u^p v^q xi^2k Q> with Q the peculiar heat-flux density about (U, V)."""
    return (0.5 * um[p + 3] * fv[q] * xi[k]
            - 1.5 * U * um[p + 2] * fv[q] * xi[k]
            + 1.5 * U * U * um[p + 1] * fv[q] * xi[k]
            - 0.5 * U * U * U * um[p] * fv[q] * xi[k]
            + 0.5 * um[p + 1] * fv[q + 2] * xi[k]
            - V * um[p + 1] * fv[q + 1] * xi[k]
            + 0.5 * V * V * um[p + 1] * fv[q] * xi[k]
            - 0.5 * U * um[p] * fv[q + 2] * xi[k]
            + U * V * um[p] * fv[q + 1] * xi[k]
            - 0.5 * U * V * V * um[p] * fv[q] * xi[k]
            + 0.5 * um[p + 1] * fv[q] * xi[k + 1]
            - 0.5 * U * um[p] * fv[q] * xi[k + 1])


@njit(cache=True, fastmath=True)
def _heat_slope(um, fv, xi, c, U, V, p, q):
    """<(c . b) u^p v^q Q>."""
    return (c[0] * _heat_mono(um, fv, xi, U, V, p, q, 0)
            + c[1] * _heat_mono(um, fv, xi, U, V, p + 1, q, 0)
            + c[2] * _heat_mono(um, fv, xi, U, V, p, q + 1, 0)
            + 0.5 * c[3] * (_heat_mono(um, fv, xi, U, V, p + 2, q, 0)
                            + _heat_mono(um, fv, xi, U, V, p, q + 2, 0)
                            + _heat_mono(um, fv, xi, U, V, p, q, 1)))


@njit(cache=True, fastmath=True)
def _point_flux(wl, dwln, dwlt, wr, dwrn, dwrt, dw0n,
                gamma, K, mu, prandtl, eps, cjump, dt, d1, d2,
                tabs, Mw, Lw, vecs, accs, out):
    """Time-integrated flux at one Gauss point for both windows.

    Returns 0 on non-physical input, -1 on a singular moment system,
    1 on success. out has shape (4, 2) for windows (d1, d2).
    """
    g1 = gamma - 1.0
    rho_l = wl[0]
    el = wl[3] - 0.5 * (wl[1] * wl[1] + wl[2] * wl[2]) / rho_l
    rho_r = wr[0]
    er = wr[3] - 0.5 * (wr[1] * wr[1] + wr[2] * wr[2]) / rho_r
    if rho_l <= 0.0 or el <= 0.0 or rho_r <= 0.0 or er <= 0.0:
        return 0
    ul = wl[1] / rho_l
    vl = wl[2] / rho_l
    pl = g1 * el
    laml = 0.5 * rho_l / pl
    ur = wr[1] / rho_r
    vr = wr[2] / rho_r
    pr = g1 * er
    lamr = 0.5 * rho_r / pr

    _fill_tables(rho_l, ul, vl, laml, K, tabs[0])
    _fill_tables(rho_r, ur, vr, lamr, K, tabs[1])

    # left/right microslopes and time slopes
    if _chol4(tabs[0], Mw, Lw) == 0:
        return -1
    for c in range(4):
        vecs[9, c] = dwln[c] / rho_l
    _chol_solve(Lw, vecs[9], vecs[0])          # a1l
    for c in range(4):
        vecs[9, c] = dwlt[c] / rho_l
    _chol_solve(Lw, vecs[9], vecs[1])          # a2l
    for c in range(4):
        vecs[10, c] = 0.0
    _slope_accum(tabs[0, FU], tabs[0, FV], tabs[0, XI], vecs[0], 1, 0, -1.0, vecs[10])
    _slope_accum(tabs[0, FU], tabs[0, FV], tabs[0, XI], vecs[1], 0, 1, -1.0, vecs[10])
    _chol_solve(Lw, vecs[10], vecs[2])         # Al

    if _chol4(tabs[1], Mw, Lw) == 0:
        return -1
    for c in range(4):
        vecs[9, c] = dwrn[c] / rho_r
    _chol_solve(Lw, vecs[9], vecs[3])          # a1r
    for c in range(4):
        vecs[9, c] = dwrt[c] / rho_r
    _chol_solve(Lw, vecs[9], vecs[4])          # a2r
    for c in range(4):
        vecs[10, c] = 0.0
    _slope_accum(tabs[1, FU], tabs[1, FV], tabs[1, XI], vecs[3], 1, 0, -1.0, vecs[10])
    _slope_accum(tabs[1, FU], tabs[1, FV], tabs[1, XI], vecs[4], 0, 1, -1.0, vecs[10])
    _chol_solve(Lw, vecs[10], vecs[5])         # Ar

    # merged equilibrium state
    for c in range(4):
        vecs[11, c] = 0.0
    _psi_accum(tabs[0, PU], tabs[0, FV], tabs[0, XI], 0, 0, 0, rho_l, vecs[11])
    _psi_accum(tabs[1, NU], tabs[1, FV], tabs[1, XI], 0, 0, 0, rho_r, vecs[11])
    rho0 = vecs[11, 0]
    e0 = vecs[11, 3] - 0.5 * (vecs[11, 1] ** 2 + vecs[11, 2] ** 2) / rho0
    if rho0 <= 0.0 or e0 <= 0.0:
        return 0
    u0 = vecs[11, 1] / rho0
    v0 = vecs[11, 2] / rho0
    p0 = g1 * e0
    lam0 = 0.5 * rho0 / p0
    _fill_tables(rho0, u0, v0, lam0, K, tabs[2])

    if _chol4(tabs[2], Mw, Lw) == 0:
        return -1
    for c in range(4):
        vecs[9, c] = dw0n[c] / rho0
    _chol_solve(Lw, vecs[9], vecs[6])          # abar1
    # tangential equilibrium slope: kinetic merge of side slopes
    for c in range(4):
        vecs[10, c] = 0.0
    _slope_accum(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[1], 0, 0, rho_l, vecs[10])
    _slope_accum(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[4], 0, 0, rho_r, vecs[10])
    for c in range(4):
        vecs[9, c] = vecs[10, c] / rho0
    _chol_solve(Lw, vecs[9], vecs[7])          # abar2
    for c in range(4):
        vecs[10, c] = 0.0
    _slope_accum(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[6], 1, 0, -1.0, vecs[10])
    _slope_accum(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[7], 0, 1, -1.0, vecs[10])
    _chol_solve(Lw, vecs[10], vecs[8])         # Abar

    jump = cjump * abs(pl - pr) / (pl + pr) * dt
    if mu > 0.0:
        tau = mu / p0 + jump
    else:
        tau = eps * dt + jump

    # structural moment vectors shared by both windows
    for m in range(6):
        for c in range(4):
            accs[m, c] = 0.0
    _psi_accum(tabs[2, FU], tabs[2, FV], tabs[2, XI], 1, 0, 0, rho0, accs[0])
    _slope_accum(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[6], 2, 0, rho0, accs[1])
    _slope_accum(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[7], 1, 1, rho0, accs[1])
    _slope_accum(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[8], 1, 0, rho0, accs[2])
    _psi_accum(tabs[0, PU], tabs[0, FV], tabs[0, XI], 1, 0, 0, rho_l, accs[3])
    _psi_accum(tabs[1, NU], tabs[1, FV], tabs[1, XI], 1, 0, 0, rho_r, accs[3])
    _slope_accum(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[0], 2, 0, rho_l, accs[4])
    _slope_accum(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[1], 1, 1, rho_l, accs[4])
    _slope_accum(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[3], 2, 0, rho_r, accs[4])
    _slope_accum(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[4], 1, 1, rho_r, accs[4])
    _slope_accum(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[2], 1, 0, rho_l, accs[5])
    _slope_accum(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[5], 1, 0, rho_r, accs[5])

    heat = prandtl != 1.0
    h1 = h2 = h3 = h4 = h5 = h6 = 0.0
    if heat:
        h1 = rho0 * _heat_mono(tabs[2, FU], tabs[2, FV], tabs[2, XI], u0, v0, 0, 0, 0)
        h2 = rho0 * (_heat_slope(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[6], u0, v0, 1, 0)
                     + _heat_slope(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[7], u0, v0, 0, 1))
        h3 = rho0 * _heat_slope(tabs[2, FU], tabs[2, FV], tabs[2, XI], vecs[8], u0, v0, 0, 0)
        h4 = (rho_l * _heat_mono(tabs[0, PU], tabs[0, FV], tabs[0, XI], u0, v0, 0, 0, 0)
              + rho_r * _heat_mono(tabs[1, NU], tabs[1, FV], tabs[1, XI], u0, v0, 0, 0, 0))
        h5 = (rho_l * (_heat_slope(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[0], u0, v0, 1, 0)
                       + _heat_slope(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[1], u0, v0, 0, 1))
              + rho_r * (_heat_slope(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[3], u0, v0, 1, 0)
                         + _heat_slope(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[4], u0, v0, 0, 1)))
        h6 = (rho_l * _heat_slope(tabs[0, PU], tabs[0, FV], tabs[0, XI], vecs[2], u0, v0, 0, 0)
              + rho_r * _heat_slope(tabs[1, NU], tabs[1, FV], tabs[1, XI], vecs[5], u0, v0, 0, 0))

    # tau = 0 is the resolved-flow limit: the free-transport part vanishes
    for wdw in range(2):
        delta = d1 if wdw == 0 else d2
        E = math.exp(-delta / tau) if tau > 0.0 else 0.0
        T1 = delta - tau * (1.0 - E)
        T2 = 2.0 * tau * tau - tau * delta - (2.0 * tau * tau + tau * delta) * E
        T3 = 0.5 * delta * delta - tau * delta + tau * tau * (1.0 - E)
        T4 = tau * (1.0 - E)
        T5 = 2.0 * tau * tau - (2.0 * tau * tau + tau * delta) * E
        for c in range(4):
            out[c, wdw] = (T1 * accs[0, c] + T2 * accs[1, c] + T3 * accs[2, c]
                           + T4 * accs[3, c] - T5 * accs[4, c]
                           - tau * T4 * accs[5, c])
        if heat:
            q = (T1 * h1 + T2 * h2 + T3 * h3 + T4 * h4 - T5 * h5
                 - tau * T4 * h6)
            out[3, wdw] += (1.0 / prandtl - 1.0) * q
    return 1


@njit(cache=True, fastmath=True)
def sweep_fluxes_1d(wext, nx, dx, gamma, K, mu, prandtl, eps, cjump, dt,
                    characteristic, fout, flag):
    """Time-integrated fluxes at all nx+1 faces of a 1D field."""
    Rm = np.empty((4, 4))
    Lm = np.empty((4, 4))
    wstar = np.empty(4)
    char = np.empty((6, 4))
    wl = np.empty(4)
    wr = np.empty(4)
    dwl = np.empty(4)
    dwr = np.empty(4)
    s1 = np.empty(4)
    zero = np.zeros(4)
    cl = np.empty(4)
    cls = np.empty(4)
    cr = np.empty(4)
    crs = np.empty(4)
    tabs = np.empty((3, 5, 8))
    Mw = np.empty((4, 4))
    Lw = np.empty((4, 4))
    vecs = np.empty((12, 4))
    accs = np.empty((6, 4))
    pf = np.empty((4, 2))

    for f in range(nx + 1):
        for c in range(4):
            wstar[c] = 0.5 * (wext[f + 2, c] + wext[f + 3, c])
        if characteristic:
            if _eigmat(wstar, gamma, Rm, Lm) == 0:
                flag[0] = 1
                flag[1] = f
                return
            for i in range(6):
                for c in range(4):
                    s = 0.0
                    for d in range(4):
                        s += Lm[c, d] * wext[f + i, d]
                    char[i, c] = s
        else:
            for i in range(6):
                for c in range(4):
                    char[i, c] = wext[f + i, c]
        for c in range(4):
            v, sl = _weno_point(char[0, c], char[1, c], char[2, c],
                                char[3, c], char[4, c])
            cl[c] = v
            cls[c] = sl
            v, sl = _weno_point(char[5, c], char[4, c], char[3, c],
                                char[2, c], char[1, c])
            cr[c] = v
            crs[c] = -sl
        if characteristic:
            for c in range(4):
                a = b = sa = sb = 0.0
                for d in range(4):
                    a += Rm[c, d] * cl[d]
                    sa += Rm[c, d] * cls[d]
                    b += Rm[c, d] * cr[d]
                    sb += Rm[c, d] * crs[d]
                wl[c] = a
                dwl[c] = sa / dx
                wr[c] = b
                dwr[c] = sb / dx
        else:
            for c in range(4):
                wl[c] = cl[c]
                dwl[c] = cls[c] / dx
                wr[c] = cr[c]
                dwr[c] = crs[c] / dx
        for c in range(4):
            s1[c] = (-(wext[f + 4, c] - wext[f + 1, c]) / 12.0
                     + 1.25 * (wext[f + 3, c] - wext[f + 2, c])) / dx
        ok = _point_flux(wl, dwl, zero, wr, dwr, zero, s1,
                         gamma, K, mu, prandtl, eps, cjump, dt,
                         0.5 * dt, dt, tabs, Mw, Lw, vecs, accs, pf)
        if ok != 1:
            # retry with zero-slope cell averages before giving up
            for c in range(4):
                wl[c] = wext[f + 2, c]
                wr[c] = wext[f + 3, c]
            ok = _point_flux(wl, zero, zero, wr, zero, zero, zero,
                             gamma, K, mu, prandtl, eps, cjump, dt,
                             0.5 * dt, dt, tabs, Mw, Lw, vecs, accs, pf)
            if ok != 1:
                flag[0] = 1 if ok == 0 else 2
                flag[1] = f
                return
            flag[2] += 1
        for c in range(4):
            fout[f, c, 0] = pf[c, 0]
            fout[f, c, 1] = pf[c, 1]


@njit(cache=True, fastmath=True)
def sweep_fluxes_2d(wext, nx, ny, dx, dy, gamma, K, mu, prandtl, eps,
                    cjump, dt, characteristic, fout, flag):
    """x-direction face fluxes on a 2D field, Gauss-integrated along faces.

    wext: (ny+6, nx+6, 4) with ghosts; fout: (ny, nx+1, 4, 2). The caller
    handles the y direction by transposing and swapping the momentum
    components.
    """
    Rm = np.empty((4, 4))
    Lm = np.empty((4, 4))
    wstar = np.empty(4)
    char = np.empty((6, 4))
    rowdat = np.empty((5, 5, 4))
    gvals = np.empty((5, 3, 4))
    gders = np.empty((2, 3, 4))
    coeff = np.empty(5)
    cl = np.empty(4)
    cls = np.empty(4)
    cr = np.empty(4)
    crs = np.empty(4)
    wl = np.empty(4)
    wr = np.empty(4)
    zero = np.zeros(4)
    tabs = np.empty((3, 5, 8))
    Mw = np.empty((4, 4))
    Lw = np.empty((4, 4))
    vecs = np.empty((12, 4))
    accs = np.empty((6, 4))
    pf = np.empty((4, 2))

    for j in range(ny):
        for f in range(nx + 1):
            for c in range(4):
                wstar[c] = 0.5 * (wext[j + 3, f + 2, c]
                                  + wext[j + 3, f + 3, c])
            use_char = characteristic
            if use_char and _eigmat(wstar, gamma, Rm, Lm) == 0:
                flag[0] = 1
                flag[1] = j * (nx + 1) + f
                return
            for m in range(5):
                jj = j + 1 + m
                if use_char:
                    for i in range(6):
                        for c in range(4):
                            s = 0.0
                            for d in range(4):
                                s += Lm[c, d] * wext[jj, f + i, d]
                            char[i, c] = s
                else:
                    for i in range(6):
                        for c in range(4):
                            char[i, c] = wext[jj, f + i, c]
                for c in range(4):
                    v, sl = _weno_point(char[0, c], char[1, c], char[2, c],
                                        char[3, c], char[4, c])
                    cl[c] = v
                    cls[c] = sl
                    v, sl = _weno_point(char[5, c], char[4, c], char[3, c],
                                        char[2, c], char[1, c])
                    cr[c] = v
                    crs[c] = -sl
                if use_char:
                    for c in range(4):
                        a = b = sa = sb = 0.0
                        for d in range(4):
                            a += Rm[c, d] * cl[d]
                            sa += Rm[c, d] * cls[d]
                            b += Rm[c, d] * cr[d]
                            sb += Rm[c, d] * crs[d]
                        rowdat[0, m, c] = a
                        rowdat[1, m, c] = b
                        rowdat[2, m, c] = sa / dx
                        rowdat[3, m, c] = sb / dx
                else:
                    for c in range(4):
                        rowdat[0, m, c] = cl[c]
                        rowdat[1, m, c] = cr[c]
                        rowdat[2, m, c] = cls[c] / dx
                        rowdat[3, m, c] = crs[c] / dx
                for c in range(4):
                    rowdat[4, m, c] = (-(wext[jj, f + 4, c]
                                         - wext[jj, f + 1, c]) / 12.0
                                       + 1.25 * (wext[jj, f + 3, c]
                                                 - wext[jj, f + 2, c])) / dx
            for qty in range(5):
                for c in range(4):
                    _blend5(rowdat[qty, 0, c], rowdat[qty, 1, c],
                            rowdat[qty, 2, c], rowdat[qty, 3, c],
                            rowdat[qty, 4, c], coeff)
                    for g in range(3):
                        v, d = _poly_vd(coeff, _GOFF[g])
                        gvals[qty, g, c] = v
                        if qty < 2:
                            gders[qty, g, c] = d / dy
            for c in range(4):
                for wdw in range(2):
                    fout[j, f, c, wdw] = 0.0
            for g in range(3):
                ok = _point_flux(gvals[0, g], gvals[2, g], gders[0, g],
                                 gvals[1, g], gvals[3, g], gders[1, g],
                                 gvals[4, g], gamma, K, mu, prandtl, eps,
                                 cjump, dt, 0.5 * dt, dt,
                                 tabs, Mw, Lw, vecs, accs, pf)
                if ok != 1:
                    # retry the whole face with zero-slope cell averages
                    for c in range(4):
                        wl[c] = wext[j + 3, f + 2, c]
                        wr[c] = wext[j + 3, f + 3, c]
                    ok = _point_flux(wl, zero, zero, wr, zero, zero, zero,
                                     gamma, K, mu, prandtl, eps, cjump, dt,
                                     0.5 * dt, dt, tabs, Mw, Lw, vecs,
                                     accs, pf)
                    if ok != 1:
                        flag[0] = 1 if ok == 0 else 2
                        flag[1] = j * (nx + 1) + f
                        return
                    flag[2] += 1
                    for c in range(4):
                        fout[j, f, c, 0] = pf[c, 0]
                        fout[j, f, c, 1] = pf[c, 1]
                    break
                for c in range(4):
                    fout[j, f, c, 0] += _GW[g] * pf[c, 0]
                    fout[j, f, c, 1] += _GW[g] * pf[c, 1]
