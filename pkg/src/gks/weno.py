"""Fifth-order WENO reconstruction and the tangential Gauss-point blend.

The normal pass is classical WENO5: three quadratic candidates with
Jiang-Shu smoothness indicators and linear weights (1/10, 3/5, 3/10) give
the face point value; the face slope is the derivative of the same
nonlinearly weighted polynomial.

The tangential pass converts five line averages into point values and
derivatives at the three Gauss quadrature offsets. It blends the 5-cell
quartic with the three quadratic candidates using offset-independent
nonlinear weights; every candidate preserves the center cell average and
has degree <= 5, so the Gauss-weighted average of the three point values
returns the line average exactly for arbitrary data.
"""
from __future__ import annotations

import numpy as np

from .errors import NonPhysicalState
from .gas import GasModel

WENO_EPS = 1e-6
LINEAR_WEIGHTS = (0.1, 0.6, 0.3)

# tangential blend linear weights: quartic, then the three quadratics
BLEND_HI = 0.85
BLEND_LO = (0.01125, 0.1275, 0.01125)

GAUSS_OFFSETS = np.array([-0.5 * np.sqrt(0.6), 0.0, 0.5 * np.sqrt(0.6)])
GAUSS_WEIGHTS = np.array([5.0, 8.0, 5.0]) / 18.0

# monomial coefficients (in z = x/h, cell centers at integers) of the
# three quadratic candidates and the 5-cell quartic, rows c0..cn
_Q0 = np.array([[-1 / 24, 1 / 12, 23 / 24, 0, 0],
                [1 / 2, -2, 3 / 2, 0, 0],
                [1 / 2, -1, 1 / 2, 0, 0]])
_Q1 = np.array([[0, -1 / 24, 13 / 12, -1 / 24, 0],
                [0, -1 / 2, 0, 1 / 2, 0],
                [0, 1 / 2, -1, 1 / 2, 0]])
_Q2 = np.array([[0, 0, 23 / 24, 1 / 12, -1 / 24],
                [0, 0, -3 / 2, 2, -1 / 2],
                [0, 0, 1 / 2, -1, 1 / 2]])
_P4 = np.array([[3 / 640, -29 / 480, 1067 / 960, -29 / 480, 3 / 640],
                [5 / 48, -17 / 24, 0, 17 / 24, -5 / 48],
                [-1 / 16, 3 / 4, -11 / 8, 3 / 4, -1 / 16],
                [-1 / 12, 1 / 6, 0, -1 / 6, 1 / 12],
                [1 / 24, -1 / 6, 1 / 4, -1 / 6, 1 / 24]])


def smoothness_indicators(w: np.ndarray):
    """Jiang-Shu indicators of the three substencils, stencil on last axis."""
    b0 = (13.0 / 12.0 * (w[..., 0] - 2 * w[..., 1] + w[..., 2]) ** 2
          + 0.25 * (w[..., 0] - 4 * w[..., 1] + 3 * w[..., 2]) ** 2)
    b1 = (13.0 / 12.0 * (w[..., 1] - 2 * w[..., 2] + w[..., 3]) ** 2
          + 0.25 * (w[..., 1] - w[..., 3]) ** 2)
    b2 = (13.0 / 12.0 * (w[..., 2] - 2 * w[..., 3] + w[..., 4]) ** 2
          + 0.25 * (3 * w[..., 2] - 4 * w[..., 3] + w[..., 4]) ** 2)
    return b0, b1, b2


def weno5_face_value(w: np.ndarray, h: float = 1.0, side: str = "left"):
    """WENO5 point value and slope at a face of the center cell.

    Parameters
    ----------
    w : array, shape (..., 5)
        Five consecutive cell averages centered on the reconstructed cell.
    h : float
        Cell width; scales the returned slope.
    side : "left" or "right"
        "left" evaluates at the right face x = +h/2 (the left state of
        that interface); "right" mirrors to x = -h/2.

    Returns
    -------
    (value, slope) with the stencil axis consumed.
    """
    w = np.asarray(w, dtype=float)
    if side == "right":
        value, slope = _weno5_upwind(w[..., ::-1])
        return value, -slope / h
    if side != "left":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    value, slope = _weno5_upwind(w)
    return value, slope / h


def _weno5_upwind(w: np.ndarray):
    b0, b1, b2 = smoothness_indicators(w)
    a0 = LINEAR_WEIGHTS[0] / (WENO_EPS + b0) ** 2
    a1 = LINEAR_WEIGHTS[1] / (WENO_EPS + b1) ** 2
    a2 = LINEAR_WEIGHTS[2] / (WENO_EPS + b2) ** 2
    s = a0 + a1 + a2
    o0, o1, o2 = a0 / s, a1 / s, a2 / s

    v0 = (2 * w[..., 0] - 7 * w[..., 1] + 11 * w[..., 2]) / 6.0
    v1 = (-w[..., 1] + 5 * w[..., 2] + 2 * w[..., 3]) / 6.0
    v2 = (2 * w[..., 2] + 5 * w[..., 3] - w[..., 4]) / 6.0
    value = o0 * v0 + o1 * v1 + o2 * v2

    d0 = w[..., 0] - 3 * w[..., 1] + 2 * w[..., 2]
    d12 = w[..., 3] - w[..., 2]
    slope = o0 * d0 + (o1 + o2) * d12
    return value, slope


def equilibrium_face_derivative(w: np.ndarray, h: float = 1.0) -> np.ndarray:
    """One-sided derivative at the face between the middle two of 4 cells.

    Equals the 5-cell quartic's face derivative; exact for cubics, O(h^4)
    on smooth data.
    """
    w = np.asarray(w, dtype=float)
    return (-(w[..., 3] - w[..., 0]) / 12.0
            + 1.25 * (w[..., 2] - w[..., 1])) / h


def eigenvectors(prim: np.ndarray, gas: GasModel):
    """Right and left eigenvector matrices of the x-flux Jacobian.

    Conserved-variable ordering (rho, rho u, rho v, rho E); wave order
    (u-c, u, u, u+c) with the shear wave third.
    """
    rho, u, v, p = prim[0], prim[1], prim[2], prim[3]
    if p <= 0.0 or rho <= 0.0:
        raise NonPhysicalState("average state for projection")
    c = np.sqrt(gas.gamma * p / rho)
    ek = 0.5 * (u * u + v * v)
    H = c * c / (gas.gamma - 1.0) + ek
    R = np.array([
        [1.0, 1.0, 0.0, 1.0],
        [u - c, u, 0.0, u + c],
        [v, v, 1.0, v],
        [H - u * c, ek, v, H + u * c],
    ])
    b1 = (gas.gamma - 1.0) / (c * c)
    b2 = b1 * ek
    L = np.array([
        [0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1],
        [1.0 - b2, b1 * u, b1 * v, -b1],
        [-v, 0.0, 1.0, 0.0],
        [0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1],
    ])
    return R, L


def blend_coefficients(w: np.ndarray) -> np.ndarray:
    """Monomial coefficients (in z = y/h) of the blended tangential polynomial.

    w has the 5-cell stencil on the last axis; returns coefficients c0..c4
    on the last axis. Weights are computed once per profile so all three
    Gauss offsets share them.
    """
    w = np.asarray(w, dtype=float)
    c_q0 = w @ _Q0.T
    c_q1 = w @ _Q1.T
    c_q2 = w @ _Q2.T
    c_p4 = w @ _P4.T

    beta = np.empty(w.shape[:-1] + (4,))
    for i, c in enumerate((c_q0, c_q1, c_q2)):
        beta[..., i] = c[..., 1] ** 2 + 13.0 / 3.0 * c[..., 2] ** 2
    c1, c2, c3, c4 = (c_p4[..., k] for k in range(1, 5))
    beta[..., 3] = (c1 ** 2 + 0.5 * c1 * c3 + 13.0 / 3.0 * c2 ** 2
                    + 21.0 / 5.0 * c2 * c4 + 3129.0 / 80.0 * c3 ** 2
                    + 87617.0 / 140.0 * c4 ** 2)

    lin = np.array([*BLEND_LO, BLEND_HI])
    alpha = lin / (WENO_EPS + beta) ** 2
    om = alpha / alpha.sum(axis=-1, keepdims=True)

    out = (om[..., 3:4] / BLEND_HI) * c_p4
    for k, c in enumerate((c_q0, c_q1, c_q2)):
        w_k = om[..., k] - om[..., 3] / BLEND_HI * BLEND_LO[k]
        out[..., :3] += w_k[..., None] * c
    return out


def eval_poly(coeff: np.ndarray, z: float):
    """Value and z-derivative of the monomial polynomial at offset z."""
    val = coeff[..., -1].copy()
    der = np.zeros_like(val)
    for n in range(coeff.shape[-1] - 2, -1, -1):
        der = der * z + val
        val = val * z + coeff[..., n]
    return val, der


def tangential_points(w: np.ndarray, h: float = 1.0,
                      offsets: np.ndarray = GAUSS_OFFSETS):
    """Point values and tangential derivatives at the Gauss offsets.

    w: (..., 5) line averages along the face; returns (values, derivs)
    shaped (..., len(offsets)).
    """
    coeff = blend_coefficients(w)
    vals = np.empty(coeff.shape[:-1] + (len(offsets),))
    ders = np.empty_like(vals)
    for m, z in enumerate(offsets):
        v, d = eval_poly(coeff, z)
        vals[..., m] = v
        ders[..., m] = d / h
    return vals, ders
