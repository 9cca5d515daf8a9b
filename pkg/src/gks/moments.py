"""Maxwellian velocity moments and microslope solves.

Everything the interface flux needs reduces to moments of a Maxwellian
against monomials u^p v^q xi^(2k) over the full velocity space or the
u > 0 / u < 0 half spaces. Full moments follow the two-term recursion
<u^(n+2)> = U <u^(n+1)> + (n+1)/(2 lam) <u^n>; half moments share the
recursion with erfc/exp seeds. All moments here are normalized by density.

Microslopes are the coefficients c of the expansion a = c1 + c2 u + c3 v
+ c4 (u^2+v^2+xi^2)/2 representing a derivative of the distribution; they
solve the 4x4 Gram system <psi psi^T> c = dW / rho.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import SingularMomentSystem
from .gas import GasModel

# highest monomial powers the second-order flux assembly touches
MAX_U = 6
MAX_V = 6
MAX_XI = 2

FULL, POS, NEG = 0, 1, -1


@dataclass
class MomentTable:
    """Normalized moments of one Maxwellian state.

    fu, pu, nu: <u^n> over the full / positive / negative u half-lines,
    n = 0..MAX_U. fv: <v^n>. xi: <xi^(2k)>, k = 0..MAX_XI.
    """

    fu: np.ndarray
    pu: np.ndarray
    nu: np.ndarray
    fv: np.ndarray
    xi: np.ndarray
    rho: float
    U: float
    V: float
    lam: float

    def u_mom(self, n: int, half: int) -> float:
        if half == POS:
            return self.pu[n]
        if half == NEG:
            return self.nu[n]
        return self.fu[n]

    def mono(self, p: int, q: int, k: int, half: int = FULL) -> float:
        """<u^p v^q xi^(2k)> with the u factor on the requested half-line."""
        return self.u_mom(p, half) * self.fv[q] * self.xi[k]


def build_moment_table(prim: np.ndarray, gas: GasModel) -> MomentTable:
    """Moment table of the Maxwellian with parameters (rho, U, V, lam)."""
    rho, U, V, lam = float(prim[0]), float(prim[1]), float(prim[2]), float(prim[4])
    K = gas.k_xi

    fu = _full_line(U, lam, MAX_U)
    fv = _full_line(V, lam, MAX_V)
    pu = np.empty(MAX_U + 1)
    pu[0] = 0.5 * erfc(-np.sqrt(lam) * U)
    pu[1] = U * pu[0] + 0.5 * np.exp(-lam * U * U) / np.sqrt(np.pi * lam)
    for n in range(2, MAX_U + 1):
        pu[n] = U * pu[n - 1] + (n - 1) / (2.0 * lam) * pu[n - 2]
    nu = fu - pu

    xi = np.array([1.0, K / (2.0 * lam), K * (K + 2.0) / (4.0 * lam * lam)])
    return MomentTable(fu=fu, pu=pu, nu=nu, fv=fv, xi=xi,
                       rho=rho, U=U, V=V, lam=lam)


def _full_line(U: float, lam: float, nmax: int) -> np.ndarray:
    m = np.empty(nmax + 1)
    m[0] = 1.0
    m[1] = U
    for n in range(2, nmax + 1):
        m[n] = U * m[n - 1] + (n - 1) / (2.0 * lam) * m[n - 2]
    return m


def moment_matrix(t: MomentTable) -> np.ndarray:
    """Gram matrix M = <psi psi^T> of the collision invariants."""
    fu, fv, xi = t.fu, t.fv, t.xi
    e2 = 0.5 * (fu[2] + fv[2] + xi[1])
    M = np.array([
        [1.0, fu[1], fv[1], e2],
        [fu[1], fu[2], fu[1] * fv[1],
         0.5 * (fu[3] + fu[1] * fv[2] + fu[1] * xi[1])],
        [fv[1], fu[1] * fv[1], fv[2],
         0.5 * (fu[2] * fv[1] + fv[3] + fv[1] * xi[1])],
        [e2, 0.0, 0.0,
         0.25 * (fu[4] + fv[4] + xi[2]
                 + 2.0 * (fu[2] * fv[2] + fu[2] * xi[1] + fv[2] * xi[1]))],
    ])
    M[3, 1] = M[1, 3]
    M[3, 2] = M[2, 3]
    return M


def solve_microslopes(prim: np.ndarray, dw: np.ndarray, gas: GasModel,
                      table: MomentTable | None = None) -> np.ndarray:
    """Coefficients c with rho <a psi> = dw for a = c . (1,u,v,e)."""
    if table is None:
        table = build_moment_table(prim, gas)
    M = moment_matrix(table)
    rhs = np.asarray(dw, dtype=float) / table.rho
    try:
        c = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMomentSystem(str(exc)) from exc
    if not np.all(np.isfinite(c)):
        raise SingularMomentSystem("non-finite microslopes")
    return c


def solve_time_slope(prim: np.ndarray, ax: np.ndarray, ay: np.ndarray,
                     gas: GasModel,
                     table: MomentTable | None = None) -> np.ndarray:
    """Time slope A with <(ax u + ay v + A) psi> = 0 (Chapman-Enskog)."""
    if table is None:
        table = build_moment_table(prim, gas)
    rhs = -(slope_moment(table, ax, 1, 0) + slope_moment(table, ay, 0, 1))
    M = moment_matrix(table)
    try:
        return np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMomentSystem(str(exc)) from exc


def moment_psi(t: MomentTable, p: int, q: int, k: int = 0,
               half: int = FULL) -> np.ndarray:
    """<u^p v^q xi^(2k) psi> as a 4-vector (normalized by rho)."""
    return np.array([
        t.mono(p, q, k, half),
        t.mono(p + 1, q, k, half),
        t.mono(p, q + 1, k, half),
        0.5 * (t.mono(p + 2, q, k, half) + t.mono(p, q + 2, k, half)
               + t.mono(p, q, k + 1, half)),
    ])


def slope_moment(t: MomentTable, c: np.ndarray, p: int = 0, q: int = 0,
                 half: int = FULL) -> np.ndarray:
    """<(c . b) u^p v^q psi> where b = (1, u, v, (u^2+v^2+xi^2)/2)."""
    return (c[0] * moment_psi(t, p, q, 0, half)
            + c[1] * moment_psi(t, p + 1, q, 0, half)
            + c[2] * moment_psi(t, p, q + 1, 0, half)
            + 0.5 * c[3] * (moment_psi(t, p + 2, q, 0, half)
                            + moment_psi(t, p, q + 2, 0, half)
                            + moment_psi(t, p, q, 1, half)))


def _heat_terms(U: float, V: float):
    # monomial expansion of (u-U)((u-U)^2 + (v-V)^2 + xi^2)/2
    return (
        (0.5, 3, 0, 0), (-1.5 * U, 2, 0, 0), (1.5 * U * U, 1, 0, 0),
        (-0.5 * U ** 3, 0, 0, 0),
        (0.5, 1, 2, 0), (-V, 1, 1, 0), (0.5 * V * V, 1, 0, 0),
        (-0.5 * U, 0, 2, 0), (U * V, 0, 1, 0), (-0.5 * U * V * V, 0, 0, 0),
        (0.5, 1, 0, 1), (-0.5 * U, 0, 0, 1),
    )


def heat_moment(t: MomentTable, U: float, V: float, p: int = 0, q: int = 0,
                k: int = 0, half: int = FULL) -> float:
    """<u^p v^q xi^(2k) Q> with Q the peculiar heat-flux density about (U, V)."""
    return sum(c * t.mono(p + dp, q + dq, k + dk, half)
               for c, dp, dq, dk in _heat_terms(U, V))


def heat_slope_moment(t: MomentTable, c: np.ndarray, U: float, V: float,
                      p: int = 0, q: int = 0, half: int = FULL) -> float:
    """<(c . b) u^p v^q Q> for the same heat-flux density Q."""
    return (c[0] * heat_moment(t, U, V, p, q, 0, half)
            + c[1] * heat_moment(t, U, V, p + 1, q, 0, half)
            + c[2] * heat_moment(t, U, V, p, q + 1, 0, half)
            + 0.5 * c[3] * (heat_moment(t, U, V, p + 2, q, 0, half)
                            + heat_moment(t, U, V, p, q + 2, 0, half)
                            + heat_moment(t, U, V, p, q, 1, half)))
