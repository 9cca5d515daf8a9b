"""Time-dependent BGK interface flux.

The interface distribution combines a local equilibrium g0 (built from the
half-moment merged state W0) with the two reconstructed states g_l, g_r:

    f(t) = (1 - e)*g0 + ((t+tau)*e - tau)*(a1.u + a2.v)*g0
         + (t - tau + tau*e)*A*g0
         + e*g_l*[1 - (tau+t)*(a1l.u + a2l.v) - tau*Al]   (u > 0)
         + e*g_r*[1 - (tau+t)*(a1r.u + a2r.v) - tau*Ar]   (u < 0)

with e = exp(-t/tau). Integrating u*f*psi over velocity space analytically
(moment tables) and over a time window [0, delta] (five scalar weights)
yields the time-integrated flux the two-stage update consumes. This module
is the plain-numpy reference; the batched kernels mirror it and are
equivalence-tested against it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gas import GasModel, primitive_from_conserved
from .moments import (NEG, POS, MomentTable, build_moment_table,
                      heat_moment, heat_slope_moment, moment_psi,
                      slope_moment, solve_microslopes, solve_time_slope)

ZERO4 = np.zeros(4)


@dataclass(frozen=True)
class CollisionModel:
    """Collision-time model: inviscid (eps*dt) or viscous (mu/p) base."""

    mode: str = "inviscid"
    eps: float = 0.05
    c_jump: float = 1.0

    def __post_init__(self):
        if self.mode not in ("inviscid", "viscous"):
            raise ValueError(f"unknown collision mode {self.mode!r}")
        if self.eps < 0 or self.c_jump < 0:
            raise ValueError("collision constants must be nonnegative")

    @classmethod
    def from_gas(cls, gas: GasModel) -> "CollisionModel":
        return cls(mode="viscous" if gas.viscous else "inviscid",
                   eps=gas.tau_eps, c_jump=gas.tau_c)


def collision_time(p_left: float, p_right: float, dt: float, gas: GasModel,
                   model: CollisionModel, p_interface: float) -> float:
    """Collision time with the pressure-jump dissipation augmentation."""
    jump = model.c_jump * abs(p_left - p_right) / (p_left + p_right) * dt
    if model.mode == "viscous":
        return gas.mu / p_interface + jump
    return model.eps * dt + jump


def merge_equilibrium(left: np.ndarray, right: np.ndarray,
                      dw0_n: np.ndarray, gas: GasModel,
                      dwl_t: np.ndarray | None = None,
                      dwr_t: np.ndarray | None = None):
    """Interface equilibrium from the half-moment merge of g_l and g_r.

    Parameters
    ----------
    left, right : primitive 5-vectors of the reconstructed face states.
    dw0_n : conserved-variable normal derivative of the equilibrium state
        (one-sided four-cell formula), drives abar1.
    dwl_t, dwr_t : tangential conserved derivatives on each side; their
        kinetic half-moment merge drives abar2 (2D only).

    Returns
    -------
    (w0, abar1, abar2, Abar, table0) : merged primitive state, microslopes
    and its moment table.
    """
    tl = build_moment_table(left, gas)
    tr = build_moment_table(right, gas)
    w0 = left[0] * moment_psi(tl, 0, 0, half=POS) \
        + right[0] * moment_psi(tr, 0, 0, half=NEG)
    prim0 = primitive_from_conserved(w0, gas)
    t0 = build_moment_table(prim0, gas)
    abar1 = solve_microslopes(prim0, dw0_n, gas, t0)
    if dwl_t is None:
        abar2 = ZERO4.copy()
    else:
        a2l = solve_microslopes(left, dwl_t, gas, tl)
        a2r = solve_microslopes(right, dwr_t, gas, tr)
        dw0_t = left[0] * slope_moment(tl, a2l, half=POS) \
            + right[0] * slope_moment(tr, a2r, half=NEG)
        abar2 = solve_microslopes(prim0, dw0_t, gas, t0)
    Abar = solve_time_slope(prim0, abar1, abar2, gas, t0)
    return prim0, abar1, abar2, Abar, t0


@dataclass
class FluxAssembly:
    """All coefficients of the interface distribution at one Gauss point."""

    w0: np.ndarray
    abar1: np.ndarray
    abar2: np.ndarray
    Abar: np.ndarray
    left: np.ndarray
    a1l: np.ndarray
    a2l: np.ndarray
    Al: np.ndarray
    right: np.ndarray
    a1r: np.ndarray
    a2r: np.ndarray
    Ar: np.ndarray
    tau: float
    dt_window: float
    table0: MomentTable = None
    table_l: MomentTable = None
    table_r: MomentTable = None

    def __post_init__(self):
        if self.tau < 0 or self.dt_window <= 0:
            raise ValueError("tau must be nonnegative, dt_window positive")
        if self.table0 is None:
            raise ValueError("moment tables required")


def build_flux_assembly(left: np.ndarray, dwl_n: np.ndarray,
                        right: np.ndarray, dwr_n: np.ndarray,
                        dw0_n: np.ndarray, dt: float, gas: GasModel,
                        model: CollisionModel,
                        dwl_t: np.ndarray | None = None,
                        dwr_t: np.ndarray | None = None) -> FluxAssembly:
    """Assemble every Eq-coefficient a flux evaluation needs.

    dt is the full time step entering the collision-time model; the
    integration window is chosen later per call.
    """
    tl = build_moment_table(left, gas)
    tr = build_moment_table(right, gas)
    a1l = solve_microslopes(left, dwl_n, gas, tl)
    a1r = solve_microslopes(right, dwr_n, gas, tr)
    if dwl_t is None:
        a2l = ZERO4.copy()
        a2r = ZERO4.copy()
    else:
        a2l = solve_microslopes(left, dwl_t, gas, tl)
        a2r = solve_microslopes(right, dwr_t, gas, tr)
    Al = solve_time_slope(left, a1l, a2l, gas, tl)
    Ar = solve_time_slope(right, a1r, a2r, gas, tr)
    w0, abar1, abar2, Abar, t0 = merge_equilibrium(
        left, right, dw0_n, gas, dwl_t, dwr_t)
    tau = collision_time(left[3], right[3], dt, gas, model, w0[3])
    return FluxAssembly(w0=w0, abar1=abar1, abar2=abar2, Abar=Abar,
                        left=left, a1l=a1l, a2l=a2l, Al=Al,
                        right=right, a1r=a1r, a2r=a2r, Ar=Ar,
                        tau=tau, dt_window=dt,
                        table0=t0, table_l=tl, table_r=tr)


def time_weights(tau: float, delta: float):
    """Window integrals of the five relaxation factors over [0, delta].

    Returns (T1..T5) for the factors (1 - e), ((t+tau)e - tau),
    (t - tau + tau e), e, (tau + t) e with e = exp(-t/tau). tau = 0 is
    the resolved-flow limit where only the equilibrium factors survive.
    """
    E = np.exp(-delta / tau) if tau > 0.0 else 0.0
    T1 = delta - tau * (1.0 - E)
    T2 = 2.0 * tau * tau - tau * delta - (2.0 * tau * tau + tau * delta) * E
    T3 = 0.5 * delta * delta - tau * delta + tau * tau * (1.0 - E)
    T4 = tau * (1.0 - E)
    T5 = 2.0 * tau * tau - (2.0 * tau * tau + tau * delta) * E
    return T1, T2, T3, T4, T5


def time_integrated_flux(fa: FluxAssembly, delta: float) -> np.ndarray:
    """Integral of u*f*psi over velocity space and the window [0, delta]."""
    T1, T2, T3, T4, T5 = time_weights(fa.tau, delta)
    t0, tl, tr = fa.table0, fa.table_l, fa.table_r
    rho0, rhol, rhor = fa.w0[0], fa.left[0], fa.right[0]

    f = rho0 * (T1 * moment_psi(t0, 1, 0)
                + T2 * (slope_moment(t0, fa.abar1, 2, 0)
                        + slope_moment(t0, fa.abar2, 1, 1))
                + T3 * slope_moment(t0, fa.Abar, 1, 0))
    f += T4 * (rhol * moment_psi(tl, 1, 0, half=POS)
               + rhor * moment_psi(tr, 1, 0, half=NEG))
    f -= T5 * (rhol * (slope_moment(tl, fa.a1l, 2, 0, POS)
                       + slope_moment(tl, fa.a2l, 1, 1, POS))
               + rhor * (slope_moment(tr, fa.a1r, 2, 0, NEG)
                         + slope_moment(tr, fa.a2r, 1, 1, NEG)))
    f -= fa.tau * T4 * (rhol * slope_moment(tl, fa.Al, 1, 0, POS)
                        + rhor * slope_moment(tr, fa.Ar, 1, 0, NEG))
    return f


def time_integrated_heat_flux(fa: FluxAssembly, delta: float) -> float:
    """Window integral of the peculiar heat flux of the same distribution.

    The peculiar velocity is taken about the merged interface velocity, so
    a uniform equilibrium carries no heat flux.
    """
    T1, T2, T3, T4, T5 = time_weights(fa.tau, delta)
    t0, tl, tr = fa.table0, fa.table_l, fa.table_r
    rho0, rhol, rhor = fa.w0[0], fa.left[0], fa.right[0]
    U, V = fa.w0[1], fa.w0[2]

    q = rho0 * (T1 * heat_moment(t0, U, V)
                + T2 * (heat_slope_moment(t0, fa.abar1, U, V, 1, 0)
                        + heat_slope_moment(t0, fa.abar2, U, V, 0, 1))
                + T3 * heat_slope_moment(t0, fa.Abar, U, V))
    q += T4 * (rhol * heat_moment(tl, U, V, half=POS)
               + rhor * heat_moment(tr, U, V, half=NEG))
    q -= T5 * (rhol * (heat_slope_moment(tl, fa.a1l, U, V, 1, 0, POS)
                       + heat_slope_moment(tl, fa.a2l, U, V, 0, 1, POS))
               + rhor * (heat_slope_moment(tr, fa.a1r, U, V, 1, 0, NEG)
                         + heat_slope_moment(tr, fa.a2r, U, V, 0, 1, NEG)))
    q -= fa.tau * T4 * (rhol * heat_slope_moment(tl, fa.Al, U, V, half=POS)
                        + rhor * heat_slope_moment(tr, fa.Ar, U, V, half=NEG))
    return q


def prandtl_correction(flux: np.ndarray, fa: FluxAssembly, prandtl: float,
                       delta: float) -> np.ndarray:
    """Fix the energy flux for Pr != 1: F_E += (1/Pr - 1) q."""
    if prandtl == 1.0:
        return flux
    q = time_integrated_heat_flux(fa, delta)
    out = flux.copy()
    out[3] += (1.0 / prandtl - 1.0) * q
    return out
