"""Two-stage time integration built on window-integrated fluxes.

The flux machinery hands back time integrals over a window delta rather
than instantaneous values. A first-order Taylor model of the interface
flux, F(t) = F + t dtF, integrates to F(delta) = F delta + dtF delta^2/2;
evaluating the window integral at delta = dt/2 and dt pins down both
coefficients. One intermediate state at dt/2 then supplies the midpoint
slope information that lifts the update to fourth order.

The rhs operator passed to the steppers maps (field, t, dt) to the pair
of conservative increments obtained from the two windows:

    rhs(field, t, dt) -> (inc_half, inc_full)

where field + inc_half is the half-step update and field + inc_full the
single-window full update. Everything here is shape-agnostic past that.
"""
import numpy as np

from .errors import NonPhysicalState
from .gas import primitive_from_conserved


def linear_flux_coefficients(f_half, f_full, dt):
    """Instantaneous flux and its time derivative from two window integrals.

    Solves F(dt/2) = F dt/2 + dtF dt^2/8, F(dt) = F dt + dtF dt^2/2.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    f = (4.0 * np.asarray(f_half) - np.asarray(f_full)) / dt
    dtf = 4.0 * (np.asarray(f_full) - 2.0 * np.asarray(f_half)) / dt**2
    return f, dtf


def quadratic_flux_coefficients(f_third, f_two_thirds, f_full, dt):
    """(F, dtF, dttF) from window integrals at dt/3, 2dt/3 and dt.

    The quadratic model F(t) = F + t dtF + t^2/2 dttF integrates to
    F delta + dtF delta^2/2 + dttF delta^3/6 at each window length.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    deltas = np.array([dt / 3.0, 2.0 * dt / 3.0, dt])
    a = np.stack([deltas, deltas**2 / 2.0, deltas**3 / 6.0], axis=1)
    b = np.stack([np.asarray(f_third, dtype=float).ravel(),
                  np.asarray(f_two_thirds, dtype=float).ravel(),
                  np.asarray(f_full, dtype=float).ravel()])
    x = np.linalg.solve(a, b)
    shape = np.shape(f_full)
    return x[0].reshape(shape), x[1].reshape(shape), x[2].reshape(shape)


def _check_physical(field, gas, where):
    if gas is not None:
        try:
            primitive_from_conserved(np.asarray(field), gas)
        except NonPhysicalState as exc:
            err = NonPhysicalState(f"{where}: {exc}")
            err.where = exc.where
            raise err from None


def s2o4_step(rhs, field, dt, t=0.0, gas=None):
    """One two-stage fourth-order update of a conservative field.

    Stage one advances half a step with the half-window increment alone.
    The final update combines both windows at t_n and at the intermediate
    state so that the effective interface flux equals
    F + dt/6 (dtF_n + 2 dtF_star) in the linear-in-time flux model.
    """
    inc_half_n, inc_full_n = rhs(field, t, dt)
    wstar = field + inc_half_n
    _check_physical(wstar, gas, "intermediate state")
    inc_half_s, inc_full_s = rhs(wstar, t + 0.5 * dt, dt)
    wnew = (field
            + (8.0 / 3.0) * inc_half_n - (1.0 / 3.0) * inc_full_n
            + (4.0 / 3.0) * inc_full_s - (8.0 / 3.0) * inc_half_s)
    _check_physical(wnew, gas, "updated state")
    return wnew


def single_window_step(rhs, field, dt, t=0.0, gas=None):
    """Second-order update from one full-window flux integral.

    This is the one-stage scheme the two-stage method degrades to when
    the intermediate state is dropped; kept for the accuracy comparison.
    """
    _, inc_full = rhs(field, t, dt)
    wnew = field + inc_full
    _check_physical(wnew, gas, "updated state")
    return wnew


def s2o5_ode_step(rhs, rhs_t, rhs_tt, w, dt):
    """Fifth-order two-stage update for dw/dt = L(w).

    Needs the first and second time derivatives of L along solutions.
    The intermediate state sits at 2dt/5; only the second-derivative
    terms blend the two stages (weights 3/8 and 5/8).
    """
    a = 0.4
    wstar = (w + a * dt * rhs(w)
             + 0.5 * (a * dt) ** 2 * rhs_t(w)
             + (a * dt) ** 3 / 6.0 * rhs_tt(w))
    return (w + dt * rhs(w)
            + 0.5 * dt**2 * rhs_t(w)
            + dt**3 / 6.0 * (0.375 * rhs_tt(w) + 0.625 * rhs_tt(wstar)))


def cfl_time_step(field, grid, gas, cfl, viscous_bound=True):
    """Acoustic CFL time step, with a parabolic bound in viscous mode."""
    prim = primitive_from_conserved(np.asarray(field), gas)
    rho = prim[..., 0]
    c = np.sqrt(gas.gamma * prim[..., 3] / rho)
    dt = np.min(grid.dx / (np.abs(prim[..., 1]) + c))
    if grid.ndim == 2:
        dt = min(dt, np.min(grid.dy / (np.abs(prim[..., 2]) + c)))
    if viscous_bound and gas.viscous:
        h2 = grid.dx**2 if grid.ndim == 1 else min(grid.dx**2, grid.dy**2)
        dt = min(dt, h2 * np.min(rho) / (4.0 * gas.mu))
    return cfl * dt
