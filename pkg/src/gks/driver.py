"""Run orchestration: time loop, flux sweeps, diagnostics, studies.

The driver owns the glue between the case catalog and the compiled
sweeps: ghost fill at the stage time, both windows of every interface
flux in one sweep, conservative increments, and the two-stage update.
Everything downstream of the case definition is deterministic; the
worker-count hint is accepted for interface stability but the sweeps
are intentionally serial.
"""
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from .cases import (CaseSpec, advected_wave, get_case, init_case,
                    isentropic_vortex)
from .diagnostics import convergence_order, error_norms
from .errors import ConfigError, NonPhysicalState
from .gas import primitive_from_conserved
from .grid import StructuredGrid, fill_ghost, interior
from .integrator import (cfl_time_step, s2o4_step, single_window_step)
from .riemann import exact_riemann

SCHEMES = ("s2o4", "gks2")


@dataclass
class RunState:
    case: CaseSpec
    grid: StructuredGrid
    w: np.ndarray
    t: float = 0.0
    step: int = 0
    scheme: str = "s2o4"
    cfl: float = 0.4
    recon: str = "characteristic"
    residual_tol: float = 1e-10
    diag_every: int = 1
    min_rho: float = math.inf
    min_p: float = math.inf
    fallback_faces: int = 0
    history: list = dc_field(default_factory=list)

    @property
    def gas(self):
        return self.case.gas


def new_run(case, mesh=None, scheme="s2o4", cfl=None, recon=None,
            residual_tol=1e-10, diag_every=1) -> RunState:
    """Fresh RunState for a case (by name or CaseSpec) and mesh entry."""
    if isinstance(case, str):
        case = get_case(case)
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}")
    mesh = case.meshes[0] if mesh is None else mesh
    grid = case.grid(mesh)
    w = init_case(case, grid)
    return RunState(case=case, grid=grid, w=w,
                    scheme=scheme,
                    cfl=case.cfl if cfl is None else cfl,
                    recon=case.recon if recon is None else recon,
                    residual_tol=residual_tol, diag_every=diag_every)


def _raise_flag(flag, grid, t):
    f = int(flag[1])
    if grid.ndim == 2:
        f = f"({f // (grid.nx + 1)}, {f % (grid.nx + 1)})"
    kind = ("non-physical state" if flag[0] == 1
            else "singular moment system")
    raise NonPhysicalState(f"{kind} near face {f} at t={t:.6g}")


def flux_increments(run: RunState, field, t, dt):
    """Conservative increments for both windows (dt/2, dt).

    This is the rhs operator handed to the steppers: ghost fill at the
    stage time, one sweep per direction producing both window integrals,
    then the flux difference scaled by the cell size.
    """
    grid, gas = run.grid, run.gas
    char = run.recon == "characteristic"
    mu = gas.mu if gas.viscous else 0.0
    ext = np.empty(grid.extended_shape())
    interior(ext, grid)[...] = field
    fill_ghost(ext, grid, run.case.bcs, t, gas.gamma)
    flag = np.zeros(3, dtype=np.int64)
    if grid.ndim == 1:
        fout = np.empty((grid.nx + 1, 4, 2))
        _kernels.sweep_fluxes_1d(ext, grid.nx, grid.dx, gas.gamma, gas.k_xi,
                                 mu, gas.prandtl, gas.tau_eps, gas.tau_c,
                                 dt, char, fout, flag)
        if flag[0]:
            _raise_flag(flag, grid, t)
        run.fallback_faces += int(flag[2])
        inc = -np.diff(fout, axis=0) / grid.dx
        return inc[..., 0], inc[..., 1]
    nx, ny = grid.nx, grid.ny
    fx = np.empty((ny, nx + 1, 4, 2))
    _kernels.sweep_fluxes_2d(ext, nx, ny, grid.dx, grid.dy, gas.gamma,
                             gas.k_xi, mu, gas.prandtl, gas.tau_eps,
                             gas.tau_c, dt, char, fx, flag)
    if flag[0]:
        _raise_flag(flag, grid, t)
    # y direction: transpose and swap the momentum components
    wy = np.ascontiguousarray(ext.transpose(1, 0, 2)[..., (0, 2, 1, 3)])
    fyt = np.empty((nx, ny + 1, 4, 2))
    _kernels.sweep_fluxes_2d(wy, ny, nx, grid.dy, grid.dx, gas.gamma,
                             gas.k_xi, mu, gas.prandtl, gas.tau_eps,
                             gas.tau_c, dt, char, fyt, flag)
    if flag[0]:
        _raise_flag(flag, grid, t)
    fy = fyt.transpose(1, 0, 2, 3)[:, :, (0, 2, 1, 3), :]
    run.fallback_faces += int(flag[2])
    inc = (-(fx[:, 1:] - fx[:, :-1]) / grid.dx
           - (fy[1:] - fy[:-1]) / grid.dy)
    return inc[..., 0], inc[..., 1]


def _record(run: RunState, dt):
    prim = primitive_from_conserved(run.w, run.gas)
    mn_rho = float(prim[..., 0].min())
    mn_p = float(prim[..., 3].min())
    run.min_rho = min(run.min_rho, mn_rho)
    run.min_p = min(run.min_p, mn_p)
    vol = run.grid.dx * (run.grid.dy if run.grid.ndim == 2 else 1.0)
    totals = run.w.sum(axis=tuple(range(run.grid.ndim))) * vol
    run.history.append((run.step, run.t, dt, mn_rho, mn_p, *totals))


def advance_to(run: RunState, t_final, fixed_dt=None, max_steps=None,
               callback=None) -> RunState:
    """March a run to t_final, clipping the final step onto it exactly.

    Steady cases stop early once the density residual between steps
    drops below run.residual_tol. fixed_dt bypasses the CFL estimate
    (restart and convergence experiments need reproducible step sizes).
    """
    if t_final < run.t:
        raise ValueError("t_final precedes current time")
    if not run.history:
        _record(run, 0.0)
    rhs = lambda w, t, dt: flux_increments(run, w, t, dt)
    stepper = s2o4_step if run.scheme == "s2o4" else single_window_step
    tol = 1e-12 * max(1.0, abs(t_final))
    while t_final - run.t > tol:
        if max_steps is not None and run.step >= max_steps:
            break
        dt = (fixed_dt if fixed_dt is not None
              else cfl_time_step(run.w, run.grid, run.gas, run.cfl))
        dt = min(dt, t_final - run.t)
        rho_old = run.w[..., 0].copy()
        try:
            run.w = stepper(rhs, run.w, dt, t=run.t, gas=run.gas)
        except NonPhysicalState as exc:
            err = NonPhysicalState(
                f"step {run.step + 1} (t={run.t:.6g}, dt={dt:.3g}): {exc}")
            err.where = exc.where
            raise err from None
        run.t += dt
        run.step += 1
        if run.step % run.diag_every == 0:
            _record(run, dt)
        if callback is not None:
            callback(run)
        if run.case.steady:
            res = math.sqrt(float(np.mean((run.w[..., 0] - rho_old) ** 2)))
            if res < run.residual_tol:
                break
    return run


def reference_density(case: CaseSpec, grid, t):
    """Cell data of the case's reference density at time t."""
    kind = case.reference
    if kind == "advected_wave":
        z, w = np.polynomial.legendre.leggauss(5)
        xq = grid.centers_x()[:, None] + 0.5 * z[None, :] * grid.dx
        return np.einsum("q,xq->x", 0.5 * w, advected_wave(xq, t)[..., 0])
    if kind == "isentropic_vortex":
        z, w = np.polynomial.legendre.leggauss(5)
        z, w = 0.5 * z, 0.5 * w
        x = grid.centers_x()
        y = grid.centers_y()
        xq = x[None, :, None, None] + z[None, None, :, None] * grid.dx
        yq = y[:, None, None, None] + z[None, None, None, :] * grid.dy
        xq, yq = np.broadcast_arrays(xq, yq)
        rho = isentropic_vortex(xq, yq, t, case.xlim, case.ylim)[..., 0]
        return np.einsum("a,b,yxab->yx", w, w, rho)
    if kind == "exact_riemann":
        left = tuple(case.init(np.array([case.xlim[0]]))[0][[0, 1, 3]])
        right = tuple(case.init(np.array([case.xlim[1]]))[0][[0, 1, 3]])
        # subcell midpoint mean: the profile is discontinuous, so the
        # fixed-order Gauss rule of the smooth branches does not converge
        # in the cells the shock and contact cut through
        sub = (np.arange(64) + 0.5) / 64.0 - 0.5
        xq = grid.centers_x()[:, None] + sub[None, :] * grid.dx
        xi = (xq - 0.5) / t
        rho, _, _ = exact_riemann(left, right, xi, case.gas.gamma)
        return rho.mean(axis=1)
    raise ConfigError(f"case {case.name!r} has no evaluable reference")


def run_convergence_study(case, meshes=None, scheme="s2o4", cfl=None,
                          recon=None):
    """Errors and observed orders over the case's mesh list.

    Returns a list of row dicts (mesh, cells, L1, L2, order_L1, order_L2);
    the first row carries no order.
    """
    if isinstance(case, str):
        case = get_case(case)
    if case.reference is None:
        raise ConfigError(f"case {case.name!r} has no reference solution")
    meshes = case.meshes if meshes is None else meshes
    rows = []
    for mesh in meshes:
        run = new_run(case, mesh, scheme=scheme, cfl=cfl, recon=recon,
                      diag_every=10**9)
        advance_to(run, case.t_final)
        ref = reference_density(case, run.grid, run.t)
        dv = run.grid.dx * (run.grid.dy if case.ndim == 2 else 1.0)
        rows.append({"mesh": mesh,
                     "cells": int(np.prod(run.grid.shape)),
                     "L1": error_norms(run.w[..., 0], ref, "L1", dv),
                     "L2": error_norms(run.w[..., 0], ref, "L2", dv)})
    for prev, row in zip(rows, rows[1:]):
        ratio = (row["cells"] / prev["cells"]) ** (1.0 / case.ndim)
        row["order_L1"] = convergence_order([prev["L1"], row["L1"]], ratio)[0]
        row["order_L2"] = convergence_order([prev["L2"], row["L2"]], ratio)[0]
    return rows
