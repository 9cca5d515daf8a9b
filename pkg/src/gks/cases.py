"""Benchmark case catalog: initial data, boundaries, references.

Each case is a CaseSpec holding the printed constants of the benchmark
suite. Initializers are vectorized primitive evaluators f(x) or f(x, y)
returning (..., 4) = (rho, u, v, p); init_case converts to conserved
cell data, Gauss-averaging smooth cases so the order studies start from
genuine cell averages. Discontinuous cases put jumps on cell faces and
initialize pointwise at centers.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError
from .gas import GasModel, conserved_from_primitive
from .grid import BoundarySpec, StructuredGrid, shock_downstream, shock_foot

GAMMA = 1.4


@dataclass(frozen=True)
class CaseSpec:
    name: str
    xlim: tuple
    meshes: tuple
    t_final: float
    gas: GasModel
    bcs: dict
    init: Callable
    ylim: Optional[tuple] = None
    cfl: float = 0.4
    recon: str = "characteristic"
    smooth: bool = False
    reference: Optional[str] = None
    steady: bool = False
    description: str = ""

    def __post_init__(self):
        if self.t_final <= 0:
            raise ConfigError("final time must be positive")
        if not self.meshes:
            raise ConfigError("mesh list must be nonempty")
        if self.recon not in ("characteristic", "conservative"):
            raise ConfigError(f"unknown reconstruction {self.recon!r}")

    @property
    def ndim(self):
        return 2 if self.ylim is not None else 1

    def grid(self, mesh) -> StructuredGrid:
        """Grid for one entry of the mesh list (int or (nx, ny))."""
        if self.ndim == 1:
            nx = int(mesh)
            return StructuredGrid(nx, (self.xlim[1] - self.xlim[0]) / nx,
                                  origin=(self.xlim[0], 0.0))
        nx, ny = (mesh, mesh) if np.isscalar(mesh) else mesh
        return StructuredGrid(nx, (self.xlim[1] - self.xlim[0]) / nx,
                              ny, (self.ylim[1] - self.ylim[0]) / ny,
                              origin=(self.xlim[0], self.ylim[0]))


def _gauss_nodes(n=5):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * x, 0.5 * w


def init_case(case: CaseSpec, grid: StructuredGrid) -> np.ndarray:
    """Conserved initial cell data for a case on a grid."""
    if case.ndim == 1:
        x = grid.centers_x()
        if case.smooth:
            z, w = _gauss_nodes()
            xq = x[:, None] + z[None, :] * grid.dx
            cons = conserved_from_primitive(case.init(xq), case.gas)
            return np.einsum("q,xqc->xc", w, cons)
        return conserved_from_primitive(case.init(x), case.gas)
    x = grid.centers_x()
    y = grid.centers_y()
    if case.smooth:
        z, w = _gauss_nodes()
        xq = x[None, :, None, None] + z[None, None, :, None] * grid.dx
        yq = y[:, None, None, None] + z[None, None, None, :] * grid.dy
        xq, yq = np.broadcast_arrays(xq, yq)
        cons = conserved_from_primitive(case.init(xq, yq), case.gas)
        return np.einsum("a,b,yxabc->yxc", w, w, cons)
    xx, yy = np.meshgrid(x, y)
    return conserved_from_primitive(case.init(xx, yy), case.gas)


def _prim_arr(shape, rho, u, v, p):
    out = np.empty(shape + (4,))
    out[..., 0] = rho
    out[..., 1] = u
    out[..., 2] = v
    out[..., 3] = p
    return out


def _piecewise_x(x, breaks, states):
    """1D primitive from breakpoints and (rho, u, p) plateau states."""
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape + (4,))
    cond = np.digitize(x, breaks)
    for k, (rho, u, p) in enumerate(states):
        m = cond == k
        out[..., 0][m] = rho
        out[..., 1][m] = u
        out[..., 2][m] = 0.0
        out[..., 3][m] = p
    return out


def _init_advection(x):
    return _prim_arr(np.shape(x), 1.0 + 0.2 * np.sin(np.pi * np.asarray(x)), 1.0, 0.0, 1.0)


def advected_wave(x, t):
    """Exact advection reference, primitive."""
    return _init_advection(np.asarray(x) - t)


def _init_vortex(x, y):
    eps = 5.0
    r2 = np.asarray(x) ** 2 + np.asarray(y) ** 2
    dT = -(GAMMA - 1.0) * eps**2 / (8.0 * GAMMA * math.pi**2) * np.exp(1.0 - r2)
    du = eps / (2.0 * math.pi) * np.exp(0.5 * (1.0 - r2))
    T = 1.0 + dT
    rho = T ** (1.0 / (GAMMA - 1.0))
    return _prim_arr(np.shape(r2), rho, 1.0 - du * np.asarray(y),
                     1.0 + du * np.asarray(x), rho**GAMMA)


def isentropic_vortex(x, y, t, xlim=(-5.0, 5.0), ylim=(-5.0, 5.0)):
    """Vortex advected with the (1,1) mean flow, wrapped periodically."""
    lx = xlim[1] - xlim[0]
    ly = ylim[1] - ylim[0]
    xs = (np.asarray(x) - t - xlim[0]) % lx + xlim[0]
    ys = (np.asarray(y) - t - ylim[0]) % ly + ylim[0]
    return _init_vortex(xs, ys)


def _init_sod(x):
    return _piecewise_x(x, [0.5], [(1.0, 0.0, 1.0), (0.125, 0.0, 0.1)])


def _init_blast(x):
    return _piecewise_x(x, [10.0, 90.0],
                        [(1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), (1.0, 0.0, 100.0)])


SHU_OSHER_LEFT = (3.857134, 2.629369, 10.33333)


def _init_shu_osher(x):
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape + (4,))
    left = x < -4.0
    out[..., 0] = np.where(left, SHU_OSHER_LEFT[0], 1.0 + 0.2 * np.sin(5.0 * x))
    out[..., 1] = np.where(left, SHU_OSHER_LEFT[1], 0.0)
    out[..., 2] = 0.0
    out[..., 3] = np.where(left, SHU_OSHER_LEFT[2], 1.0)
    return out


def _quadrants(states):
    """2D primitive from quadrant states (ur, ul, ll, lr) about (0.5, 0.5)."""
    def init(x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        out = np.empty(np.broadcast(x, y).shape + (4,))
        sel = [(x > 0.5) & (y > 0.5), (x < 0.5) & (y > 0.5),
               (x < 0.5) & (y < 0.5), (x > 0.5) & (y < 0.5)]
        for m, s in zip(sel, states):
            for c in range(4):
                out[..., c][m] = s[c]
        return out
    return init


_RIEMANN2D_1 = ((1.5, 0.0, 0.0, 1.5),
                (0.5323, 1.206, 0.0, 0.3),
                (0.138, 1.206, 1.206, 0.029),
                (0.5323, 0.0, 1.206, 0.3))
_RIEMANN2D_2 = ((1.0, 0.1, 0.1, 1.0),
                (0.5197, -0.6259, 0.1, 0.4),
                (0.8, 0.1, 0.1, 0.4),
                (0.5197, 0.1, -0.6259, 0.4))

DMR_PRE = (1.4, 0.0, 0.0, 1.0)
DMR_POST = shock_downstream(10.0, DMR_PRE, 60.0, GAMMA)
_DMR_SHOCK = BoundarySpec("moving_shock", ms=10.0, angle=60.0, x0=1.0 / 6.0,
                          pre_state=DMR_PRE)


def _init_double_mach(x, y):
    x = np.asarray(x)
    y = np.asarray(y)
    foot = np.vectorize(lambda yy: shock_foot(_DMR_SHOCK, yy, 0.0, GAMMA))(y)
    behind = x < foot
    out = np.empty(np.broadcast(x, y).shape + (4,))
    for c in range(4):
        out[..., c] = np.where(behind, DMR_POST[c], DMR_PRE[c])
    return out


SHOCK_VORTEX_MA = 1.1
_SV_UP = (SHOCK_VORTEX_MA**2, math.sqrt(GAMMA), 0.0, 1.0)


def _normal_shock_downstream(up, mach, gamma=GAMMA):
    rho1, u1, v1, p1 = up
    ratio = ((gamma + 1.0) * mach**2) / ((gamma - 1.0) * mach**2 + 2.0)
    return (rho1 * ratio, u1 / ratio, v1,
            p1 * (2.0 * gamma * mach**2 - (gamma - 1.0)) / (gamma + 1.0))


_SV_DOWN = _normal_shock_downstream(_SV_UP, SHOCK_VORTEX_MA)


def _init_shock_vortex(x, y):
    kappa, mu_d, rc = 0.3, 0.204, 0.05
    xc, yc = 0.25, 0.5
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.sqrt((x - xc) ** 2 + (y - yc) ** 2)
    eta = r / rc
    amp = kappa * eta * np.exp(mu_d * (1.0 - eta**2))
    with np.errstate(invalid="ignore", divide="ignore"):
        sin_t = np.where(r > 0, (y - yc) / r, 0.0)
        cos_t = np.where(r > 0, (x - xc) / r, 0.0)
    du = amp * sin_t
    dv = -amp * cos_t
    dT = -(GAMMA - 1.0) * kappa**2 / (4.0 * mu_d * GAMMA) * np.exp(2.0 * mu_d * (1.0 - eta**2))
    rho_u, u_u, v_u, p_u = _SV_UP
    # perturb at constant entropy: T -> T + dT, S fixed
    T0 = p_u / rho_u
    S0 = p_u / rho_u**GAMMA
    T = T0 + dT
    rho_pert = (T / S0) ** (1.0 / (GAMMA - 1.0))
    upstream = x < 0.5
    out = np.empty(np.broadcast(x, y).shape + (4,))
    out[..., 0] = np.where(upstream, rho_pert, _SV_DOWN[0])
    out[..., 1] = np.where(upstream, u_u + du, _SV_DOWN[1])
    out[..., 2] = np.where(upstream, v_u + dv, _SV_DOWN[2])
    out[..., 3] = np.where(upstream, rho_pert * T, _SV_DOWN[3])
    return out


VST_LEFT = (120.0, 0.0, 120.0 / GAMMA)
VST_RIGHT = (1.2, 0.0, 1.2 / GAMMA)


def _init_viscous_tube(x, y):
    x = np.asarray(x)
    out = np.empty(np.broadcast(x, y).shape + (4,))
    left = x < 0.5
    out[..., 0] = np.where(left, VST_LEFT[0], VST_RIGHT[0])
    out[..., 1] = 0.0
    out[..., 2] = 0.0
    out[..., 3] = np.where(left, VST_LEFT[2], VST_RIGHT[2])
    return out


PLATE_FREESTREAM = (1.0, 0.15, 0.0, 1.0 / GAMMA)


def _init_plate(x, y):
    return _prim_arr(np.broadcast(np.asarray(x), np.asarray(y)).shape,
                     *PLATE_FREESTREAM)


CAVITY_LID = 0.15
CAVITY_TWALL = 1.0 / GAMMA


def _init_cavity(x, y):
    return _prim_arr(np.broadcast(np.asarray(x), np.asarray(y)).shape,
                     1.0, 0.0, 0.0, 1.0 / GAMMA)


def _bc(kind, **kw):
    return BoundarySpec(kind, **kw)


def _build_cases():
    periodic = _bc("periodic")
    outflow = _bc("non_reflecting")
    reflect = _bc("reflective_slip")
    cases = {}

    # order studies drop the eps*dt dissipation floor: with it the
    # collision time scales like the mesh and caps the order at one
    cases["advection"] = CaseSpec(
        name="advection", xlim=(0.0, 2.0), meshes=(20, 40, 80, 160),
        t_final=2.0, gas=GasModel(dim=1, tau_eps=0.0),
        bcs={"left": periodic, "right": periodic},
        init=_init_advection, smooth=True, reference="advected_wave",
        description="1D advected density wave, order study")

    cases["vortex"] = CaseSpec(
        name="vortex", xlim=(-5.0, 5.0), ylim=(-5.0, 5.0),
        meshes=(20, 40, 80), t_final=10.0, gas=GasModel(dim=2, tau_eps=0.0),
        bcs={"left": periodic, "right": periodic,
             "bottom": periodic, "top": periodic},
        init=_init_vortex, smooth=True, reference="isentropic_vortex",
        recon="conservative",
        description="2D isentropic vortex advection, order study")

    cases["sod"] = CaseSpec(
        name="sod", xlim=(0.0, 1.0), meshes=(100,), t_final=0.2,
        gas=GasModel(dim=1),
        bcs={"left": outflow, "right": outflow},
        init=_init_sod, reference="exact_riemann",
        description="Sod shock tube")

    # the 1e5 pressure ratio needs the small step: larger CFL undershoots
    # the internal energy next to the left front on the very first update
    cases["blast"] = CaseSpec(
        name="blast", xlim=(0.0, 100.0), meshes=(200, 400), t_final=3.8,
        gas=GasModel(dim=1), cfl=0.15,
        bcs={"left": reflect, "right": reflect},
        init=_init_blast,
        description="interacting blast waves between reflecting walls")

    # right side: the shock never reaches it, so the exact far field is
    # the initial stratification; a flat-ghost outflow would kink the
    # density wave there and radiate an error back into the domain
    cases["shu_osher"] = CaseSpec(
        name="shu_osher", xlim=(-5.0, 5.0), meshes=(400, 2000), t_final=1.8,
        gas=GasModel(dim=1), cfl=0.15,
        bcs={"left": _bc("dirichlet_fixed",
                         state=(SHU_OSHER_LEFT[0], SHU_OSHER_LEFT[1], 0.0,
                                SHU_OSHER_LEFT[2])),
             "right": _bc("frozen_profile", profile=_init_shu_osher)},
        init=_init_shu_osher,
        description="shock / acoustic-wave interaction")

    cases["riemann2d_1"] = CaseSpec(
        name="riemann2d_1", xlim=(0.0, 1.0), ylim=(0.0, 1.0),
        meshes=(400,), t_final=0.3, gas=GasModel(dim=2),
        bcs={"left": outflow, "right": outflow,
             "bottom": outflow, "top": outflow},
        init=_quadrants(_RIEMANN2D_1),
        description="2D Riemann problem, four-shock interaction")

    cases["riemann2d_2"] = CaseSpec(
        name="riemann2d_2", xlim=(0.0, 1.0), ylim=(0.0, 1.0),
        meshes=(600,), t_final=0.25, gas=GasModel(dim=2),
        bcs={"left": outflow, "right": outflow,
             "bottom": outflow, "top": outflow},
        init=_quadrants(_RIEMANN2D_2),
        description="2D Riemann problem, rarefactions and vortex sheets")

    cases["double_mach"] = CaseSpec(
        name="double_mach", xlim=(0.0, 4.0), ylim=(0.0, 1.0),
        meshes=((240, 80),), t_final=0.2, gas=GasModel(dim=2),
        bcs={"left": _bc("dirichlet_fixed", state=DMR_POST),
             "right": outflow,
             "bottom": [(-math.inf, 1.0 / 6.0,
                         _bc("dirichlet_fixed", state=DMR_POST)),
                        (1.0 / 6.0, math.inf, reflect)],
             "top": _DMR_SHOCK},
        init=_init_double_mach,
        description="Mach 10 double Mach reflection off a ramped wall")

    cases["shock_vortex"] = CaseSpec(
        name="shock_vortex", xlim=(0.0, 2.0), ylim=(0.0, 1.0),
        meshes=((100, 50), (200, 100), (400, 200)), t_final=0.8,
        gas=GasModel(dim=2),
        bcs={"left": _bc("dirichlet_fixed", state=_SV_UP),
             "right": _bc("dirichlet_fixed", state=_SV_DOWN),
             "bottom": reflect, "top": reflect},
        init=_init_shock_vortex, smooth=True,
        description="vortex passing through a stationary Mach 1.1 shock")

    cases["viscous_shock_tube"] = CaseSpec(
        name="viscous_shock_tube", xlim=(0.0, 1.0), ylim=(0.0, 0.5),
        meshes=((500, 250),), t_final=1.0,
        gas=GasModel(dim=2, mu=1.0 / 200.0, prandtl=0.73),
        bcs={"left": _bc("no_slip_adiabatic"),
             "right": _bc("no_slip_adiabatic"),
             "bottom": _bc("no_slip_adiabatic"),
             "top": _bc("symmetric")},
        init=_init_viscous_tube,
        description="viscous shock tube, shock/boundary-layer interaction")

    cases["flat_plate"] = CaseSpec(
        name="flat_plate", xlim=(-0.3, 1.0), ylim=(0.0, 0.45),
        meshes=((260, 90),), t_final=60.0,
        gas=GasModel(dim=2, mu=1.5e-6),
        bcs={"left": _bc("non_reflecting", reference=PLATE_FREESTREAM),
             "right": outflow,
             "top": _bc("non_reflecting", reference=PLATE_FREESTREAM),
             "bottom": [(-math.inf, 0.0, _bc("symmetric")),
                        (0.0, math.inf, _bc("no_slip_adiabatic"))]},
        init=_init_plate, steady=True, reference="blasius",
        description="laminar boundary layer over a flat plate")

    wall = _bc("no_slip_isothermal", t_wall=CAVITY_TWALL)
    cases["cavity"] = CaseSpec(
        name="cavity", xlim=(0.0, 1.0), ylim=(0.0, 1.0),
        meshes=(65,), t_final=150.0,
        gas=GasModel(dim=2, mu=1.5e-4),
        bcs={"left": wall, "right": wall, "bottom": wall,
             "top": _bc("no_slip_isothermal", t_wall=CAVITY_TWALL,
                        wall_velocity=(CAVITY_LID, 0.0))},
        init=_init_cavity, steady=True, reference="external_table",
        description="lid-driven cavity at Re=1000")

    return cases


_CASES = _build_cases()


def list_cases():
    return sorted(_CASES)


def get_case(name: str) -> CaseSpec:
    try:
        return _CASES[name]
    except KeyError:
        raise ConfigError(f"unknown case {name!r}; known: {', '.join(list_cases())}") from None
