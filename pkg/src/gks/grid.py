"""Uniform Cartesian grids with three ghost layers and boundary filling.

Fields live on extended arrays: 1D (nx+6, 4), 2D (ny+6, nx+6, 4) with the
interior starting at index 3 along each axis. Three layers feed the
5-point reconstruction stencil at the first interior face without
special-casing.

Sides are named "left"/"right" (x) and "bottom"/"top" (y). A side maps
to one BoundarySpec, or to a list of (lo, hi, BoundarySpec) segments in
boundary-tangent coordinates for walls whose type changes partway along
(the ramped floor of the Mach-reflection case needs this).
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NonPhysicalState

GHOST = 3

_X_SIDES = ("left", "right")
_Y_SIDES = ("bottom", "top")


@dataclass(frozen=True)
class StructuredGrid:
    nx: int
    dx: float
    ny: int = 0
    dy: float = 0.0
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.nx < 5 or self.dx <= 0:
            raise ConfigError(f"bad x discretization: nx={self.nx}, dx={self.dx}")
        if self.ny and (self.ny < 5 or self.dy <= 0):
            raise ConfigError(f"bad y discretization: ny={self.ny}, dy={self.dy}")

    @property
    def ndim(self):
        return 2 if self.ny else 1

    @property
    def shape(self):
        return (self.ny, self.nx) if self.ny else (self.nx,)

    def centers_x(self):
        return self.origin[0] + (np.arange(self.nx) + 0.5) * self.dx

    def centers_y(self):
        return self.origin[1] + (np.arange(self.ny) + 0.5) * self.dy

    def extended_shape(self):
        if self.ndim == 1:
            return (self.nx + 2 * GHOST, 4)
        return (self.ny + 2 * GHOST, self.nx + 2 * GHOST, 4)

    def ext_centers_x(self):
        return self.origin[0] + (np.arange(self.nx + 2 * GHOST) - GHOST + 0.5) * self.dx

    def ext_centers_y(self):
        return self.origin[1] + (np.arange(self.ny + 2 * GHOST) - GHOST + 0.5) * self.dy


def interior(ext, grid):
    """Interior view of an extended array."""
    if grid.ndim == 1:
        return ext[GHOST:-GHOST]
    return ext[GHOST:-GHOST, GHOST:-GHOST]


def make_extended(field, grid):
    ext = np.empty(grid.extended_shape())
    interior(ext, grid)[...] = field
    return ext


@dataclass(frozen=True)
class BoundarySpec:
    """One boundary recipe; payload fields are kind-specific."""
    kind: str
    state: tuple = None          # primitive (rho, u, v, p) for dirichlet_fixed
    t_wall: float = 0.0          # no_slip_isothermal, as p/rho
    wall_velocity: tuple = (0.0, 0.0)
    reference: tuple = None      # primitive far field for non_reflecting
    ms: float = 0.0              # moving_shock strength
    angle: float = 0.0           # moving_shock inclination, degrees from x axis
    x0: float = 0.0              # moving_shock foot at t=0 on y=0
    pre_state: tuple = (1.4, 0.0, 0.0, 1.0)
    profile: object = None       # primitive profile of x for frozen_profile

    _KINDS = ("periodic", "reflective_slip", "symmetric", "non_reflecting",
              "no_slip_adiabatic", "no_slip_isothermal", "dirichlet_fixed",
              "moving_shock", "frozen_profile")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ConfigError(f"unknown boundary kind {self.kind!r}")
        if self.kind == "dirichlet_fixed" and self.state is None:
            raise ConfigError("dirichlet_fixed needs a state")
        if self.kind == "frozen_profile" and self.profile is None:
            raise ConfigError("frozen_profile needs a profile")
        if self.kind == "no_slip_isothermal" and self.t_wall <= 0:
            raise ConfigError("isothermal wall needs t_wall > 0")
        if self.kind == "moving_shock" and self.ms <= 1.0:
            raise ConfigError("moving_shock needs ms > 1")


def _cons(prim_tuple, gamma):
    rho, u, v, p = prim_tuple
    return np.array([rho, rho * u, rho * v,
                     p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)])


def shock_downstream(ms, pre_state, angle, gamma):
    """Lab-frame post-shock primitive state behind an oblique shock.

    The shock line makes `angle` degrees with the x axis and propagates
    along its own normal (rotated -90 degrees from the line direction)
    at speed ms times the upstream sound speed.
    """
    rho1, u1, v1, p1 = pre_state
    c1 = math.sqrt(gamma * p1 / rho1)
    s = ms * c1
    a = math.radians(angle)
    nx, ny = math.sin(a), -math.cos(a)
    un1 = u1 * nx + v1 * ny
    m = (s - un1) / c1
    ratio = ((gamma + 1.0) * m * m) / ((gamma - 1.0) * m * m + 2.0)
    rho2 = rho1 * ratio
    p2 = p1 * (2.0 * gamma * m * m - (gamma - 1.0)) / (gamma + 1.0)
    un2 = s - (s - un1) / ratio
    du = un2 - un1
    return (rho2, u1 + du * nx, v1 + du * ny, p2)


def shock_foot(spec, y, t, gamma):
    """x where a moving_shock spec's front crosses height y at time t."""
    rho1, _, _, p1 = spec.pre_state
    c1 = math.sqrt(gamma * p1 / rho1)
    a = math.radians(spec.angle)
    return spec.x0 + y / math.tan(a) + spec.ms * c1 * t / math.sin(a)


def _prim_block(w, gamma):
    rho = w[..., 0]
    u = w[..., 1] / rho
    v = w[..., 2] / rho
    p = (gamma - 1.0) * (w[..., 3] - 0.5 * rho * (u * u + v * v))
    return rho, u, v, p


def _cons_block(rho, u, v, p, gamma):
    out = np.empty(rho.shape + (4,))
    out[..., 0] = rho
    out[..., 1] = rho * u
    out[..., 2] = rho * v
    out[..., 3] = p / (gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return out


def _wall_ghost(spec, w_int, normal_axis, gamma):
    """Ghost states mirroring w_int across a wall per the spec's kind."""
    rho, u, v, p = _prim_block(w_int, gamma)
    kind = spec.kind
    if kind in ("reflective_slip", "symmetric"):
        if normal_axis == 0:
            u = -u
        else:
            v = -v
        return _cons_block(rho, u, v, p, gamma)
    uw, vw = spec.wall_velocity
    gu = 2.0 * uw - u
    gv = 2.0 * vw - v
    if kind == "no_slip_adiabatic":
        return _cons_block(rho, gu, gv, p, gamma)
    # isothermal: ghost temperature reflects about t_wall, pressure copied
    tg = 2.0 * spec.t_wall - p / rho
    if np.any(tg <= 0.0):
        raise NonPhysicalState("isothermal wall drove ghost temperature negative")
    return _cons_block(p / tg, gu, gv, p, gamma)


def _riemann_invariant_state(w_int, spec, outward, normal_axis, gamma):
    """Far-field state from one outgoing and one incoming invariant."""
    rho, u, v, p = _prim_block(w_int, gamma)
    rr, ru, rv, rp = spec.reference
    c_i = np.sqrt(gamma * p / rho)
    c_r = math.sqrt(gamma * rp / rr)
    if normal_axis == 0:
        un_i, ut_i, un_r, ut_r = u * outward, v, ru * outward, rv
    else:
        un_i, ut_i, un_r, ut_r = v * outward, u, rv * outward, ru
    g1 = gamma - 1.0
    j_out = un_i + 2.0 * c_i / g1
    j_in = un_r - 2.0 * c_r / g1
    un_b = 0.5 * (j_out + j_in)
    c_b = 0.25 * g1 * (j_out - j_in)
    outflow = un_b > 0.0
    ent = np.where(outflow, p / rho**gamma, rp / rr**gamma)
    ut_b = np.where(outflow, ut_i, ut_r)
    rho_b = (c_b * c_b / (gamma * ent)) ** (1.0 / g1)
    p_b = rho_b * c_b * c_b / gamma
    if normal_axis == 0:
        return _cons_block(rho_b, un_b * outward, ut_b, p_b, gamma)
    return _cons_block(rho_b, ut_b, un_b * outward, p_b, gamma)


def _segments(spec_or_list, coords):
    """Yield (mask, spec) pairs covering the tangential coordinate."""
    if isinstance(spec_or_list, BoundarySpec):
        yield np.ones(coords.shape, dtype=bool), spec_or_list
        return
    covered = np.zeros(coords.shape, dtype=bool)
    for lo, hi, spec in spec_or_list:
        mask = (coords >= lo) & (coords < hi)
        covered |= mask
        yield mask, spec
    if not covered.all():
        raise ConfigError("boundary segments leave part of a side uncovered")


def _fill_side(ext, grid, side, spec_or_list, t, gamma):
    """Populate the three ghost layers of one non-periodic side.

    Works on (L, 4) views where L runs along the boundary (L=1 in 1D).
    ghost_ix[k] is the k-th ghost layer moving away from the wall and
    mirror_ix[k] its interior mirror.
    """
    if grid.ndim == 1:
        n = grid.nx
        coords = np.zeros(1)
        normal_axis = 0
        take = lambda i: ext[i:i + 1]
    elif side in _X_SIDES:
        n = grid.nx
        coords = grid.ext_centers_y()[GHOST:-GHOST]
        rows = slice(GHOST, GHOST + grid.ny)
        normal_axis = 0
        take = lambda i: ext[rows, i]
    else:
        n = grid.ny
        coords = grid.ext_centers_x()
        normal_axis = 1
        take = lambda i: ext[i, :]
    if side in ("left", "bottom"):
        ghost_ix, mirror_ix, outward = (2, 1, 0), (3, 4, 5), -1.0
    else:
        ghost_ix, mirror_ix, outward = (n + 3, n + 4, n + 5), (n + 2, n + 1, n), 1.0

    for mask, spec in _segments(spec_or_list, coords):
        kind = spec.kind
        if kind == "periodic":
            raise ConfigError(f"periodic {side} side must pair with its opposite")
        for g, m in zip(ghost_ix, mirror_ix):
            w_int = take(m)[mask]
            if kind in ("reflective_slip", "symmetric", "no_slip_adiabatic",
                        "no_slip_isothermal"):
                val = _wall_ghost(spec, w_int, normal_axis, gamma)
            elif kind == "dirichlet_fixed":
                val = np.broadcast_to(_cons(spec.state, gamma), w_int.shape)
            elif kind == "non_reflecting":
                nearest = take(mirror_ix[0])[mask]
                if spec.reference is None:
                    val = nearest.copy()
                else:
                    val = _riemann_invariant_state(nearest, spec, outward,
                                                   normal_axis, gamma)
            elif kind == "frozen_profile":
                # pins the ghosts to the undisturbed far field so a
                # stratified state does not kink at the boundary
                if grid.ndim != 1:
                    raise ConfigError("frozen_profile supports 1D runs only")
                prim = np.asarray(spec.profile(grid.ext_centers_x()[g:g + 1]),
                                  dtype=float)[0]
                val = np.broadcast_to(_cons(tuple(prim), gamma), w_int.shape)
            elif kind == "moving_shock":
                if normal_axis != 1:
                    raise ConfigError("moving_shock applies to y sides")
                post = _cons(shock_downstream(spec.ms, spec.pre_state,
                                              spec.angle, gamma), gamma)
                pre = _cons(spec.pre_state, gamma)
                y = grid.ext_centers_y()[g]
                foot = shock_foot(spec, y, t, gamma)
                val = np.where((coords[mask] < foot)[:, None], post, pre)
            else:
                raise ConfigError(f"unknown boundary kind {kind!r}")
            take(g)[mask] = val


def fill_ghost(ext, grid, specs, t=0.0, gamma=1.4):
    """Populate all ghost layers of an extended field in place.

    specs maps side names to a BoundarySpec or to segment lists. x sides
    are filled over interior rows first, then y sides across the full
    extended width so corners see consistent data.
    """
    ndim = grid.ndim
    sides = _X_SIDES if ndim == 1 else _X_SIDES + _Y_SIDES
    for side in sides:
        if side not in specs:
            raise ConfigError(f"no boundary condition for side {side!r}")

    def is_periodic(s):
        sp = specs[s]
        return isinstance(sp, BoundarySpec) and sp.kind == "periodic"

    nx = grid.nx
    if is_periodic("left") or is_periodic("right"):
        if not (is_periodic("left") and is_periodic("right")):
            raise ConfigError("periodic boundaries must come in pairs")
        if ndim == 1:
            ext[0:GHOST] = ext[nx:nx + GHOST]
            ext[nx + GHOST:] = ext[GHOST:2 * GHOST]
        else:
            rows = slice(GHOST, GHOST + grid.ny)
            ext[rows, 0:GHOST] = ext[rows, nx:nx + GHOST]
            ext[rows, nx + GHOST:] = ext[rows, GHOST:2 * GHOST]
    else:
        _fill_side(ext, grid, "left", specs["left"], t, gamma)
        _fill_side(ext, grid, "right", specs["right"], t, gamma)

    if ndim == 1:
        return ext

    ny = grid.ny
    if is_periodic("bottom") or is_periodic("top"):
        if not (is_periodic("bottom") and is_periodic("top")):
            raise ConfigError("periodic boundaries must come in pairs")
        ext[0:GHOST] = ext[ny:ny + GHOST]
        ext[ny + GHOST:] = ext[GHOST:2 * GHOST]
    else:
        _fill_side(ext, grid, "bottom", specs["bottom"], t, gamma)
        _fill_side(ext, grid, "top", specs["top"], t, gamma)
    return ext
