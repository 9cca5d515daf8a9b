"""Exact solver for the 1D Euler Riemann problem.

Newton iteration on the star pressure with the standard two-branch
pressure function (shock below, rarefaction above), then self-similar
sampling in x/t. States are (rho, u, p) triples.
"""
import math

import numpy as np

from .errors import VacuumFormation


def _pressure_fn(p, rho_k, p_k, c_k, gamma):
    """f_K(p) and its derivative for one side."""
    if p > p_k:
        a = 2.0 / ((gamma + 1.0) * rho_k)
        b = (gamma - 1.0) / (gamma + 1.0) * p_k
        root = math.sqrt(a / (p + b))
        f = (p - p_k) * root
        df = root * (1.0 - 0.5 * (p - p_k) / (p + b))
    else:
        f = 2.0 * c_k / (gamma - 1.0) * ((p / p_k) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
        df = (p / p_k) ** (-(gamma + 1.0) / (2.0 * gamma)) / (rho_k * c_k)
    return f, df


def star_state(left, right, gamma=1.4, tol=1e-12, max_iter=100):
    """(p*, u*) between the two nonlinear waves."""
    rho_l, u_l, p_l = left
    rho_r, u_r, p_r = right
    c_l = math.sqrt(gamma * p_l / rho_l)
    c_r = math.sqrt(gamma * p_r / rho_r)
    if 2.0 * (c_l + c_r) / (gamma - 1.0) <= u_r - u_l:
        raise VacuumFormation("states expand into vacuum")
    # two-rarefaction guess is positive and usually close
    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((c_l + c_r - 0.5 * (gamma - 1.0) * (u_r - u_l))
         / (c_l / p_l**z + c_r / p_r**z)) ** (1.0 / z)
    for _ in range(max_iter):
        f_l, df_l = _pressure_fn(p, rho_l, p_l, c_l, gamma)
        f_r, df_r = _pressure_fn(p, rho_r, p_r, c_r, gamma)
        dp = (f_l + f_r + u_r - u_l) / (df_l + df_r)
        p_new = p - dp
        if p_new <= 0.0:
            p_new = 0.5 * p
        if abs(p_new - p) < tol * 0.5 * (p_new + p):
            p = p_new
            break
        p = p_new
    f_l, _ = _pressure_fn(p, rho_l, p_l, c_l, gamma)
    f_r, _ = _pressure_fn(p, rho_r, p_r, c_r, gamma)
    u = 0.5 * (u_l + u_r) + 0.5 * (f_r - f_l)
    return p, u


def _sample_side(xi, rho_k, u_k, p_k, c_k, p_star, u_star, sign, gamma):
    """Solution on one side of the contact; sign=-1 left, +1 right."""
    g1 = gamma - 1.0
    gp = gamma + 1.0
    if p_star > p_k:
        # shock branch
        ratio = p_star / p_k
        s = u_k + sign * c_k * math.sqrt(gp / (2.0 * gamma) * ratio + g1 / (2.0 * gamma))
        rho_s = rho_k * (ratio + g1 / gp) / (g1 / gp * ratio + 1.0)
        if sign * (xi - s) > 0:
            return rho_k, u_k, p_k
        return rho_s, u_star, p_star
    # rarefaction branch
    c_star = c_k * (p_star / p_k) ** (g1 / (2.0 * gamma))
    head = u_k + sign * c_k
    tail = u_star + sign * c_star
    if sign * (xi - head) > 0:
        return rho_k, u_k, p_k
    if sign * (xi - tail) < 0:
        rho_s = rho_k * (p_star / p_k) ** (1.0 / gamma)
        return rho_s, u_star, p_star
    c = (2.0 * c_k - sign * g1 * (u_k - xi)) / gp
    u = xi - sign * c
    rho = rho_k * (c / c_k) ** (2.0 / g1)
    p = p_k * (c / c_k) ** (2.0 * gamma / g1)
    return rho, u, p


def exact_riemann(left, right, xi, gamma=1.4):
    """Self-similar solution sampled at speeds xi = x/t.

    left/right are (rho, u, p); returns arrays (rho, u, p) shaped like xi.
    """
    p_star, u_star = star_state(left, right, gamma)
    xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
    rho = np.empty_like(xi_arr)
    u = np.empty_like(xi_arr)
    p = np.empty_like(xi_arr)
    rho_l, u_l, p_l = left
    rho_r, u_r, p_r = right
    c_l = math.sqrt(gamma * p_l / rho_l)
    c_r = math.sqrt(gamma * p_r / rho_r)
    for i, x in np.ndenumerate(xi_arr):
        if x < u_star:
            rho[i], u[i], p[i] = _sample_side(x, rho_l, u_l, p_l, c_l,
                                              p_star, u_star, -1.0, gamma)
        else:
            rho[i], u[i], p[i] = _sample_side(x, rho_r, u_r, p_r, c_r,
                                              p_star, u_star, 1.0, gamma)
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return rho[0], u[0], p[0]
    return rho, u, p
