"""Exact Riemann solver: star states, wave relations, self-similar conservation."""
import math

import numpy as np
import pytest

from gks.errors import VacuumFormation
from gks.riemann import exact_riemann, star_state

GAMMA = 1.4
SOD_L = (1.0, 0.0, 1.0)
SOD_R = (0.125, 0.0, 0.1)


def sound_speed(state, gamma=GAMMA):
    rho, _, p = state
    return math.sqrt(gamma * p / rho)


def random_state(rng):
    # ranges keep u_r - u_l well below the vacuum threshold 2(c_l+c_r)/(g-1)
    return (rng.uniform(0.3, 2.0), rng.uniform(-1.0, 1.0), rng.uniform(0.3, 2.0))


def pressure_fn(p, state, gamma=GAMMA):
    """Two-branch pressure function f_K(p), used to verify the root."""
    rho_k, _, p_k = state
    c_k = sound_speed(state, gamma)
    if p > p_k:
        a = 2.0 / ((gamma + 1.0) * rho_k)
        b = (gamma - 1.0) / (gamma + 1.0) * p_k
        return (p - p_k) * math.sqrt(a / (p + b))
    z = (gamma - 1.0) / (2.0 * gamma)
    return 2.0 * c_k / (gamma - 1.0) * ((p / p_k) ** z - 1.0)


def wave_speeds(left, right, gamma=GAMMA):
    """Sorted breakpoint speeds of the wave fan (shock, fan edges, contact)."""
    p_star, u_star = star_state(left, right, gamma)
    c_l = sound_speed(left, gamma)
    c_r = sound_speed(right, gamma)
    z = (gamma - 1.0) / (2.0 * gamma)
    pts = []
    if p_star > left[2]:
        ratio = p_star / left[2]
        pts.append(left[1] - c_l * math.sqrt((gamma + 1.0) / (2.0 * gamma) * ratio + z))
    else:
        pts.extend([left[1] - c_l, u_star - c_l * (p_star / left[2]) ** z])
    pts.append(u_star)
    if p_star > right[2]:
        ratio = p_star / right[2]
        pts.append(right[1] + c_r * math.sqrt((gamma + 1.0) / (2.0 * gamma) * ratio + z))
    else:
        pts.extend([u_star + c_r * (p_star / right[2]) ** z, right[1] + c_r])
    assert all(b >= a - 1e-14 for a, b in zip(pts, pts[1:]))
    return pts


def conserved(rho, u, p, gamma=GAMMA):
    return np.array([rho, rho * u, p / (gamma - 1.0) + 0.5 * rho * u * u])


def flux_of(rho, u, p, gamma=GAMMA):
    e = p / (gamma - 1.0) + 0.5 * rho * u * u
    return np.array([rho * u, rho * u * u + p, u * (e + p)])


def fan_integral(left, right, lo, hi, gamma=GAMMA, n=64):
    """Integral of conserved variables over xi in [lo, hi], Gauss per region."""
    pts = [lo] + wave_speeds(left, right, gamma) + [hi]
    nodes, weights = np.polynomial.legendre.leggauss(n)
    total = np.zeros(3)
    for a, b in zip(pts, pts[1:]):
        if b <= a:
            continue
        xi = 0.5 * (a + b) + 0.5 * (b - a) * nodes
        rho, u, p = exact_riemann(left, right, xi, gamma)
        total += 0.5 * (b - a) * (conserved(rho, u, p, gamma) @ weights)
    return total


def conservation_residual(left, right, gamma=GAMMA, t=0.3):
    """Weak-form balance: domain integral vs initial data plus boundary fluxes."""
    pts = wave_speeds(left, right, gamma)
    lo = min(pts + [0.0]) - 1.0
    hi = max(pts + [0.0]) + 1.0
    integral = t * fan_integral(left, right, lo, hi, gamma)
    expected = (-lo * t) * conserved(*left, gamma) + (hi * t) * conserved(*right, gamma) \
        + t * (flux_of(*left, gamma) - flux_of(*right, gamma))
    scale = np.maximum(np.abs(expected), 1.0)
    return float(np.max(np.abs(integral - expected) / scale))


def test_sod_star_state():
    p_star, u_star = star_state(SOD_L, SOD_R)
    assert p_star == pytest.approx(0.30313, abs=1e-5)
    assert u_star == pytest.approx(0.92745, abs=1e-5)


def test_sod_star_densities():
    p_star, u_star = star_state(SOD_L, SOD_R)
    # constant states on either side of the contact
    rho_l, u_l, p_l = exact_riemann(SOD_L, SOD_R, 0.5)
    rho_r, u_r, p_r = exact_riemann(SOD_L, SOD_R, 1.2)
    assert rho_l == pytest.approx(0.42632, abs=1e-5)
    assert rho_r == pytest.approx(0.26557, abs=1e-5)
    for val in (p_l, p_r):
        assert val == pytest.approx(p_star, rel=1e-12)
    for val in (u_l, u_r):
        assert val == pytest.approx(u_star, rel=1e-12)


def test_identical_states_are_preserved():
    state = (0.8, 0.35, 1.7)
    p_star, u_star = star_state(state, state)
    assert p_star == pytest.approx(1.7, rel=1e-12)
    assert u_star == pytest.approx(0.35, rel=1e-12)
    rho, u, p = exact_riemann(state, state, np.linspace(-2.0, 3.0, 11))
    assert np.allclose(rho, 0.8, rtol=1e-12)
    assert np.allclose(u, 0.35, rtol=1e-12)
    assert np.allclose(p, 1.7, rtol=1e-12)


def test_symmetric_collision_has_zero_contact_speed():
    left = (1.0, 1.0, 1.0)
    right = (1.0, -1.0, 1.0)
    p_star, u_star = star_state(left, right)
    assert abs(u_star) < 1e-13
    assert p_star > 1.0
    xi = np.linspace(-3.0, 3.0, 41)
    rho, u, p = exact_riemann(left, right, xi)
    assert np.allclose(rho, rho[::-1], rtol=1e-12)
    assert np.allclose(u, -u[::-1], atol=1e-12)
    assert np.allclose(p, p[::-1], rtol=1e-12)


def test_star_pressure_solves_the_matching_equation(rng):
    for _ in range(50):
        left = random_state(rng)
        right = random_state(rng)
        p_star, u_star = star_state(left, right)
        res = pressure_fn(p_star, left) + pressure_fn(p_star, right) + right[1] - left[1]
        assert abs(res) < 1e-10
        # the contact speed matches the relation on either side
        assert u_star == pytest.approx(left[1] - pressure_fn(p_star, left), abs=1e-10)
        assert u_star == pytest.approx(right[1] + pressure_fn(p_star, right), abs=1e-10)


def rh_residual(ahead, behind):
    """Jump-condition violation with the shock speed taken from the mass jump."""
    rho1, u1, p1 = ahead
    rho2, u2, p2 = behind
    s = (rho2 * u2 - rho1 * u1) / (rho2 - rho1)
    df = flux_of(rho2, u2, p2) - flux_of(rho1, u1, p1)
    du = conserved(rho2, u2, p2) - conserved(rho1, u1, p1)
    scale = np.maximum(np.abs(df), 1.0)
    return float(np.max(np.abs(df - s * du) / scale))


def test_shock_jump_conditions(rng):
    checked = 0
    for _ in range(200):
        left = random_state(rng)
        right = random_state(rng)
        p_star, u_star = star_state(left, right)
        pts = wave_speeds(left, right)
        if p_star > 1.05 * left[2]:
            behind = exact_riemann(left, right, 0.5 * (pts[0] + u_star))
            assert rh_residual(left, behind) < 1e-10
            checked += 1
        if p_star > 1.05 * right[2]:
            behind = exact_riemann(left, right, 0.5 * (u_star + pts[-1]))
            assert rh_residual(right, behind) < 1e-10
            checked += 1
    assert checked >= 20


def test_left_fan_invariants():
    # Sod opens a left rarefaction; sample strictly inside the fan
    p_star, u_star = star_state(SOD_L, SOD_R)
    c_l = sound_speed(SOD_L)
    head = SOD_L[1] - c_l
    tail = u_star - c_l * (p_star / SOD_L[2]) ** ((GAMMA - 1.0) / (2.0 * GAMMA))
    xi = np.linspace(head + 1e-6, tail - 1e-6, 25)
    rho, u, p = exact_riemann(SOD_L, SOD_R, xi)
    c = np.sqrt(GAMMA * p / rho)
    assert np.allclose(u + 2.0 * c / (GAMMA - 1.0),
                       SOD_L[1] + 2.0 * c_l / (GAMMA - 1.0), rtol=1e-10)
    assert np.allclose(p / rho ** GAMMA, SOD_L[2] / SOD_L[0] ** GAMMA, rtol=1e-10)
    # inside the fan the sampling speed rides the outgoing characteristic
    assert np.allclose(u - c, xi, atol=1e-10)


def test_right_fan_invariants():
    left = (1.0, -0.5, 1.0)
    right = (1.0, 0.5, 1.0)
    p_star, u_star = star_state(left, right)
    assert p_star < right[2]
    c_r = sound_speed(right)
    tail = u_star + c_r * (p_star / right[2]) ** ((GAMMA - 1.0) / (2.0 * GAMMA))
    head = right[1] + c_r
    xi = np.linspace(tail + 1e-6, head - 1e-6, 25)
    rho, u, p = exact_riemann(left, right, xi)
    c = np.sqrt(GAMMA * p / rho)
    assert np.allclose(u - 2.0 * c / (GAMMA - 1.0),
                       right[1] - 2.0 * c_r / (GAMMA - 1.0), rtol=1e-10)
    assert np.allclose(p / rho ** GAMMA, right[2] / right[0] ** GAMMA, rtol=1e-10)
    assert np.allclose(u + c, xi, atol=1e-10)


@pytest.mark.parametrize("left,right", [
    (SOD_L, SOD_R),
    ((1.0, 1.0, 1.0), (1.0, -1.0, 1.0)),
    ((1.0, -0.5, 1.0), (1.0, 0.5, 1.0)),
    ((5.99924, 19.5975, 460.894), (5.99242, -6.19633, 46.0950)),
], ids=["sod", "collision", "expansion", "strong"])
def test_self_similar_conservation(left, right):
    assert conservation_residual(left, right) < 1e-11


def test_conservation_random_states(rng):
    for _ in range(25):
        left = random_state(rng)
        right = random_state(rng)
        assert conservation_residual(left, right) < 1e-10


def test_vacuum_formation_raises():
    with pytest.raises(VacuumFormation):
        star_state((1.0, -6.0, 1.0), (1.0, 6.0, 1.0))


def test_near_vacuum_expansion_stays_positive():
    p_star, u_star = star_state((1.0, -5.5, 1.0), (1.0, 5.5, 1.0))
    assert 0.0 < p_star < 1e-3
    assert abs(u_star) < 1e-10


def test_scalar_and_array_sampling_agree():
    rho, u, p = exact_riemann(SOD_L, SOD_R, 0.0)
    assert np.ndim(rho) == 0
    xi = np.array([[0.0, 0.5], [1.0, 1.5]])
    rho_a, u_a, p_a = exact_riemann(SOD_L, SOD_R, xi)
    assert rho_a.shape == (2, 2)
    assert rho_a[0, 0] == rho
    assert u_a[0, 0] == u
    assert p_a[0, 0] == p
