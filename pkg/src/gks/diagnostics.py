"""Error norms, convergence orders, and case-specific measurements."""
import numpy as np

from .errors import DegenerateError, NoVortexFound


def error_norms(num, ref, norm="L1", cell_volume=1.0):
    """Discrete integral norm of the difference of two cell fields.

    L1 = sum |e| dV and L2 = sqrt(sum e^2 dV) with the uniform cell
    volume dV; this summed convention is what the published order
    tables use. cell_volume=1 gives the plain summed norms.
    """
    e = np.asarray(num, dtype=float) - np.asarray(ref, dtype=float)
    if norm == "L1":
        return float(np.sum(np.abs(e)) * cell_volume)
    if norm == "L2":
        return float(np.sqrt(np.sum(e * e) * cell_volume))
    if norm == "Linf":
        return float(np.max(np.abs(e)))
    raise ValueError(f"unknown norm {norm!r}")


def convergence_order(errors, ratio=2.0):
    """Pairwise observed orders for a sequence of errors under refinement."""
    errors = list(errors)
    if len(errors) < 2:
        raise DegenerateError("need at least two errors")
    orders = []
    for coarse, fine in zip(errors, errors[1:]):
        if coarse <= 0.0 or fine <= 0.0:
            raise DegenerateError("zero error leaves the order undefined")
        orders.append(float(np.log(coarse / fine) / np.log(ratio)))
    return orders


def conserved_totals(field, grid):
    """Domain integrals of the four conserved quantities."""
    vol = grid.dx * (grid.dy if grid.ndim == 2 else 1.0)
    return np.sum(np.asarray(field), axis=tuple(range(grid.ndim))) * vol


def streamfunction(u, dy):
    """Discrete streamfunction from the x velocity, integrated off the wall.

    psi[j, i] = sum of u below row j; the bottom wall is psi = 0.
    """
    return np.cumsum(u, axis=0) * dy


def vortex_height(prim, grid, x_range=(0.4, 1.0)):
    """Height of the near-wall primary vortex in a (ny, nx, 5) field.

    The vortex center is the extremum of the discrete streamfunction in
    the near-wall search window; the height is the top of the contiguous
    band of sign-reversed x velocity in the center's column.
    """
    u = np.asarray(prim)[..., 1]
    x = grid.centers_x()
    y = grid.centers_y()
    cols = (x >= x_range[0]) & (x <= x_range[1])
    rows = y <= 0.5 * (y[0] + y[-1])
    if np.max(np.abs(u)) < 1e-12:
        raise NoVortexFound("field is quiescent")
    psi = streamfunction(u, grid.dy)
    window = psi[np.ix_(rows, cols)]
    # the recirculation encloses a streamfunction extremum; pick the
    # strongest one relative to the wall value psi=0
    flat = np.argmax(np.abs(window))
    jc, ic = np.unravel_index(flat, window.shape)
    ic = np.nonzero(cols)[0][ic]
    jc = np.nonzero(rows)[0][jc]
    col = u[:, ic]
    s0 = np.sign(col[0]) or np.sign(col[1])
    if s0 == 0:
        raise NoVortexFound("no near-wall flow reversal")
    j = 0
    while j < col.size and np.sign(col[j]) in (s0, 0.0):
        j += 1
    if j < 2:
        raise NoVortexFound("reversal band thinner than two cells")
    return float(y[j - 1] + 0.5 * grid.dy)


def blasius_profile(eta_max=10.0, samples=201, tol=1e-8):
    """Similarity profile of the laminar flat-plate boundary layer.

    Solves f''' + f f''/2 = 0, f(0) = f'(0) = 0, f'(inf) = 1 by shooting
    on f''(0). Returns an (samples, 4) array of (eta, f, f', f'').
    """
    if eta_max < 8.0:
        raise ValueError("eta_max must cover the layer (>= 8)")

    def integrate(fpp0, n_sub=2000):
        h = eta_max / n_sub
        y = np.array([0.0, 0.0, fpp0])
        rows = [y.copy()]
        def rhs(s):
            return np.array([s[1], s[2], -0.5 * s[0] * s[2]])
        for _ in range(n_sub):
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            rows.append(y.copy())
        return np.array(rows)

    lo, hi = 0.1, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fp_end = integrate(mid)[-1, 1]
        if fp_end < 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    fpp0 = 0.5 * (lo + hi)
    table = integrate(fpp0)
    eta = np.linspace(0.0, eta_max, table.shape[0])
    keep = np.linspace(0, table.shape[0] - 1, samples).round().astype(int)
    out = np.column_stack([eta[keep], table[keep]])
    return out
