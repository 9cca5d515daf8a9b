"""Norms, observed orders, and the case measurements (vortex height, Blasius)."""
import numpy as np
import pytest

from gks.diagnostics import (blasius_profile, conserved_totals,
                             convergence_order, error_norms, streamfunction,
                             vortex_height)
from gks.errors import DegenerateError, NoVortexFound
from gks.grid import StructuredGrid


def test_error_norm_spot_values():
    num = np.array([1.0, 2.0, 3.0])
    ref = np.zeros(3)
    assert error_norms(num, ref, "L1", cell_volume=0.5) == pytest.approx(3.0)
    assert error_norms(num, ref, "L2", cell_volume=0.5) == pytest.approx(np.sqrt(7.0))
    assert error_norms(num, ref, "Linf") == pytest.approx(3.0)


def test_error_norm_rejects_unknown_kind():
    with pytest.raises(ValueError, match="norm"):
        error_norms(np.ones(3), np.zeros(3), "L3")


def test_error_norm_properties(rng):
    a = rng.normal(size=50)
    b = rng.normal(size=50)
    c = rng.normal(size=50)
    for norm in ("L1", "L2", "Linf"):
        ab = error_norms(a, b, norm)
        bc = error_norms(b, c, norm)
        ac = error_norms(a, c, norm)
        assert ac <= ab + bc + 1e-12
        assert error_norms(3.0 * a, 3.0 * b, norm) == pytest.approx(3.0 * ab, rel=1e-12)
        assert error_norms(a, a, norm) == 0.0


def test_error_norm_cell_volume_scaling(rng):
    a = rng.normal(size=40)
    b = rng.normal(size=40)
    assert error_norms(a, b, "L1", cell_volume=0.25) == \
        pytest.approx(0.25 * error_norms(a, b, "L1"), rel=1e-12)
    assert error_norms(a, b, "L2", cell_volume=0.25) == \
        pytest.approx(0.5 * error_norms(a, b, "L2"), rel=1e-12)
    assert error_norms(a, b, "Linf", cell_volume=0.25) == \
        pytest.approx(error_norms(a, b, "Linf"), rel=1e-12)


def test_convergence_order_values():
    assert convergence_order([1.0, 1.0 / 32.0]) == pytest.approx([5.0])
    assert convergence_order([16.0, 4.0, 1.0]) == pytest.approx([2.0, 2.0])
    assert convergence_order([1.0, 1.0 / 16.0], ratio=4.0) == pytest.approx([2.0])


def test_convergence_order_degenerate_inputs():
    with pytest.raises(DegenerateError):
        convergence_order([1.0])
    with pytest.raises(DegenerateError):
        convergence_order([1.0, 0.0])


def test_conserved_totals():
    g1 = StructuredGrid(100, 0.01)
    np.testing.assert_allclose(conserved_totals(np.ones((100, 4)), g1),
                               np.ones(4), rtol=1e-12)
    g2 = StructuredGrid(20, 0.5, 20, 0.5)
    np.testing.assert_allclose(conserved_totals(np.ones((20, 20, 4)), g2),
                               np.full(4, 100.0), rtol=1e-12)


def test_streamfunction_cumulative():
    psi = streamfunction(np.ones((5, 4)), 0.1)
    np.testing.assert_allclose(psi[:, 2], [0.1, 0.2, 0.3, 0.4, 0.5], rtol=1e-12)


def test_vortex_height_requires_motion():
    grid = StructuredGrid(60, 0.025, 40, 0.025)
    with pytest.raises(NoVortexFound):
        vortex_height(np.zeros((40, 60, 5)), grid)


def test_vortex_height_synthetic_recirculation():
    # near-wall reversal band up to y = 0.3 in a column around x = 0.7
    grid = StructuredGrid(60, 0.025, 40, 0.025)
    x = grid.centers_x()
    y = grid.centers_y()
    u = np.where(y[:, None] < 0.3, -0.1, 0.05) * np.exp(-((x[None, :] - 0.7) / 0.1) ** 2)
    prim = np.zeros((40, 60, 5))
    prim[..., 1] = u
    assert vortex_height(prim, grid) == pytest.approx(0.3, abs=1e-9)


def test_blasius_profile_classic_values():
    table = blasius_profile()
    assert table.shape == (201, 4)
    np.testing.assert_allclose(table[:, 0], np.linspace(0.0, 10.0, 201), atol=1e-12)
    eta, f, fp, fpp = table[0]
    assert (f, fp) == (0.0, 0.0)
    assert fpp == pytest.approx(0.33206, abs=1e-5)
    assert table[-1, 2] == pytest.approx(1.0, abs=1e-6)
    # wall shear has decayed by the outer edge
    assert table[-1, 3] < 1e-3
    # tabulated similarity speed at eta = 5
    i5 = 100
    assert table[i5, 0] == pytest.approx(5.0)
    assert table[i5, 2] == pytest.approx(0.99155, abs=1e-4)


def test_blasius_profile_is_monotone():
    table = blasius_profile()
    assert np.all(np.diff(table[:, 1]) >= 0.0)
    assert np.all(np.diff(table[:, 2]) >= -1e-12)
    assert np.all(table[:, 3] >= -1e-12)


def test_blasius_domain_guard():
    with pytest.raises(ValueError):
        blasius_profile(eta_max=6.0)
