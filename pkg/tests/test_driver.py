"""Driver behavior: stepping, restarts, conservation, studies."""
import numpy as np
import pytest

from gks.cases import CaseSpec, get_case, init_case
from gks.diagnostics import conserved_totals
from gks.driver import (SCHEMES, advance_to, flux_increments, new_run,
                        reference_density, run_convergence_study)
from gks.errors import ConfigError, NonPhysicalState
from gks.gas import GasModel
from gks.grid import BoundarySpec


def uniform_case_2d(u=0.0, v=0.0, kind="periodic", steady=False):
    def init(x, y):
        out = np.empty(np.broadcast(np.asarray(x), np.asarray(y)).shape + (4,))
        out[..., 0] = 1.0
        out[..., 1] = u
        out[..., 2] = v
        out[..., 3] = 1.0
        return out
    bc = BoundarySpec(kind)
    return CaseSpec(name="uniform", xlim=(0.0, 0.8), ylim=(0.0, 0.6),
                    meshes=((8, 6),), t_final=1.0, gas=GasModel(dim=2),
                    bcs={"left": bc, "right": bc, "bottom": bc, "top": bc},
                    init=init, steady=steady)


def negative_density_case():
    def init(x):
        x = np.asarray(x)
        out = np.empty(x.shape + (4,))
        out[..., 0] = np.where(x < 0.5, 1.0, -0.5)
        out[..., 1] = 0.0
        out[..., 2] = 0.0
        out[..., 3] = 1.0
        return out
    bc = BoundarySpec("non_reflecting")
    return CaseSpec(name="broken", xlim=(0.0, 1.0), meshes=(50,), t_final=0.1,
                    gas=GasModel(dim=1), bcs={"left": bc, "right": bc},
                    init=init)


def test_new_run_defaults():
    run = new_run("sod")
    assert run.grid.nx == 100
    assert run.scheme == "s2o4"
    assert run.cfl == get_case("sod").cfl
    assert run.recon == "characteristic"
    assert run.t == 0.0 and run.step == 0
    np.testing.assert_array_equal(run.w, init_case(run.case, run.grid))


def test_new_run_overrides_and_validation():
    run = new_run("advection", mesh=40, scheme="gks2", cfl=0.1,
                  recon="conservative")
    assert run.grid.nx == 40
    assert (run.scheme, run.cfl, run.recon) == ("gks2", 0.1, "conservative")
    with pytest.raises(ConfigError, match="scheme"):
        new_run("sod", scheme="rk3")
    assert set(SCHEMES) == {"s2o4", "gks2"}


def test_advance_rejects_backward_target():
    run = new_run("sod")
    run.t = 0.1
    with pytest.raises(ValueError):
        advance_to(run, 0.05)


def test_advance_to_current_time_is_a_noop():
    run = new_run("sod")
    w0 = run.w.copy()
    out = advance_to(run, 0.0)
    assert out is run
    assert run.step == 0
    np.testing.assert_array_equal(run.w, w0)


def test_repeated_runs_are_bit_identical():
    a = advance_to(new_run("sod"), 0.05)
    b = advance_to(new_run("sod"), 0.05)
    assert a.step == b.step
    assert a.t == b.t
    np.testing.assert_array_equal(a.w, b.w)


def test_restart_is_transparent_with_fixed_dt():
    # binary-exact dt keeps both paths on the same float trajectory
    dt = 1.0 / 4096.0
    whole = advance_to(new_run("sod"), 1.0 / 64.0, fixed_dt=dt)
    split = advance_to(new_run("sod"), 1.0 / 128.0, fixed_dt=dt)
    assert split.step == 32
    advance_to(split, 1.0 / 64.0, fixed_dt=dt)
    assert whole.step == split.step == 64
    assert whole.t == split.t
    np.testing.assert_array_equal(whole.w, split.w)


def test_periodic_totals_are_conserved():
    run = new_run("advection", mesh=40)
    before = conserved_totals(run.w, run.grid)
    advance_to(run, 10.0, max_steps=50)
    assert run.step == 50
    after = conserved_totals(run.w, run.grid)
    np.testing.assert_allclose(after, before, rtol=1e-12, atol=1e-14)


def test_wall_mass_and_energy_are_conserved():
    run = new_run("blast", mesh=200)
    before = conserved_totals(run.w, run.grid)
    advance_to(run, 10.0, max_steps=10)
    after = conserved_totals(run.w, run.grid)
    # reflecting ends exchange momentum but no mass or energy
    assert abs(after[0] - before[0]) < 1e-11 * before[0]
    assert abs(after[3] - before[3]) < 1e-11 * before[3]


def test_periodic_totals_are_conserved_2d():
    run = new_run("vortex", mesh=20)
    before = conserved_totals(run.w, run.grid)
    advance_to(run, 10.0, max_steps=2)
    after = conserved_totals(run.w, run.grid)
    np.testing.assert_allclose(after, before, rtol=1e-12, atol=1e-13)


@pytest.mark.parametrize("case", [uniform_case_2d(u=0.3, v=-0.2),
                                  uniform_case_2d(kind="reflective_slip")],
                         ids=["periodic_moving", "walls_static"])
def test_uniform_field_is_a_fixed_point(case):
    run = new_run(case)
    w0 = run.w.copy()
    advance_to(run, 1.0, fixed_dt=2e-3, max_steps=5)
    assert run.step == 5
    np.testing.assert_array_equal(run.w, w0)


def test_uniform_increments_vanish_exactly():
    run = new_run(uniform_case_2d(u=0.4))
    ih, iff = flux_increments(run, run.w, 0.0, 1e-3)
    assert not np.any(ih)
    assert not np.any(iff)


def test_steady_run_stops_on_residual():
    run = new_run(uniform_case_2d(kind="reflective_slip", steady=True))
    advance_to(run, 5.0, fixed_dt=1e-3)
    assert run.step == 1
    assert run.t == pytest.approx(1e-3)


def test_max_steps_clamps_the_march():
    run = advance_to(new_run("sod"), 0.2, max_steps=3)
    assert run.step == 3
    assert run.t < 0.2


def test_callback_and_history_cadence():
    seen = []
    run = new_run("sod", diag_every=3)
    advance_to(run, 0.2, max_steps=7, callback=lambda r: seen.append(r.step))
    assert seen == [1, 2, 3, 4, 5, 6, 7]
    # initial record plus every third step
    assert len(run.history) == 1 + 2
    assert run.min_rho > 0.0
    assert run.min_p > 0.0


def test_nonphysical_reconstruction_aborts_with_step_info():
    run = new_run(negative_density_case(), recon="conservative")
    run.history.append((0, 0.0, 0.0, 1.0, 1.0))  # skip the initial record
    with pytest.raises(NonPhysicalState, match="step 1"):
        advance_to(run, 0.1, fixed_dt=1e-3)


def test_reference_density_matches_initial_data():
    for name in ("advection", "vortex"):
        case = get_case(name)
        grid = case.grid(case.meshes[0])
        ref = reference_density(case, grid, 0.0)
        np.testing.assert_allclose(ref, init_case(case, grid)[..., 0],
                                   rtol=1e-13, atol=1e-14)


def test_reference_density_periodic_return():
    case = get_case("advection")
    grid = case.grid(40)
    np.testing.assert_allclose(reference_density(case, grid, 2.0),
                               reference_density(case, grid, 0.0), rtol=1e-13)


def test_reference_density_sod_profile():
    case = get_case("sod")
    grid = case.grid(100)
    ref = reference_density(case, grid, 0.2)
    x = grid.centers_x()
    assert ref[np.argmin(np.abs(x - 0.2))] == pytest.approx(1.0)
    assert ref[np.argmin(np.abs(x - 0.7))] == pytest.approx(0.26557, abs=1e-5)
    assert ref[np.argmin(np.abs(x - 0.9))] == pytest.approx(0.125)


def test_reference_density_requires_a_reference():
    case = get_case("blast")
    with pytest.raises(ConfigError):
        reference_density(case, case.grid(200), 1.0)


def test_convergence_study_rows():
    rows = run_convergence_study("advection", meshes=(20, 40))
    assert [r["cells"] for r in rows] == [20, 40]
    assert "order_L1" not in rows[0]
    assert rows[0]["L1"] == pytest.approx(4.4759e-4, rel=0.05)
    assert rows[1]["L1"] == pytest.approx(1.3764e-5, rel=0.05)
    assert rows[1]["order_L1"] == pytest.approx(5.03, abs=0.25)
    assert rows[1]["order_L2"] > 4.5


def test_convergence_study_requires_reference():
    with pytest.raises(ConfigError, match="reference"):
        run_convergence_study("blast")
