"""Config parsing and file-output round trips."""
import numpy as np
import pytest

from gks.cases import get_case
from gks.config import build_case, parse_config
from gks.driver import advance_to, new_run
from gks.errors import ConfigError, IoError
from gks.gas import GasModel
from gks.grid import StructuredGrid
from gks.io import (ensure_dir, read_checkpoint, read_field_csv, read_table,
                    read_vtk_celldata, write_checkpoint,
                    write_convergence_report, write_field, write_history_csv)


# ---------------------------------------------------------------- config

def test_minimal_config_applies_defaults():
    cfg = parse_config("case = sod\n")
    assert cfg.case == "sod"
    assert cfg.scheme == "s2o4"
    assert cfg.format == "csv"
    assert cfg.cadence == 0
    assert cfg.diag_every == 1
    assert cfg.mesh is None and cfg.cfl is None
    case = build_case(cfg)
    assert case.cfl == 0.4
    assert case.gas.gamma == 1.4


def test_high_cfl_is_accepted():
    case = build_case(parse_config("case = sod\ncfl = 0.9\n"))
    assert case.cfl == 0.9


def test_bad_gamma_reports_line_number():
    text = "case = sod\n\n[gas]\ngamma = abc\n"
    with pytest.raises(ConfigError, match="line 4"):
        parse_config(text)


def test_unknown_key_rejected_with_line():
    with pytest.raises(ConfigError, match="line 2.*unknown key"):
        parse_config("case = sod\nspeed = 3\n")


def test_unknown_section_rejected():
    with pytest.raises(ConfigError, match="unknown section"):
        parse_config("[turbulence]\n")


def test_unterminated_section_header():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("[case\n")


def test_missing_equals_sign():
    with pytest.raises(ConfigError, match="key = value"):
        parse_config("case sod\n")


def test_empty_value_rejected():
    with pytest.raises(ConfigError, match="empty value"):
        parse_config("cfl =\n")


def test_comments_and_blank_lines_ignored():
    cfg = parse_config("# header\n\ncase = sod  # trailing\ncfl = 0.5 # half\n")
    assert cfg.case == "sod"
    assert cfg.cfl == 0.5


def test_mesh_forms():
    assert parse_config("mesh = 64\n").mesh == 64
    assert parse_config("mesh = 32x48\n").mesh == (32, 48)
    assert parse_config("mesh = 32X48\n").mesh == (32, 48)
    with pytest.raises(ConfigError, match="bad mesh"):
        parse_config("mesh = 3x3x3\n")
    with pytest.raises(ConfigError, match="bad mesh"):
        parse_config("mesh = wide\n")


def test_mu_spellings():
    assert parse_config("[gas]\nmu = none\n").mu is None
    assert parse_config("[gas]\nmu = 0\n").mu is None
    assert parse_config("[gas]\nmu = 2e-3\n").mu == 2e-3


def test_key_in_wrong_section_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("[run]\ngamma = 1.4\n")


def test_scheme_choice_validated():
    with pytest.raises(ConfigError, match="rk4"):
        parse_config("[run]\nscheme = rk4\n")
    assert parse_config("[run]\nscheme = gks2\n").scheme == "gks2"


def test_reconstruction_choice_validated():
    with pytest.raises(ConfigError, match="not one of"):
        parse_config("[run]\nreconstruction = weno9\n")


def test_build_case_needs_a_case():
    with pytest.raises(ConfigError, match="no case"):
        build_case(parse_config("cfl = 0.4\n"))


def test_build_case_unknown_name():
    with pytest.raises(ConfigError):
        build_case(parse_config("case = warp_drive\n"))


def test_gas_overrides_do_not_touch_catalog():
    text = "case = sod\nt_final = 0.1\n[gas]\ngamma = 1.67\ntau_eps = 0.01\n"
    case = build_case(parse_config(text))
    assert case.gas.gamma == 1.67
    assert case.gas.tau_eps == 0.01
    assert case.t_final == 0.1
    fresh = get_case("sod")
    assert fresh.gas.gamma == 1.4
    assert fresh.t_final == 0.2


def test_viscous_override_round_trip():
    case = build_case(parse_config("case = sod\n[gas]\nmu = 1e-3\nprandtl = 0.7\n"))
    assert case.gas.viscous
    assert case.gas.mu == 1e-3
    assert case.gas.prandtl == 0.7


# ---------------------------------------------------------------- fields

GAS1 = GasModel(gamma=1.4, dim=1)
GAS2 = GasModel(gamma=1.4, dim=2)


def uniform_field(grid, state=(1.0, 0.3, -0.2, 2.0)):
    rho, u, v, p = state
    w = np.empty(grid.shape + (4,))
    w[..., 0] = rho
    w[..., 1] = rho * u
    w[..., 2] = rho * v
    w[..., 3] = p / 0.4 + 0.5 * rho * (u * u + v * v)
    return w


def test_csv_1d_header_and_rows(tmp_path):
    grid = StructuredGrid((0.0, 1.0), None, 3)
    path = tmp_path / "f.csv"
    write_field(uniform_field(grid), grid, GAS1, "csv", path)
    header, data = read_field_csv(path)
    assert header == ["x", "rho", "u", "p"]
    assert data.shape == (3, 4)
    assert np.allclose(data[:, 1:], [1.0, 0.3, 2.0], rtol=0, atol=1e-15)
    assert np.array_equal(data[:, 0], grid.centers_x())


def test_csv_round_trip_exact(tmp_path, rng):
    grid = StructuredGrid((0.0, 1.0), None, 16)
    w = uniform_field(grid)
    w *= 1.0 + 0.1 * rng.uniform(-1, 1, size=w.shape)
    path = tmp_path / "f.csv"
    write_field(w, grid, GAS1, "csv", path)
    _, data = read_field_csv(path)
    from gks.gas import primitive_from_conserved
    prim = primitive_from_conserved(w, GAS1)
    # 17 significant digits reproduce doubles exactly
    assert np.array_equal(data[:, 1], prim[:, 0])
    assert np.array_equal(data[:, 2], prim[:, 1])
    assert np.array_equal(data[:, 3], prim[:, 3])


def test_csv_identical_writes_are_byte_identical(tmp_path):
    grid = StructuredGrid((0.0, 1.0), (0.0, 1.0), (5, 4))
    w = uniform_field(grid)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_field(w, grid, GAS2, "csv", p1)
    write_field(w, grid, GAS2, "csv", p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_csv_2d_layout(tmp_path):
    grid = StructuredGrid((0.0, 1.0), (0.0, 0.5), (4, 3))
    path = tmp_path / "f.csv"
    write_field(uniform_field(grid), grid, GAS2, "csv", path)
    header, data = read_field_csv(path)
    assert header == ["x", "y", "rho", "u", "v", "p"]
    assert data.shape == (12, 6)
    # row-major by x then y: x varies fastest
    assert np.array_equal(data[:4, 0], grid.centers_x())
    assert np.all(data[:4, 1] == data[0, 1])


def test_vtk_2d_dimensions_and_records(tmp_path):
    grid = StructuredGrid((0.0, 1.0), (0.0, 1.0), (4, 4))
    path = tmp_path / "f.vtk"
    write_field(uniform_field(grid), grid, GAS2, "vtk", path)
    text = path.read_text().splitlines()
    assert "DIMENSIONS 5 5 1" in text
    assert "CELL_DATA 16" in text
    arrays = read_vtk_celldata(path)
    assert sorted(arrays) == ["p", "rho", "u", "v"]
    for vals in arrays.values():
        assert vals.shape == (16,)
    assert np.allclose(arrays["rho"], 1.0, rtol=0, atol=1e-15)
    assert np.allclose(arrays["p"], 2.0, rtol=0, atol=1e-15)


def test_vtk_1d_round_trip(tmp_path):
    grid = StructuredGrid((0.0, 2.0), None, 6)
    path = tmp_path / "f.vtk"
    write_field(uniform_field(grid), grid, GAS1, "vtk", path)
    text = path.read_text().splitlines()
    assert "DIMENSIONS 7 1 1" in text
    arrays = read_vtk_celldata(path)
    assert sorted(arrays) == ["p", "rho", "u"]
    assert arrays["u"].shape == (6,)
    assert np.allclose(arrays["u"], 0.3, rtol=0, atol=1e-15)


def test_write_field_rejects_nonfinite(tmp_path):
    grid = StructuredGrid((0.0, 1.0), None, 3)
    w = uniform_field(grid)
    w[1, 3] = np.nan
    with pytest.raises(IoError, match="non-finite"):
        write_field(w, grid, GAS1, "csv", tmp_path / "f.csv")


def test_write_field_unknown_format(tmp_path):
    grid = StructuredGrid((0.0, 1.0), None, 3)
    with pytest.raises(IoError, match="format"):
        write_field(uniform_field(grid), grid, GAS1, "hdf5", tmp_path / "f")


def test_read_missing_file_raises():
    with pytest.raises(IoError, match="cannot read"):
        read_field_csv("/nonexistent/file.csv")


def test_read_table_with_comments(tmp_path):
    path = tmp_path / "t.dat"
    path.write_text("# reference\n1.0 2.0\n3.0 4.0\n")
    t = read_table(path)
    assert t.shape == (2, 2)
    assert t[1, 1] == 4.0


# ------------------------------------------------------------ checkpoints

def test_checkpoint_round_trip(tmp_path):
    run = new_run("sod", mesh=50)
    advance_to(run, 0.05)
    path = tmp_path / "chk.npz"
    write_checkpoint(path, run)
    back = read_checkpoint(path)
    assert back.case.name == "sod"
    assert back.t == run.t and back.step == run.step
    assert back.scheme == run.scheme and back.recon == run.recon
    assert back.cfl == run.cfl
    assert back.min_rho == run.min_rho and back.min_p == run.min_p
    assert np.array_equal(back.w, run.w)
    assert len(back.history) == len(run.history)
    # a restarted run continues bit-identically
    dt = 1.0 / 1024
    advance_to(run, run.t + 4 * dt, fixed_dt=dt)
    advance_to(back, back.t + 4 * dt, fixed_dt=dt)
    assert np.array_equal(back.w, run.w)


def test_checkpoint_version_gate(tmp_path):
    path = tmp_path / "chk.npz"
    np.savez(path, version=99, case="sod")
    with pytest.raises(IoError, match="version"):
        read_checkpoint(path)


def test_history_csv_matches_run(tmp_path):
    run = new_run("sod", mesh=50)
    advance_to(run, 0.03)
    path = tmp_path / "history.csv"
    write_history_csv(run, path)
    header, data = read_field_csv(path)
    assert header[:5] == ["step", "t", "dt", "min_rho", "min_p"]
    assert data.shape == (len(run.history), 9)
    assert np.array_equal(data[-1], np.array(run.history[-1]))


def test_convergence_report_files(tmp_path):
    rows = [{"mesh": 20, "cells": 20, "L1": 1e-4, "L2": 2e-4},
            {"mesh": 40, "cells": 40, "L1": 3.125e-6, "L2": 6.25e-6,
             "order_L1": 5.0, "order_L2": 5.0}]
    csv_path = tmp_path / "orders.csv"
    txt_path = tmp_path / "orders.txt"
    text = write_convergence_report(rows, csv_path, txt_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "cells,L1,L2,order_L1,order_L2"
    assert lines[1].endswith(",,")         # first row carries no orders
    assert "5" in lines[2].split(",")[3]
    assert txt_path.read_text().splitlines()[1].rstrip().endswith("-")
    assert "order_L1" in text.splitlines()[0]


def test_ensure_dir_nested_and_failure(tmp_path):
    target = tmp_path / "a" / "b"
    ensure_dir(target)
    assert target.is_dir()
    blocker = tmp_path / "plain"
    blocker.write_text("x")
    with pytest.raises(IoError, match="cannot create"):
        ensure_dir(blocker / "sub")
