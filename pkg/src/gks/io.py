"""Field output (CSV / legacy VTK), tables, and run checkpoints.

CSV fields are primitive variables at 17 significant digits so
convergence tables can be rebuilt from the files alone. All writers have
matching readers; round-tripping is part of the test contract.
"""
import os

import numpy as np

from .errors import IoError
from .gas import primitive_from_conserved

CHECKPOINT_VERSION = 1


def _fmt(v):
    return f"{v:.17g}"


def write_field(field, grid, gas, fmt, path):
    """Write a conserved field as primitive-variable CSV or legacy VTK."""
    if not np.all(np.isfinite(field)):
        raise IoError("refusing to write non-finite field")
    prim = primitive_from_conserved(np.asarray(field), gas)
    try:
        if fmt == "csv":
            _write_csv(prim, grid, path)
        elif fmt == "vtk":
            _write_vtk(prim, grid, path)
        else:
            raise IoError(f"unknown output format {fmt!r}")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def _write_csv(prim, grid, path):
    lines = []
    if grid.ndim == 1:
        lines.append("x,rho,u,p")
        for x, row in zip(grid.centers_x(), prim):
            lines.append(",".join(map(_fmt, (x, row[0], row[1], row[3]))))
    else:
        lines.append("x,y,rho,u,v,p")
        ys = grid.centers_y()
        xs = grid.centers_x()
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                row = prim[j, i]
                lines.append(",".join(map(_fmt, (x, y, row[0], row[1],
                                                 row[2], row[3]))))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_field_csv(path):
    """Inverse of the CSV writer: (column names, data array)."""
    try:
        with open(path) as fh:
            header = fh.readline().strip().split(",")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    return header, data


def _write_vtk(prim, grid, path):
    if grid.ndim == 1:
        dims = (grid.nx + 1, 1, 1)
        spacing = (grid.dx, 1.0, 1.0)
        ncell = grid.nx
        names = ("rho", "u", "p")
        comps = (0, 1, 3)
        flat = [prim[:, c] for c in comps]
    else:
        dims = (grid.nx + 1, grid.ny + 1, 1)
        spacing = (grid.dx, grid.dy, 1.0)
        ncell = grid.nx * grid.ny
        names = ("rho", "u", "v", "p")
        comps = (0, 1, 2, 3)
        flat = [prim[..., c].ravel() for c in comps]
    lines = ["# vtk DataFile Version 3.0", "structured field", "ASCII",
             "DATASET STRUCTURED_POINTS",
             f"DIMENSIONS {dims[0]} {dims[1]} {dims[2]}",
             f"ORIGIN {_fmt(grid.origin[0])} {_fmt(grid.origin[1])} 0",
             f"SPACING {_fmt(spacing[0])} {_fmt(spacing[1])} {_fmt(spacing[2])}",
             f"CELL_DATA {ncell}"]
    for name, vals in zip(names, flat):
        lines.append(f"SCALARS {name} double 1")
        lines.append("LOOKUP_TABLE default")
        lines.extend(_fmt(v) for v in vals)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_vtk_celldata(path):
    """Scalar cell arrays of a legacy VTK file: {name: values}."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    out = {}
    i = 0
    while i < len(lines):
        if lines[i].startswith("SCALARS"):
            name = lines[i].split()[1]
            i += 2
            vals = []
            while i < len(lines) and lines[i] and not lines[i].startswith("SCALARS"):
                vals.append(float(lines[i]))
                i += 1
            out[name] = np.array(vals)
        else:
            i += 1
    return out


def read_table(path):
    """Whitespace-delimited numeric table with # comments."""
    try:
        return np.loadtxt(path, comments="#", ndmin=2)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None


def write_history_csv(run, path):
    cols = ["step", "t", "dt", "min_rho", "min_p", "mass", "mom_x"]
    cols += ["mom_y", "energy"]
    lines = [",".join(cols)]
    for rec in run.history:
        lines.append(",".join(_fmt(v) for v in rec))
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def write_convergence_report(rows, csv_path, text_path):
    """Machine-readable and human-readable views of an order study."""
    header = "cells,L1,L2,order_L1,order_L2"
    lines = [header]
    txt = [f"{'cells':>10} {'L1':>14} {'L2':>14} {'order_L1':>9} {'order_L2':>9}"]
    for row in rows:
        o1 = row.get("order_L1")
        o2 = row.get("order_L2")
        lines.append(",".join([str(row["cells"]), _fmt(row["L1"]),
                               _fmt(row["L2"]),
                               "" if o1 is None else _fmt(o1),
                               "" if o2 is None else _fmt(o2)]))
        txt.append(f"{row['cells']:>10} {row['L1']:>14.6e} {row['L2']:>14.6e} "
                   f"{'-' if o1 is None else format(o1, '9.4f')} "
                   f"{'-' if o2 is None else format(o2, '9.4f')}")
    try:
        with open(csv_path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        with open(text_path, "w") as fh:
            fh.write("\n".join(txt) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write report: {exc}") from None
    return "\n".join(txt)


def write_checkpoint(path, run):
    """Lossless dump of a RunState (versioned npz)."""
    mesh = run.case.meshes[0]
    if run.grid.ndim == 1:
        mesh = np.array([run.grid.nx])
    else:
        mesh = np.array([run.grid.nx, run.grid.ny])
    try:
        np.savez(path, version=CHECKPOINT_VERSION, case=run.case.name,
                 mesh=mesh, scheme=run.scheme, cfl=run.cfl, recon=run.recon,
                 residual_tol=run.residual_tol, diag_every=run.diag_every,
                 t=run.t, step=run.step, w=run.w,
                 min_rho=run.min_rho, min_p=run.min_p,
                 history=np.array(run.history, dtype=float))
    except OSError as exc:
        raise IoError(f"cannot write checkpoint {path}: {exc}") from None


def read_checkpoint(path):
    """Rebuild a RunState from a checkpoint file."""
    from .driver import RunState
    from .cases import get_case
    try:
        data = np.load(path, allow_pickle=False)
    except OSError as exc:
        raise IoError(f"cannot read checkpoint {path}: {exc}") from None
    version = int(data["version"])
    if version != CHECKPOINT_VERSION:
        raise IoError(f"checkpoint version {version} not supported")
    case = get_case(str(data["case"]))
    mesh = data["mesh"]
    mesh = int(mesh[0]) if mesh.size == 1 else (int(mesh[0]), int(mesh[1]))
    run = RunState(case=case, grid=case.grid(mesh), w=data["w"],
                   t=float(data["t"]), step=int(data["step"]),
                   scheme=str(data["scheme"]), cfl=float(data["cfl"]),
                   recon=str(data["recon"]),
                   residual_tol=float(data["residual_tol"]),
                   diag_every=int(data["diag_every"]),
                   min_rho=float(data["min_rho"]),
                   min_p=float(data["min_p"]),
                   history=[tuple(rec) for rec in data["history"]])
    return run


def ensure_dir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create directory {path}: {exc}") from None
