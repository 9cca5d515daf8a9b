"""Command-line entry points.

Subcommands:

    run <config>          advance a case to its final time, write fields
    convergence <config>  mesh-refinement study with an order table
    list-cases            show the case registry
    report <dir>          summarize diagnostics of a finished run

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 I/O error.
"""
import argparse
import os
import sys

from . import cases, config, driver, io
from .errors import (ConfigError, DegenerateError, GksError, IoError,
                     NonPhysicalState, NoVortexFound, VacuumFormation)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gks",
        description="finite-volume gas-kinetic solver for 1D/2D "
                    "compressible flow")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("config_path", nargs="?", help="configuration file")
        p.add_argument("--config", dest="config_opt", help="configuration file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--workers", type=int, help="worker hint")
        p.add_argument("--format", choices=("csv", "vtk"), help="field format")

    add_common(sub.add_parser("run", help="run one case"))
    add_common(sub.add_parser("convergence", help="mesh refinement study"))
    sub.add_parser("list-cases", help="list known cases")
    rep = sub.add_parser("report", help="summarize a run directory")
    rep.add_argument("run_dir")
    return parser


def _load_config(args):
    path = args.config_opt or args.config_path
    if not path:
        raise ConfigError("no configuration file given")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read config {path}: {exc}") from None
    cfg = config.parse_config(text)
    if args.out:
        cfg.out_dir = args.out
    if args.format:
        cfg.format = args.format
    if args.workers is not None:
        cfg.workers = args.workers
    elif cfg.workers is None and os.environ.get("GKS_WORKERS"):
        try:
            cfg.workers = int(os.environ["GKS_WORKERS"])
        except ValueError:
            raise ConfigError("GKS_WORKERS must be an integer") from None
    return cfg


def _out_dir(cfg, case):
    out = cfg.out_dir or f"gks_out_{case.name}"
    io.ensure_dir(out)
    return out


def _cmd_run(args):
    cfg = _load_config(args)
    case = config.build_case(cfg)
    run = driver.new_run(case, cfg.mesh, scheme=cfg.scheme,
                         recon=cfg.reconstruction,
                         residual_tol=cfg.residual_tol,
                         diag_every=cfg.diag_every)
    out = _out_dir(cfg, case)
    ext = "csv" if cfg.format == "csv" else "vtk"

    written = []

    def dump(tag):
        path = os.path.join(out, f"field_{tag}.{ext}")
        io.write_field(run.w, run.grid, run.gas, cfg.format, path)
        written.append(path)

    if cfg.cadence > 0:
        def callback(r):
            if r.step % cfg.cadence == 0:
                dump(f"{r.step:06d}")
        driver.advance_to(run, case.t_final, callback=callback)
    else:
        driver.advance_to(run, case.t_final)
    dump("final")
    io.write_history_csv(run, os.path.join(out, "history.csv"))
    io.write_checkpoint(os.path.join(out, "checkpoint.npz"), run)
    print(f"{case.name}: t={run.t:.6g} after {run.step} steps; "
          f"min rho={run.min_rho:.6g}, min p={run.min_p:.6g}")
    print(f"wrote {len(written)} field file(s) to {out}")
    return 0


def _cmd_convergence(args):
    cfg = _load_config(args)
    case = config.build_case(cfg)
    rows = driver.run_convergence_study(case, scheme=cfg.scheme,
                                        recon=cfg.reconstruction)
    out = _out_dir(cfg, case)
    text = io.write_convergence_report(rows,
                                       os.path.join(out, "orders.csv"),
                                       os.path.join(out, "orders.txt"))
    print(text)
    return 0


def _cmd_list_cases(args):
    for name in cases.list_cases():
        case = cases.get_case(name)
        print(f"{name:20s} {case.ndim}D  t_final={case.t_final:<8g} "
              f"{case.description}")
    return 0


def _cmd_report(args):
    path = os.path.join(args.run_dir, "history.csv")
    header, data = io.read_field_csv(path)
    if data.size == 0:
        raise IoError(f"empty history in {path}")
    t = data[:, 1]
    min_rho = data[:, 3].min()
    min_p = data[:, 4].min()
    print(f"steps recorded : {data.shape[0]}")
    print(f"time reached   : {t[-1]:.8g}")
    print(f"min density    : {min_rho:.8g}")
    print(f"min pressure   : {min_p:.8g}")
    for name, col in (("mass", 5), ("x momentum", 6),
                      ("y momentum", 7), ("energy", 8)):
        first, last = data[0, col], data[-1, col]
        scale = max(abs(first), 1e-300)
        print(f"{name:15s}: drift {(last - first) / scale:.3e} relative")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"run": _cmd_run, "convergence": _cmd_convergence,
               "list-cases": _cmd_list_cases, "report": _cmd_report}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonPhysicalState, VacuumFormation, DegenerateError,
            NoVortexFound, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (IoError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GksError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
