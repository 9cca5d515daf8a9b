"""Run configuration: key=value files with bracketed sections.

Format: one `key = value` pair per line, `#` starts a comment, section
headers in brackets group keys. Keys outside any section belong to the
case section. Unknown keys or malformed values are rejected with their
line number.

Sections and keys:

    [case]    name (or bare `case`), mesh (N or NXxNY), t_final, cfl
    [gas]     gamma, mu (number or `none`), prandtl, tau_eps, tau_c
    [run]     scheme (s2o4|gks2), reconstruction (characteristic|conservative),
              workers, residual_tol, diag_every
    [output]  dir, format (csv|vtk), cadence
"""
import dataclasses
from dataclasses import dataclass
from typing import Optional

from .cases import get_case
from .errors import ConfigError

_SECTIONS = ("case", "gas", "run", "output")


@dataclass
class RunConfig:
    case: Optional[str] = None
    mesh: Optional[object] = None
    t_final: Optional[float] = None
    cfl: Optional[float] = None
    gamma: Optional[float] = None
    mu: object = "unset"            # None is meaningful (inviscid)
    prandtl: Optional[float] = None
    tau_eps: Optional[float] = None
    tau_c: Optional[float] = None
    scheme: str = "s2o4"
    reconstruction: Optional[str] = None
    workers: Optional[int] = None
    residual_tol: float = 1e-10
    diag_every: int = 1
    out_dir: Optional[str] = None
    format: str = "csv"
    cadence: int = 0


def _parse_mesh(value, line):
    parts = value.lower().split("x")
    try:
        if len(parts) == 1:
            return int(parts[0])
        if len(parts) == 2:
            return (int(parts[0]), int(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"bad mesh {value!r} (want N or NXxNY)", line=line)


def _number(value, line, kind=float):
    try:
        return kind(value)
    except ValueError:
        raise ConfigError(f"bad numeric value {value!r}", line=line) from None


def _choice(value, options, line):
    if value not in options:
        raise ConfigError(f"value {value!r} not one of {options}", line=line)
    return value


def parse_config(text) -> RunConfig:
    """Parse a configuration file body into a validated RunConfig."""
    cfg = RunConfig()
    section = "case"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("unterminated section header", line=lineno)
            section = line[1:-1].strip().lower()
            if section not in _SECTIONS:
                raise ConfigError(f"unknown section [{section}]", line=lineno)
            continue
        if "=" not in line:
            raise ConfigError("expected key = value", line=lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        key = key.lower()
        if not value:
            raise ConfigError(f"empty value for {key!r}", line=lineno)
        _apply(cfg, section, key, value, lineno)
    return cfg


def _apply(cfg, section, key, value, line):
    if section == "case":
        if key in ("case", "name"):
            cfg.case = value
        elif key == "mesh":
            cfg.mesh = _parse_mesh(value, line)
        elif key == "t_final":
            cfg.t_final = _number(value, line)
        elif key == "cfl":
            cfg.cfl = _number(value, line)
        else:
            raise ConfigError(f"unknown key {key!r} in [case]", line=line)
    elif section == "gas":
        if key == "gamma":
            cfg.gamma = _number(value, line)
        elif key == "mu":
            cfg.mu = None if value.lower() in ("none", "0", "0.0") else _number(value, line)
        elif key == "prandtl":
            cfg.prandtl = _number(value, line)
        elif key == "tau_eps":
            cfg.tau_eps = _number(value, line)
        elif key == "tau_c":
            cfg.tau_c = _number(value, line)
        else:
            raise ConfigError(f"unknown key {key!r} in [gas]", line=line)
    elif section == "run":
        if key == "scheme":
            cfg.scheme = _choice(value, ("s2o4", "gks2"), line)
        elif key == "reconstruction":
            cfg.reconstruction = _choice(value, ("characteristic", "conservative"), line)
        elif key == "workers":
            cfg.workers = _number(value, line, int)
        elif key == "residual_tol":
            cfg.residual_tol = _number(value, line)
        elif key == "diag_every":
            cfg.diag_every = _number(value, line, int)
        else:
            raise ConfigError(f"unknown key {key!r} in [run]", line=line)
    elif section == "output":
        if key == "dir":
            cfg.out_dir = value
        elif key == "format":
            cfg.format = _choice(value, ("csv", "vtk"), line)
        elif key == "cadence":
            cfg.cadence = _number(value, line, int)
        else:
            raise ConfigError(f"unknown key {key!r} in [output]", line=line)


def build_case(cfg: RunConfig):
    """Resolve the configured case with gas/time overrides applied."""
    if cfg.case is None:
        raise ConfigError("no case selected (set `case = <name>`)")
    case = get_case(cfg.case)
    gas = case.gas
    fields = {}
    if cfg.gamma is not None:
        fields["gamma"] = cfg.gamma
    if cfg.mu != "unset":
        fields["mu"] = cfg.mu
    if cfg.prandtl is not None:
        fields["prandtl"] = cfg.prandtl
    if cfg.tau_eps is not None:
        fields["tau_eps"] = cfg.tau_eps
    if cfg.tau_c is not None:
        fields["tau_c"] = cfg.tau_c
    if fields:
        try:
            gas = dataclasses.replace(gas, **fields)
        except ValueError as exc:
            raise ConfigError(f"bad gas override: {exc}") from None
    changes = {}
    if gas is not case.gas:
        changes["gas"] = gas
    if cfg.t_final is not None:
        changes["t_final"] = cfg.t_final
    if cfg.cfl is not None:
        changes["cfl"] = cfg.cfl
    return dataclasses.replace(case, **changes) if changes else case
