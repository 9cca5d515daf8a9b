"""Gas-kinetic finite-volume solver for 1D/2D compressible flow.

The interface flux is a time-dependent kinetic flux built from a local
BGK solution, integrated exactly over the time window; two window
lengths per step feed a two-stage fourth-order update. Reconstruction
is fifth-order WENO with characteristic projection.
"""
from .cases import CaseSpec, get_case, init_case, list_cases
from .diagnostics import (blasius_profile, convergence_order, error_norms,
                          vortex_height)
from .driver import (RunState, advance_to, new_run, reference_density,
                     run_convergence_study)
from .errors import (ConfigError, DegenerateError, GksError, IoError,
                     NonPhysicalState, NoVortexFound, SingularMomentSystem,
                     VacuumFormation)
from .gas import (GasModel, conserved_from_primitive, euler_flux,
                  primitive_from_conserved, primitive_state, sound_speed)
from .grid import BoundarySpec, StructuredGrid, fill_ghost
from .integrator import (cfl_time_step, linear_flux_coefficients,
                         quadratic_flux_coefficients, s2o4_step,
                         s2o5_ode_step, single_window_step)
from .riemann import exact_riemann, star_state

__version__ = "1.0.0"

__all__ = [
    "BoundarySpec", "CaseSpec", "ConfigError", "DegenerateError", "GasModel",
    "GksError", "IoError", "NonPhysicalState", "NoVortexFound", "RunState",
    "SingularMomentSystem", "StructuredGrid", "VacuumFormation", "advance_to",
    "blasius_profile", "cfl_time_step", "conserved_from_primitive",
    "convergence_order", "error_norms", "euler_flux", "exact_riemann",
    "fill_ghost", "get_case", "init_case", "linear_flux_coefficients",
    "list_cases", "new_run", "primitive_from_conserved", "primitive_state",
    "quadratic_flux_coefficients", "reference_density", "run_convergence_study",
    "s2o4_step", "s2o5_ode_step", "single_window_step", "sound_speed",
    "star_state", "vortex_height",
]
