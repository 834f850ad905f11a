"""Envelope-theory binding energies and critical coupling constants.

Systems of N identical nonrelativistic particles, or of Na identical
particles plus one distinct (possibly static) particle, bound by short-range
central potential wells V = -g v(r).  An independent two-body radial
Schrodinger solver validates the estimates.  Natural units, hbar = 1.
"""

from .critical import (CriticalResult, critical_coupling,
                       critical_coupling_improved, well_factor,
                       zero_energy_radius)
from .errors import (BracketError, ConvergenceError, EtcritError,
                     ExpressionError, NoRootError, SingularJacobianError,
                     UnboundError)
from .identical import (EtSolution, IdenticalSystem,
                        energy_exponential_closed, radial_weight,
                        solve_energy, solve_energy_improved, solve_energy_q)
from .mixed import (INFINITE, MixedCritical, MixedGeometry, MixedSystem,
                    critical_coupling_aa, critical_coupling_ab,
                    exponential_consistency_check, reduced_mass,
                    solve_energy_mixed)
from .numerics import (Bracket, RootConfig, bessel_j0_zero, find_root,
                       lambert_w0, solve_2d)
from .oracle import (GridSpec, RadialProblem, default_grid,
                     exact_swave_critical, radial_critical_coupling,
                     radial_eigenvalue)
from .potentials import (NonPositiveWellWarning, PotentialWell, WellKind,
                         make_builtin, parse_custom)
from .quantum import (QSplit, StateSpec, bosonic_ground,
                      global_quantum_number, parse_state,
                      split_quantum_number)

__version__ = "0.1.0"

__all__ = [
    "Bracket", "BracketError", "ConvergenceError", "CriticalResult",
    "EtSolution", "EtcritError", "ExpressionError", "GridSpec",
    "IdenticalSystem", "INFINITE", "MixedCritical", "MixedGeometry",
    "MixedSystem", "NonPositiveWellWarning", "NoRootError", "PotentialWell",
    "QSplit", "RadialProblem", "RootConfig", "SingularJacobianError",
    "StateSpec", "UnboundError", "WellKind", "bessel_j0_zero",
    "bosonic_ground", "critical_coupling", "critical_coupling_aa",
    "critical_coupling_ab", "critical_coupling_improved", "default_grid",
    "energy_exponential_closed", "exact_swave_critical",
    "exponential_consistency_check", "find_root", "global_quantum_number",
    "lambert_w0", "make_builtin", "parse_custom", "parse_state",
    "radial_critical_coupling", "radial_eigenvalue", "radial_weight",
    "reduced_mass", "solve_2d", "solve_energy", "solve_energy_improved",
    "solve_energy_mixed", "solve_energy_q", "split_quantum_number",
    "well_factor", "zero_energy_radius",
]
