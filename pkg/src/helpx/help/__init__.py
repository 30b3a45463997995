"""HeLP engine: linear system, enumeration, filters and the tower solver."""
from .filters import quotient_filter, wagner_filter, wagner_verdict
from .lattice import derive_bounds, enumerate_distributions, enumerate_propagate, enumerate_system
from .solve import Solver, SolverConfig, classify, genbp_report, is_trivial_case, solve_tower
from .system import ConstraintSystem, build_system, known_part, multiplicities, variable_layout
from .types import Classification, PADistribution, SolveReport, TorsionCase
