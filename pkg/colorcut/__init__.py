__version__ = "0.1.0"

from colorcut.exact import ExactResult, brute_force_optimum, global_min_cut
from colorcut.graph import (
    ColoredGraph,
    ColorSet,
    Edge,
    Solution,
    count_components,
    disconnecting_edges,
    extract_minimal_cut,
    is_feasible,
    validate,
)
from colorcut.instances import GeneratorParams, generate_instance, parse_instance, write_instance
from colorcut.vns import Mode, RunReport, SolverConfig, solve
