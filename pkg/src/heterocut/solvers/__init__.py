"""Max-cut and max-K-cut solvers."""

from heterocut.solvers.sdp import SdpSolution, maxcut_gw, round_hyperplanes, solve_relaxation
from heterocut.solvers.local import LocalSearchRun, local_search, local_search_starts, maxkcut_local
from heterocut.solvers.exhaustive import brute_force_maxkcut
from heterocut.solvers.dispatch import partition_graph

__all__ = [
    "SdpSolution",
    "maxcut_gw",
    "round_hyperplanes",
    "solve_relaxation",
    "LocalSearchRun",
    "local_search",
    "local_search_starts",
    "maxkcut_local",
    "brute_force_maxkcut",
    "partition_graph",
]
