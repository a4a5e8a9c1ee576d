"""Weight graph construction, cut weights and the joint objective."""

from heterocut.graph.weights import (
    Partition,
    WeightGraph,
    build_weight_graph,
    cut_weight,
    edge_weight,
    objective_F,
    objective_from_graph,
    total_weight,
    within_class_weight,
)
from heterocut.graph.io import load_binary, load_csv, save_binary, save_csv

__all__ = [
    "Partition",
    "WeightGraph",
    "build_weight_graph",
    "cut_weight",
    "edge_weight",
    "objective_F",
    "objective_from_graph",
    "total_weight",
    "within_class_weight",
    "load_binary",
    "load_csv",
    "save_binary",
    "save_csv",
]
