"""Maximum parsimony distance between unrooted binary phylogenetic trees:
reduction rules, a linear kernel with witnessing characters, exact oracles
for small instances, and a verification harness."""
from .bounds import ApproxResult, approximate_dmp, ratio_report, treewidth_bound_report
from .core import (
    PhyloTree,
    Quartet,
    are_spanning_disjoint,
    induced_subtree,
    quartet_topology,
    random_tree,
    set_degree,
    spanning_subtree,
    trees_equal,
)
from .kernel import KernelParams, Partition, alpha_constant, build_partition, kernel_witness
from .newick import parse_character_file, parse_newick, write_newick
from .oracle import decide_dmp, display_graph, exact_dmp, exact_dtbr, exact_treewidth
from .parsimony import Character, character_distance, parsimony_score, ps
from .reduction import lift_character, reduce

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "Character",
    "KernelParams",
    "Partition",
    "PhyloTree",
    "Quartet",
    "alpha_constant",
    "approximate_dmp",
    "are_spanning_disjoint",
    "build_partition",
    "character_distance",
    "decide_dmp",
    "display_graph",
    "exact_dmp",
    "exact_dtbr",
    "exact_treewidth",
    "induced_subtree",
    "kernel_witness",
    "lift_character",
    "parse_character_file",
    "parse_newick",
    "parsimony_score",
    "ps",
    "quartet_topology",
    "random_tree",
    "ratio_report",
    "reduce",
    "set_degree",
    "spanning_subtree",
    "treewidth_bound_report",
    "trees_equal",
    "write_newick",
]
