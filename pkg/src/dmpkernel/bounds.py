"""Approximating d_MP through the kernel, plus checks of the d_TBR and treewidth bounds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PhyloTree, check_same_taxa, trees_equal
from .errors import ExactCapExceeded, IdenticalTrees, InternalBoundViolation
from .kernel import DEFAULT_PARAMS, kernel_witness
from .oracle import ALPHA, DEFAULT_DTBR_CAP, DEFAULT_TW_CAP, display_graph, exact_dmp, exact_dtbr, exact_treewidth
from .parsimony import Character, character_distance
from .reduction import lift_character, reduce

DEFAULT_EXACT_CAP = 12


@dataclass(frozen=True)
class ApproxResult:
    chi: Character
    achieved: int
    r: int
    guarantee: Fraction  # (1 + 1/r) * alpha
    path: str  # "exact" or "kernel"
    kernel_size: int
    k: int

    def to_dict(self) -> dict:
        return {
            "achieved": self.achieved,
            "r": self.r,
            "guarantee": str(self.guarantee),
            "path": self.path,
            "kernel_size": self.kernel_size,
            "k": self.k,
            "character": dict(sorted(self.chi.items())),
        }


def approximate_dmp(t1: PhyloTree, t2: PhyloTree, r: int = 1, exact_cap: int = DEFAULT_EXACT_CAP) -> ApproxResult:
    """A character whose distance is within (1 + 1/r) * 560 of d_MP."""
    check_same_taxa(t1, t2)
    if r < 1:
        raise ValueError("r must be at least 1")
    if trees_equal(t1, t2):
        raise IdenticalTrees("d_MP is 0 for identical trees; no ratio to approximate")
    r1, r2, trace = reduce(t1, t2)
    k = r1.n // ALPHA
    if k < r:
        if r1.n > exact_cap:
            raise ExactCapExceeded(f"kernel of {r1.n} taxa needs an exact solve beyond the cap of {exact_cap}")
        _, chi_r = exact_dmp(r1, r2, cap=exact_cap)
        path = "exact"
    else:
        chi_r = kernel_witness(r1, r2, k, DEFAULT_PARAMS)
        path = "kernel"
    chi = lift_character(trace, chi_r)
    achieved = character_distance(t1, t2, chi)
    if achieved < max(k, 1):
        raise InternalBoundViolation(f"lifted character reaches only {achieved}")
    return ApproxResult(chi, achieved, r, (1 + Fraction(1, r)) * ALPHA, path, r1.n, k)


def ratio_report(t1: PhyloTree, t2: PhyloTree, cap: int = DEFAULT_DTBR_CAP) -> tuple[int, int, float]:
    """(d_MP, d_TBR, d_TBR / d_MP), asserting 1 <= ratio <= 2 * 560."""
    check_same_taxa(t1, t2)
    if trees_equal(t1, t2):
        raise IdenticalTrees("ratio undefined for identical trees")
    dmp, _ = exact_dmp(t1, t2, cap=cap)
    dtbr, _ = exact_dtbr(t1, t2, cap=cap)
    ratio = dtbr / dmp
    if not 1 <= ratio <= 2 * ALPHA:
        raise InternalBoundViolation(f"d_TBR/d_MP = {dtbr}/{dmp} outside [1, {2 * ALPHA}]")
    return dmp, dtbr, ratio


def treewidth_bound_report(t1: PhyloTree, t2: PhyloTree, cap: int = DEFAULT_TW_CAP) -> tuple[int, int, bool]:
    """(tw of the display graph, d_MP, tw <= 2 * 560 * d_MP + 2).

    ``cap`` bounds the display graph's vertex count.
    """
    tw, _ = exact_treewidth(display_graph(t1, t2), cap=cap)
    dmp, _ = exact_dmp(t1, t2)
    return tw, dmp, tw <= 2 * ALPHA * dmp + 2
