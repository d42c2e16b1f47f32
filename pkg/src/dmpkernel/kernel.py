"""Constructive kernel: from a large irreducible pair to a witnessing character.

Pipeline: partition X into t blocks that are spanning-disjoint in T1, keep
blocks whose degrees are small in both trees and which survive an optimal T2
extension intact, pull one conflicting quartet out of each, and combine the
quartets into a two-state character that scores at most k on T1 and at
least 2k on T2.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .core import (
    PhyloTree,
    Quartet,
    Taxon,
    _spanning_vertices,
    are_spanning_disjoint,
    check_same_taxa,
    induced_subtree,
    median,
    quartet_topology,
    set_degree,
    trees_equal,
)
from .errors import (
    BadQuartetSize,
    DegenerateDegrees,
    InternalBoundViolation,
    NoConflict,
    NotConflicting,
    NotSpanningDisjoint,
    OverlappingBlocks,
    PhyloError,
    PreconditionViolated,
    TooFewBlocks,
    TooFewTaxa,
)
from .parsimony import Character, character_distance, induced_forest, parsimony_score, ps
from .reduction import is_irreducible


@dataclass(frozen=True)
class KernelParams:
    d1: int
    d2: int
    c: int
    t_factor: int
    alpha: int


def alpha_constant(d1: int = 4, d2: int = 5) -> KernelParams:
    """Block-size floor c, block multiplier t' and kernel constant alpha = 2ct'."""
    den = d1 * d2 - d1 - d2
    if d1 < 2 or d2 < 2 or den <= 0:
        raise DegenerateDegrees(f"need d1, d2 >= 2 and d1*d2 - d1 - d2 > 0, got ({d1}, {d2})")
    c = 9 * (d1 + d2) - 11
    t_factor = -(-(2 * d1 * d2 + d1) // den)
    return KernelParams(d1, d2, c, t_factor, 2 * c * t_factor)


DEFAULT_PARAMS = alpha_constant(4, 5)


def alpha_tables(lo: int = 2, hi: int = 9) -> dict[str, list[list[int | None]]]:
    """c, t' and alpha for d1 (rows) and d2 (columns) in [lo, hi]; None where undefined."""
    out: dict[str, list[list[int | None]]] = {"c": [], "t_factor": [], "alpha": []}
    for d1 in range(lo, hi + 1):
        rows: dict[str, list[int | None]] = {k: [] for k in out}
        for d2 in range(lo, hi + 1):
            try:
                p = alpha_constant(d1, d2)
            except DegenerateDegrees:
                for k in rows:
                    rows[k].append(None)
                continue
            rows["c"].append(p.c)
            rows["t_factor"].append(p.t_factor)
            rows["alpha"].append(p.alpha)
        for k in out:
            out[k].append(rows[k])
    return out


def render_alpha_tables(lo: int = 2, hi: int = 9) -> str:
    """Plain-text grids: one header row of d2 values, one row per d1, '-' where undefined."""
    titles = {"c": "c = 9(d1+d2) - 11", "t_factor": "t' = ceil((2 d1 d2 + d1) / (d1 d2 - d1 - d2))", "alpha": "alpha = 2 c t'"}
    tables = alpha_tables(lo, hi)
    cols = list(range(lo, hi + 1))
    chunks = []
    for key, grid in tables.items():
        lines = [titles[key], "d1\\d2 " + " ".join(f"{d:>5}" for d in cols)]
        for d1, row in zip(cols, grid):
            lines.append(f"{d1:>5} " + " ".join(f"{'-' if v is None else v:>5}" for v in row))
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


# -- partitions -------------------------------------------------------------
@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[Taxon], ...]

    def __post_init__(self) -> None:
        seen: set[Taxon] = set()
        for b in self.blocks:
            if not b:
                raise PhyloError("partition has an empty block")
            if seen & b:
                raise OverlappingBlocks("partition blocks overlap")
            seen |= b

    @classmethod
    def of(cls, blocks: Iterable[Iterable[Taxon]]) -> "Partition":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def taxa(self) -> frozenset[Taxon]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i: int) -> frozenset[Taxon]:
        return self.blocks[i]


def _lowest_heavy_clade(tree: PhyloTree, c: int) -> frozenset[Taxon]:
    """Leaf set below a lowest vertex with >= c leaf descendants, the tree being
    rooted on the pendant edge of its smallest taxon. Ties: smallest taxon."""
    root, order, parent = tree._rooted()
    below: dict[int, list[Taxon]] = {}
    heavy_child: dict[int, bool] = {}
    best: tuple[Taxon, list[Taxon]] | None = None
    for v in reversed(order):
        if v == root:
            continue
        if tree.is_leaf(v):
            leaves = [tree.taxon(v)]
        else:
            leaves = []
            for u in tree.neighbors(v):
                if u != parent[v]:
                    leaves.extend(below.pop(u))
        below[v] = leaves  # type: ignore[assignment]
        if len(leaves) >= c:
            if not heavy_child.get(v, False):
                m = min(leaves)  # type: ignore[type-var]
                if best is None or m < best[0]:
                    best = (m, leaves)  # type: ignore[assignment]
            heavy_child[parent[v]] = True
    assert best is not None
    return frozenset(best[1])


def build_partition(tree: PhyloTree, c: int, t: int) -> Partition:
    """t blocks, spanning-disjoint in ``tree``, each of size >= c.

    Blocks 0..t-2 are peeled clades (each smaller than 2c); the last block
    is whatever remains.
    """
    if t < 1 or c < 1:
        raise TooFewTaxa(f"need c, t >= 1, got c={c}, t={t}")
    if tree.n < 2 * c * t and t > 1:
        raise TooFewTaxa(f"{tree.n} taxa < 2ct = {2 * c * t}")
    if tree.n < c:
        raise TooFewTaxa(f"{tree.n} taxa < c = {c}")
    blocks = []
    cur = tree
    for _ in range(t - 1):
        clade = _lowest_heavy_clade(cur, c)
        blocks.append(clade)
        cur = induced_subtree(tree, cur.taxa - clade)
    blocks.append(cur.taxa)
    return Partition(tuple(blocks))


def character_from_partition(p: Partition | Sequence[Iterable[Taxon]]) -> Character:
    return Character.from_blocks(list(p))


# -- well-behaved blocks ------------------------------------------------------
@dataclass(frozen=True)
class Witness:
    """The partition character already separates the trees by >= k."""

    chi: Character


@dataclass(frozen=True)
class Indices:
    """Blocks that survive intact in an optimal T2 extension and have small
    degree in both trees. ``selected`` is the first k of them."""

    surviving: tuple[int, ...]
    k: int

    @property
    def selected(self) -> tuple[int, ...]:
        return self.surviving[: self.k]


def select_well_behaved(
    t1: PhyloTree, t2: PhyloTree, p: Partition, params: KernelParams, k: int
) -> Union[Witness, Indices]:
    check_same_taxa(t1, t2)
    t = len(p)
    if t < params.t_factor * k:
        raise TooFewBlocks(f"{t} blocks < t' * k = {params.t_factor * k}")
    chi = character_from_partition(p)
    s1 = ps(t1, chi)
    s2, phi2 = parsimony_score(t2, chi)
    if s2 - s1 >= k:
        return Witness(chi)
    p_blocks = set(induced_forest(t2, phi2).taxon_blocks(t2))
    surviving = tuple(
        i
        for i, s in enumerate(p.blocks)
        if s in p_blocks and set_degree(t1, s) <= params.d1 and set_degree(t2, s) <= params.d2
    )
    if len(surviving) < k:
        raise InternalBoundViolation(f"only {len(surviving)} well-behaved blocks, need {k}")
    return Indices(surviving, k)


# -- quartets -----------------------------------------------------------------
def find_conflicting_quartet(t1: PhyloTree, t2: PhyloTree, taxa: Iterable[Taxon]) -> Quartet:
    """A quartet inside ``taxa`` whose topology differs between the trees,
    returned with its T1 topology. One pass of greedy deletion suffices:
    a taxon whose removal would make the trees agree stays necessary after
    further removals."""
    check_same_taxa(t1, t2)
    cur = set(taxa)
    if len(cur) < 4:
        raise BadQuartetSize(f"need at least 4 taxa, got {len(cur)}")
    if trees_equal(induced_subtree(t1, cur), induced_subtree(t2, cur)):
        raise NoConflict("the trees agree on this taxon set")
    for x in sorted(cur):
        if len(cur) == 4:
            break
        rest = cur - {x}
        if not trees_equal(induced_subtree(t1, rest), induced_subtree(t2, rest)):
            cur = rest
    assert len(cur) == 4
    return quartet_topology(t1, cur)


def irreducible_bound_check(t1: PhyloTree, t2: PhyloTree, taxa: Iterable[Taxon], d1: int, d2: int) -> bool:
    """Whether "T1|S = T2|S implies |S| <= 9(d1+d2) - 12" holds for this S."""
    s = frozenset(taxa)
    if len(s) <= 9 * (d1 + d2) - 12:
        return True
    return not trees_equal(induced_subtree(t1, s), induced_subtree(t2, s))


def _orient(t1: PhyloTree, t2: PhyloTree, q: Iterable[Taxon]) -> tuple[Taxon, Taxon, Taxon, Taxon]:
    """(a, b, c, d) with ab|cd in T1 and ac|bd in T2."""
    q1 = quartet_topology(t1, q)
    q2 = quartet_topology(t2, q)
    if q1 == q2:
        raise NotConflicting(f"quartet {q1} has the same topology in both trees")
    (a, b), (c, d) = q1.split
    if q2 == Quartet.from_pairs((a, d), (b, c)):
        c, d = d, c
    return a, b, c, d


def build_quartet_character(
    t1: PhyloTree, t2: PhyloTree, quartets: Sequence[Quartet | Iterable[Taxon]]
) -> Character:
    """Two-state character with PS(T1) <= k and PS(T2) >= 2k for k quartets.

    Each quartet contributes one colour change in T1, on the first edge of
    the path joining its two cherries; colours spread outward from the
    smallest taxon by breadth-first search.
    """
    check_same_taxa(t1, t2)
    sets = [q.taxa if isinstance(q, Quartet) else frozenset(q) for q in quartets]
    oriented = [_orient(t1, t2, q) for q in sets]
    for tree, name in ((t1, "T1"), (t2, "T2")):
        verts = [_spanning_vertices(tree, q)[0] for q in sets]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if verts[i] & verts[j]:
                    raise NotSpanningDisjoint(
                        f"quartets {sorted(sets[i])} and {sorted(sets[j])} overlap in {name}"
                    )
    flips: set[frozenset[int]] = set()
    for a, b, c, d in oriented:
        la, lb, lc, ld = (t1.leaf(x) for x in (a, b, c, d))
        path = t1.path(median(t1, la, lb, lc), median(t1, lc, ld, la))
        flips.add(frozenset(path[:2]))
    seed = t1.leaf(min(t1.taxa))
    colour = {seed: 0}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for u in t1.neighbors(v):
            if u not in colour:
                colour[u] = colour[v] ^ (frozenset((u, v)) in flips)
                queue.append(u)
    return Character({x: colour[t1.leaf(x)] for x in sorted(t1.taxa)})


# -- end to end ----------------------------------------------------------------
def kernel_witness(t1: PhyloTree, t2: PhyloTree, k: int, params: KernelParams = DEFAULT_PARAMS) -> Character:
    """A character whose Fitch-verified distance is at least k."""
    check_same_taxa(t1, t2)
    if k < 0:
        raise PreconditionViolated("k must be non-negative")
    if t1.n < params.alpha * k:
        raise PreconditionViolated(f"{t1.n} taxa < alpha * k = {params.alpha * k}")
    if not is_irreducible(t1, t2):
        raise PreconditionViolated("a common cherry or chain remains; reduce first")
    if k == 0:
        return Character.constant(sorted(t1.taxa))
    p = build_partition(t1, params.c, params.t_factor * k)
    picked = select_well_behaved(t1, t2, p, params, k)
    if isinstance(picked, Witness):
        chi = picked.chi
    else:
        quartets = []
        for i in picked.selected:
            try:
                quartets.append(find_conflicting_quartet(t1, t2, p[i]))
            except NoConflict as exc:
                raise InternalBoundViolation(f"block {i} of size {len(p[i])} has no conflict") from exc
        chi = build_quartet_character(t1, t2, quartets)
    got = character_distance(t1, t2, chi)
    if got < k:
        raise InternalBoundViolation(f"witness distance {got} < k = {k}")
    return chi


def degree_excess_count(tree: PhyloTree, p: Partition | Sequence[Iterable[Taxon]], d: int) -> int:
    """How many blocks have set degree above d; checked against the t/d bound
    through the tree obtained by contracting each block."""
    blocks = [frozenset(b) for b in p]
    if not are_spanning_disjoint(tree, blocks):
        raise NotSpanningDisjoint("partition is not spanning-disjoint")
    if frozenset().union(*blocks) != tree.taxa:
        raise PhyloError("partition does not cover the taxa")
    t = len(blocks)
    if t == 1:
        return 0
    group: dict[int, int] = {}
    for i, b in enumerate(blocks):
        for v in _spanning_vertices(tree, b)[0]:
            group[v] = i
    queue = deque(sorted(group))
    while queue:
        v = queue.popleft()
        for u in tree.neighbors(v):
            if u not in group:
                group[u] = group[v]
                queue.append(u)
    contracted = {frozenset((group[u], group[v])) for u, v in tree.edges if group[u] != group[v]}
    assert len(contracted) == t - 1, "contracting the blocks did not give a tree"
    deg = [0] * t
    for e in contracted:
        for i in e:
            deg[i] += 1
    set_deg = [set_degree(tree, b) for b in blocks]
    assert all(a >= b for a, b in zip(deg, set_deg))
    assert sum(1 for x in deg if x > d) <= t / d
    count = sum(1 for x in set_deg if x > d)
    if count > t // d:
        raise InternalBoundViolation(f"{count} blocks of degree > {d} among {t}")
    return count
