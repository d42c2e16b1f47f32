"""Exhaustive ground truth at desk scale.

* exact d_MP: sweep every set partition of the taxa (restricted growth
  strings), scoring all of them at once with a vectorised Fitch pass;
* brute-force parsimony over every internal state assignment;
* exact d_TBR as a minimum agreement forest, by partition enumeration;
* display graphs and exact treewidth by a subset DP over elimination orders.

Every entry point takes a size cap and raises ``TooLarge`` beyond it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .core import (
    PhyloTree,
    Taxon,
    _spanning_vertices,
    are_spanning_disjoint,
    check_same_taxa,
    induced_subtree,
    trees_equal,
)
from .errors import BadSpec, TooLarge, TooSmall
from .parsimony import Character
from .reduction import reduce

DEFAULT_DMP_CAP = 10
DEFAULT_DTBR_CAP = 8
DEFAULT_TW_CAP = 16
ALPHA = 560


# -- set partitions ---------------------------------------------------------
@lru_cache(maxsize=16)
def restricted_growth_strings(n: int) -> np.ndarray:
    """All set partitions of {0..n-1} as rows a with a[0] = 0 and
    a[i] <= max(a[:i]) + 1, in lexicographic order. Shape (Bell(n), n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rows = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int8)  # max value per row
    for _ in range(1, n):
        reps = (top + 2).astype(np.int64)
        idx = np.repeat(np.arange(len(rows)), reps)
        starts = np.cumsum(reps) - reps
        last = (np.arange(reps.sum()) - np.repeat(starts, reps)).astype(np.int8)
        rows = np.concatenate([rows[idx], last[:, None]], axis=1)
        top = np.maximum(top[idx], last)
    rows.setflags(write=False)
    return rows


def bell(n: int) -> int:
    return len(restricted_growth_strings(n))


def _fitch_batch(tree: PhyloTree, cols: Mapping[Taxon, int], rgs: np.ndarray) -> np.ndarray:
    """Fitch scores of every row of ``rgs`` (taxon x has state rgs[:, cols[x]])."""
    root, order, parent = tree._rooted()
    m = len(rgs)
    score = np.zeros(m, dtype=np.int32)
    if tree.n == 1:
        return score
    one = np.int64(1)
    sets: dict[int, np.ndarray] = {}
    for v in reversed(order):
        if tree.is_leaf(v):
            if v != root:
                sets[v] = np.left_shift(one, rgs[:, cols[tree.taxon(v)]].astype(np.int64))  # type: ignore[index]
            continue
        a, b = (u for u in tree.neighbors(v) if u != parent[v])
        sa, sb = sets.pop(a), sets.pop(b)
        inter = sa & sb
        empty = inter == 0
        score += empty
        sets[v] = np.where(empty, sa | sb, inter)
    top = sets[order[1]]
    root_set = np.left_shift(one, rgs[:, cols[tree.taxon(root)]].astype(np.int64))  # type: ignore[index]
    score += (top & root_set) == 0
    return score


def exact_dmp(t1: PhyloTree, t2: PhyloTree, cap: int = DEFAULT_DMP_CAP) -> tuple[int, Character]:
    """max over all characters of |PS(chi, T1) - PS(chi, T2)|, with an argmax.

    Characters are enumerated as set partitions; ties keep the first
    partition in restricted-growth lexicographic order.
    """
    check_same_taxa(t1, t2)
    n = t1.n
    if n > cap:
        raise TooLarge(f"{n} taxa exceeds the exact d_MP cap of {cap}")
    taxa = sorted(t1.taxa)
    cols = {x: i for i, x in enumerate(taxa)}
    rgs = restricted_growth_strings(n)
    diff = np.abs(_fitch_batch(t1, cols, rgs) - _fitch_batch(t2, cols, rgs))
    best = int(np.argmax(diff))
    chi = Character({x: int(rgs[best, i]) for i, x in enumerate(taxa)})
    return int(diff[best]), chi


def brute_parsimony(
    tree: PhyloTree, chi: Mapping[Taxon, int], cap_states: int = 4, cap_n: int = 8
) -> int:
    """min over all t^(n-2) internal assignments of the number of bichromatic edges."""
    chi = chi if isinstance(chi, Character) else Character(chi)
    t = chi.num_states
    if tree.n > cap_n or t > cap_states:
        raise TooLarge(f"n={tree.n}, t={t} exceeds caps ({cap_n}, {cap_states})")
    internal = sorted(tree.internal_vertices)
    col = {v: i for i, v in enumerate(internal)}
    m = len(internal)
    if m == 0:
        return sum(1 for u, v in tree.edges if chi[tree.taxon(u)] != chi[tree.taxon(v)])  # type: ignore[index]
    grid = np.array(list(itertools.product(range(t), repeat=m)), dtype=np.int8).reshape(-1, m)
    total = np.zeros(len(grid), dtype=np.int32)

    def column(v: int):
        if tree.is_leaf(v):
            return chi[tree.taxon(v)]  # type: ignore[index]
        return grid[:, col[v]]

    for u, v in tree.edges:
        total += column(u) != column(v)
    return int(total.min())


# -- agreement forests ------------------------------------------------------
@dataclass(frozen=True)
class AgreementForest:
    blocks: tuple[frozenset[Taxon], ...]

    def __len__(self) -> int:
        return len(self.blocks)


def is_agreement_forest(t1: PhyloTree, t2: PhyloTree, blocks: Sequence[Iterable[Taxon]]) -> bool:
    blocks = [frozenset(b) for b in blocks]
    if frozenset().union(*blocks) != t1.taxa or sum(map(len, blocks)) != t1.n:
        return False
    for b in blocks:
        if not trees_equal(induced_subtree(t1, b), induced_subtree(t2, b)):
            return False
    return are_spanning_disjoint(t1, blocks) and are_spanning_disjoint(t2, blocks)


def exact_dtbr(t1: PhyloTree, t2: PhyloTree, cap: int = DEFAULT_DTBR_CAP) -> tuple[int, AgreementForest]:
    """Minimum agreement forest by enumeration; d_TBR = blocks - 1."""
    check_same_taxa(t1, t2)
    n = t1.n
    if n > cap:
        raise TooLarge(f"{n} taxa exceeds the exact d_TBR cap of {cap}")
    taxa = sorted(t1.taxa)
    if trees_equal(t1, t2):
        return 0, AgreementForest((frozenset(taxa),))
    rgs = restricted_growth_strings(n)
    nblocks = rgs.max(axis=1) + 1
    info: dict[int, tuple[bool, int, int]] = {}
    vid1 = {v: 1 << i for i, v in enumerate(t1.vertices)}
    vid2 = {v: 1 << i for i, v in enumerate(t2.vertices)}

    def block_info(mask: int) -> tuple[bool, int, int]:
        got = info.get(mask)
        if got is None:
            s = frozenset(taxa[i] for i in range(n) if mask >> i & 1)
            agree = len(s) <= 3 or trees_equal(induced_subtree(t1, s), induced_subtree(t2, s))
            m1 = m2 = 0
            if agree:
                for v in _spanning_vertices(t1, s)[0]:
                    m1 |= vid1[v]
                for v in _spanning_vertices(t2, s)[0]:
                    m2 |= vid2[v]
            got = info[mask] = (agree, m1, m2)
        return got

    for k in range(2, n + 1):
        for row in rgs[nblocks == k]:
            masks = [0] * k
            for i, b in enumerate(row):
                masks[b] |= 1 << i
            used1 = used2 = 0
            ok = True
            for mask in masks:
                agree, m1, m2 = block_info(mask)
                if not agree or used1 & m1 or used2 & m2:
                    ok = False
                    break
                used1 |= m1
                used2 |= m2
            if ok:
                blocks = tuple(frozenset(taxa[i] for i in range(n) if mask >> i & 1) for mask in masks)
                return k - 1, AgreementForest(blocks)
    raise AssertionError("the all-singletons partition is always an agreement forest")


# -- display graph and treewidth --------------------------------------------
@dataclass(frozen=True)
class DisplayGraph:
    """Both trees glued along same-label leaves.

    Internal vertices are ("T1", id) / ("T2", id); leaves are taxon strings.
    """

    adj: Mapping[Hashable, frozenset]

    @property
    def vertices(self) -> list:
        return list(self.adj)

    @property
    def edges(self) -> set[frozenset]:
        return {frozenset((u, v)) for u in self.adj for v in self.adj[u]}


def display_graph(t1: PhyloTree, t2: PhyloTree) -> DisplayGraph:
    check_same_taxa(t1, t2)
    if t1.n < 3:
        raise TooSmall("display graphs need at least 3 taxa")
    adj: dict[Hashable, set] = {}
    for tag, tree in (("T1", t1), ("T2", t2)):
        def name(v: int, tag=tag, tree=tree) -> Hashable:
            return tree.taxon(v) if tree.is_leaf(v) else (tag, v)

        for u, v in tree.edges:
            a, b = name(u), name(v)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return DisplayGraph({v: frozenset(nb) for v, nb in adj.items()})


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def check_tree_decomposition(adj: Mapping[Hashable, Iterable], td: TreeDecomposition) -> None:
    """Assert the three tree-decomposition axioms (and that bags form a tree)."""
    nb = len(td.bags)
    assert len(td.tree_edges) == max(nb - 1, 0), "decomposition tree has wrong edge count"
    links: dict[int, set[int]] = {i: set() for i in range(nb)}
    for a, b in td.tree_edges:
        links[a].add(b)
        links[b].add(a)
    if nb:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in links[x] - seen:
                seen.add(y)
                stack.append(y)
        assert len(seen) == nb, "decomposition tree is disconnected"
    for v in adj:
        holders = {i for i, bag in enumerate(td.bags) if v in bag}
        assert holders, f"vertex {v!r} is in no bag"
        start = next(iter(holders))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in links[x] & holders - seen:
                seen.add(y)
                stack.append(y)
        assert seen == holders, f"bags holding {v!r} are not connected"
        for u in adj[v]:
            assert any(u in bag and v in bag for bag in td.bags), f"edge {v!r}-{u!r} uncovered"


def _decomposition_from_order(nbr: list[int], order: Sequence[int], names: list) -> TreeDecomposition:
    """Bags {v} + later neighbours in the fill-in graph, each hung on its
    earliest-eliminated later neighbour."""
    nv = len(nbr)
    if nv == 0:
        return TreeDecomposition((), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = list(nbr)
    bags = []
    parent: list[int | None] = []
    for v in order:
        later = [u for u in range(nv) if adj[v] >> u & 1 and pos[u] > pos[v]]
        for a in later:
            for b in later:
                if a != b:
                    adj[a] |= 1 << b
        bags.append(frozenset([v, *later]))
        parent.append(min(later, key=pos.__getitem__) if later else None)
    tree_edges = []
    roots = []
    for i, v in enumerate(order):
        p = parent[i]
        if p is None:
            roots.append(i)
        else:
            tree_edges.append((i, pos[p]))
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    named = tuple(frozenset(names[v] for v in bag) for bag in bags)
    return TreeDecomposition(named, tuple(tree_edges))


def _reach(nbr: list[int], inside: int, v: int) -> int:
    """Vertices outside ``inside`` | {v} reachable from v through ``inside``."""
    seen = 1 << v
    frontier = 1 << v
    out = 0
    while frontier:
        x = (frontier & -frontier).bit_length() - 1
        frontier &= frontier - 1
        new = nbr[x] & ~seen
        seen |= new
        out |= new & ~inside
        frontier |= new & inside
    return out & ~(1 << v)


def _min_fill_order(nbr: list[int]) -> tuple[int, list[int]]:
    adj = list(nbr)
    alive = (1 << len(nbr)) - 1
    order = []
    width = 0
    while alive:
        best = None
        for v in range(len(nbr)):
            if not alive >> v & 1:
                continue
            ns = [u for u in range(len(nbr)) if adj[v] >> u & 1]
            fill = sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if not adj[a] >> b & 1)
            key = (fill, len(ns), v)
            if best is None or key < best[0]:
                best = (key, v, ns)
        _, v, ns = best  # type: ignore[misc]
        width = max(width, len(ns))
        for a in ns:
            adj[a] |= sum(1 << b for b in ns if b != a)
            adj[a] &= ~(1 << v)
        alive &= ~(1 << v)
        order.append(v)
    return width, order


def _order_within(nbr: list[int], k: int) -> list[int] | None:
    """An elimination order of width <= k, or None (DP over eliminated sets)."""
    nv = len(nbr)
    full = (1 << nv) - 1
    pred: dict[int, tuple[int, int]] = {0: (-1, -1)}
    layer = [0]
    for _ in range(nv):
        nxt = []
        for s in layer:
            rest = full & ~s
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                t = s | 1 << v
                if t in pred:
                    continue
                if bin(_reach(nbr, s, v)).count("1") <= k:
                    pred[t] = (s, v)
                    nxt.append(t)
        layer = nxt
        if not layer:
            return None
    order = []
    s = full
    while s:
        prev, v = pred[s]
        order.append(v)
        s = prev
    return order[::-1]


def exact_treewidth(graph, cap: int = DEFAULT_TW_CAP) -> tuple[int, TreeDecomposition]:
    """Exact treewidth and a witnessing tree decomposition.

    ``graph`` is a DisplayGraph or a mapping vertex -> neighbours. A min-fill
    order gives an upper bound; the subset DP then checks width - 1, - 2, ...
    until infeasible.
    """
    adj = graph.adj if isinstance(graph, DisplayGraph) else graph
    names = sorted(adj, key=repr)
    nv = len(names)
    if nv > cap:
        raise TooLarge(f"{nv} vertices exceeds the treewidth cap of {cap}")
    index = {v: i for i, v in enumerate(names)}
    nbr = [0] * nv
    for v, nbs in adj.items():
        for u in nbs:
            if u == v:
                continue
            if u not in index:
                raise BadSpec(f"neighbour {u!r} is not a vertex")
            nbr[index[v]] |= 1 << index[u]
            nbr[index[u]] |= 1 << index[v]
    if nv == 0:
        return -1, TreeDecomposition((), ())
    width, order = _min_fill_order(nbr)
    k = width - 1
    while k >= 0:
        better = _order_within(nbr, k)
        if better is None:
            break
        width, order = k, better
        k -= 1
    td = _decomposition_from_order(nbr, order, names)
    assert td.width == width, (td.width, width)
    return width, td


# -- decision questions ------------------------------------------------------
_RELATIONS = {"le": "le", "<=": "le", "≤": "le", "ge": "ge", ">=": "ge", "≥": "ge", "eq": "eq", "=": "eq", "==": "eq"}


def decide_dmp(
    t1: PhyloTree, t2: PhyloTree, k: int, relation: str = "le", cap: int = DEFAULT_DMP_CAP, alpha: int = ALPHA
) -> bool:
    """Answer d_MP <= k, >= k or = k by kernelising, then solving exactly."""
    rel = _RELATIONS.get(relation)
    if rel is None:
        raise BadSpec(f"unknown relation {relation!r}")
    r1, r2, _ = reduce(t1, t2)

    def at_most(j: int) -> bool:
        if j < 0:
            return False
        if r1.n >= alpha * (j + 1):
            return False
        if r1.n > cap:
            raise TooLarge(f"kernel of {r1.n} taxa exceeds the exact cap of {cap}")
        return exact_dmp(r1, r2, cap)[0] <= j

    if rel == "le":
        return at_most(k)
    if rel == "ge":
        return not at_most(k - 1)
    return at_most(k) and not at_most(k - 1)
