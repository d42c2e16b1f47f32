"""Unrooted binary phylogenetic trees and their topological primitives.

Vertices are plain integers. Leaves carry taxon labels (strings); internal
vertices are unlabelled. Trees are treated as immutable once built, and every
derived tree (induced subtrees in particular) keeps the vertex ids of its
host so that vertex-level data can be carried between the two.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    BadQuartetSize,
    EmptySet,
    LeafSetMismatch,
    NonBinary,
    OverlappingBlocks,
    PhyloError,
    TooSmall,
    UnknownTaxon,
)

Taxon = str
Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class PhyloTree:
    """An unrooted binary tree whose leaves are bijectively labelled by taxa.

    ``adjacency`` maps each vertex id to its neighbours, ``labels`` maps leaf
    vertex ids to taxa. For n >= 3 every internal vertex must have degree 3;
    n = 1 is a lone labelled vertex and n = 2 a single edge.
    """

    __slots__ = ("_adj", "_taxon_of", "_leaf_of", "_root", "_order", "_parent", "_canon")

    def __init__(self, adjacency: Mapping[int, Iterable[int]], labels: Mapping[int, Taxon]):
        adj = {int(v): tuple(sorted(int(u) for u in nbrs)) for v, nbrs in adjacency.items()}
        for v, nbrs in adj.items():
            for u in nbrs:
                if u not in adj or v not in adj[u]:
                    raise PhyloError(f"adjacency is not symmetric at {v}-{u}")
                if u == v:
                    raise PhyloError(f"self loop at {v}")
        taxon_of = {int(v): str(t) for v, t in labels.items()}
        leaf_of: dict[Taxon, int] = {}
        for v, t in taxon_of.items():
            if not t:
                raise PhyloError("empty taxon label")
            if t in leaf_of:
                raise PhyloError(f"taxon {t!r} labels two vertices")
            if v not in adj:
                raise PhyloError(f"label on unknown vertex {v}")
            leaf_of[t] = v
        self._adj = adj
        self._taxon_of = taxon_of
        self._leaf_of = leaf_of
        self._root: int | None = None
        self._order: list[int] | None = None
        self._parent: dict[int, int] | None = None
        self._canon: str | None = None
        self._validate()

    def _validate(self) -> None:
        n = len(self._leaf_of)
        if n == 0:
            raise PhyloError("tree has no taxa")
        nv = len(self._adj)
        ne = sum(len(x) for x in self._adj.values()) // 2
        if ne != nv - 1:
            raise PhyloError("graph is not a tree")
        # connectivity
        start = next(iter(self._adj))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self._adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != nv:
            raise PhyloError("graph is disconnected")
        for v, nbrs in self._adj.items():
            d = len(nbrs)
            if v in self._taxon_of:
                if n >= 2 and d != 1:
                    raise NonBinary(f"leaf {self._taxon_of[v]!r} has degree {d}")
            elif n >= 3 and d != 3:
                raise NonBinary(f"internal vertex {v} has degree {d}")
            elif n < 3:
                raise NonBinary(f"unlabelled vertex {v} in a tree with {n} taxa")

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._leaf_of)

    @property
    def taxa(self) -> frozenset[Taxon]:
        return frozenset(self._leaf_of)

    @property
    def vertices(self) -> list[int]:
        return list(self._adj)

    @property
    def edges(self) -> list[Edge]:
        return [(v, u) for v, nbrs in self._adj.items() for u in nbrs if v < u]

    @property
    def internal_vertices(self) -> list[int]:
        return [v for v in self._adj if v not in self._taxon_of]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def leaf(self, taxon: Taxon) -> int:
        try:
            return self._leaf_of[taxon]
        except KeyError:
            raise UnknownTaxon(taxon) from None

    def taxon(self, v: int) -> Taxon | None:
        return self._taxon_of.get(v)

    def is_leaf(self, v: int) -> bool:
        return v in self._taxon_of

    @property
    def labels(self) -> dict[int, Taxon]:
        return dict(self._taxon_of)

    def adjacency(self) -> dict[int, list[int]]:
        """A fresh mutable copy of the adjacency lists."""
        return {v: list(nbrs) for v, nbrs in self._adj.items()}

    def parent_of_leaf(self, taxon: Taxon) -> int:
        """The unique neighbour of a leaf (n >= 2)."""
        return self._adj[self.leaf(taxon)][0]

    # -- rooted traversal cache ------------------------------------------
    def _rooted(self) -> tuple[int, list[int], dict[int, int]]:
        """Preorder from the leaf of the smallest taxon, with parent pointers."""
        if self._order is None:
            root = self._leaf_of[min(self._leaf_of)]
            order = [root]
            parent = {root: -1}
            i = 0
            while i < len(order):
                v = order[i]
                i += 1
                for u in self._adj[v]:
                    if u != parent[v]:
                        parent[u] = v
                        order.append(u)
            self._root, self._order, self._parent = root, order, parent
        return self._root, self._order, self._parent  # type: ignore[return-value]

    def path(self, u: int, v: int) -> list[int]:
        """Vertices on the unique u-v path, u first."""
        parent = {u: u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y in self._adj[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return out[::-1]

    def canonical_newick(self) -> str:
        if self._canon is None:
            self._canon = _canonical_newick(self)
        return self._canon

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhyloTree):
            return NotImplemented
        return self.taxa == other.taxa and self.canonical_newick() == other.canonical_newick()

    def __hash__(self) -> int:
        return hash(self.canonical_newick())

    def __repr__(self) -> str:
        return f"PhyloTree({self.canonical_newick()!r})"


def _canonical_newick(tree: PhyloTree) -> str:
    """Deterministic Newick string; see ``newick.write_newick``."""
    n = tree.n
    if n == 1:
        return f"{next(iter(tree.taxa))};"
    first = min(tree.taxa)
    a = tree.leaf(first)
    if n == 2:
        other = tree.taxon(tree.neighbors(a)[0])
        return f"({first},{other});"
    u = tree.neighbors(a)[0]
    # Root on the edge between ``u`` and whichever remaining neighbour holds
    # the larger smallest-taxon; this keeps the output binary at the top.
    p, q = [w for w in tree.neighbors(u) if w != a]
    strings: dict[int, str] = {}
    mins: dict[int, str] = {}

    def build(top: int, up: int) -> None:
        stack = [(top, up, False)]
        while stack:
            v, par, done = stack.pop()
            if tree.is_leaf(v):
                t = tree.taxon(v)
                strings[v] = t  # type: ignore[assignment]
                mins[v] = t  # type: ignore[assignment]
                continue
            kids = [w for w in tree.neighbors(v) if w != par]
            if not done:
                stack.append((v, par, True))
                for w in kids:
                    stack.append((w, v, False))
            else:
                kids.sort(key=mins.__getitem__)
                strings[v] = "(" + ",".join(strings[w] for w in kids) + ")"
                mins[v] = mins[kids[0]]

    build(p, u)
    build(q, u)
    if mins[p] > mins[q]:
        p, q = q, p
    left = f"({first},{strings[p]})"
    return f"({left},{strings[q]});"


@dataclass(frozen=True)
class Subgraph:
    """A connected piece of a host tree, e.g. a spanning subtree T[S]."""

    host: PhyloTree
    vertices: frozenset[int]
    edges: frozenset[Edge]


@dataclass(frozen=True)
class Quartet:
    """Four taxa with one of their three resolved splits, ``ab|cd``."""

    split: tuple[tuple[Taxon, Taxon], tuple[Taxon, Taxon]]

    @classmethod
    def from_pairs(cls, ab: Sequence[Taxon], cd: Sequence[Taxon]) -> "Quartet":
        p = tuple(sorted(ab))
        q = tuple(sorted(cd))
        if len(set(p) | set(q)) != 4:
            raise BadQuartetSize("a quartet needs four distinct taxa")
        return cls(tuple(sorted((p, q))))  # type: ignore[arg-type]

    @property
    def taxa(self) -> frozenset[Taxon]:
        return frozenset(self.split[0] + self.split[1])

    def __str__(self) -> str:
        (a, b), (c, d) = self.split
        return f"{a}{b}|{c}{d}" if all(len(x) == 1 for x in (a, b, c, d)) else f"{a},{b}|{c},{d}"


# -- validation helpers ----------------------------------------------------
def _check_subset(tree: PhyloTree, taxa: Iterable[Taxon]) -> frozenset[Taxon]:
    s = frozenset(taxa)
    if not s:
        raise EmptySet("taxon set is empty")
    missing = s - tree.taxa
    if missing:
        raise UnknownTaxon(", ".join(sorted(missing)))
    return s


def check_same_taxa(t1: PhyloTree, t2: PhyloTree) -> None:
    if t1.taxa != t2.taxa:
        raise LeafSetMismatch("trees are on different taxon sets")


# -- spanning / induced subtrees -----------------------------------------
def _spanning_vertices(tree: PhyloTree, s: frozenset[Taxon]) -> tuple[set[int], list[Edge]]:
    if len(s) == 1:
        return {tree.leaf(next(iter(s)))}, []
    _, order, parent = tree._rooted()
    members = {tree.leaf(x) for x in s}
    total = len(members)
    count: dict[int, int] = {}
    verts: set[int] = set()
    edges: list[Edge] = []
    for v in reversed(order):
        c = count.get(v, 0) + (1 if v in members else 0)
        p = parent[v]
        if p != -1:
            count[p] = count.get(p, 0) + c
            if 0 < c < total:
                verts.add(v)
                verts.add(p)
                edges.append(_edge(p, v))
    return verts, edges


def spanning_subtree(tree: PhyloTree, taxa: Iterable[Taxon]) -> Subgraph:
    """The minimal connected subgraph T[S] containing every taxon of S."""
    s = _check_subset(tree, taxa)
    verts, edges = _spanning_vertices(tree, s)
    return Subgraph(tree, frozenset(verts), frozenset(edges))


def induced_subtree(tree: PhyloTree, taxa: Iterable[Taxon]) -> PhyloTree:
    """T|_S: the spanning subtree with degree-2 vertices suppressed.

    Surviving vertices keep their ids from ``tree``.
    """
    s = _check_subset(tree, taxa)
    if s == tree.taxa:
        return tree
    verts, edges = _spanning_vertices(tree, s)
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in list(adj):
        if len(adj[v]) == 2 and not tree.is_leaf(v):
            a, b = adj.pop(v)
            adj[a][adj[a].index(v)] = b
            adj[b][adj[b].index(v)] = a
    labels = {tree.leaf(x): x for x in s}
    return PhyloTree(adj, labels)


def restrict(tree: PhyloTree, drop: Iterable[Taxon]) -> PhyloTree:
    """T|_(X minus drop)."""
    return induced_subtree(tree, tree.taxa - frozenset(drop))


def set_degree(tree: PhyloTree, taxa: Iterable[Taxon]) -> int:
    """Number of pending edges leaving T[S]."""
    s = _check_subset(tree, taxa)
    verts, _ = _spanning_vertices(tree, s)
    if len(s) == 1:
        return tree.degree(next(iter(verts)))
    return sum(1 for v in verts for u in tree.neighbors(v) if u not in verts)


def are_spanning_disjoint(tree: PhyloTree, blocks: Sequence[Iterable[Taxon]]) -> bool:
    """True iff the spanning subtrees of the blocks pairwise share no vertex.

    On a binary tree vertex-disjointness is equivalent to edge-disjointness
    for blocks of size >= 2, and it is the right notion for singletons.
    """
    sets = [_check_subset(tree, b) for b in blocks]
    seen: set[Taxon] = set()
    for b in sets:
        if seen & b:
            raise OverlappingBlocks("blocks share a taxon")
        seen |= b
    used: set[int] = set()
    for b in sets:
        verts, _ = _spanning_vertices(tree, b)
        if used & verts:
            return False
        used |= verts
    return True


# -- quartets and equality -------------------------------------------------
def quartet_topology(tree: PhyloTree, taxa: Iterable[Taxon]) -> Quartet:
    q = frozenset(taxa)
    if len(q) != 4:
        raise BadQuartetSize(f"expected 4 taxa, got {len(q)}")
    _check_subset(tree, q)
    sub = induced_subtree(tree, q)
    for x in sorted(q):
        p = sub.neighbors(sub.leaf(x))[0]
        sibs = [sub.taxon(w) for w in sub.neighbors(p) if sub.is_leaf(w) and w != sub.leaf(x)]
        if sibs:
            y = sibs[0]
            return Quartet.from_pairs((x, y), tuple(q - {x, y}))  # type: ignore[arg-type]
    raise AssertionError("unreachable: a 4-leaf binary tree has a cherry")


def is_conflicting_quartet(t1: PhyloTree, t2: PhyloTree, taxa: Iterable[Taxon]) -> bool:
    check_same_taxa(t1, t2)
    q = frozenset(taxa)
    return quartet_topology(t1, q) != quartet_topology(t2, q)


def trees_equal(t1: PhyloTree, t2: PhyloTree) -> bool:
    check_same_taxa(t1, t2)
    return t1.canonical_newick() == t2.canonical_newick()


def quartet_set(tree: PhyloTree) -> frozenset[Quartet]:
    return frozenset(quartet_topology(tree, q) for q in itertools.combinations(sorted(tree.taxa), 4))


def median(tree: PhyloTree, a: int, b: int, c: int) -> int:
    """The vertex lying on all three paths between a, b and c."""
    pab = set(tree.path(a, b))
    pac = tree.path(a, c)
    best = a
    for v in pac:
        if v in pab:
            best = v
    return best


# -- construction ---------------------------------------------------------
class _Builder:
    """Mutable adjacency used while growing or editing trees."""

    def __init__(self) -> None:
        self.adj: dict[int, set[int]] = {}
        self.labels: dict[int, Taxon] = {}
        self.next_id = 0

    def new(self, taxon: Taxon | None = None) -> int:
        v = self.next_id
        self.next_id += 1
        self.adj[v] = set()
        if taxon is not None:
            self.labels[v] = taxon
        return v

    def link(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)

    def unlink(self, u: int, v: int) -> None:
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def subdivide(self, u: int, v: int) -> int:
        w = self.new()
        self.unlink(u, v)
        self.link(u, w)
        self.link(w, v)
        return w

    def edges(self) -> list[Edge]:
        return sorted(_edge(u, v) for u in self.adj for v in self.adj[u] if u < v)

    def tree(self) -> PhyloTree:
        return PhyloTree(self.adj, self.labels)


def tree_from_edges(edges: Iterable[Edge], labels: Mapping[int, Taxon]) -> PhyloTree:
    adj: dict[int, list[int]] = {v: [] for v in labels}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return PhyloTree(adj, labels)


def _insertion_tree(taxa: Sequence[Taxon], choose) -> PhyloTree:
    b = _Builder()
    first = b.new(taxa[0])
    if len(taxa) == 1:
        return b.tree()
    second = b.new(taxa[1])
    b.link(first, second)
    for x in taxa[2:]:
        u, v = choose(b.edges())
        w = b.subdivide(u, v)
        b.link(w, b.new(x))
    return b.tree()


def random_tree(taxa: Sequence[Taxon], seed: int) -> PhyloTree:
    """Uniform random unrooted binary topology by sequential edge attachment.

    Uses ``random.Random(seed)`` (Mersenne Twister), so the output is a pure
    function of ``taxa`` and ``seed``.
    """
    if not taxa:
        raise EmptySet("no taxa")
    rng = random.Random(seed)
    return _insertion_tree(list(taxa), rng.choice)


def all_trees(taxa: Sequence[Taxon]) -> Iterator[PhyloTree]:
    """Every unrooted binary topology on ``taxa``; (2n-5)!! of them for n >= 3."""
    taxa = list(taxa)
    if len(taxa) <= 3:
        yield _insertion_tree(taxa, lambda es: es[0])
        return

    def grow(b: _Builder, i: int) -> Iterator[PhyloTree]:
        if i == len(taxa):
            yield b.tree()
            return
        for u, v in b.edges():
            nb = _Builder()
            nb.adj = {k: set(s) for k, s in b.adj.items()}
            nb.labels = dict(b.labels)
            nb.next_id = b.next_id
            w = nb.subdivide(u, v)
            nb.link(w, nb.new(taxa[i]))
            yield from grow(nb, i + 1)

    b = _Builder()
    b.link(b.new(taxa[0]), b.new(taxa[1]))
    yield from grow(b, 2)


def caterpillar(taxa: Sequence[Taxon]) -> PhyloTree:
    """The caterpillar x1, x2, ..., xn with cherries {x1,x2} and {x(n-1),xn}."""
    taxa = list(taxa)
    b = _Builder()
    leaves = [b.new(x) for x in taxa]
    n = len(taxa)
    if n == 1:
        return b.tree()
    if n == 2:
        b.link(leaves[0], leaves[1])
        return b.tree()
    spine = [b.new() for _ in range(n - 2)]
    for s, t in zip(spine, spine[1:]):
        b.link(s, t)
    b.link(leaves[0], spine[0])
    for i in range(1, n - 1):
        b.link(leaves[i], spine[i - 1])
    b.link(leaves[-1], spine[-1])
    return b.tree()


def relabel(tree: PhyloTree, mapping: Mapping[Taxon, Taxon]) -> PhyloTree:
    return PhyloTree(tree.adjacency(), {v: mapping.get(t, t) for v, t in tree.labels.items()})


def _suppress(b: _Builder, v: int) -> None:
    a, c = b.adj[v]
    b.unlink(v, a)
    b.unlink(v, c)
    del b.adj[v]
    b.link(a, c)


def _component(b: _Builder, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in b.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _tbr(tree: PhyloTree, cut: Edge, pick) -> PhyloTree:
    b = _Builder()
    b.adj = {x: set(nb) for x, nb in tree.adjacency().items()}
    b.labels = tree.labels
    b.next_id = max(b.adj) + 1
    u, v = cut
    if v not in b.adj[u]:
        raise PhyloError(f"{cut} is not an edge")
    b.unlink(u, v)
    targets: list[int] = []
    for side, x in enumerate((u, v)):
        keep = x
        if x not in b.labels and len(b.adj[x]) == 2:
            keep = min(b.adj[x])
            _suppress(b, x)
        comp = _component(b, keep)
        comp_edges = sorted(_edge(p, q) for p in comp for q in b.adj[p] if p < q)
        if comp_edges:
            targets.append(b.subdivide(*pick(comp_edges, side)))
        else:
            targets.append(keep)
    b.link(targets[0], targets[1])
    return b.tree()


def tbr_move(tree: PhyloTree, cut: Edge, attach_u: Edge | None, attach_v: Edge | None) -> PhyloTree:
    """Delete ``cut`` and reconnect by a new edge between two subdivided edges.

    ``attach_u`` / ``attach_v`` are edges of the component containing cut[0] /
    cut[1] after its degree-2 vertex has been suppressed (a suppressed vertex
    with neighbours a, c leaves the edge (a, c)). Pass None for a component
    that is a single leaf.
    """
    wanted = (attach_u, attach_v)

    def pick(edges: list[Edge], side: int) -> Edge:
        e = wanted[side]
        if e is None or _edge(*e) not in edges:
            raise PhyloError(f"attachment edge {e} not in component")
        return _edge(*e)

    return _tbr(tree, cut, pick)


def random_tbr_move(tree: PhyloTree, seed: int) -> PhyloTree:
    """One uniformly random TBR move (random cut edge, random reattachment)."""
    if tree.n < 4:
        raise TooSmall("TBR moves need at least 4 taxa")
    rng = random.Random(seed)
    cut = rng.choice(sorted(tree.edges))
    return _tbr(tree, cut, lambda edges, side: rng.choice(edges))
