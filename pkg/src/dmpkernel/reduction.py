"""Common-cherry and common-chain reduction with a replayable trace.

Both rules delete taxa and keep the induced subtrees. Reduction stops once
four taxa remain so quartet topologies stay defined. ``lift_character`` maps
a character on the reduced taxa back to the original taxa without lowering
its parsimony distance.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import PhyloTree, Taxon, check_same_taxa, restrict
from .errors import LeafSetMismatch
from .newick import write_newick
from .parsimony import Character, parsimony_score, ps

FLOOR = 4


def _cherries(tree: PhyloTree) -> set[tuple[Taxon, Taxon]]:
    out = set()
    for v in tree.internal_vertices:
        leaves = sorted(tree.taxon(u) for u in tree.neighbors(v) if tree.is_leaf(u))  # type: ignore[type-var]
        for i in range(len(leaves)):
            for j in range(i + 1, len(leaves)):
                out.add((leaves[i], leaves[j]))
    if tree.n == 2:
        out.add(tuple(sorted(tree.taxa)))  # type: ignore[arg-type]
    return out


def find_common_cherry(t1: PhyloTree, t2: PhyloTree) -> tuple[Taxon, Taxon] | None:
    """Lexicographically smallest pair that is a cherry in both trees."""
    check_same_taxa(t1, t2)
    common = _cherries(t1) & _cherries(t2)
    return min(common) if common else None


# -- chains -----------------------------------------------------------------
def _leafy_paths(tree: PhyloTree) -> list[list[int]]:
    """Maximal paths of internal vertices that each carry at least one leaf."""
    leafy = {v for v in tree.internal_vertices if any(tree.is_leaf(u) for u in tree.neighbors(v))}
    nbrs = {v: [u for u in tree.neighbors(v) if u in leafy] for v in leafy}
    seen: set[int] = set()
    paths = []
    for v in sorted(leafy):
        if v in seen or len(nbrs[v]) == 2:
            continue
        path = [v]
        seen.add(v)
        prev, cur = None, v
        while True:
            nxt = [u for u in nbrs[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
            seen.add(cur)
        paths.append(path)
    return paths


def _chain_orders(tree: PhyloTree) -> list[list[Taxon]]:
    """Leaf sequences along each leafy path, with both orders of end cherries."""
    out = []
    for path in _leafy_paths(tree):
        slots = [sorted(tree.taxon(u) for u in tree.neighbors(v) if tree.is_leaf(u)) for v in path]  # type: ignore[type-var]
        if len(path) == 1:
            # a lone vertex with two leaves (or three, when n = 3)
            seq = slots[0]
            out.append(seq)
            out.append(seq[::-1])
            continue
        heads = [slots[0], slots[0][::-1]] if len(slots[0]) == 2 else [slots[0]]
        tails = [slots[-1], slots[-1][::-1]] if len(slots[-1]) == 2 else [slots[-1]]
        middle = [x for s in slots[1:-1] for x in s]
        for h in heads:
            for t in tails:
                out.append(h + middle + t)
    return out


class _ChainWalker:
    """Incremental chain check on one tree: append leaves while the attachment
    vertices keep tracing a path (equal attachments only at the two ends)."""

    def __init__(self, tree: PhyloTree):
        self.tree = tree
        self.p: list[int] = []

    def can_append(self, x: Taxon) -> bool:
        tree = self.tree
        q = tree.parent_of_leaf(x)
        if tree.is_leaf(q):
            return False
        p = self.p
        if not p:
            return True
        last = p[-1]
        if len(p) == 1:
            return q == last or q in tree.neighbors(last)
        prev = p[-2]
        if prev == last:
            if len(p) > 2:
                return False
            return q != last and q in tree.neighbors(last)
        if q == last:
            return True
        return q != prev and q in tree.neighbors(last)

    def append(self, x: Taxon) -> None:
        self.p.append(self.tree.parent_of_leaf(x))

    def closed(self) -> bool:
        return len(self.p) > 2 and self.p[-1] == self.p[-2]


def is_chain(tree: PhyloTree, seq: Sequence[Taxon]) -> bool:
    w = _ChainWalker(tree)
    for x in seq:
        if w.closed() or not w.can_append(x):
            return False
        w.append(x)
    return True


def find_common_chain(t1: PhyloTree, t2: PhyloTree, min_length: int = 5) -> list[Taxon] | None:
    """A maximal common chain of length >= 5, oriented by ``t1``.

    Among maximal chains the one containing the smallest taxon wins; the
    orientation with the lexicographically smaller sequence is returned.
    """
    check_same_taxa(t1, t2)
    if t1.n < min_length:
        return None
    found: list[tuple[Taxon, ...]] = []
    for seq in _chain_orders(t1):
        i = 0
        while i < len(seq):
            w = _ChainWalker(t2)
            j = i
            while j < len(seq) and not w.closed() and w.can_append(seq[j]):
                w.append(seq[j])
                j += 1
            if j - i >= min_length and is_chain(t1, seq[i:j]):
                found.append(tuple(seq[i:j]))
            if j == len(seq):
                break
            i = max(i + 1, j - 2)
    if not found:
        return None
    sets = [frozenset(c) for c in found]
    maximal = [c for c, s in zip(found, sets) if not any(s < o for o in sets)]
    best = min(maximal, key=lambda c: (min(c), -len(c), min(c, c[::-1])))
    return list(min(best, best[::-1]))


# -- reduction with trace ----------------------------------------------------
@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "cherry" or "chain"
    deleted: tuple[Taxon, ...]
    retained: tuple[Taxon, ...]
    before: tuple[PhyloTree, PhyloTree]
    after: tuple[PhyloTree, PhyloTree]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "deleted": list(self.deleted), "retained": list(self.retained)}


@dataclass
class ReductionTrace:
    original: tuple[PhyloTree, PhyloTree]
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def reduced(self) -> tuple[PhyloTree, PhyloTree]:
        return self.steps[-1].after if self.steps else self.original

    def replay(self) -> tuple[PhyloTree, PhyloTree]:
        t1, t2 = self.original
        for step in self.steps:
            t1, t2 = restrict(t1, step.deleted), restrict(t2, step.deleted)
        return t1, t2

    def to_json(self) -> str:
        return json.dumps(
            {
                "original": [write_newick(t) for t in self.original],
                "reduced": [write_newick(t) for t in self.reduced],
                "steps": [s.to_dict() for s in self.steps],
            },
            indent=2,
        )


def reduce(t1: PhyloTree, t2: PhyloTree) -> tuple[PhyloTree, PhyloTree, ReductionTrace]:
    """Apply the cherry and chain rules until neither applies or 4 taxa remain."""
    check_same_taxa(t1, t2)
    trace = ReductionTrace((t1, t2))
    while t1.n > FLOOR:
        cherry = find_common_cherry(t1, t2)
        if cherry is not None:
            x, y = cherry
            kind, deleted, retained = "cherry", (x,), (y,)
        else:
            chain = find_common_chain(t1, t2)
            if chain is None:
                break
            kind, deleted, retained = "chain", tuple(chain[4:]), tuple(chain[:4])
        n1, n2 = restrict(t1, deleted), restrict(t2, deleted)
        trace.steps.append(ReductionStep(kind, deleted, retained, (t1, t2), (n1, n2)))
        t1, t2 = n1, n2
    return t1, t2, trace


def is_irreducible(t1: PhyloTree, t2: PhyloTree) -> bool:
    if t1.n <= FLOOR:
        return True
    return find_common_cherry(t1, t2) is None and find_common_chain(t1, t2) is None


def _lift_step(step: ReductionStep, chi: Mapping[Taxon, int]) -> Character:
    small = step.after
    big = step.before
    scores = [ps(t, chi) for t in small]
    j = 0 if scores[0] <= scores[1] else 1
    _, phi = parsimony_score(small[j], chi)
    host = big[j]
    # induced subtrees keep host vertex ids, so phi's vertices are host vertices
    states = dict(phi.states)
    queue = deque(sorted(states))
    while queue:
        v = queue.popleft()
        for u in host.neighbors(v):
            if u not in states:
                states[u] = states[v]
                queue.append(u)
    return Character({x: states[host.leaf(x)] for x in sorted(host.taxa)})


def lift_character(trace: ReductionTrace, chi_reduced: Mapping[Taxon, int]) -> Character:
    """Carry a character on the reduced taxa back to the original taxa."""
    if set(chi_reduced) != set(trace.reduced[0].taxa):
        raise LeafSetMismatch("character is not on the reduced taxon set")
    chi = Character(dict(chi_reduced))
    for step in reversed(trace.steps):
        chi = _lift_step(step, chi)
    return chi

