"""Characters, extensions and small-parsimony scoring (Fitch)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .core import PhyloTree, Taxon, are_spanning_disjoint, check_same_taxa
from .errors import PartialCharacter, PartialExtension


class Character(Mapping[Taxon, int]):
    """A total map taxon -> state id with dense ids 0..t-1.

    Values that are not already dense are renumbered in first-appearance
    order of the given mapping.
    """

    __slots__ = ("_states", "_t")

    def __init__(self, assignment: Mapping[Taxon, object]):
        values = list(assignment.values())
        dense = all(isinstance(v, int) and not isinstance(v, bool) for v in values) and set(values) == set(
            range(len(set(values)))
        )
        if dense:
            states = {str(x): int(s) for x, s in assignment.items()}  # type: ignore[call-overload]
        else:
            ids: dict[object, int] = {}
            states = {}
            for x, s in assignment.items():
                states[str(x)] = ids.setdefault(s, len(ids))
        self._states = states
        self._t = len(set(states.values()))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Iterable[Taxon]]) -> "Character":
        """The character defined by a partition: block i gets state i."""
        out: dict[Taxon, int] = {}
        for i, block in enumerate(blocks):
            for x in block:
                out[x] = i
        return cls(out)

    @classmethod
    def constant(cls, taxa: Iterable[Taxon]) -> "Character":
        return cls({x: 0 for x in taxa})

    def __getitem__(self, taxon: Taxon) -> int:
        return self._states[taxon]

    def __iter__(self) -> Iterator[Taxon]:
        return iter(self._states)

    def __len__(self) -> int:
        return len(self._states)

    @property
    def num_states(self) -> int:
        return self._t

    @property
    def taxa(self) -> frozenset[Taxon]:
        return frozenset(self._states)

    def classes(self) -> list[frozenset[Taxon]]:
        """State classes S_0..S_(t-1), indexed by state id."""
        out: list[set[Taxon]] = [set() for _ in range(self._t)]
        for x, s in self._states.items():
            out[s].add(x)
        return [frozenset(c) for c in out]

    def restrict(self, taxa: Iterable[Taxon]) -> "Character":
        keep = set(taxa)
        return Character({x: s for x, s in sorted(self._states.items()) if x in keep})

    def to_csv(self) -> str:
        return "".join(f"{x},{s}\n" for x, s in sorted(self._states.items()))

    def __repr__(self) -> str:
        return f"Character({dict(sorted(self._states.items()))})"


@dataclass(frozen=True)
class Extension:
    """A state for every vertex of ``tree``, agreeing with a character on leaves."""

    tree: PhyloTree
    states: Mapping[int, int]

    def character(self) -> Character:
        return Character({x: self.states[self.tree.leaf(x)] for x in sorted(self.tree.taxa)})

    def to_csv(self) -> str:
        return "".join(f"{v},{s}\n" for v, s in sorted(self.states.items()))


@dataclass(frozen=True)
class InducedForest:
    """Vertex sets of the components left after deleting bichromatic edges."""

    components: list[frozenset[int]]

    def taxon_blocks(self, tree: PhyloTree) -> list[frozenset[Taxon]]:
        """Nonempty intersections of the components with the leaf set."""
        out = []
        for comp in self.components:
            block = frozenset(tree.taxon(v) for v in comp if tree.is_leaf(v))
            if block:
                out.append(block)  # type: ignore[arg-type]
        return out


def _check_extension(tree: PhyloTree, phi: Extension | Mapping[int, int]) -> Mapping[int, int]:
    states = phi.states if isinstance(phi, Extension) else phi
    if any(v not in states for v in tree.vertices):
        raise PartialExtension("extension does not cover every vertex")
    return states


def _check_character(tree: PhyloTree, chi: Mapping[Taxon, int]) -> None:
    missing = tree.taxa - set(chi)
    if missing:
        raise PartialCharacter(f"no state for {sorted(missing)[:5]}")


def delta(tree: PhyloTree, phi: Extension | Mapping[int, int]) -> int:
    """Number of bichromatic edges."""
    states = _check_extension(tree, phi)
    return sum(1 for u, v in tree.edges if states[u] != states[v])


def parsimony_score(tree: PhyloTree, chi: Mapping[Taxon, int]) -> tuple[int, Extension]:
    """Fitch's algorithm, returning the score and an optimal extension.

    The tree is rooted at the leaf of the smallest taxon. Ties in the
    top-down pass go to the parent's state, else to the smallest state id.
    """
    _check_character(tree, chi)
    root, order, parent = tree._rooted()
    if tree.n == 1:
        return 0, Extension(tree, {root: chi[tree.taxon(root)]})  # type: ignore[index]
    sets: dict[int, int] = {}
    score = 0
    for v in reversed(order):
        if tree.is_leaf(v):
            sets[v] = 1 << chi[tree.taxon(v)]  # type: ignore[index]
            continue
        a, b = (u for u in tree.neighbors(v) if u != parent[v])
        inter = sets[a] & sets[b]
        if inter:
            sets[v] = inter
        else:
            sets[v] = sets[a] | sets[b]
            score += 1
    # the root leaf is a child-less "root"; charge its single edge here
    top = order[1]
    root_state = chi[tree.taxon(root)]  # type: ignore[index]
    if not (sets[top] >> root_state) & 1:
        score += 1
    states = {root: root_state}
    for v in order[1:]:
        if tree.is_leaf(v):
            states[v] = chi[tree.taxon(v)]  # type: ignore[index]
            continue
        ps = states[parent[v]]
        s = sets[v]
        states[v] = ps if (s >> ps) & 1 else (s & -s).bit_length() - 1
    return score, Extension(tree, states)


def ps(tree: PhyloTree, chi: Mapping[Taxon, int]) -> int:
    """Parsimony score only."""
    return parsimony_score(tree, chi)[0]


def character_distance(t1: PhyloTree, t2: PhyloTree, chi: Mapping[Taxon, int]) -> int:
    """|PS(chi, T1) - PS(chi, T2)|."""
    check_same_taxa(t1, t2)
    return abs(ps(t1, chi) - ps(t2, chi))


def induced_forest(tree: PhyloTree, phi: Extension | Mapping[int, int]) -> InducedForest:
    states = _check_extension(tree, phi)
    seen: set[int] = set()
    comps = []
    for s in sorted(tree.vertices):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in tree.neighbors(v):
                if u not in seen and states[u] == states[v]:
                    seen.add(u)
                    comp.add(u)
                    queue.append(u)
        comps.append(frozenset(comp))
    return InducedForest(comps)


def ps_lower_bound_check(tree: PhyloTree, chi: Mapping[Taxon, int]) -> tuple[bool, bool]:
    """Check PS >= t-1, and that equality holds exactly when classes are spanning-disjoint."""
    chi = chi if isinstance(chi, Character) else Character(chi)
    score = ps(tree, chi)
    t = chi.num_states
    disjoint = are_spanning_disjoint(tree, chi.classes())
    return score >= t - 1, (score == t - 1) == disjoint
