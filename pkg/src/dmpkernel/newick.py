"""Newick reading/writing for unrooted binary trees, and character CSV files.

Grammar accepted::

    tree    := subtree ';'
    subtree := label | '(' subtree (',' subtree)+ ')' [label] [':' number]

Leaf labels use ``[A-Za-z0-9_.-]``. Internal labels and branch lengths are
read and thrown away.
"""
from __future__ import annotations

import re
from typing import Iterable

from .core import PhyloTree, Taxon
from .errors import DuplicateTaxon, MalformedLine, MalformedNewick, MissingTaxon, NonBinary, UnknownTaxon
from .parsimony import Character

_TOKEN = re.compile(r"\s*(?:([(),;])|([A-Za-z0-9_.\-]+)|:\s*([-+0-9.eE]+))")


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedNewick(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        punct, label, length = m.groups()
        if punct:
            out.append(("p", punct))
        elif label is not None:
            out.append(("label", label))
        else:
            try:
                float(length)
            except ValueError:
                raise MalformedNewick(f"bad branch length {length!r}") from None
            out.append(("len", length))
        pos = m.end()
    return out


def parse_newick(text: str) -> PhyloTree:
    """Parse one Newick tree; a degree-2 root is suppressed."""
    toks = _tokens(text)
    if not toks or toks[-1] != ("p", ";"):
        raise MalformedNewick("tree must end with ';'")
    if any(t == ("p", ";") for t in toks[:-1]):
        raise MalformedNewick("more than one tree in input")
    toks = toks[:-1]

    adj: dict[int, list[int]] = {}
    labels: dict[int, Taxon] = {}
    seen: set[Taxon] = set()
    stack: list[int] = []  # open internal nodes
    root: int | None = None
    expect_child = True
    last_closed: int | None = None

    def new() -> int:
        v = len(adj)
        adj[v] = []
        return v

    i = 0
    while i < len(toks):
        kind, val = toks[i]
        if kind == "p" and val == "(":
            if root is not None and not stack:
                raise MalformedNewick("text after the end of the tree")
            v = new()
            if stack:
                adj[stack[-1]].append(v)
                adj[v].append(stack[-1])
            elif root is None:
                root = v
            stack.append(v)
            expect_child = True
            last_closed = None
        elif kind == "label":
            if expect_child:
                if val in seen:
                    raise DuplicateTaxon(val)
                seen.add(val)
                v = new()
                labels[v] = val
                if stack:
                    adj[stack[-1]].append(v)
                    adj[v].append(stack[-1])
                elif root is None:
                    root = v
                else:
                    raise MalformedNewick("text after the end of the tree")
                expect_child = False
                last_closed = v
            elif last_closed is not None and last_closed not in labels:
                pass  # internal node label
            else:
                raise MalformedNewick(f"unexpected label {val!r}")
        elif kind == "len":
            if expect_child or last_closed is None:
                raise MalformedNewick("branch length without a node")
        elif val == ",":
            if expect_child or not stack:
                raise MalformedNewick("empty label or stray ','")
            expect_child = True
            last_closed = None
        elif val == ")":
            if expect_child or not stack:
                raise MalformedNewick("empty label or unbalanced ')'")
            v = stack.pop()
            nkids = len(adj[v]) - (1 if stack else 0)
            if nkids < 2:
                raise MalformedNewick("internal node with a single child")
            last_closed = v
        else:
            raise MalformedNewick(f"unexpected {val!r}")
        i += 1
    if stack or root is None or expect_child:
        raise MalformedNewick("unbalanced parentheses")

    if root not in labels and len(adj[root]) == 2:
        a, b = adj.pop(root)
        adj[a][adj[a].index(root)] = b
        adj[b][adj[b].index(root)] = a
    n = len(labels)
    for v, nbrs in adj.items():
        if v not in labels and n >= 3 and len(nbrs) != 3:
            raise NonBinary(f"internal vertex with degree {len(nbrs)}")
    if n < 3 and len(adj) != n:
        raise NonBinary("degenerate tree with unlabelled internal vertices")
    return PhyloTree(adj, labels)


def write_newick(tree: PhyloTree) -> str:
    """Deterministic Newick text.

    The string is rooted on the edge joining the neighbour u of the smallest
    taxon a to the side of u whose smallest taxon is larger, so the top level
    reads ``((a, <other side of u>), <rest>);``. Children are ordered by
    their smallest descendant taxon. Equal trees give equal strings.
    """
    return tree.canonical_newick()


def parse_character_file(text: str, taxa: Iterable[Taxon]) -> Character:
    """Read ``taxon,state`` lines; states get ids in order of first appearance."""
    taxa = set(taxa)
    assignment: dict[Taxon, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise MalformedLine(f"line {lineno}: {raw!r}")
        x, s = parts
        if x not in taxa:
            raise UnknownTaxon(f"line {lineno}: {x!r}")
        if x in assignment:
            raise MalformedLine(f"line {lineno}: {x!r} assigned twice")
        assignment[x] = s
    missing = taxa - set(assignment)
    if missing:
        raise MissingTaxon(", ".join(sorted(missing)))
    ids: dict[str, int] = {}
    return Character({x: ids.setdefault(s, len(ids)) for x, s in assignment.items()})


def read_tree(path) -> PhyloTree:
    with open(path, encoding="utf-8") as fh:
        return parse_newick(fh.read())
