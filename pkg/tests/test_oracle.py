import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dmpkernel.core import all_trees, caterpillar, random_tbr_move, random_tree, trees_equal
from dmpkernel.errors import BadSpec, LeafSetMismatch, TooLarge, TooSmall
from dmpkernel.harness import taxon_names
from dmpkernel.newick import parse_newick
from dmpkernel.oracle import (
    TreeDecomposition,
    bell,
    brute_parsimony,
    check_tree_decomposition,
    decide_dmp,
    display_graph,
    exact_dmp,
    exact_dtbr,
    exact_treewidth,
    is_agreement_forest,
    restricted_growth_strings,
)
from dmpkernel.parsimony import Character, character_distance

from .conftest import tree_pairs


def elimination_width(adj, order):
    g = {v: set(nb) for v, nb in adj.items()}
    width = 0
    for v in order:
        nb = g.pop(v)
        width = max(width, len(nb))
        for u in nb:
            g[u] |= nb - {u}
            g[u].discard(v)
    return width


def brute_treewidth(adj):
    return min(elimination_width(adj, order) for order in itertools.permutations(adj))


def cycle(n):
    return {i: {(i - 1) % n, (i + 1) % n} for i in range(n)}


def test_rgs_and_bell():
    assert [bell(n) for n in range(1, 9)] == [1, 2, 5, 15, 52, 203, 877, 4140]
    rgs = restricted_growth_strings(4)
    assert rgs.shape == (15, 4)
    assert rgs[0].tolist() == [0, 0, 0, 0] and rgs[-1].tolist() == [0, 1, 2, 3]
    rows = [tuple(r) for r in rgs.tolist()]
    assert rows == sorted(rows) and len(set(rows)) == 15


def test_exact_dmp_examples(qa, qb):
    assert exact_dmp(qa, qa)[0] == 0
    value, chi = exact_dmp(qa, qb)
    assert value == 1
    assert character_distance(qa, qb, chi) == 1


def test_exact_dmp_cap():
    t = caterpillar(taxon_names(11))
    with pytest.raises(TooLarge):
        exact_dmp(t, t)


@given(tree_pairs(min_n=4, max_n=7))
def test_dmp_at_most_dtbr(pair):
    t1, t2 = pair
    dmp, chi = exact_dmp(t1, t2)
    dtbr, forest = exact_dtbr(t1, t2)
    assert character_distance(t1, t2, chi) == dmp
    assert dmp <= dtbr
    assert (dmp == 0) == trees_equal(t1, t2)
    assert is_agreement_forest(t1, t2, forest.blocks)


def test_dmp_upper_bound_exhaustive():
    for n in range(4, 7):
        ts = list(all_trees(taxon_names(n)))
        bound = n - 2 * math.sqrt(n) + 1
        for t1, t2 in itertools.combinations(ts, 2):
            assert exact_dmp(t1, t2)[0] <= bound


def test_brute_parsimony_examples(qa, qb):
    chi = {"a": 0, "b": 0, "c": 1, "d": 1}
    assert brute_parsimony(qa, chi) == 1
    assert brute_parsimony(qb, chi) == 2
    assert brute_parsimony(parse_newick("(a,b);"), {"a": 0, "b": 1}) == 1


def test_brute_parsimony_caps(qa):
    with pytest.raises(TooLarge):
        brute_parsimony(qa, Character({"a": 0, "b": 1, "c": 2, "d": 3}), cap_states=3)
    big = caterpillar(taxon_names(9))
    with pytest.raises(TooLarge):
        brute_parsimony(big, Character.constant(big.taxa))


def test_exact_dtbr_examples(qa, qb):
    assert exact_dtbr(qa, qa)[0] == 0
    value, forest = exact_dtbr(qa, qb)
    assert value == 1 and len(forest) == 2
    assert is_agreement_forest(qa, qb, forest.blocks)
    assert not is_agreement_forest(qa, qb, ["ab", "cd"])
    with pytest.raises(TooLarge):
        t = caterpillar(taxon_names(9))
        exact_dtbr(t, t)


@pytest.mark.parametrize("k", [1, 2])
def test_dtbr_after_tbr_walk(k):
    for seed in range(6):
        t1 = random_tree(taxon_names(7), seed)
        t2 = t1
        for j in range(k):
            t2 = random_tbr_move(t2, seed * 10 + j)
        assert exact_dtbr(t1, t2)[0] <= k


def test_metric_axioms_on_six_taxa():
    rng = random.Random(3)
    ts = list(all_trees(taxon_names(6)))
    for _ in range(15):
        a, b, c = rng.sample(ts, 3)
        ab, bc, ac = exact_dmp(a, b)[0], exact_dmp(b, c)[0], exact_dmp(a, c)[0]
        assert ab == exact_dmp(b, a)[0]
        assert ac <= ab + bc


def test_display_graph_counts(qa, qb):
    g = display_graph(qa, qb)
    assert (len(g.vertices), len(g.edges)) == (8, 10)
    star = parse_newick("(a,b,c);")
    g3 = display_graph(star, star)
    assert (len(g3.vertices), len(g3.edges)) == (5, 6)


def test_display_graph_errors(qa):
    two = parse_newick("(a,b);")
    with pytest.raises(TooSmall):
        display_graph(two, two)
    with pytest.raises(LeafSetMismatch):
        display_graph(qa, parse_newick("((a,b),(c,e));"))


def test_treewidth_examples(qa, qb):
    path = {0: {1}, 1: {0, 2}, 2: {1}}
    assert exact_treewidth(path)[0] == 1
    assert exact_treewidth(cycle(6))[0] == 2
    k5 = {i: set(range(5)) - {i} for i in range(5)}
    assert exact_treewidth(k5)[0] == 4
    assert exact_treewidth({})[0] == -1
    assert exact_treewidth(display_graph(qa, qb))[0] == 3
    assert exact_treewidth(display_graph(qa, qa))[0] == 2


def test_treewidth_errors():
    with pytest.raises(TooLarge):
        exact_treewidth(cycle(20))
    with pytest.raises(BadSpec):
        exact_treewidth({0: {1}})


@given(st.integers(2, 7), st.integers(0, 10**6), st.floats(0.1, 0.9))
def test_treewidth_matches_elimination_orders(nv, seed, density):
    rng = random.Random(seed)
    adj = {v: set() for v in range(nv)}
    for u, v in itertools.combinations(range(nv), 2):
        if rng.random() < density:
            adj[u].add(v)
            adj[v].add(u)
    width, td = exact_treewidth(adj)
    assert width == brute_treewidth(adj)
    check_tree_decomposition(adj, td)
    assert td.width == width


@given(tree_pairs(min_n=4, max_n=6))
def test_display_graph_treewidth_vs_dtbr(pair):
    t1, t2 = pair
    g = display_graph(t1, t2)
    width, td = exact_treewidth(g)
    check_tree_decomposition(g.adj, td)
    assert width <= exact_dtbr(t1, t2)[0] + 2


def test_bad_decomposition_is_caught():
    adj = cycle(4)
    bad = TreeDecomposition((frozenset({0, 1}), frozenset({2, 3})), ((0, 1),))
    with pytest.raises(AssertionError):
        check_tree_decomposition(adj, bad)


def test_decide_examples(qa, qb):
    assert decide_dmp(qa, qb, 1, "le")
    assert decide_dmp(qa, qb, 1, "eq")
    assert not decide_dmp(qa, qb, 2, "ge")
    assert decide_dmp(qa, qb, 1, ">=")
    assert not decide_dmp(qa, qb, 0, "le")
    assert decide_dmp(qa, qa, 0, "=")
    with pytest.raises(BadSpec):
        decide_dmp(qa, qb, 1, "lt")


def test_decide_uses_kernel_size(qa, qb):
    # a tiny alpha makes the instance look large, so "d_MP <= 0" is refuted without search
    assert not decide_dmp(qa, qb, 0, "le", alpha=2)


@given(tree_pairs(min_n=4, max_n=8), st.integers(0, 4))
def test_decide_agrees_with_exact(pair, k):
    t1, t2 = pair
    value = exact_dmp(t1, t2)[0]
    assert decide_dmp(t1, t2, k, "le") == (value <= k)
    assert decide_dmp(t1, t2, k, "ge") == (value >= k)
    assert decide_dmp(t1, t2, k, "eq") == (value == k)
