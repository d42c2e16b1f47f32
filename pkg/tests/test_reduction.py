import json

import pytest

from dmpkernel.core import caterpillar, random_tree, trees_equal
from dmpkernel.errors import LeafSetMismatch
from dmpkernel.harness import reducible_pair, taxon_names
from dmpkernel.newick import parse_newick, write_newick
from dmpkernel.oracle import exact_dmp
from dmpkernel.parsimony import Character, character_distance
from dmpkernel.reduction import (
    find_common_chain,
    find_common_cherry,
    is_chain,
    is_irreducible,
    lift_character,
    reduce,
)

X8 = [f"x{i}" for i in range(1, 9)]
FIVE_1 = "((a,b),(c,(d,e)));"
FIVE_2 = "((a,b),(d,(c,e)));"


def test_common_cherry_examples(qa, qb):
    assert find_common_cherry(qa, qa) == ("a", "b")
    assert find_common_cherry(qa, qb) is None
    assert find_common_cherry(parse_newick(FIVE_1), parse_newick(FIVE_2)) == ("a", "b")


def test_chain_on_identical_caterpillars():
    cat = caterpillar(X8)
    chain = find_common_chain(cat, cat)
    assert chain is not None and set(chain) == set(X8)
    assert is_chain(cat, chain)


def test_swapped_middle_breaks_the_chain():
    cat = caterpillar(X8)
    swapped = caterpillar(["x1", "x2", "x3", "x5", "x4", "x6", "x7", "x8"])
    chain = find_common_chain(cat, swapped)
    assert chain is None or len(chain) < 8
    assert not is_chain(swapped, X8)


def test_short_pairs_have_no_chain(qa):
    assert find_common_chain(qa, qa) is None


def test_reduce_irreducible_quartet(qa, qb):
    r1, r2, trace = reduce(qa, qb)
    assert trace.steps == []
    assert trees_equal(r1, qa) and trees_equal(r2, qb)


@pytest.mark.parametrize("n", [5, 8, 13])
def test_identical_trees_reduce_to_floor(n):
    t = random_tree(taxon_names(n), n)
    r1, r2, _ = reduce(t, t)
    assert r1.n == 4 and trees_equal(r1, r2)


def test_five_taxon_cherry_step():
    t1, t2 = parse_newick(FIVE_1), parse_newick(FIVE_2)
    r1, r2, trace = reduce(t1, t2)
    step = trace.steps[0]
    assert (step.kind, step.deleted, step.retained) == ("cherry", ("a",), ("b",))
    assert r1.taxa == frozenset("bcde")


@pytest.mark.parametrize("kind", ["cherry", "chain"])
def test_replay_and_irreducibility(kind):
    for seed in range(10):
        t1, t2 = reducible_pair(11, kind, seed)
        r1, r2, trace = reduce(t1, t2)
        assert trace.steps
        back = trace.replay()
        assert trees_equal(back[0], r1) and trees_equal(back[1], r2)
        assert is_irreducible(r1, r2)


def test_chain_rule_fires():
    kinds = {s.kind for seed in range(10) for s in reduce(*reducible_pair(11, "chain", seed))[2].steps}
    assert "chain" in kinds


@pytest.mark.parametrize("kind", ["cherry", "chain"])
def test_distance_preserved(kind):
    for seed in range(4):
        t1, t2 = reducible_pair(9, kind, seed)
        r1, r2, _ = reduce(t1, t2)
        assert exact_dmp(t1, t2)[0] == exact_dmp(r1, r2)[0]


def test_lift_empty_trace_is_identity(qa, qb):
    _, _, trace = reduce(qa, qb)
    chi = {"a": 0, "b": 0, "c": 1, "d": 1}
    assert lift_character(trace, chi) == Character(chi)


def test_lift_five_taxon_example():
    t1, t2 = parse_newick(FIVE_1), parse_newick(FIVE_2)
    r1, r2, trace = reduce(t1, t2)
    value, chi = exact_dmp(r1, r2)
    lifted = lift_character(trace, chi)
    assert set(lifted) == t1.taxa
    assert character_distance(t1, t2, lifted) >= value
    assert lifted["a"] == lifted["b"]


@pytest.mark.parametrize("kind", ["cherry", "chain"])
def test_lift_never_loses_distance(kind):
    for seed in range(6):
        t1, t2 = reducible_pair(10, kind, seed)
        r1, r2, trace = reduce(t1, t2)
        value, chi = exact_dmp(r1, r2)
        assert character_distance(t1, t2, lift_character(trace, chi)) >= value


def test_lift_rejects_wrong_taxa(qa, qb):
    _, _, trace = reduce(qa, qb)
    with pytest.raises(LeafSetMismatch):
        lift_character(trace, {"a": 0, "b": 0, "c": 1})


def test_trace_json():
    t1, t2 = parse_newick(FIVE_1), parse_newick(FIVE_2)
    _, _, trace = reduce(t1, t2)
    doc = json.loads(trace.to_json())
    assert doc["original"] == [write_newick(t1), write_newick(t2)]
    assert doc["steps"][0] == {"kind": "cherry", "deleted": ["a"], "retained": ["b"]}
    assert len(doc["reduced"]) == 2
