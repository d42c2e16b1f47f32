import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dmpkernel.core import are_spanning_disjoint
from dmpkernel.errors import LeafSetMismatch, PartialCharacter, PartialExtension
from dmpkernel.newick import parse_newick
from dmpkernel.oracle import brute_parsimony
from dmpkernel.parsimony import (
    Character,
    character_distance,
    delta,
    induced_forest,
    parsimony_score,
    ps,
    ps_lower_bound_check,
)

from .conftest import characters, trees

AB_CD = Character({"a": 0, "b": 0, "c": 1, "d": 1})


def states(tree, by_taxon, u_state, v_state):
    """Extension of QA from leaf states plus the two internal states."""
    out = {tree.leaf(x): s for x, s in by_taxon.items()}
    out[tree.parent_of_leaf("a")] = u_state
    out[tree.parent_of_leaf("c")] = v_state
    return out


def test_character_normalisation():
    chi = Character({"a": "red", "b": "blue", "c": "red"})
    assert dict(chi) == {"a": 0, "b": 1, "c": 0}
    assert chi.num_states == 2
    assert Character.from_blocks([["c", "d"], ["a", "b"]]).classes() == [frozenset("cd"), frozenset("ab")]
    assert Character({"a": 3, "b": 5}).num_states == 2


def test_delta_examples(qa):
    assert delta(qa, {v: 0 for v in qa.vertices}) == 0
    assert delta(qa, states(qa, {"a": 0, "b": 0, "c": 1, "d": 1}, 0, 1)) == 1
    assert delta(qa, states(qa, {"a": 0, "b": 1, "c": 0, "d": 1}, 0, 0)) == 2
    with pytest.raises(PartialExtension):
        delta(qa, {qa.leaf("a"): 0})


def test_score_examples(qa, qb):
    assert ps(qa, AB_CD) == 1
    assert ps(qb, AB_CD) == 2
    assert brute_parsimony(qb, AB_CD) == 2
    assert ps(qa, Character.constant("abcd")) == 0
    with pytest.raises(PartialCharacter):
        ps(qa, {"a": 0})


@given(trees(min_n=1, max_n=20))
def test_all_distinct_scores_n_minus_one(t):
    chi = Character({x: i for i, x in enumerate(sorted(t.taxa))})
    assert ps(t, chi) == t.n - 1


def test_degenerate_sizes():
    one = parse_newick("a;")
    assert ps(one, {"a": 0}) == 0
    two = parse_newick("(a,b);")
    assert ps(two, {"a": 0, "b": 0}) == 0
    assert ps(two, {"a": 0, "b": 1}) == 1


@given(trees(min_n=1, max_n=8), st.data())
def test_fitch_matches_brute_force(t, data):
    chi = data.draw(characters(t, 4))
    assert ps(t, chi) == brute_parsimony(t, chi)


@given(trees(min_n=1, max_n=16), st.data())
def test_extension_is_optimal_and_consistent(t, data):
    chi = data.draw(characters(t, 5))
    score, phi = parsimony_score(t, chi)
    assert delta(t, phi) == score
    assert phi.character() == chi
    assert chi.num_states - 1 <= score <= max(t.n - 1, 0)


@given(trees(min_n=1, max_n=16), st.data())
def test_induced_forest_counts(t, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    phi = {v: rng.randrange(3) for v in t.vertices}
    forest = induced_forest(t, phi)
    assert len(forest.components) == delta(t, phi) + 1
    for comp in forest.components:
        assert len({phi[v] for v in comp}) == 1
    assert sum(map(len, forest.components)) == len(t.vertices)


def test_induced_forest_example(qa):
    phi = states(qa, {"a": 0, "b": 0, "c": 1, "d": 1}, 0, 1)
    comps = induced_forest(qa, phi).components
    u, v = qa.parent_of_leaf("a"), qa.parent_of_leaf("c")
    assert sorted(map(sorted, comps)) == sorted([sorted({qa.leaf("a"), qa.leaf("b"), u}), sorted({qa.leaf("c"), qa.leaf("d"), v})])
    assert len(induced_forest(qa, {w: 0 for w in qa.vertices}).components) == 1


def test_character_distance_examples(qa, qb):
    assert character_distance(qa, qb, AB_CD) == 1
    assert character_distance(qa, qa, AB_CD) == 0
    assert character_distance(qa, qb, Character.constant("abcd")) == 0
    with pytest.raises(LeafSetMismatch):
        character_distance(qa, parse_newick("((a,b),(c,e));"), AB_CD)


def test_lower_bound_examples(qa, qb):
    assert ps_lower_bound_check(qa, AB_CD) == (True, True)
    assert ps_lower_bound_check(qb, AB_CD) == (True, True)
    assert ps(qb, AB_CD) > AB_CD.num_states - 1


@given(trees(min_n=1, max_n=8), st.data())
def test_lower_bound_biconditional(t, data):
    chi = data.draw(characters(t, 5))
    bound, iff = ps_lower_bound_check(t, chi)
    assert bound and iff
    assert (ps(t, chi) == chi.num_states - 1) == are_spanning_disjoint(t, chi.classes())


def test_extension_csv(qa):
    _, phi = parsimony_score(qa, AB_CD)
    lines = phi.to_csv().splitlines()
    assert len(lines) == len(qa.vertices)
    assert all(line.count(",") == 1 for line in lines)
