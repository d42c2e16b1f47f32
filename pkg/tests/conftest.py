import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dmpkernel.core import random_tree
from dmpkernel.harness import taxon_names
from dmpkernel.newick import parse_newick
from dmpkernel.parsimony import Character

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

QA_TEXT = "((a,b),(c,d));"
QB_TEXT = "((a,c),(b,d));"


@pytest.fixture
def qa():
    return parse_newick(QA_TEXT)


@pytest.fixture
def qb():
    return parse_newick(QB_TEXT)


@st.composite
def trees(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree(taxon_names(n), seed)


@st.composite
def tree_pairs(draw, min_n=4, max_n=8):
    n = draw(st.integers(min_n, max_n))
    taxa = taxon_names(n)
    return (
        random_tree(taxa, draw(st.integers(0, 2**32 - 1))),
        random_tree(taxa, draw(st.integers(0, 2**32 - 1))),
    )


@st.composite
def characters(draw, tree, max_states=4):
    t = draw(st.integers(1, max_states))
    return Character({x: draw(st.integers(0, t - 1)) for x in sorted(tree.taxa)})
