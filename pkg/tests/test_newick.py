import pytest
from hypothesis import given

from dmpkernel.core import quartet_topology, trees_equal
from dmpkernel.errors import DuplicateTaxon, MalformedLine, MalformedNewick, MissingTaxon, NonBinary, UnknownTaxon
from dmpkernel.newick import parse_character_file, parse_newick, write_newick

from .conftest import trees


def test_parse_quartet(qa):
    assert qa.n == 4
    assert len(qa.internal_vertices) == 2
    assert str(quartet_topology(qa, "abcd")) == "ab|cd"


def test_duplicate_taxon():
    with pytest.raises(DuplicateTaxon):
        parse_newick("((a,b),(a,c));")


def test_degree_four_vertex_is_rejected():
    with pytest.raises(NonBinary):
        parse_newick("((a,b,c),d);")


def test_three_cherries_around_a_centre_is_binary():
    t = parse_newick("((a,b),(c,d),(e,f));")
    assert t.n == 6
    assert all(t.degree(v) == 3 for v in t.internal_vertices)


@pytest.mark.parametrize(
    "text",
    ["((a,b),(c,d)", "((a,b),(c,d)));", "((a,),(c,d));", "(,a);", "((a,b),(c,d))", "", ";", "(a,b);(c,d);", "((a,b):x,c);"],
)
def test_malformed(text):
    with pytest.raises(MalformedNewick):
        parse_newick(text)


def test_lengths_and_internal_labels_ignored(qa):
    t = parse_newick("((a:0.1,b:2e-3)ab:1.5,(c:1,d:1)cd:0.5)root;")
    assert trees_equal(t, qa)


def test_rooted_input_is_unrooted(qa):
    t = parse_newick("(a,(b,(c,d)));")
    assert t.n == 4 and len(t.edges) == 5
    assert write_newick(t) == write_newick(qa)


def test_degenerate_sizes():
    assert write_newick(parse_newick("a;")) == "a;"
    two = parse_newick("(a,b);")
    assert two.n == 2 and len(two.edges) == 1
    three = parse_newick("(a,b,c);")
    assert three.n == 3 and len(three.internal_vertices) == 1


def test_write_quartet(qa):
    assert write_newick(qa) == "((a,b),(c,d));"
    assert write_newick(parse_newick("((d,c),(b,a));")) == "((a,b),(c,d));"


@given(trees(max_n=20))
def test_round_trip(t):
    back = parse_newick(write_newick(t))
    assert trees_equal(back, t)
    assert write_newick(back) == write_newick(t)


def test_character_file():
    chi = parse_character_file("a,red\nb,red\nc,blue\nd,blue", "abcd")
    assert sorted(map(sorted, chi.classes())) == [["a", "b"], ["c", "d"]]
    assert chi["a"] == 0 and chi["c"] == 1


def test_character_file_crlf_and_blank_lines():
    chi = parse_character_file("a,r\r\n\r\nb,s\r\nc,t\r\nd,u\r\n", "abcd")
    assert chi.num_states == 4


def test_character_missing_taxon():
    with pytest.raises(MissingTaxon):
        parse_character_file("a,red", "ab")


def test_character_unknown_taxon():
    with pytest.raises(UnknownTaxon):
        parse_character_file("a,red\nz,red", "a")


@pytest.mark.parametrize("text", ["a red", "a,b,c", ",x", "a,"])
def test_character_malformed_line(text):
    with pytest.raises(MalformedLine):
        parse_character_file(text, "a")
