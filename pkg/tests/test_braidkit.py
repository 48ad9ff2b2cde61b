import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyblink.braidkit import (
    BraidError,
    BraidWord,
    LinkSpec,
    closure_components,
    default_catalog,
    disjoint_union,
    dump_catalog,
    format_braid,
    load_catalog,
    markov_conjugate,
    markov_stabilize,
    parse_braid,
    random_word,
    writhe,
)


@st.composite
def braid_words(draw, max_strands=6, max_len=12):
    n = draw(st.integers(1, max_strands))
    if n == 1:
        return BraidWord(1, ())
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len))
    return BraidWord(n, tuple(letters))


def test_parse_examples():
    assert parse_braid("1 1 1") == BraidWord(2, (1, 1, 1))
    assert parse_braid("1 -2 1 -2") == BraidWord(3, (1, -2, 1, -2))
    with pytest.raises(BraidError):
        parse_braid("0")


def test_parse_explicit_strands_and_range_check():
    assert parse_braid("", 3) == BraidWord(3, ())
    with pytest.raises(BraidError):
        parse_braid("3", 3)


@given(braid_words())
def test_format_parse_roundtrip(w):
    assert parse_braid(format_braid(w), w.strands) == w


def test_writhe_examples():
    assert writhe(BraidWord(2, (1, 1, 1))) == 3
    assert writhe(BraidWord(2, (1, -1))) == 0
    assert writhe(BraidWord(3, (1, -2, 1, -2))) == 0


def test_components_examples():
    assert closure_components(BraidWord(2, (1,))) == 1
    assert closure_components(BraidWord(2, ())) == 2
    assert closure_components(BraidWord(2, (1, 1))) == 2


def test_conjugate_examples():
    w = BraidWord(3, (1, 1))
    assert markov_conjugate(w, BraidWord(3, ())) == w
    assert markov_conjugate(BraidWord(3, (1,)), BraidWord(3, (2,))) == BraidWord(3, (-2, 1, 2))


def test_stabilize_examples():
    assert markov_stabilize(BraidWord(1, ()), 1) == BraidWord(2, (1,))
    assert markov_stabilize(BraidWord(2, (1, 1, 1)), -1) == BraidWord(3, (1, 1, 1, -2))


def test_union_examples():
    assert disjoint_union(BraidWord(1, ()), BraidWord(1, ())) == BraidWord(2, ())
    assert disjoint_union(BraidWord(2, (1,)), BraidWord(2, (1,))) == BraidWord(4, (1, 3))


@given(braid_words(), braid_words(max_strands=4))
def test_markov_moves_preserve_component_count(w, g):
    g = BraidWord(w.strands, tuple(x for x in g.letters if abs(x) < w.strands))
    c = closure_components(w)
    assert closure_components(markov_conjugate(w, g)) == c
    assert closure_components(markov_stabilize(w, 1)) == c
    assert closure_components(markov_stabilize(w, -1)) == c
    # conjugating back restores the word up to free cancellation of g g^-1
    back = markov_conjugate(markov_conjugate(w, g), g.inverse())
    assert writhe(back) == writhe(w) and closure_components(back) == c


@given(braid_words(), braid_words())
def test_union_adds_components_and_writhe(a, b):
    u = disjoint_union(a, b)
    assert closure_components(u) == closure_components(a) + closure_components(b)
    assert writhe(u) == writhe(a) + writhe(b)


def test_conjugate_twice_restores_letters_after_cancellation():
    w, g = BraidWord(3, (1, 2)), BraidWord(3, (2, -1))
    twice = markov_conjugate(markov_conjugate(w, g), g.inverse())
    # g g^-1 cancels at each end
    assert twice.letters == g.letters + g.inverse().letters + w.letters + g.letters + g.inverse().letters


def test_random_word_examples():
    assert random_word(2, 0, 9).letters == ()
    assert random_word(3, 5, 42) == random_word(3, 5, 42)
    w = random_word(4, 100, 7)
    assert all(1 <= abs(x) <= 3 for x in w.letters)


def test_catalog_roundtrip(tmp_path):
    cat = default_catalog()
    assert {"unknot", "unlink2", "hopf", "trefoil", "figure8"} <= set(cat)
    path = tmp_path / "cat.json"
    path.write_text(dump_catalog(cat.values()))
    assert load_catalog(path) == cat


def test_catalog_rejects_duplicate_names(tmp_path):
    w = BraidWord(2, (1,))
    with pytest.raises(BraidError):
        dump_catalog([LinkSpec(w, "a"), LinkSpec(w, "a")])
    path = tmp_path / "dup.json"
    entry = {"name": "a", "strands": 2, "letters": [1]}
    path.write_text(json.dumps({"format": "gyblink-catalog", "version": 1, "links": [entry, entry]}))
    with pytest.raises(BraidError):
        load_catalog(path)
