"""Tests for Weyl group elements and the Bruhat order."""

import pytest

from kmlab.errors import EmptyWithinBound
from kmlab.rootdata import (
    GCM,
    bruhat_leq,
    bruhat_leq_oracle,
    canonicalize,
    enumerate_elements,
    format_word,
    identity,
    interval,
    longest_element,
    min_coset_rep,
    minimal_upper_bounds,
    parse_word,
    reduced_words,
)
from kmlab.rootdata.weyl import _bruhat


def test_braid_relation(a2: GCM) -> None:
    """Test s1 s2 s1 = s2 s1 s2 in sl3."""
    w = canonicalize(a2, (0, 1, 0))
    assert w == canonicalize(a2, (1, 0, 1))
    assert w.length == 3


def test_square_is_identity(a1: GCM) -> None:
    """Test that s1 s1 canonicalizes to the identity."""
    assert canonicalize(a1, (0, 0)).is_identity


def test_affine_words_stay_reduced(affine_a1: GCM) -> None:
    """Test that alternating words in affine A1 have no relations."""
    assert canonicalize(affine_a1, (0, 1, 0, 1)).length == 4


def test_parse_and_format(a2: GCM, affine_a1: GCM) -> None:
    """Test word parsing uses labels, not internal indices."""
    assert parse_word(a2, "1.2") == (0, 1)
    assert parse_word(a2, "e") == ()
    assert parse_word(affine_a1, "0,1") == (0, 1)
    assert format_word(affine_a1, (0, 1)) == "0.1"
    assert identity(a2).label() == "e"


def test_reduced_words_of_longest(a2: GCM) -> None:
    """Test w0 of sl3 has exactly two reduced words."""
    assert reduced_words(canonicalize(a2, (0, 1, 0))) == [(0, 1, 0), (1, 0, 1)]


def test_bruhat_examples(a2: GCM) -> None:
    """Test basic Bruhat comparisons."""
    s1 = canonicalize(a2, (0,))
    s2 = canonicalize(a2, (1,))
    assert bruhat_leq(s1, canonicalize(a2, (0, 1)))
    assert not bruhat_leq(s1, s2)
    assert bruhat_leq(identity(a2), s2)


PRESETS = ["a1", "a2", "b2", "g2", "affine_a1", "hyperbolic"]


@pytest.mark.parametrize("preset", PRESETS)
def test_bruhat_matches_subword_oracle(preset: str, request: pytest.FixtureRequest) -> None:
    """Test the descent recursion against the subword property up to length 5."""
    gcm = request.getfixturevalue(preset)
    elements = enumerate_elements(gcm, 5)
    for v in elements:
        for w in elements:
            assert bruhat_leq(v, w) == bruhat_leq_oracle(v, w)


@pytest.mark.parametrize("preset", PRESETS)
def test_bruhat_is_partial_order(preset: str, request: pytest.FixtureRequest) -> None:
    """Test reflexivity, antisymmetry and transitivity up to length 4."""
    gcm = request.getfixturevalue(preset)
    elements = enumerate_elements(gcm, 4)
    leq = {(u, v): bruhat_leq(u, v) for u in elements for v in elements}
    for u in elements:
        assert leq[(u, u)]
        for v in elements:
            if leq[(u, v)] and leq[(v, u)]:
                assert u == v
            for w in elements:
                if leq[(u, v)] and leq[(v, w)]:
                    assert leq[(u, w)]


def test_enumerate_counts(a2: GCM, affine_a1: GCM, b2: GCM) -> None:
    """Test group sizes by length bound."""
    assert len(enumerate_elements(a2, 0)) == 1
    assert len(enumerate_elements(a2, 3)) == 6
    assert len(enumerate_elements(a2, 10)) == 6
    assert len(enumerate_elements(b2, 4)) == 8
    assert len(enumerate_elements(affine_a1, 4)) == 9


def test_enumerate_order(a2: GCM) -> None:
    """Test elements come ordered by length."""
    lengths = [w.length for w in enumerate_elements(a2, 3)]
    assert lengths == sorted(lengths)


def test_minimal_upper_bounds(a2: GCM) -> None:
    """Test joins in the Bruhat order of sl3."""
    s1 = canonicalize(a2, (0,))
    s2 = canonicalize(a2, (1,))
    bounds = minimal_upper_bounds([s1, s2], 3)
    assert {w.label() for w in bounds} == {"1.2", "2.1"}
    top = minimal_upper_bounds(bounds, 3)
    assert [w.label() for w in top] == ["1.2.1"]


def test_minimal_upper_bounds_outside_search(affine_a1: GCM) -> None:
    """Test an empty search window is reported."""
    s0 = canonicalize(affine_a1, (0,))
    s1 = canonicalize(affine_a1, (1,))
    with pytest.raises(EmptyWithinBound):
        minimal_upper_bounds([s0, s1], 1)


def test_longest_element(a2: GCM, g2: GCM, affine_a1: GCM) -> None:
    """Test w0 lengths and the infinite case."""
    assert longest_element(a2).length == 3
    assert longest_element(g2).length == 6
    assert longest_element(affine_a1, max_len=20) is None


def test_min_coset_rep(a2: GCM) -> None:
    """Test that s2 fixes varpi1, so s1 s2 reduces to s1."""
    w = canonicalize(a2, (0, 1))
    assert min_coset_rep(w, a2.fundamental(0)) == canonicalize(a2, (0,))


def test_interval(a2: GCM) -> None:
    """Test the full interval [e, w0] of sl3."""
    w0 = canonicalize(a2, (0, 1, 0))
    assert len(interval(identity(a2), w0)) == 6
    assert interval(w0, identity(a2)) == []


def test_bruhat_cache_is_bounded(a2: GCM) -> None:
    """Test the comparison cache has a finite size."""
    elements = enumerate_elements(a2, 3)
    assert bruhat_leq(identity(a2), elements[-1])
    info = _bruhat.cache_info()
    assert info.maxsize is not None
    assert info.currsize <= info.maxsize
