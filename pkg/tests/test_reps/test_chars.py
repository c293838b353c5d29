"""Tests for roots, Demazure operators and truncated characters."""

import pytest

from kmlab.errors import NotConverged, NotDominant
from kmlab.reps import (
    CharacterPoly,
    char_L,
    char_demazure,
    char_thick_demazure,
    check_weyl_kac,
    demazure_op,
    peterson_mults,
    real_roots,
)
from kmlab.rootdata import GCM, bruhat_leq, canonicalize, enumerate_elements, reduced_words


def test_real_roots_finite(a2: GCM) -> None:
    """Test the positive roots of sl3."""
    assert set(real_roots(a2, 2).entries) == {(1, 0), (0, 1), (1, 1)}


def test_real_roots_affine(affine_a1: GCM) -> None:
    """Test real roots of affine A1 up to height three."""
    assert set(real_roots(affine_a1, 3).entries) == {(1, 0), (0, 1), (2, 1), (1, 2)}


def test_real_roots_empty_window(a2: GCM) -> None:
    """Test a zero depth bound has no roots."""
    assert not real_roots(a2, 0).entries


def test_imaginary_multiplicities_affine(affine_a1: GCM) -> None:
    """Test multiples of delta have multiplicity one in affine A1."""
    table = peterson_mults(affine_a1, 4)
    assert table.multiplicity((1, 1)) == 1
    assert table.multiplicity((2, 2)) == 1
    assert not table.entries[(1, 1)].is_real
    assert table.multiplicity((2, 0)) == 0


def test_hyperbolic_multiplicity(hyperbolic: GCM) -> None:
    """Test alpha1 + alpha2 is an imaginary root of multiplicity one."""
    table = peterson_mults(hyperbolic, 2)
    assert table.multiplicity((1, 1)) == 1
    assert not table.entries[(1, 1)].is_real


def test_peterson_agrees_with_real_roots(a2: GCM) -> None:
    """Test finite type has only real roots, each of multiplicity one."""
    table = peterson_mults(a2, 4)
    assert set(table.entries) == set(real_roots(a2, 4).entries)
    assert all(entry.multiplicity == 1 for entry in table.entries.values())


def test_demazure_op_on_fundamental(a1: GCM) -> None:
    """Test D(e^varpi) = e^varpi + e^(varpi - alpha)."""
    f = demazure_op(a1, 0, CharacterPoly.monomial(a1.fundamental(0)))
    assert f.coeffs == {(0,): 1, (1,): 1}


def test_demazure_op_is_idempotent(a2: GCM) -> None:
    """Test D_i D_i = D_i."""
    f = CharacterPoly.monomial(a2.weight((2, 1)))
    once = demazure_op(a2, 0, f)
    assert demazure_op(a2, 0, once) == once


def test_char_demazure_small(a1: GCM, a2: GCM) -> None:
    """Test Demazure characters that are full characters."""
    assert len(char_demazure(a1, (2,), (0,), None)) == 3
    w0 = canonicalize(a2, (0, 1, 0))
    f = char_demazure(a2, (1, 0), w0, None)
    assert len(f) == 3
    assert f.mass == 3


def test_char_demazure_word_independent(a2: GCM) -> None:
    """Test both reduced words of w0 give the same character."""
    assert char_demazure(a2, (1, 1), (0, 1, 0), None) == char_demazure(a2, (1, 1), (1, 0, 1), None)


def test_char_demazure_rejects_non_dominant(a2: GCM) -> None:
    """Test a non-dominant highest weight."""
    with pytest.raises(NotDominant):
        char_demazure(a2, (-1, 0), (0,), 3)


def test_char_L_adjoint(a2: GCM) -> None:
    """Test the adjoint module of sl3 has a two-dimensional zero weight space."""
    f = char_L(a2, (1, 1), 4)
    assert f.mass == 8
    assert f.coefficient((1, 1)) == 2
    assert char_L(a2, (1, 1), 3).mass == 7


def test_char_L_affine_basic(affine_a1: GCM) -> None:
    """Test the first weights of the basic module of affine A1."""
    f = char_L(affine_a1, (1, 0), 2)
    assert f.coefficient((0, 0)) == 1
    assert f.coefficient((1, 0)) == 1
    assert f.coefficient((1, 1)) == 1


def test_char_L_sweep_cap(affine_a1: GCM) -> None:
    """Test the sweep cap is enforced."""
    with pytest.raises(NotConverged):
        char_L(affine_a1, (1, 0), 6, max_sweeps=1)


@pytest.mark.parametrize(
    "preset,weight,depth",
    [
        ("a1", (1,), 3),
        ("a1", (1,), 6),
        ("a2", (1, 1), 4),
        ("a2", (1, 1), 6),
        ("a2", (1, 0), 6),
        ("a2", (0, 0), 2),
        ("b2", (1, 0), 4),
    ],
)
def test_weyl_kac_finite(
    preset: str, weight: tuple, depth: int, request: pytest.FixtureRequest
) -> None:
    """Test the truncated Weyl-Kac identity in finite type."""
    gcm = request.getfixturevalue(preset)
    report = check_weyl_kac(gcm, weight, depth)
    assert report.equal
    assert report.first_mismatch is None


def test_weyl_kac_affine(affine_a1: GCM) -> None:
    """Test the truncated Weyl-Kac identity for the basic module of affine A1."""
    assert check_weyl_kac(affine_a1, (1, 0), 3).equal


@pytest.mark.slow
def test_weyl_kac_affine_deep(affine_a1: GCM) -> None:
    """Test the basic module of affine A1 up to depth 6."""
    assert check_weyl_kac(affine_a1, (1, 0), 6).equal


@pytest.mark.parametrize(
    "preset,weight,depth",
    [("a2", (1, 1), 4), ("b2", (1, 1), 5), ("b2", (0, 1), 5), ("affine_a1", (1, 0), 5)],
)
def test_char_L_is_weyl_invariant(
    preset: str, weight: tuple, depth: int, request: pytest.FixtureRequest
) -> None:
    """Test coefficients agree on s_i-related weights inside the window."""
    gcm = request.getfixturevalue(preset)
    f = char_L(gcm, weight, depth)
    for m, c in f.terms():
        for i in gcm.indices:
            image = gcm.reflect(i, gcm.weight(weight, m)).depth
            if min(image) >= 0 and sum(image) <= depth:
                assert f.coefficient(image) == c, (m, i)


@pytest.mark.parametrize("preset", ["a2", "b2", "affine_a1"])
def test_char_demazure_independent_of_reduced_word(
    preset: str, request: pytest.FixtureRequest
) -> None:
    """Test every reduced word of every element up to length 4 gives one character."""
    gcm = request.getfixturevalue(preset)
    rho = (1,) * gcm.rank
    for w in enumerate_elements(gcm, 4):
        expected = char_demazure(gcm, rho, w, None)
        for word in reduced_words(w):
            assert char_demazure(gcm, rho, word, None) == expected, word


@pytest.mark.parametrize("preset", ["a2", "b2", "affine_a1"])
def test_char_demazure_grows_along_bruhat(preset: str, request: pytest.FixtureRequest) -> None:
    """Test v <= w implies the character of L_v is coefficientwise below that of L_w."""
    gcm = request.getfixturevalue(preset)
    rho = (1,) * gcm.rank
    elements = enumerate_elements(gcm, 4)
    chars = {w: char_demazure(gcm, rho, w, None) for w in elements}
    for v in elements:
        for w in elements:
            if bruhat_leq(v, w):
                assert chars[v].leq(chars[w]), (v.label(), w.label())


def test_char_thick_demazure_extremes(a2: GCM) -> None:
    """Test L^e is the whole module and L^{w0} the lowest weight line."""
    assert char_thick_demazure(a2, (1, 1), (), 4) == char_L(a2, (1, 1), 4)
    lowest = char_thick_demazure(a2, (1, 1), (0, 1, 0), 4)
    assert lowest is not None
    assert dict(lowest.terms()) == {(2, 2): 1}


def test_char_thick_demazure_sl2(a1: GCM) -> None:
    """Test L^{s1}(2 varpi) is spanned by the lowest weight vector."""
    f = char_thick_demazure(a1, (2,), (0,), 3)
    assert f is not None
    assert dict(f.terms()) == {(2,): 1}


def test_char_thick_demazure_infinite_type(affine_a1: GCM) -> None:
    """Test no thick character is produced without a longest element."""
    assert char_thick_demazure(affine_a1, (1, 0), (0,), 3) is None
