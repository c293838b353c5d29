"""Tests for thin and thick Demazure families."""

from itertools import combinations

import pytest

from kmlab.errors import AmbientMismatch, DepthTooSmall
from kmlab.reps import (
    HighestWeightModule,
    char_L,
    char_demazure,
    full_family,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
    thick_demazure,
    thin_demazure,
    verify_containment_order,
    verify_cyclic,
    verify_distributive,
    verify_restriction,
    window_depths,
)
from kmlab.rootdata import GCM, bruhat_leq, canonicalize, enumerate_elements, identity


def test_window_depths() -> None:
    """Test the window is every depth vector of total at most d."""
    assert window_depths(2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert len(window_depths(3, 2)) == 10


def test_thick_identity_is_everything(adjoint_a2: HighestWeightModule) -> None:
    """Test L^e(lambda) fills the window."""
    family = thick_demazure(adjoint_a2, identity(adjoint_a2.gcm), 4)
    assert subspace_equal(family, full_family(adjoint_a2, 4))
    assert sum(family.dims().values()) == 8


def test_thick_longest_is_lowest_line(adjoint_a2: HighestWeightModule) -> None:
    """Test L^{w0}(rho) is the lowest weight line."""
    w0 = canonicalize(adjoint_a2.gcm, (0, 1, 0))
    assert thick_demazure(adjoint_a2, w0, 4).dims() == {(2, 2): 1}


def test_thick_outside_window(adjoint_a2: HighestWeightModule) -> None:
    """Test an extremal weight beyond the window."""
    w0 = canonicalize(adjoint_a2.gcm, (0, 1, 0))
    with pytest.raises(DepthTooSmall):
        thick_demazure(adjoint_a2, w0, 3)
    assert thick_demazure(adjoint_a2, w0, 3, allow_outside=True).dims() == {}


def test_thin_matches_demazure_character(a2: GCM) -> None:
    """Test thin family dimensions against the Demazure character formula."""
    module = HighestWeightModule(a2, (1, 1))
    for word in [(0,), (1,), (0, 1), (1, 0), (0, 1, 0)]:
        w = canonicalize(a2, word)
        expected = dict(char_demazure(a2, (1, 1), w, 4).terms())
        assert thin_demazure(module, w, 4).dims() == expected


def test_thin_fundamental(a2: GCM) -> None:
    """Test L_{s1}(varpi1) is spanned by v and F1 v."""
    module = HighestWeightModule(a2, (1, 0))
    family = thin_demazure(module, canonicalize(a2, (0,)), 2)
    assert family.dims() == {(0, 0): 1, (1, 0): 1}


def test_thick_mod_p(sym2_a1: HighestWeightModule) -> None:
    """Test the divided-power closure mod 2 still reaches the lowest weight."""
    family = thick_demazure(sym2_a1, identity(sym2_a1.gcm), 2, modulus=2)
    assert family.dims() == {(0,): 1, (1,): 1, (2,): 1}


def test_sum_and_intersection(adjoint_a2: HighestWeightModule) -> None:
    """Test the lattice operations on thick families of s1 and s2."""
    gcm = adjoint_a2.gcm
    a = thick_demazure(adjoint_a2, canonicalize(gcm, (0,)), 4)
    b = thick_demazure(adjoint_a2, canonicalize(gcm, (1,)), 4)
    meet = subspace_intersect(a, b)
    join = subspace_sum(a, b)
    assert meet.issubset(a) and meet.issubset(b)
    assert a.issubset(join) and b.issubset(join)


def test_mismatched_windows(adjoint_a2: HighestWeightModule) -> None:
    """Test families over different windows cannot be combined."""
    e = identity(adjoint_a2.gcm)
    with pytest.raises(AmbientMismatch):
        subspace_sum(thick_demazure(adjoint_a2, e, 3), thick_demazure(adjoint_a2, e, 4))


def test_containment_reverses_bruhat(adjoint_a2: HighestWeightModule) -> None:
    """Test v <= w iff L^w is contained in L^v for regular dominant rho."""
    report = verify_containment_order(adjoint_a2, 3, 4)
    assert report.passed
    assert report.iff_checked
    assert report.pairs_checked == 36
    assert not report.undecided


def test_distributive_sl3(adjoint_a2: HighestWeightModule) -> None:
    """Test L^{s1} meet L^{s2} is the sum over the two length-two elements."""
    gcm = adjoint_a2.gcm
    report = verify_distributive(
        adjoint_a2, [canonicalize(gcm, (0,)), canonicalize(gcm, (1,))], 4, 3
    )
    assert set(report.found) == {"1.2", "2.1"}
    assert report.certificate is None


@pytest.mark.parametrize("word", [(), (0,), (1, 0), (0, 1, 0)])
def test_cyclic(adjoint_a2: HighestWeightModule, word: tuple) -> None:
    """Test each thick family is generated by its extremal line."""
    assert verify_cyclic(adjoint_a2, canonicalize(adjoint_a2.gcm, word), 4).passed


def test_restriction(adjoint_a2: HighestWeightModule) -> None:
    """Test thick and thin families meet exactly when v <= w."""
    gcm = adjoint_a2.gcm
    s1, s2 = canonicalize(gcm, (0,)), canonicalize(gcm, (1,))
    inside = verify_restriction(adjoint_a2, s1, canonicalize(gcm, (0, 1)), 4)
    assert inside.passed and inside.expected and inside.nonzero
    outside = verify_restriction(adjoint_a2, s1, s2, 4)
    assert outside.passed and not outside.expected and not outside.nonzero


@pytest.mark.parametrize("word", [(), (0,), (1, 0), (0, 1, 0)])
def test_cyclic_mod_p(adjoint_a2: HighestWeightModule, word: tuple) -> None:
    """Test the divided-power closure mod 2 has the thick character dimensions."""
    report = verify_cyclic(adjoint_a2, canonicalize(adjoint_a2.gcm, word), 4, modulus=2)
    assert report.matches_character is True
    assert report.passed


def test_cyclic_compares_character(adjoint_a2: HighestWeightModule) -> None:
    """Test the extremal closure of s1 is checked against the thick character."""
    report = verify_cyclic(adjoint_a2, canonicalize(adjoint_a2.gcm, (0,)), 4)
    assert report.matches_character is True
    assert not report.mismatches


def test_cyclic_detects_wrong_dims(
    adjoint_a2: HighestWeightModule, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Test a closure smaller than the expected character fails."""
    monkeypatch.setattr(
        "kmlab.reps.demazure.char_thick_demazure",
        lambda gcm, weight, w, depth_bound: char_L(gcm, weight, depth_bound),
    )
    report = verify_cyclic(adjoint_a2, canonicalize(adjoint_a2.gcm, (0,)), 4)
    assert report.matches_character is False
    assert report.mismatches
    assert not report.passed


def test_cyclic_infinite_type(affine_a1: GCM) -> None:
    """Test no character comparison is made without a longest element."""
    module = HighestWeightModule(affine_a1, (1, 0))
    report = verify_cyclic(module, canonicalize(affine_a1, (0,)), 3)
    assert report.matches_character is None
    assert report.passed


def test_families_monotone_along_bruhat(adjoint_a2: HighestWeightModule) -> None:
    """Test v <= w gives L_v inside L_w and L^w inside L^v."""
    elements = enumerate_elements(adjoint_a2.gcm, 3)
    thin = {w: thin_demazure(adjoint_a2, w, 4) for w in elements}
    thick = {w: thick_demazure(adjoint_a2, w, 4) for w in elements}
    for v in elements:
        for w in elements:
            if bruhat_leq(v, w):
                assert thin[v].issubset(thin[w]), (v.label(), w.label())
                assert thick[w].issubset(thick[v]), (v.label(), w.label())


def test_families_monotone_affine(affine_a1: GCM) -> None:
    """Test Bruhat monotonicity of both families in affine type inside the window."""
    module = HighestWeightModule(affine_a1, (1, 1))
    elements = enumerate_elements(affine_a1, 2)
    thin = {w: thin_demazure(module, w, 5) for w in elements}
    thick = {w: thick_demazure(module, w, 5) for w in elements}
    for v in elements:
        for w in elements:
            if bruhat_leq(v, w):
                assert thin[v].issubset(thin[w]), (v.label(), w.label())
                assert thick[w].issubset(thick[v]), (v.label(), w.label())


def test_containment_affine(affine_a1: GCM) -> None:
    """Test the containment order on affine sl2 up to length three."""
    module = HighestWeightModule(affine_a1, (1, 1))
    report = verify_containment_order(module, 3, 6)
    assert report.iff_checked
    assert report.passed
    assert report.pairs_checked > 0
    assert report.undecided


def test_distributive_all_small_subsets(adjoint_a2: HighestWeightModule) -> None:
    """Test every set of at most three elements of W(A2) has a distributive decomposition."""
    elements = enumerate_elements(adjoint_a2.gcm, 3)
    for size in (1, 2, 3):
        for subset in combinations(elements, size):
            report = verify_distributive(adjoint_a2, list(subset), 4, 3)
            assert report.passed, [w.label() for w in subset]


def test_distributive_affine(affine_a1: GCM) -> None:
    """Test L^{s0} meet L^{s1} is the sum over s0 s1 and s1 s0 in affine type."""
    module = HighestWeightModule(affine_a1, (1, 1))
    report = verify_distributive(
        module, [canonicalize(affine_a1, (0,)), canonicalize(affine_a1, (1,))], 4, 3
    )
    assert set(report.found) == {"0.1", "1.0"}
    assert report.certificate is None
