"""Tests for Frobenius splittings of ring truncations."""

import pytest

from kmlab.errors import AmbientMismatch, WindowTooSmall
from kmlab.ring import (
    GradedRingTruncation,
    build_truncation,
    check_canonical_degree,
    check_compatibility,
    demazure_ideal,
    find_splitting,
    reduce_mod_p,
    verify_quotient_splitting,
    verify_splitting,
)
from kmlab.ring.frobenius import SplittingCandidate, canonical_degree_report, graded_keys
from kmlab.rootdata import GCM, canonicalize, enumerate_elements, identity


@pytest.fixture
def sl2_mod2(a1: GCM) -> GradedRingTruncation:
    """The sl2 truncation D = 2, d = 2 over F_2."""
    return reduce_mod_p(build_truncation(a1, 2, 2), 2)


@pytest.fixture
def trace_splitting(sl2_mod2: GradedRingTruncation) -> SplittingCandidate:
    """The splitting x^2 -> x, y^2 -> y found by the solver."""
    candidate = find_splitting(sl2_mod2)
    assert candidate is not None
    return candidate


def test_graded_keys(sl2_mod2: GradedRingTruncation) -> None:
    """Test the unknown blocks R_{2 varpi, 2n} -> R_{varpi, n}."""
    assert graded_keys(sl2_mod2) == [((1,), (0,), (0,)), ((1,), (2,), (1,))]


def test_trace_splitting(trace_splitting: SplittingCandidate) -> None:
    """Test the solver recovers phi(x^2) = x and phi(y^2) = y."""
    assert trace_splitting.report is not None and trace_splitting.report.passed
    assert trace_splitting.maps[((1,), (0,), (0,))] == [[1]]
    assert trace_splitting.maps[((1,), (2,), (1,))] == [[1]]
    assert trace_splitting.maps[((0,), (0,), (0,))] == [[1]]
    assert verify_splitting(trace_splitting).passed


def test_apply(trace_splitting: SplittingCandidate) -> None:
    """Test phi(y^2) = y and that the odd-depth piece has no graded image."""
    assert trace_splitting.apply((1,), [1], (2,)) == {(1,): [1]}
    assert trace_splitting.apply((1,), [1], (1,)) == {}


def test_certificate_dict(trace_splitting: SplittingCandidate) -> None:
    """Test the serialisable form of a splitting."""
    data = trace_splitting.to_dict()
    assert data["prime"] == 2
    assert len(data["maps"]) == 3


def test_trace_is_canonical(trace_splitting: SplittingCandidate) -> None:
    """Test the trace splitting has canonical degree."""
    assert check_canonical_degree(trace_splitting, 0)


def test_shifted_splitting_not_canonical(trace_splitting: SplittingCandidate) -> None:
    """Test phi'(x^2) = x + y breaks the canonical-degree condition."""
    maps = dict(trace_splitting.maps)
    maps[((1,), (0,), (1,))] = [[1]]
    shifted = SplittingCandidate(2, trace_splitting.truncation, maps)
    report = canonical_degree_report(shifted, 0)
    assert not report.canonical
    assert report.offending


def test_canonical_needs_depth(a1: GCM) -> None:
    """Test d < p leaves the canonical condition invisible."""
    trunc = reduce_mod_p(build_truncation(a1, 2, 1), 2)
    candidate = find_splitting(trunc)
    assert candidate is not None
    with pytest.raises(WindowTooSmall):
        check_canonical_degree(candidate, 0)


def test_compatible_with_schubert_ideal(sl2_mod2: GradedRingTruncation, a1: GCM) -> None:
    """Test the splitting preserves I^{s1} and descends to the quotient."""
    ideal = demazure_ideal(canonicalize(a1, (0,)), sl2_mod2)
    candidate = find_splitting(sl2_mod2, compatible_with=[ideal], canonical=True)
    assert candidate is not None
    assert check_compatibility(candidate, ideal)
    assert verify_quotient_splitting(candidate, ideal).passed


def test_zero_ideal_compatible(trace_splitting: SplittingCandidate, a1: GCM) -> None:
    """Test I^e = 0 is trivially compatible."""
    ideal = demazure_ideal(identity(a1), trace_splitting.truncation)
    assert check_compatibility(trace_splitting, ideal)


def test_ideal_from_other_truncation(sl2_mod2: GradedRingTruncation, a1: GCM) -> None:
    """Test ideals must live on the solver's truncation."""
    other = reduce_mod_p(build_truncation(a1, 2, 2), 2)
    ideal = demazure_ideal(identity(a1), other)
    with pytest.raises(AmbientMismatch):
        find_splitting(sl2_mod2, compatible_with=[ideal])


def test_degree_bound_below_p(a1: GCM) -> None:
    """Test D < p has no Frobenius-linearity constraints."""
    trunc = reduce_mod_p(build_truncation(a1, 2, 2), 3)
    with pytest.raises(WindowTooSmall):
        find_splitting(trunc)


def test_rational_truncation_rejected(a1: GCM) -> None:
    """Test splittings are only defined over F_p."""
    with pytest.raises(ValueError):
        find_splitting(build_truncation(a1, 2, 2))


def test_compatible_with_every_schubert_ideal(a1: GCM) -> None:
    """Test one canonical splitting preserves every I^w of sl2."""
    trunc = reduce_mod_p(build_truncation(a1, 3, 3), 2)
    ideals = [demazure_ideal(w, trunc) for w in enumerate_elements(a1, 1)]
    candidate = find_splitting(trunc, compatible_with=ideals, canonical=True)
    assert candidate is not None
    assert candidate.report is not None and candidate.report.passed
    assert all(check_compatibility(candidate, ideal) for ideal in ideals)
    assert check_canonical_degree(candidate, 0)


@pytest.mark.slow
def test_sl3_splitting(a2: GCM) -> None:
    """Test a splitting of the sl3 truncation exists mod 2."""
    trunc = reduce_mod_p(build_truncation(a2, 2, 2), 2)
    candidate = find_splitting(trunc)
    assert candidate is not None
    assert candidate.report is not None and candidate.report.passed


def _check_schubert_compatible(trunc: GradedRingTruncation) -> None:
    gcm = trunc.gcm
    ideals = [demazure_ideal(w, trunc) for w in enumerate_elements(gcm, 8)]
    candidate = find_splitting(trunc, compatible_with=ideals, canonical=True)
    assert candidate is not None
    assert candidate.report is not None and candidate.report.passed
    assert all(check_compatibility(candidate, ideal) for ideal in ideals)
    assert all(check_canonical_degree(candidate, i) for i in gcm.indices)


def test_schubert_compatible_sl2_mod3(a1: GCM) -> None:
    """Test a canonical splitting mod 3 preserving every I^w of sl2."""
    _check_schubert_compatible(reduce_mod_p(build_truncation(a1, 4, 4), 3))


@pytest.mark.slow
def test_schubert_compatible_sl3_mod2(a2: GCM) -> None:
    """Test a canonical splitting mod 2 preserving every I^w of sl3."""
    _check_schubert_compatible(reduce_mod_p(build_truncation(a2, 3, 2), 2))
