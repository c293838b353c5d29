"""Tests for quadric relations and the degree-two presentation."""

import pytest

from kmlab.errors import WindowTooSmall
from kmlab.ring import (
    build_truncation,
    pluecker_quadrics,
    vanishing_at_extremal_points,
    verify_degree2_presentation,
)
from kmlab.ring.pluecker import (
    format_relation,
    generator_variables,
    monomials,
    required_depth,
)
from kmlab.ring.section_ring import GradedRingTruncation
from kmlab.rootdata import GCM, canonicalize, enumerate_elements


def test_sl2_has_no_quadrics(a1: GCM) -> None:
    """Test the polynomial ring in two variables has no relations."""
    trunc = build_truncation(a1, 2, 2)
    blocks = pluecker_quadrics(trunc)
    assert sum(block.count for block in blocks) == 0
    middle = next(block for block in blocks if block.depth == (1,))
    assert middle.tensor_kernel_dim == 1
    assert len(middle.monomials) == 1


def test_sl3_single_quadric(a2: GCM) -> None:
    """Test the incidence relation between the two fundamental representations."""
    trunc = build_truncation(a2, 2, 2)
    blocks = pluecker_quadrics(trunc)
    assert sum(block.count for block in blocks) == 1
    (block,) = [block for block in blocks if block.count]
    assert block.generators == (0, 1)
    assert block.depth == (1, 1)
    assert len(block.monomials) == 3
    text = format_relation(trunc, block, block.relations[0])
    assert "x1[" in text and "x2[" in text


def test_monomials_are_sorted(a2: GCM) -> None:
    """Test commutative monomials are canonical sorted tuples."""
    trunc = build_truncation(a2, 2, 2)
    monos = monomials(trunc, (2, 0), (1, 0))
    assert all(list(mono) == sorted(mono) for mono in monos)
    assert len(monos) == 1


def test_quadrics_need_degree_two(a2: GCM) -> None:
    """Test D = 1 cannot hold quadrics."""
    with pytest.raises(WindowTooSmall):
        pluecker_quadrics(build_truncation(a2, 1, 2))


def test_vanishing_at_extremal_points(a2: GCM) -> None:
    """Test every quadric vanishes at the extremal points of W."""
    trunc = build_truncation(a2, 2, 4)
    blocks = pluecker_quadrics(trunc)
    results = vanishing_at_extremal_points(trunc, blocks, enumerate_elements(a2, 3))
    assert len(results) == 6
    assert all(result.vanishes is True for result in results)


def test_vanishing_undecided_outside_window(a2: GCM) -> None:
    """Test points beyond the depth window are left undecided."""
    trunc = build_truncation(a2, 2, 2)
    blocks = pluecker_quadrics(trunc)
    (result,) = vanishing_at_extremal_points(trunc, blocks, [canonicalize(a2, (0, 1, 0))])
    assert result.vanishes is None


def test_required_depth(a1: GCM, a2: GCM) -> None:
    """Test the depth of w0 on the generators."""
    assert required_depth(build_truncation(a1, 1, 1)) == 1
    assert required_depth(build_truncation(a2, 1, 2)) == 2


def test_presentation_sl2(a1: GCM) -> None:
    """Test the degree-three check on a polynomial ring."""
    report = verify_degree2_presentation(build_truncation(a1, 3, 3))
    assert report.passed
    assert all(n == 0 for n in report.required.values())


@pytest.mark.slow
def test_presentation_sl3(a2: GCM) -> None:
    """Test the single quadric generates every cubic relation of sl3."""
    report = verify_degree2_presentation(build_truncation(a2, 3, 2))
    assert report.passed, report.failures()
    assert sum(report.required.values()) > 0


def test_presentation_needs_degree_three(a2: GCM) -> None:
    """Test D < 3 is refused."""
    with pytest.raises(WindowTooSmall):
        verify_degree2_presentation(build_truncation(a2, 2, 2))


def test_presentation_needs_w0_depth(a2: GCM) -> None:
    """Test a finite-type window that does not reach w0."""
    with pytest.raises(WindowTooSmall):
        verify_degree2_presentation(build_truncation(a2, 3, 1))


def test_monomials_are_canonical(hyperbolic: GCM) -> None:
    """Test monomials are sorted tuples when window order and lex order of depths disagree."""
    trunc = GradedRingTruncation(hyperbolic, 1, 7)
    depths = [var[1] for var in generator_variables(trunc, 1)]
    assert depths != sorted(depths)
    monos = monomials(trunc, (0, 3), (3, 4))
    assert monos
    assert all(list(mono) == sorted(mono) for mono in monos)
    assert len(set(monos)) == len(monos)


@pytest.mark.slow
def test_presentation_hyperbolic(hyperbolic: GCM) -> None:
    """Test the degree-three check runs on a hyperbolic window with unordered depths."""
    report = verify_degree2_presentation(build_truncation(hyperbolic, 3, 7))
    assert report.required
    assert report.passed, report.failures()


@pytest.mark.slow
def test_presentation_so5(b2: GCM) -> None:
    """Test the quadrics of so5 generate the degree-three relations."""
    trunc = build_truncation(b2, 3, 4)
    assert required_depth(trunc) == 4
    report = verify_degree2_presentation(trunc)
    assert report.required
    assert report.passed, report.failures()
