"""Thin and thick Demazure families and the containment checks built on them."""

import logging
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from kmlab.errors import AmbientMismatch, DepthTooSmall
from kmlab.reps.chars import char_thick_demazure
from kmlab.reps.modules import HighestWeightModule, WeightSubspace
from kmlab.rootdata.weyl import (
    WeylElement,
    bruhat_leq,
    enumerate_elements,
    min_coset_rep,
    minimal_upper_bounds,
)
from kmlab.utils.linalg import RATIONALS, ScalarField, Vector, combine_rows

logger = logging.getLogger(__name__)

Depth = Tuple[int, ...]

THIN = "thin"
THICK = "thick"


def window_depths(rank: int, depth_bound: int) -> List[Depth]:
    """All depth vectors with nonnegative entries and total at most ``depth_bound``."""
    depths = [m for m in product(range(depth_bound + 1), repeat=rank) if sum(m) <= depth_bound]
    return sorted(depths, key=lambda m: (sum(m), m))


def _step(m: Depth, i: int, a: int) -> Depth:
    return tuple(x + a if j == i else x for j, x in enumerate(m))


@dataclass(eq=False)
class DemazureFamily:
    """Weightwise subspaces of L(lambda) inside the window of total depth <= depth_bound."""

    module: HighestWeightModule
    w: Optional[WeylElement]
    kind: str
    depth_bound: int
    scalar_field: ScalarField = RATIONALS
    spaces: Dict[Depth, WeightSubspace] = field(default_factory=dict)

    @property
    def modulus(self) -> Optional[int]:
        return self.scalar_field.modulus

    def subspace(self, depth: Sequence[int]) -> WeightSubspace:
        m = tuple(depth)
        if m in self.spaces:
            return self.spaces[m]
        return WeightSubspace(m, self.module.dim_weight(m), self.scalar_field)

    def dims(self) -> Dict[Depth, int]:
        ordered = sorted(self.spaces.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return {m: s.dim for m, s in ordered if s.dim}

    def support(self) -> List[Depth]:
        return list(self.dims())

    def _check(self, other: "DemazureFamily") -> None:
        if (
            self.module is not other.module
            or self.depth_bound != other.depth_bound
            or self.scalar_field != other.scalar_field
        ):
            raise AmbientMismatch("Demazure families over different modules, windows or fields")

    def _combine(self, kind: str, spaces: Dict[Depth, WeightSubspace]) -> "DemazureFamily":
        return DemazureFamily(self.module, None, kind, self.depth_bound, self.scalar_field, spaces)

    def sum(self, other: "DemazureFamily") -> "DemazureFamily":
        self._check(other)
        keys = set(self.spaces) | set(other.spaces)
        return self._combine("sum", {m: self.subspace(m).sum(other.subspace(m)) for m in keys})

    def intersect(self, other: "DemazureFamily") -> "DemazureFamily":
        self._check(other)
        keys = set(self.spaces) & set(other.spaces)
        return self._combine(
            "intersection", {m: self.subspace(m).intersect(other.subspace(m)) for m in keys}
        )

    def issubset(self, other: "DemazureFamily") -> bool:
        self._check(other)
        return all(s.issubset(other.subspace(m)) for m, s in self.spaces.items() if s.dim)

    def equal(self, other: "DemazureFamily") -> bool:
        return self.issubset(other) and other.issubset(self)

    def first_difference(self, other: "DemazureFamily") -> Optional[Tuple[Depth, int, int]]:
        """First depth where the two families differ, with both dimensions."""
        self._check(other)
        keys = sorted(set(self.spaces) | set(other.spaces), key=lambda m: (sum(m), m))
        for m in keys:
            a, b = self.subspace(m), other.subspace(m)
            if a != b:
                return m, a.dim, b.dim
        return None

    def to_dict(self) -> Dict[str, object]:
        return {
            "lambda": list(self.module.anchor),
            "w": self.w.label() if self.w is not None else None,
            "kind": self.kind,
            "depth": self.depth_bound,
            "field": self.scalar_field.label(),
            "table": [{"m": list(m), "dim": d} for m, d in self.dims().items()],
        }


def zero_family(
    module: HighestWeightModule, depth_bound: int, kind: str, field_: ScalarField = RATIONALS
) -> DemazureFamily:
    return DemazureFamily(module, None, kind, depth_bound, field_)


def full_family(
    module: HighestWeightModule, depth_bound: int, field_: ScalarField = RATIONALS
) -> DemazureFamily:
    spaces = {
        m: WeightSubspace.full(m, module.dim_weight(m), field_)
        for m in window_depths(module.gcm.rank, depth_bound)
    }
    return DemazureFamily(module, None, "full", depth_bound, field_, spaces)


def family_sum(families: Iterable[DemazureFamily]) -> DemazureFamily:
    return reduce(lambda a, b: a.sum(b), families)


def family_intersection(families: Iterable[DemazureFamily]) -> DemazureFamily:
    return reduce(lambda a, b: a.intersect(b), families)


def _propagate(
    module: HighestWeightModule,
    spaces: Dict[Depth, WeightSubspace],
    source: Depth,
    i: int,
    a: int,
    target: Depth,
    images: List[Vector],
    field_: ScalarField,
) -> None:
    dim = module.dim_weight(target)
    if dim == 0:
        return
    space = spaces.setdefault(target, WeightSubspace(target, dim, field_))
    for row in spaces[source].rows:
        space.add(combine_rows(row, images, dim, field_))


def thin_demazure(
    module: HighestWeightModule, w: WeylElement, depth_bound: int
) -> DemazureFamily:
    """L_w(lambda) = U(n) v_{w lambda} over QQ, restricted to the window.

    The closure is taken over the whole support below the extremal weight, which may
    lie outside the window.
    """
    w = min_coset_rep(w, module.weight)
    top = module.extremal_depth(w)
    start = WeightSubspace(top, module.dim_weight(top), RATIONALS, [module.extremal_coords(w)])
    spaces = {top: start}
    for total in range(sum(top), 0, -1):
        for m in sorted(k for k in list(spaces) if sum(k) == total):
            for i in module.gcm.indices:
                if m[i] == 0:
                    continue
                target = _step(m, i, -1)
                _propagate(module, spaces, m, i, 1, target, module.E_images(i, 1, m), RATIONALS)
    window = {m: s for m, s in spaces.items() if sum(m) <= depth_bound and s.dim}
    return DemazureFamily(module, w, THIN, depth_bound, RATIONALS, window)


def _thick_closure(
    module: HighestWeightModule,
    w: WeylElement,
    depth_bound: int,
    modulus: Optional[int],
    all_powers: bool,
) -> Dict[Depth, WeightSubspace]:
    field_ = ScalarField(modulus)
    top = module.extremal_depth(w)
    start = module.extremal_coords(w, modulus)
    spaces = {top: WeightSubspace(top, module.dim_weight(top), field_, [start])}
    for total in range(sum(top), depth_bound):
        for m in sorted(k for k in list(spaces) if sum(k) == total):
            for i in module.gcm.indices:
                powers = range(1, depth_bound - total + 1) if all_powers else (1,)
                for a in powers:
                    target = _step(m, i, a)
                    _propagate(
                        module, spaces, m, i, a, target, module.F_images(i, a, m, modulus), field_
                    )
    return spaces


def thick_demazure(
    module: HighestWeightModule,
    w: WeylElement,
    depth_bound: int,
    modulus: Optional[int] = None,
    allow_outside: bool = False,
) -> DemazureFamily:
    """L^w(lambda) = U(n^-) v_{w lambda} inside the window.

    Over QQ the closure uses F_i^(1); mod p it uses every divided power on the
    integral lattice.

    Args:
        module: Ambient module L(lambda)
        w: Weyl element
        depth_bound: Window depth d
        modulus: Prime for the reduction of the integral form, or None for QQ
        allow_outside: Return the zero family instead of raising when w(lambda) is
            deeper than the window

    Raises:
        DepthTooSmall: If w(lambda) lies outside the window and ``allow_outside`` is False
    """
    w = min_coset_rep(w, module.weight)
    field_ = ScalarField(modulus)
    top = module.extremal_depth(w)
    if sum(top) > depth_bound:
        if allow_outside:
            return DemazureFamily(module, w, THICK, depth_bound, field_)
        raise DepthTooSmall(depth_bound, sum(top))
    spaces = _thick_closure(module, w, depth_bound, modulus, all_powers=modulus is not None)
    return DemazureFamily(module, w, THICK, depth_bound, field_, spaces)


def subspace_sum(a: DemazureFamily, b: DemazureFamily) -> DemazureFamily:
    return a.sum(b)


def subspace_intersect(a: DemazureFamily, b: DemazureFamily) -> DemazureFamily:
    return a.intersect(b)


def subspace_equal(a: DemazureFamily, b: DemazureFamily) -> bool:
    return a.equal(b)


# Verification ------------------------------------------------------------------


@dataclass
class ContainmentReport:
    """Thick containment L^w in L^v against the Bruhat order."""

    anchor: Tuple[int, ...]
    max_len: int
    depth_bound: int
    iff_checked: bool
    pairs_checked: int = 0
    undecided: List[Tuple[str, str]] = field(default_factory=list)
    counterexamples: List[Tuple[str, str, bool, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_containment_order(
    module: HighestWeightModule, max_len: int, depth_bound: int
) -> ContainmentReport:
    """Check v <= w iff L^w(lambda) is contained in L^v(lambda), over all pairs up to ``max_len``.

    The converse direction is only checked for regular dominant lambda. Pairs whose
    w(lambda) lies outside the window are reported as undecided.
    """
    gcm = module.gcm
    regular = gcm.is_regular_dominant(module.weight)
    elements = enumerate_elements(gcm, max_len)
    families = {
        w: thick_demazure(module, w, depth_bound, allow_outside=True) for w in elements
    }
    inside = {w: sum(module.extremal_depth(w)) <= depth_bound for w in elements}
    report = ContainmentReport(module.anchor, max_len, depth_bound, regular)
    for v in elements:
        for w in elements:
            if not inside[w]:
                report.undecided.append((v.label(), w.label()))
                continue
            expected = bruhat_leq(v, w)
            contained = families[w].issubset(families[v])
            report.pairs_checked += 1
            if expected != contained and (regular or expected):
                report.counterexamples.append((v.label(), w.label(), contained, expected))
    logger.info(
        "containment: %d pairs, %d undecided, %d counterexamples",
        report.pairs_checked,
        len(report.undecided),
        len(report.counterexamples),
    )
    return report


@dataclass
class DistributiveReport:
    """Intersection of thick families over S compared with a sum over S'."""

    anchor: Tuple[int, ...]
    depth_bound: int
    search_len: int
    elements: List[str]
    found: Optional[List[str]] = None
    method: str = ""
    certificate: Optional[Tuple[Depth, int, int]] = None
    intersection_dims: Dict[Depth, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.found is not None


def _bruhat_minimal(elements: List[WeylElement]) -> List[WeylElement]:
    return [u for u in elements if not any(o != u and bruhat_leq(o, u) for o in elements)]


def verify_distributive(
    module: HighestWeightModule,
    elements: Sequence[WeylElement],
    depth_bound: int,
    search_len: int,
) -> DistributiveReport:
    """Find S' with the intersection of L^w over S equal to the sum of L^v over S'.

    The candidate is the set of minimal upper bounds of S; if it fails, the Bruhat-minimal
    elements among all v (length <= search_len, v(lambda) in the window) whose thick
    family lies in the intersection are tried.

    Raises:
        EmptyWithinBound: If S has no upper bound of length <= search_len
    """
    targets = list(elements)
    thick = {
        w: thick_demazure(module, w, depth_bound, allow_outside=True)
        for w in targets
    }
    intersection = family_intersection(thick[w] for w in targets)
    report = DistributiveReport(
        module.anchor,
        depth_bound,
        search_len,
        [w.label() for w in targets],
        intersection_dims=intersection.dims(),
    )

    candidate = minimal_upper_bounds(targets, search_len)
    candidate_sum = family_sum(
        [thick_demazure(module, v, depth_bound, allow_outside=True) for v in candidate]
    )
    mismatch = candidate_sum.first_difference(intersection)
    if mismatch is None:
        report.found = [v.label() for v in candidate]
        report.method = "minimal_upper_bounds"
        return report

    logger.info("minimal upper bounds fail at %s; searching length <= %d", mismatch[0], search_len)
    inside = [
        v
        for v in enumerate_elements(module.gcm, search_len)
        if sum(module.extremal_depth(v)) <= depth_bound
    ]
    below = [
        v for v in inside if thick_demazure(module, v, depth_bound).issubset(intersection)
    ]
    if below:
        total = family_sum([thick_demazure(module, v, depth_bound) for v in below])
        mismatch = total.first_difference(intersection)
    else:
        mismatch = zero_family(module, depth_bound, "sum").first_difference(intersection)
    if mismatch is None:
        report.found = [v.label() for v in _bruhat_minimal(below)]
        report.method = "search"
    else:
        report.certificate = mismatch
    return report


@dataclass
class CyclicReport:
    """Cyclicity of L^w(lambda) from its extremal line.

    ``matches_character`` compares the dims of the closure from the extremal vector with
    the thick Demazure character; it is None for infinite type.
    """

    anchor: Tuple[int, ...]
    w: str
    depth_bound: int
    scalar_field: str
    extremal_dim: int
    extremal_line: bool
    above_extremal: bool
    matches_character: Optional[bool]
    mismatches: List[Tuple[Depth, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.extremal_dim == 1
            and self.extremal_line
            and self.above_extremal
            and self.matches_character is not False
        )


def verify_cyclic(
    module: HighestWeightModule,
    w: WeylElement,
    depth_bound: int,
    modulus: Optional[int] = None,
) -> CyclicReport:
    """Check that L^w(lambda) is generated by its one-dimensional extremal weight space.

    The closure of the extremal vector (every divided power when ``modulus`` is set) must
    have the dims of the thick Demazure character at each depth of the window, and its
    support must lie in w(lambda) - Q_+.
    """
    w = min_coset_rep(w, module.weight)
    field_ = ScalarField(modulus)
    family = thick_demazure(module, w, depth_bound, modulus)
    top = module.extremal_depth(w)
    extremal = WeightSubspace(
        top, module.dim_weight(top), field_, [module.extremal_coords(w, modulus)]
    )
    report = CyclicReport(
        anchor=module.anchor,
        w=w.label(),
        depth_bound=depth_bound,
        scalar_field=field_.label(),
        extremal_dim=module.dim_weight(top),
        extremal_line=family.subspace(top) == extremal,
        above_extremal=all(all(x >= y for x, y in zip(m, top)) for m in family.support()),
        matches_character=None,
    )
    character = char_thick_demazure(module.gcm, module.weight, w, depth_bound)
    if character is not None:
        dims = family.dims()
        for m in window_depths(module.gcm.rank, depth_bound):
            if dims.get(m, 0) != character.coefficient(m):
                report.mismatches.append((m, dims.get(m, 0), character.coefficient(m)))
        report.matches_character = not report.mismatches
    return report


@dataclass
class RestrictionReport:
    anchor: Tuple[int, ...]
    v: str
    w: str
    depth_bound: int
    decided: bool
    nonzero: bool
    expected: bool

    @property
    def passed(self) -> bool:
        return not self.decided or self.nonzero == self.expected


def verify_restriction(
    module: HighestWeightModule, v: WeylElement, w: WeylElement, depth_bound: int
) -> RestrictionReport:
    """Check that L^v(lambda) meets L_w(lambda) nontrivially exactly when v <= w."""
    decided = sum(module.extremal_depth(v)) <= depth_bound
    thick = thick_demazure(module, v, depth_bound, allow_outside=True)
    thin = thin_demazure(module, w, depth_bound)
    meet = thick.intersect(thin)
    return RestrictionReport(
        anchor=module.anchor,
        v=v.label(),
        w=w.label(),
        depth_bound=depth_bound,
        decided=decided,
        nonzero=bool(meet.dims()),
        expected=bruhat_leq(v, w),
    )
