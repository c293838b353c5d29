"""Truncated characters, Demazure operators, root multiplicities and the Weyl-Kac check."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from kmlab.config import load_config
from kmlab.errors import NotConverged, NotSymmetrizable
from kmlab.rootdata.gcm import GCM, Weight, WeightLike, require_dominant
from kmlab.rootdata.weyl import WeylElement, canonicalize, identity, longest_element

logger = logging.getLogger(__name__)

Depth = Tuple[int, ...]


def _within(m: Depth, bound: Optional[int]) -> bool:
    return bound is None or (all(x >= 0 for x in m) and sum(m) <= bound)


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass
class CharacterPoly:
    """Formal sum of e^(anchor - sum m_i alpha_i), truncated at total depth ``depth_bound``.

    ``depth_bound=None`` means untruncated. Zero coefficients are never stored.
    """

    anchor: Tuple[int, ...]
    depth_bound: Optional[int]
    coeffs: Dict[Depth, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.coeffs = {
            tuple(m): c for m, c in self.coeffs.items() if c and _within(tuple(m), self.depth_bound)
        }

    @classmethod
    def monomial(cls, weight: Weight, depth_bound: Optional[int] = None) -> "CharacterPoly":
        return cls(weight.anchor, depth_bound, {weight.depth: 1})

    @classmethod
    def one(cls, rank: int, depth_bound: Optional[int] = None) -> "CharacterPoly":
        return cls((0,) * rank, depth_bound, {(0,) * rank: 1})

    def truncate(self, depth_bound: Optional[int]) -> "CharacterPoly":
        return CharacterPoly(self.anchor, _min_bound(self.depth_bound, depth_bound), self.coeffs)

    def coefficient(self, m: Sequence[int]) -> int:
        return self.coeffs.get(tuple(m), 0)

    def terms(self) -> Iterator[Tuple[Depth, int]]:
        """Terms sorted by total depth, then lexicographically."""
        for m in sorted(self.coeffs, key=lambda k: (sum(k), k)):
            yield m, self.coeffs[m]

    @property
    def mass(self) -> int:
        return sum(self.coeffs.values())

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterPoly):
            return NotImplemented
        return self.anchor == other.anchor and self.coeffs == other.coeffs

    def __add__(self, other: "CharacterPoly") -> "CharacterPoly":
        if self.anchor != other.anchor:
            raise ValueError("cannot add characters with different anchors")
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            coeffs[m] = coeffs.get(m, 0) + c
        return CharacterPoly(self.anchor, _min_bound(self.depth_bound, other.depth_bound), coeffs)

    def __neg__(self) -> "CharacterPoly":
        return CharacterPoly(self.anchor, self.depth_bound, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "CharacterPoly") -> "CharacterPoly":
        return self + (-other)

    def __mul__(self, other: "CharacterPoly") -> "CharacterPoly":
        bound = _min_bound(self.depth_bound, other.depth_bound)
        coeffs: Dict[Depth, int] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if _within(m, bound):
                    coeffs[m] = coeffs.get(m, 0) + c1 * c2
        anchor = tuple(a + b for a, b in zip(self.anchor, other.anchor))
        return CharacterPoly(anchor, bound, coeffs)

    def leq(self, other: "CharacterPoly") -> bool:
        """Coefficientwise comparison."""
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(m) <= other.coefficient(m) for m in keys)

    def first_difference(self, other: "CharacterPoly") -> Optional[Tuple[Depth, int, int]]:
        """First depth (by total depth, then lexicographic) where the coefficients differ."""
        keys = sorted(set(self.coeffs) | set(other.coeffs), key=lambda k: (sum(k), k))
        for m in keys:
            if self.coefficient(m) != other.coefficient(m):
                return m, self.coefficient(m), other.coefficient(m)
        return None

    def to_dict(self) -> Dict[str, object]:
        return {
            "anchor": list(self.anchor),
            "depth_bound": self.depth_bound,
            "terms": [{"m": list(m), "coeff": c} for m, c in self.terms()],
        }


@dataclass(frozen=True)
class RootEntry:
    multiplicity: int
    is_real: bool


@dataclass
class RootTable:
    """Positive roots of height <= depth_bound, keyed by their simple-root coordinates."""

    depth_bound: int
    entries: Dict[Depth, RootEntry] = field(default_factory=dict)

    def multiplicity(self, root: Sequence[int]) -> int:
        entry = self.entries.get(tuple(root))
        return entry.multiplicity if entry else 0

    def sorted_roots(self) -> List[Depth]:
        return sorted(self.entries, key=lambda k: (sum(k), k))


# Roots ----------------------------------------------------------------------


def real_roots(gcm: GCM, depth_bound: int) -> RootTable:
    """Positive real roots of height <= depth_bound.

    Grown from the simple roots by reflections that raise the height.
    """
    table = RootTable(depth_bound)
    if depth_bound < 1:
        return table
    frontier = []
    for i in gcm.indices:
        root = tuple(1 if j == i else 0 for j in gcm.indices)
        table.entries[root] = RootEntry(1, True)
        frontier.append(root)
    while frontier:
        nxt = []
        for root in frontier:
            for j in gcm.indices:
                n = gcm.root_pairing(j, root)
                if n >= 0:
                    continue
                image = tuple(r - n if k == j else r for k, r in enumerate(root))
                if sum(image) <= depth_bound and image not in table.entries:
                    table.entries[image] = RootEntry(1, True)
                    nxt.append(image)
        frontier = nxt
    return table


def _positive_vectors(rank: int, depth_bound: int) -> List[Depth]:
    vectors = [
        m for m in product(range(depth_bound + 1), repeat=rank) if 0 < sum(m) <= depth_bound
    ]
    return sorted(vectors, key=lambda m: (sum(m), m))


def peterson_mults(gcm: GCM, depth_bound: int) -> RootTable:
    """Root multiplicities up to height ``depth_bound`` by the Peterson recursion.

    Works with c_beta = sum_k mult(beta/k)/k and
    (beta | beta - 2 rho) c_beta = sum over beta' + beta'' = beta of
    (beta'|beta'') c_beta' c_beta''.

    Raises:
        NotSymmetrizable: If the GCM has no symmetrizer
    """
    if not gcm.is_symmetrizable:
        raise NotSymmetrizable(gcm.name)
    real = real_roots(gcm, depth_bound)
    vectors = _positive_vectors(gcm.rank, depth_bound)
    c: Dict[Depth, Fraction] = {}
    mult: Dict[Depth, int] = {}

    for beta in vectors:
        if sum(beta) == 1:
            c[beta] = Fraction(1)
            mult[beta] = 1
            continue
        rhs = Fraction(0)
        for b1, c1 in c.items():
            b2 = tuple(x - y for x, y in zip(beta, b1))
            c2 = c.get(b2)
            if c2:
                rhs += gcm.form(b1, b2) * c1 * c2
        factor = gcm.form(beta, beta) - 2 * gcm.rho_form(beta)

        divisor_part = Fraction(0)
        for k in range(2, max(beta) + 1):
            if all(x % k == 0 for x in beta):
                divisor_part += Fraction(mult.get(tuple(x // k for x in beta), 0), k)

        if factor == 0:
            c_beta = divisor_part
        else:
            c_beta = rhs / factor
        m = c_beta - divisor_part
        if m.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {m} at {beta}")
        m_int = 1 if beta in real.entries else int(m)
        if m_int:
            c[beta] = c_beta if beta not in real.entries else divisor_part + 1
            mult[beta] = m_int
        elif c_beta:
            c[beta] = c_beta

    table = RootTable(depth_bound)
    for beta, m in mult.items():
        if m > 0:
            table.entries[beta] = RootEntry(m, beta in real.entries)
    logger.debug("peterson: %d positive roots up to height %d", len(table.entries), depth_bound)
    return table


# Demazure operators ------------------------------------------------------------


def demazure_op(gcm: GCM, i: int, f: CharacterPoly) -> CharacterPoly:
    """Apply the Demazure operator D_i monomial by monomial, then truncate."""
    coeffs: Dict[Depth, int] = {}
    for m, c in f.coeffs.items():
        n = gcm.pairing(i, Weight(f.anchor, m))
        if n >= 0:
            for k in range(n + 1):
                key = tuple(x + k if j == i else x for j, x in enumerate(m))
                coeffs[key] = coeffs.get(key, 0) + c
        elif n <= -2:
            for k in range(1, -n):
                key = tuple(x - k if j == i else x for j, x in enumerate(m))
                coeffs[key] = coeffs.get(key, 0) - c
    return CharacterPoly(f.anchor, f.depth_bound, coeffs)


def char_demazure(
    gcm: GCM,
    weight: WeightLike,
    w: Union[WeylElement, Sequence[int]],
    depth_bound: Optional[int],
) -> CharacterPoly:
    """Character of the thin Demazure module L_w(lambda), truncated at ``depth_bound``.

    Args:
        gcm: Root datum
        weight: Dominant highest weight
        w: Weyl element, or any reduced word for it
        depth_bound: Truncation depth (None for the full finite character)

    Raises:
        NotDominant: If ``weight`` is not dominant
    """
    lam = require_dominant(gcm, weight)
    word = w.reduced_word if isinstance(w, WeylElement) else tuple(w)
    f = CharacterPoly.monomial(lam)
    for i in reversed(word):
        f = demazure_op(gcm, i, f)
    return f.truncate(depth_bound)


def char_thick_demazure(
    gcm: GCM,
    weight: WeightLike,
    w: Union[WeylElement, Sequence[int]],
    depth_bound: Optional[int],
) -> Optional[CharacterPoly]:
    """Character of the thick Demazure module L^w(lambda) for finite type; None otherwise.

    L^w(lambda) = w0 L_{w0 w}(lambda), so this is the thin character of w0 w with every
    weight moved by w0.
    """
    w0 = longest_element(gcm)
    if w0 is None:
        return None
    lam = require_dominant(gcm, weight)
    word = w.reduced_word if isinstance(w, WeylElement) else tuple(w)
    thin = char_demazure(gcm, lam, canonicalize(gcm, w0.reduced_word + tuple(word)), None)
    coeffs: Dict[Depth, int] = {}
    for m, c in thin.coeffs.items():
        image = w0.act(lam.with_depth(m)).depth
        coeffs[image] = coeffs.get(image, 0) + c
    return CharacterPoly(lam.anchor, depth_bound, coeffs)


def char_L(
    gcm: GCM,
    weight: WeightLike,
    depth_bound: int,
    stable_sweeps: Optional[int] = None,
    max_sweeps: Optional[int] = None,
) -> CharacterPoly:
    """Character of L(lambda) up to ``depth_bound`` by round-robin Demazure sweeps.

    Sweeps run on the untruncated polynomial; the truncation is compared after each
    sweep and declared stable after ``stable_sweeps`` unchanged sweeps.

    Raises:
        NotDominant: If ``weight`` is not dominant
        NotConverged: If the cap ``max_sweeps`` is reached
    """
    lam = require_dominant(gcm, weight)
    config = load_config()
    stable_sweeps = stable_sweeps or config["stable_sweeps"]
    max_sweeps = max_sweeps or config["max_sweeps"]

    f = CharacterPoly.monomial(lam)
    previous = f.truncate(depth_bound)
    unchanged = 0
    for sweep in range(1, max_sweeps + 1):
        for i in gcm.indices:
            f = demazure_op(gcm, i, f)
        current = f.truncate(depth_bound)
        unchanged = unchanged + 1 if current == previous else 0
        previous = current
        if unchanged >= stable_sweeps:
            logger.debug("char_L stabilized after %d sweeps (%d terms)", sweep, len(current))
            return current
    logger.warning("char_L did not stabilize within %d sweeps", max_sweeps)
    raise NotConverged(max_sweeps)


# Weyl-Kac ----------------------------------------------------------------------


@dataclass
class WeylKacReport:
    """Outcome of the truncated Weyl-Kac comparison."""

    anchor: Tuple[int, ...]
    depth_bound: int
    equal: bool
    numerator_terms: int
    roots_used: int
    first_mismatch: Optional[Tuple[Depth, int, int]] = None


def numerator_elements(gcm: GCM, shifted: Weight, depth_bound: int) -> List[WeylElement]:
    """Weyl elements w with depth(w(shifted)) <= depth_bound, for regular dominant ``shifted``."""
    start = identity(gcm)
    found = {start.rho_image: start}
    layer = [(start, shifted)]
    while layer:
        nxt = []
        for w, image in layer:
            for i in gcm.indices:
                n = gcm.pairing(i, image)
                if n <= 0 or image.total_depth + n > depth_bound:
                    continue
                u = w.left_multiply(i)
                if u.rho_image not in found:
                    found[u.rho_image] = u
                    nxt.append((u, gcm.reflect(i, image)))
        layer = nxt
    return sorted(found.values(), key=lambda u: (u.length, u.reduced_word))


def check_weyl_kac(gcm: GCM, weight: WeightLike, depth_bound: int) -> WeylKacReport:
    """Compare ch L(lambda) times the truncated denominator with the alternating numerator.

    Raises:
        NotSymmetrizable: If the GCM has no symmetrizer
        NotDominant: If ``weight`` is not dominant
    """
    lam = require_dominant(gcm, weight)
    if not gcm.is_symmetrizable:
        raise NotSymmetrizable(gcm.name)

    roots = peterson_mults(gcm, depth_bound)
    lhs = char_L(gcm, lam, depth_bound)
    for beta in roots.sorted_roots():
        factor = CharacterPoly(
            (0,) * gcm.rank, depth_bound, {(0,) * gcm.rank: 1, beta: -1}
        )
        for _ in range(roots.multiplicity(beta)):
            lhs = lhs * factor

    shifted = lam + gcm.rho
    rhs_coeffs: Dict[Depth, int] = {}
    elements = numerator_elements(gcm, shifted, depth_bound)
    for w in elements:
        m = w.act(shifted).depth
        rhs_coeffs[m] = rhs_coeffs.get(m, 0) + (-1) ** w.length
    rhs = CharacterPoly(lam.anchor, depth_bound, rhs_coeffs)

    mismatch = lhs.first_difference(rhs)
    if mismatch is not None:
        logger.info("Weyl-Kac mismatch at depth %s: %d vs %d", *mismatch)
    return WeylKacReport(
        anchor=lam.anchor,
        depth_bound=depth_bound,
        equal=mismatch is None,
        numerator_terms=len(elements),
        roots_used=len(roots.entries),
        first_mismatch=mismatch,
    )
