"""Integrable highest-weight modules in the F-word model.

A weight space of L(lambda) is the span of F-words of a fixed content modulo the
radical of the contravariant form. Words use divided powers throughout, so the
integral form spanned by words is available for reduction mod p.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from kmlab.errors import AmbientMismatch, IntegralityError
from kmlab.reps.chars import CharacterPoly
from kmlab.rootdata.gcm import GCM, Weight, WeightLike, require_dominant
from kmlab.rootdata.weyl import WeylElement, min_coset_rep
from kmlab.utils.linalg import (
    RATIONALS,
    EchelonBasis,
    Rows,
    ScalarField,
    Vector,
    combine_rows,
    hnf_lattice_basis,
    intersect_row_spaces,
    inverse,
    nullspace,
    rank,
)

logger = logging.getLogger(__name__)

Depth = Tuple[int, ...]
FWord = Tuple[Tuple[int, int], ...]
Combo = Dict[FWord, int]


def gbinom(x: int, t: int) -> int:
    """Binomial coefficient with arbitrary integer top entry."""
    if t < 0:
        return 0
    num = 1
    for k in range(t):
        num *= x - k
    return num // factorial(t)


def prepend(i: int, a: int, word: FWord) -> Tuple[int, FWord]:
    """F_i^(a) times a word, merging F_i^(a) F_i^(b) = C(a+b, a) F_i^(a+b)."""
    if word and word[0][0] == i:
        b = word[0][1]
        return comb(a + b, a), ((i, a + b),) + word[1:]
    return 1, ((i, a),) + word


def content(word: FWord, rank_: int) -> Depth:
    m = [0] * rank_
    for i, a in word:
        m[i] += a
    return tuple(m)


def format_fword(gcm: GCM, word: FWord) -> str:
    if not word:
        return "v"
    return " ".join(f"F{gcm.labels[i]}^({a})" for i, a in word) + " v"


@dataclass
class ModuleVector:
    """Vector of L(lambda) at depth ``depth`` as a combination of F-words."""

    anchor: Tuple[int, ...]
    depth: Depth
    coords: Dict[FWord, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.coords = {w: Fraction(c) for w, c in self.coords.items() if c}

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def scale(self, c: Union[int, Fraction]) -> "ModuleVector":
        return ModuleVector(self.anchor, self.depth, {w: c * x for w, x in self.coords.items()})

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if (self.anchor, self.depth) != (other.anchor, other.depth):
            raise AmbientMismatch("vectors live in different weight spaces")
        coords = dict(self.coords)
        for w, c in other.coords.items():
            coords[w] = coords.get(w, 0) + c
        return ModuleVector(self.anchor, self.depth, coords)


@dataclass
class WeightSpace:
    """Word data of one weight space: words, pivot basis words and the inverse Gram matrix."""

    depth: Depth
    words: List[FWord]
    basis_words: List[FWord]
    gram: Rows
    gram_inverse: Rows

    @property
    def dim(self) -> int:
        return len(self.basis_words)


class WeightSubspace:
    """Subspace of a weight space, held in echelon form over basis coordinates."""

    def __init__(
        self,
        depth: Depth,
        ambient_dim: int,
        field_: ScalarField = RATIONALS,
        rows: Sequence[Sequence[Union[int, Fraction]]] = (),
    ) -> None:
        self.depth = tuple(depth)
        self.ambient_dim = ambient_dim
        self.field = field_
        self._echelon = EchelonBasis.from_rows(
            [[field_.convert(x) for x in r] for r in rows], ambient_dim, field_
        )

    @classmethod
    def full(
        cls, depth: Depth, ambient_dim: int, field_: ScalarField = RATIONALS
    ) -> "WeightSubspace":
        identity_rows = [
            [1 if j == k else 0 for j in range(ambient_dim)] for k in range(ambient_dim)
        ]
        return cls(depth, ambient_dim, field_, identity_rows)

    @property
    def dim(self) -> int:
        return self._echelon.dim

    @property
    def rows(self) -> Rows:
        return [list(r) for r in self._echelon.rows]

    @property
    def pivots(self) -> List[int]:
        return list(self._echelon.pivots)

    def _check(self, other: "WeightSubspace") -> None:
        mine = (self.depth, self.ambient_dim, self.field)
        theirs = (other.depth, other.ambient_dim, other.field)
        if mine != theirs:
            raise AmbientMismatch(
                f"subspaces at {self.depth}/{self.field.label()} "
                f"and {other.depth}/{other.field.label()}"
            )

    def add(self, vector: Sequence[Union[int, Fraction]]) -> bool:
        return self._echelon.add([self.field.convert(x) for x in vector])

    def contains(self, vector: Sequence[Union[int, Fraction]]) -> bool:
        return self._echelon.contains([self.field.convert(x) for x in vector])

    def reduce(self, vector: Sequence[Union[int, Fraction]]) -> Vector:
        return self._echelon.reduce([self.field.convert(x) for x in vector])

    def issubset(self, other: "WeightSubspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self._echelon.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightSubspace):
            return NotImplemented
        return self.issubset(other) and other.issubset(self)

    __hash__ = None  # type: ignore[assignment]

    def sum(self, other: "WeightSubspace") -> "WeightSubspace":
        self._check(other)
        return WeightSubspace(self.depth, self.ambient_dim, self.field, self.rows + other.rows)

    def intersect(self, other: "WeightSubspace") -> "WeightSubspace":
        self._check(other)
        rows, _ = intersect_row_spaces(self.rows, other.rows, self.ambient_dim, self.field)
        return WeightSubspace(self.depth, self.ambient_dim, self.field, rows)

    def annihilator(self) -> "WeightSubspace":
        """Covectors vanishing on this subspace, in the dual basis."""
        return WeightSubspace(
            self.depth,
            self.ambient_dim,
            self.field,
            nullspace(self.rows, self.ambient_dim, self.field),
        )


@dataclass
class LatticeReport:
    """Outcome of the mod-p stability check of the integral word lattice at one weight."""

    depth: Depth
    prime: int
    dim: int
    lattice_rank: int
    integral: bool
    mod_p_rank: int
    form_rank_mod_p: int

    @property
    def passed(self) -> bool:
        return self.integral and self.lattice_rank == self.dim and self.mod_p_rank == self.dim


class HighestWeightModule:
    """The irreducible integrable module L(lambda) for a dominant integral weight."""

    def __init__(
        self, gcm: GCM, weight: WeightLike, character: Optional[CharacterPoly] = None
    ) -> None:
        """Initialize the module model.

        Args:
            gcm: Root datum
            weight: Dominant highest weight
            character: Optional known character; weight-space rank searches stop once
                they reach its coefficient

        Raises:
            NotDominant: If the weight is not dominant
        """
        self.gcm = gcm
        self.weight = require_dominant(gcm, weight)
        self.anchor = self.weight.anchor
        self.character = character
        self._words: Dict[Depth, List[FWord]] = {}
        self._e_cache: Dict[Tuple[int, int, FWord], Combo] = {}
        self._pair_cache: Dict[Tuple[FWord, FWord], int] = {}
        self._spaces: Dict[Depth, WeightSpace] = {}
        self._lattices: Dict[Depth, Tuple[Rows, Rows]] = {}

    def __repr__(self) -> str:
        return f"HighestWeightModule({self.gcm.name or 'GCM'}, {self.anchor})"

    @property
    def zero_depth(self) -> Depth:
        return (0,) * self.gcm.rank

    def pairing_at(self, i: int, depth: Sequence[int]) -> int:
        return self.gcm.pairing(i, Weight(self.anchor, tuple(depth)))

    # Words -----------------------------------------------------------------

    def words(self, depth: Sequence[int]) -> List[FWord]:
        """All reduced F-words of the given content, lexicographically ordered.

        Consecutive factors use distinct indices; words whose first applied factor
        F_i^(a) exceeds the highest weight (a > lambda_i) are dropped since they vanish.
        """
        m = tuple(depth)
        if m in self._words:
            return self._words[m]
        if any(x < 0 for x in m):
            return []
        if not any(m):
            return [()]
        result = []
        for i in self.gcm.indices:
            for a in range(1, m[i] + 1):
                rest_depth = tuple(x - a if j == i else x for j, x in enumerate(m))
                for rest in self.words(rest_depth):
                    if rest and rest[0][0] == i:
                        continue
                    if not rest and a > self.anchor[i]:
                        continue
                    result.append(((i, a),) + rest)
        result.sort()
        self._words[m] = result
        return result

    def apply_E_word(self, j: int, a: int, word: FWord) -> Combo:
        """E_j^(a) applied to a word, by divided-power straightening.

        E_j^(a) F_j^(b) u = sum_t C(n + a - b, t) F_j^(b - t) E_j^(a - t) u where n is
        the j-th pairing of the weight of u; E_j commutes with F_i for i != j.
        """
        if a == 0:
            return {word: 1}
        if not word:
            return {}
        key = (j, a, word)
        if key in self._e_cache:
            return self._e_cache[key]

        (i1, a1), rest = word[0], word[1:]
        result: Combo = {}
        if i1 != j:
            for w, c in self.apply_E_word(j, a, rest).items():
                k, merged = prepend(i1, a1, w)
                result[merged] = result.get(merged, 0) + c * k
        else:
            n = self.pairing_at(j, content(rest, self.gcm.rank))
            for t in range(min(a, a1) + 1):
                coeff = gbinom(n + a - a1, t)
                if coeff == 0:
                    continue
                for w, c in self.apply_E_word(j, a - t, rest).items():
                    if a1 - t > 0:
                        k, merged = prepend(j, a1 - t, w)
                    else:
                        k, merged = 1, w
                    result[merged] = result.get(merged, 0) + coeff * c * k
        result = {w: c for w, c in result.items() if c}
        self._e_cache[key] = result
        return result

    def contravariant_pair(self, u: FWord, v: FWord) -> int:
        """<u v_lambda, v v_lambda> with <v_lambda, v_lambda> = 1 and F_i adjoint to E_i."""
        if content(u, self.gcm.rank) != content(v, self.gcm.rank):
            return 0
        key = (u, v) if u <= v else (v, u)
        if key in self._pair_cache:
            return self._pair_cache[key]
        if not u:
            value = 1
        else:
            (i, a), rest = u[0], u[1:]
            value = sum(
                c * self.contravariant_pair(rest, w) for w, c in self.apply_E_word(i, a, v).items()
            )
        self._pair_cache[key] = value
        return value

    def pair_combo(self, u: FWord, combo: Combo) -> Fraction:
        return sum(
            (Fraction(c) * self.contravariant_pair(u, w) for w, c in combo.items()), Fraction(0)
        )

    # Weight spaces -----------------------------------------------------------

    def weight_space(self, depth: Sequence[int]) -> WeightSpace:
        """Word data at ``depth``; the basis is chosen by incremental Gram rank."""
        m = tuple(depth)
        if m in self._spaces:
            return self._spaces[m]
        words = self.words(m)
        expected = self.character.coefficient(m) if self.character is not None else None
        echelon = EchelonBasis(len(words))
        basis_words = []
        for x in words:
            if expected is not None and echelon.dim >= expected:
                break
            row = [Fraction(self.contravariant_pair(x, y)) for y in words]
            if echelon.add(row):
                basis_words.append(x)
        gram = [[Fraction(self.contravariant_pair(b, c)) for c in basis_words] for b in basis_words]
        space = WeightSpace(m, words, basis_words, gram, inverse(gram))
        self._spaces[m] = space
        logger.debug("%r: depth %s has %d words, dim %d", self, m, len(words), space.dim)
        return space

    def dim_weight(self, depth: Sequence[int]) -> int:
        return self.weight_space(depth).dim

    def weight_basis(self, depth: Sequence[int]) -> WeightSubspace:
        """The full weight space as a subspace in its own basis coordinates."""
        return WeightSubspace.full(tuple(depth), self.dim_weight(depth))

    def coordinates(self, depth: Sequence[int], combo: Combo) -> List[Fraction]:
        """Coordinates of a word combination in the pivot basis of its weight space."""
        space = self.weight_space(depth)
        pairings = [self.pair_combo(b, combo) for b in space.basis_words]
        return [
            sum((g * p for g, p in zip(row, pairings)), Fraction(0)) for row in space.gram_inverse
        ]

    def to_vector(self, depth: Sequence[int], coords: Sequence[Fraction]) -> ModuleVector:
        space = self.weight_space(depth)
        return ModuleVector(self.anchor, tuple(depth), dict(zip(space.basis_words, coords)))

    def reduce(self, vector: ModuleVector) -> ModuleVector:
        """Rewrite a vector in the pivot words of its weight space (zero if in the radical)."""
        combo = {w: c for w, c in vector.coords.items()}
        coords = self.coordinates(vector.depth, combo)  # type: ignore[arg-type]
        return self.to_vector(vector.depth, coords)

    def highest_vector(self) -> ModuleVector:
        return ModuleVector(self.anchor, self.zero_depth, {(): 1})

    def apply_F(self, i: int, a: int, vector: ModuleVector) -> ModuleVector:
        """F_i^(a) applied to a vector, reduced modulo the radical."""
        target = tuple(x + a if j == i else x for j, x in enumerate(vector.depth))
        combo: Dict[FWord, Fraction] = {}
        for w, c in vector.coords.items():
            k, merged = prepend(i, a, w)
            combo[merged] = combo.get(merged, 0) + c * k
        return self.reduce(ModuleVector(self.anchor, target, combo))

    def apply_E(self, i: int, a: int, vector: ModuleVector) -> ModuleVector:
        """E_i^(a) applied to a vector, reduced modulo the radical."""
        target = tuple(x - a if j == i else x for j, x in enumerate(vector.depth))
        if any(x < 0 for x in target):
            return ModuleVector(self.anchor, target)
        combo: Dict[FWord, Fraction] = {}
        for w, c in vector.coords.items():
            for u, k in self.apply_E_word(i, a, w).items():
                combo[u] = combo.get(u, 0) + c * k
        return self.reduce(ModuleVector(self.anchor, target, combo))

    # Operators in coordinates ------------------------------------------------

    def F_images(self, i: int, a: int, depth: Sequence[int], modulus: Optional[int] = None) -> Rows:
        """Images of the basis at ``depth`` under F_i^(a), one row per source basis vector.

        With ``modulus`` the lattice bases are used and the integral images are reduced mod p.
        """
        m = tuple(depth)
        target = tuple(x + a if j == i else x for j, x in enumerate(m))
        images = []
        for b in self.weight_space(m).basis_words:
            k, merged = prepend(i, a, b)
            images.append([k * x for x in self.coordinates(target, {merged: 1})])
        return self._in_frame(m, target, images, modulus)

    def E_images(self, i: int, a: int, depth: Sequence[int], modulus: Optional[int] = None) -> Rows:
        """Images of the basis at ``depth`` under E_i^(a); empty rows below depth zero."""
        m = tuple(depth)
        target = tuple(x - a if j == i else x for j, x in enumerate(m))
        if any(x < 0 for x in target):
            return [[] for _ in range(self.dim_weight(m))]
        images = [
            self.coordinates(target, self.apply_E_word(i, a, b))
            for b in self.weight_space(m).basis_words
        ]
        return self._in_frame(m, target, images, modulus)

    def _in_frame(self, source: Depth, target: Depth, images: Rows, modulus: Optional[int]) -> Rows:
        if modulus is None:
            return images
        lattice, _ = self.lattice(source)
        target_dim = self.dim_weight(target)
        converted = []
        for row in lattice:
            image = combine_rows(row, images, target_dim)
            converted.append([x % modulus for x in self.to_lattice(target, image)])
        return converted

    # Extremal vectors -----------------------------------------------------------

    def extremal_combo(self, w: WeylElement) -> Tuple[Depth, Combo]:
        """The integral word F_{i_1}^(n_1) ... F_{i_l}^(n_l) v_lambda of weight w(lambda)."""
        w = min_coset_rep(w, self.weight)
        mu = self.weight
        combo: Combo = {(): 1}
        for i in reversed(w.reduced_word):
            n = self.gcm.pairing(i, mu)
            if n > 0:
                merged_combo: Combo = {}
                for word, c in combo.items():
                    k, merged = prepend(i, n, word)
                    merged_combo[merged] = merged_combo.get(merged, 0) + c * k
                combo = merged_combo
            mu = self.gcm.reflect(i, mu)
        return mu.depth, combo

    def extremal_depth(self, w: WeylElement) -> Depth:
        return w.act(self.weight).depth

    def extremal_coords(self, w: WeylElement, modulus: Optional[int] = None) -> Vector:
        """Extremal vector in basis coordinates with first nonzero entry 1.

        With ``modulus`` the integral lattice coordinates are returned, reduced mod p.
        """
        depth, combo = self.extremal_combo(w)
        coords = self.coordinates(depth, combo)
        if modulus is not None:
            return [x % modulus for x in self.to_lattice(depth, coords)]
        lead = next(x for x in coords if x)
        return [x / lead for x in coords]

    def extremal_vector(self, w: WeylElement) -> ModuleVector:
        depth, _ = self.extremal_combo(w)
        return self.to_vector(depth, self.extremal_coords(w))

    # Integral lattice ------------------------------------------------------------

    def word_coordinates(self, depth: Sequence[int]) -> Rows:
        return [self.coordinates(depth, {x: 1}) for x in self.weight_space(depth).words]

    def lattice(self, depth: Sequence[int]) -> Tuple[Rows, Rows]:
        """Z-basis of the lattice spanned by all words, as rows in basis coordinates.

        Returns:
            Tuple of (lattice basis rows, inverse change-of-basis matrix)
        """
        m = tuple(depth)
        if m in self._lattices:
            return self._lattices[m]
        dim = self.dim_weight(m)
        vectors = self.word_coordinates(m)
        scale = 1
        for v in vectors:
            for x in v:
                scale = lcm(scale, Fraction(x).denominator)
        scaled = [[int(x * scale) for x in v] for v in vectors]
        basis = [[Fraction(x, scale) for x in row] for row in hnf_lattice_basis(scaled, dim)]
        result = (basis, inverse(basis) if len(basis) == dim else [])
        self._lattices[m] = result
        return result

    def to_lattice(self, depth: Sequence[int], coords: Sequence[Fraction]) -> List[int]:
        """Lattice coordinates of a basis-coordinate vector.

        Raises:
            IntegralityError: If the vector is not in the integral lattice
        """
        _, inv = self.lattice(depth)
        if not coords:
            return []
        y = combine_rows(coords, inv, len(coords))
        if any(Fraction(x).denominator != 1 for x in y):
            raise IntegralityError(f"vector {coords} at depth {tuple(depth)} is not integral")
        return [int(x) for x in y]

    def lattice_rank_stability(self, depth: Sequence[int], prime: int) -> LatticeReport:
        """Consistency check of the integral word lattice at ``depth`` against reduction mod p.

        The lattice is spanned by the divided-power words, so a correct computation always
        has full HNF rank, integral word coordinates and full rank mod p; a failure points to
        an arithmetic fault, not to a property of L(lambda). The rank of the contravariant
        form mod p is recorded for information only.
        """
        m = tuple(depth)
        dim = self.dim_weight(m)
        basis, _ = self.lattice(m)
        integral = True
        word_rows = []
        if len(basis) == dim:
            for coords in self.word_coordinates(m):
                try:
                    word_rows.append(self.to_lattice(m, coords))
                except IntegralityError:
                    integral = False
        field_p = ScalarField(prime)
        mod_rank = rank([[x % prime for x in r] for r in word_rows], dim, field_p) if dim else 0
        words = self.weight_space(m).words
        gram_mod = [[self.contravariant_pair(x, y) % prime for y in words] for x in words]
        form_rank = rank(gram_mod, len(words), field_p) if words else 0
        report = LatticeReport(m, prime, dim, len(basis), integral, mod_rank, form_rank)
        if not report.passed:
            logger.warning("lattice at depth %s unstable mod %d: %s", m, prime, report)
        return report
