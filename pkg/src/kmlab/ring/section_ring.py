"""Truncations of the multigraded section ring R = sum over dominant lambda of L(lambda)^dual.

The piece R_{lambda, m} is the dual of the weight space of L(lambda) at depth m, with the
basis dual to the module basis (pivot words over QQ, the integral lattice basis mod p).
Multiplication R_lambda x R_mu -> R_{lambda+mu} is the transpose of the embedding
L(lambda+mu) -> L(lambda) (x) L(mu) sending v_{lambda+mu} to v_lambda (x) v_mu.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from kmlab.errors import AmbientMismatch, UnstableLattice
from kmlab.reps.chars import char_thick_demazure
from kmlab.reps.demazure import thick_demazure, window_depths
from kmlab.reps.modules import FWord, HighestWeightModule, WeightSubspace, content, prepend
from kmlab.rootdata.gcm import GCM
from kmlab.rootdata.weyl import WeylElement
from kmlab.utils.linalg import (
    Rows,
    ScalarField,
    Vector,
    combine_rows,
    mat_mul,
    rank,
    transpose,
)

logger = logging.getLogger(__name__)

Degree = Tuple[int, ...]
Depth = Tuple[int, ...]
Piece = Tuple[Degree, Depth]


def dominant_degrees(rank_: int, degree_bound: int, parabolic: Iterable[int] = ()) -> List[Degree]:
    """Dominant anchors with total at most ``degree_bound`` and zero on the parabolic indices."""
    excluded = set(parabolic)
    degrees = [
        lam
        for lam in product(range(degree_bound + 1), repeat=rank_)
        if sum(lam) <= degree_bound and all(lam[j] == 0 for j in excluded)
    ]
    return sorted(degrees, key=lambda lam: (sum(lam), lam))


def _add(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def coproduct_word(word: FWord) -> Dict[Tuple[FWord, FWord], int]:
    """Expand a word through Delta(F_i^(n)) = sum_k F_i^(k) (x) F_i^(n-k), applied to v (x) v."""
    pairs: Dict[Tuple[FWord, FWord], int] = {((), ()): 1}
    for i, a in reversed(word):
        expanded: Dict[Tuple[FWord, FWord], int] = {}
        for (left, right), c in pairs.items():
            for k in range(a + 1):
                cl, new_left = prepend(i, k, left) if k else (1, left)
                cr, new_right = prepend(i, a - k, right) if a - k else (1, right)
                key = (new_left, new_right)
                expanded[key] = expanded.get(key, 0) + c * cl * cr
        pairs = expanded
    return pairs


@dataclass
class TensorBlock:
    """Matrix of the embedding L(lambda+mu)_m -> sum over splits of L(lambda)_m1 (x) L(mu)_m2.

    Rows follow the basis of L(lambda+mu)_m; columns are the flattened tensor bases of the
    splits, in the order of ``splits``.
    """

    left: Degree
    right: Degree
    depth: Depth
    splits: List[Tuple[Depth, Depth, int, int]]
    offsets: Dict[Depth, int]
    matrix: Rows

    @property
    def ncols(self) -> int:
        return sum(d1 * d2 for _, _, d1, d2 in self.splits)

    def column(self, m1: Depth, a: int, c: int) -> int:
        d2 = next(s[3] for s in self.splits if s[0] == m1)
        return self.offsets[m1] + a * d2 + c


@dataclass
class RingChecks:
    """Exact identity checks on a ring truncation."""

    surjective: Dict[Tuple[Degree, Degree, Depth], bool] = field(default_factory=dict)
    rank_agreement: bool = True
    commutative: bool = True
    associative: bool = True
    highest_vectors_multiplicative: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            all(self.surjective.values())
            and self.rank_agreement
            and self.commutative
            and self.associative
            and self.highest_vectors_multiplicative
        )


class GradedRingTruncation:
    """Pieces R_{lambda, m} with sum(lambda) <= D and sum(m) <= d, and their products."""

    def __init__(
        self,
        gcm: GCM,
        degree_bound: int,
        depth_bound: int,
        modulus: Optional[int] = None,
        parabolic: Iterable[int] = (),
        modules: Optional[Dict[Degree, HighestWeightModule]] = None,
    ) -> None:
        """Initialize an empty truncation; call :meth:`build` or use :func:`build_truncation`.

        Args:
            gcm: Root datum
            degree_bound: D, bound on the total of the multidegree
            depth_bound: d, bound on the total root depth
            modulus: Prime p for the reduction of the integral form, None for QQ
            parabolic: Indices j with lambda_j = 0 for every stored multidegree
            modules: Shared cache of module models

        Raises:
            ValueError: If a bound is negative
        """
        if degree_bound < 0 or depth_bound < 0:
            raise ValueError("degree and depth bounds must be nonnegative")
        self.gcm = gcm
        self.degree_bound = degree_bound
        self.depth_bound = depth_bound
        self.field = ScalarField(modulus)
        self.parabolic = tuple(sorted(set(parabolic)))
        self.modules = modules if modules is not None else {}
        self.degrees = dominant_degrees(gcm.rank, degree_bound, self.parabolic)
        self.blocks: Dict[Tuple[Degree, Degree, Depth], TensorBlock] = {}

    @property
    def modulus(self) -> Optional[int]:
        return self.field.modulus

    @property
    def zero(self) -> Degree:
        return (0,) * self.gcm.rank

    def generators(self) -> List[Degree]:
        """Fundamental multidegrees generating the truncation."""
        return [lam for lam in self.degrees if sum(lam) == 1]

    def module(self, degree: Sequence[int]) -> HighestWeightModule:
        lam = tuple(degree)
        if lam not in self.modules:
            self.modules[lam] = HighestWeightModule(self.gcm, lam)
        return self.modules[lam]

    def depths(self, degree: Sequence[int]) -> List[Depth]:
        module = self.module(degree)
        return [m for m in window_depths(self.gcm.rank, self.depth_bound) if module.dim_weight(m)]

    def dim(self, degree: Sequence[int], depth: Sequence[int]) -> int:
        if sum(depth) > self.depth_bound or any(x < 0 for x in depth):
            return 0
        return self.module(degree).dim_weight(depth)

    def pieces(self) -> List[Piece]:
        return [(lam, m) for lam in self.degrees for m in self.depths(lam)]

    def product_pairs(self) -> List[Tuple[Degree, Degree]]:
        stored = set(self.degrees)
        return [
            (lam, mu)
            for lam in self.degrees
            for mu in self.degrees
            if any(lam) and any(mu) and _add(lam, mu) in stored
        ]

    # Construction ------------------------------------------------------------

    def tensor_embedding(self, left: Degree, right: Degree, depth: Depth) -> TensorBlock:
        """Embedding of L(left+right) at ``depth`` into the tensor product, in frame coordinates."""
        key = (tuple(left), tuple(right), tuple(depth))
        if key in self.blocks:
            return self.blocks[key]
        mod_l, mod_r = self.module(left), self.module(right)
        mod_lr = self.module(_add(left, right))
        m = tuple(depth)

        splits = []
        offsets: Dict[Depth, int] = {}
        offset = 0
        for m1 in product(*(range(x + 1) for x in m)):
            m2 = tuple(x - y for x, y in zip(m, m1))
            d1, d2 = mod_l.dim_weight(m1), mod_r.dim_weight(m2)
            if d1 and d2:
                splits.append((tuple(m1), m2, d1, d2))
                offsets[tuple(m1)] = offset
                offset += d1 * d2

        rows: Rows = []
        for b in mod_lr.weight_space(m).basis_words:
            row = [Fraction(0)] * offset
            for (wl, wr), c in coproduct_word(b).items():
                m1 = content(wl, self.gcm.rank)
                if m1 not in offsets:
                    continue
                d2 = next(s[3] for s in splits if s[0] == m1)
                x = mod_l.coordinates(m1, {wl: 1})
                y = mod_r.coordinates(content(wr, self.gcm.rank), {wr: 1})
                for a, xa in enumerate(x):
                    if xa:
                        for k, yk in enumerate(y):
                            if yk:
                                row[offsets[m1] + a * d2 + k] += c * xa * yk
            rows.append(row)

        if self.modulus is not None:
            rows = self._to_lattice_frame(mod_l, mod_r, mod_lr, m, splits, offsets, rows)
        block = TensorBlock(tuple(left), tuple(right), m, splits, offsets, rows)
        self.blocks[key] = block
        return block

    def _to_lattice_frame(
        self,
        mod_l: HighestWeightModule,
        mod_r: HighestWeightModule,
        mod_lr: HighestWeightModule,
        m: Depth,
        splits: List[Tuple[Depth, Depth, int, int]],
        offsets: Dict[Depth, int],
        rows: Rows,
    ) -> Rows:
        p = self.modulus
        lattice_lr, _ = mod_lr.lattice(m)
        ncols = sum(d1 * d2 for _, _, d1, d2 in splits)
        rows = [combine_rows(ell, rows, ncols) for ell in lattice_lr]
        converted = []
        for row in rows:
            out = [0] * ncols
            for m1, m2, d1, d2 in splits:
                start = offsets[m1]
                block = [row[start + a * d2 : start + (a + 1) * d2] for a in range(d1)]
                _, inv1 = mod_l.lattice(m1)
                _, inv2 = mod_r.lattice(m2)
                lattice_block = mat_mul(transpose(inv1), mat_mul(block, inv2, d2), d2)
                for a in range(d1):
                    for c in range(d2):
                        x = Fraction(lattice_block[a][c])
                        if x.denominator != 1:
                            raise UnstableLattice(
                                (self.degree_bound, self.depth_bound),
                                f"non-integral structure constant at depth {m}",
                            )
                        out[start + a * d2 + c] = int(x) % p
            converted.append(out)
        return converted

    def build(self) -> "GradedRingTruncation":
        """Compute every stored product block."""
        for lam, mu in self.product_pairs():
            for m in self.depths(_add(lam, mu)):
                self.tensor_embedding(lam, mu, m)
        logger.debug(
            "ring truncation D=%d d=%d over %s: %d degrees, %d blocks",
            self.degree_bound,
            self.depth_bound,
            self.field.label(),
            len(self.degrees),
            len(self.blocks),
        )
        return self

    # Multiplication ------------------------------------------------------------

    def multiply(
        self,
        left: Degree,
        f: Sequence,
        m1: Depth,
        right: Degree,
        g: Sequence,
        m2: Depth,
    ) -> Vector:
        """Product of f in R_{left, m1} and g in R_{right, m2}, in R_{left+right, m1+m2}."""
        if not any(left):
            return [self.field.reduce(f[0] * x) for x in g]
        if not any(right):
            return [self.field.reduce(g[0] * x) for x in f]
        m = _add(m1, m2)
        if sum(m) > self.depth_bound:
            raise AmbientMismatch(f"product depth {m} is outside the window")
        block = self.tensor_embedding(tuple(left), tuple(right), m)
        if tuple(m1) not in block.offsets:
            return [self.field.zero()] * len(block.matrix)
        start = block.offsets[tuple(m1)]
        d2 = len(g)
        result = []
        for row in block.matrix:
            total = self.field.zero()
            for a, fa in enumerate(f):
                if fa:
                    for c, gc in enumerate(g):
                        if gc:
                            total += fa * gc * row[start + a * d2 + c]
            result.append(self.field.reduce(total))
        return result

    def basis_vector(self, degree: Degree, depth: Depth, k: int) -> Vector:
        n = self.dim(degree, depth)
        return [self.field.one() if j == k else self.field.zero() for j in range(n)]

    def product_matrix(self, left: Degree, m1: Depth, right: Degree, m2: Depth) -> Rows:
        """Rows b_a^* b_c^* for all basis pairs (a, c), in R_{left+right} coordinates."""
        return [
            self.multiply(
                left, self.basis_vector(left, m1, a), m1, right, self.basis_vector(right, m2, c), m2
            )
            for a in range(self.dim(left, m1))
            for c in range(self.dim(right, m2))
        ]

    def power(
        self, degree: Degree, f: Sequence, depth: Depth, n: int
    ) -> Tuple[Degree, Vector, Depth]:
        """f^n, returned with its multidegree and depth."""
        lam, vec, m = tuple(degree), list(f), tuple(depth)
        for _ in range(n - 1):
            vec = self.multiply(lam, vec, m, tuple(degree), f, tuple(depth))
            lam, m = _add(lam, degree), _add(m, depth)
        return lam, vec, m

    def highest_dual_vector(self, degree: Degree) -> Vector:
        """v_lambda^*, the covector dual to the highest weight vector."""
        return self.basis_vector(degree, self.zero, 0)

    # Checks ------------------------------------------------------------------

    def check(self, associativity_degree: Optional[int] = None) -> RingChecks:
        """Surjectivity, commutativity, associativity and highest-vector multiplicativity."""
        checks = RingChecks()
        for lam, mu in self.product_pairs():
            for m in self.depths(_add(lam, mu)):
                block = self.tensor_embedding(lam, mu, m)
                target = self.dim(_add(lam, mu), m)
                r_iota = rank(block.matrix, block.ncols, self.field)
                r_mult = rank(transpose(block.matrix), target, self.field) if block.ncols else 0
                checks.surjective[(lam, mu, m)] = r_iota == target
                if r_iota != target:
                    checks.failures.append(f"L({lam}+{mu}) does not embed at depth {m}")
                if r_iota != r_mult:
                    checks.rank_agreement = False
                    checks.failures.append(f"rank mismatch at {lam},{mu},{m}")
                if not self._commutes(lam, mu, block):
                    checks.commutative = False
                    checks.failures.append(f"non-commutative at {lam},{mu},{m}")
            product_ = self.multiply(
                lam,
                self.highest_dual_vector(lam),
                self.zero,
                mu,
                self.highest_dual_vector(mu),
                self.zero,
            )
            if product_ != self.highest_dual_vector(_add(lam, mu)):
                checks.highest_vectors_multiplicative = False
                checks.failures.append(f"v*_{lam} v*_{mu} != v*_(lam+mu)")
        failure = self._check_associativity(associativity_degree)
        if failure:
            checks.associative = False
            checks.failures.append(failure)
        return checks

    def _commutes(self, lam: Degree, mu: Degree, block: TensorBlock) -> bool:
        other = self.tensor_embedding(mu, lam, block.depth)
        for m1, m2, d1, d2 in block.splits:
            for a in range(d1):
                for c in range(d2):
                    col = block.offsets[m1] + a * d2 + c
                    swapped = other.offsets[m2] + c * d1 + a
                    if any(r[col] != s[swapped] for r, s in zip(block.matrix, other.matrix)):
                        return False
        return True

    def _check_associativity(self, max_degree: Optional[int]) -> Optional[str]:
        gens = self.generators()
        stored = set(self.degrees)
        for lam, mu, nu in product(gens, repeat=3):
            total = _add(_add(lam, mu), nu)
            if total not in stored or (max_degree is not None and sum(total) > max_degree):
                continue
            for m1, m2, m3 in product(self.depths(lam), self.depths(mu), self.depths(nu)):
                if sum(m1) + sum(m2) + sum(m3) > self.depth_bound:
                    continue
                for a, b, c in product(
                    range(self.dim(lam, m1)), range(self.dim(mu, m2)), range(self.dim(nu, m3))
                ):
                    f = self.basis_vector(lam, m1, a)
                    g = self.basis_vector(mu, m2, b)
                    h = self.basis_vector(nu, m3, c)
                    fg = self.multiply(lam, f, m1, mu, g, m2)
                    left = self.multiply(_add(lam, mu), fg, _add(m1, m2), nu, h, m3)
                    gh = self.multiply(mu, g, m2, nu, h, m3)
                    right = self.multiply(lam, f, m1, _add(mu, nu), gh, _add(m2, m3))
                    if left != right:
                        return f"non-associative at {lam},{mu},{nu} depths {m1},{m2},{m3}"
        return None

    def reduce_mod_p(self, prime: int) -> "GradedRingTruncation":
        """The same window built on the integral lattices and reduced mod ``prime``.

        Raises:
            UnstableLattice: If some piece loses rank mod p
        """
        for lam in self.degrees:
            module = self.module(lam)
            for m in self.depths(lam):
                report = module.lattice_rank_stability(m, prime)
                if not report.passed:
                    raise UnstableLattice((lam, m), str(report))
        reduced = GradedRingTruncation(
            self.gcm,
            self.degree_bound,
            self.depth_bound,
            modulus=prime,
            parabolic=self.parabolic,
            modules=self.modules,
        )
        return reduced.build()

    def eval_pairing(self, degree: Degree, word: FWord, covector: Sequence[Fraction]) -> Fraction:
        """<P v_lambda, f> for a word P and a covector f in the dual basis of its weight."""
        module = self.module(degree)
        depth = content(word, self.gcm.rank)
        coords = module.coordinates(depth, {word: 1})
        return sum((Fraction(c) * x for c, x in zip(covector, coords)), Fraction(0))

    def dual_pairing_matrix(self, degree: Degree, depth: Depth) -> Rows:
        """Matrix <b_j v_lambda, b_k^*> over the basis words; the identity by construction."""
        words = self.module(degree).weight_space(depth).basis_words
        n = len(words)
        return [
            [self.eval_pairing(degree, b, self.basis_vector(degree, depth, k)) for k in range(n)]
            for b in words
        ]

    def structure_constants(self) -> List[Tuple[str, str, str]]:
        """Sparse triples (row, column, value) of every stored block, values as "p/q"."""
        triples = []
        for (lam, mu, m), block in sorted(self.blocks.items()):
            for k, row in enumerate(block.matrix):
                for col, value in enumerate(row):
                    if value:
                        triples.append(
                            (f"{lam}|{mu}|{m}|{k}", str(col), str(Fraction(value)))
                        )
        return triples

    def summary(self) -> Dict[str, object]:
        return {
            "degree_bound": self.degree_bound,
            "depth_bound": self.depth_bound,
            "field": self.field.label(),
            "parabolic": [self.gcm.labels[j] for j in self.parabolic],
            "pieces": [
                {"lambda": list(lam), "m": list(m), "dim": self.dim(lam, m)}
                for lam, m in self.pieces()
            ],
        }


def build_truncation(
    gcm: GCM,
    degree_bound: int,
    depth_bound: int,
    modulus: Optional[int] = None,
    parabolic: Iterable[int] = (),
) -> GradedRingTruncation:
    """Build the ring truncation for the window (D, d), optionally restricted to P_+^J."""
    return GradedRingTruncation(gcm, degree_bound, depth_bound, modulus, parabolic).build()


def reduce_mod_p(truncation: GradedRingTruncation, prime: int) -> GradedRingTruncation:
    return truncation.reduce_mod_p(prime)


# Demazure ideals --------------------------------------------------------------


@dataclass
class HomogeneousIdealTruncation:
    """Per-piece subspaces of a ring truncation, in dual-basis coordinates."""

    truncation: GradedRingTruncation
    label: str
    pieces: Dict[Piece, WeightSubspace] = field(default_factory=dict)

    def piece(self, degree: Degree, depth: Depth) -> WeightSubspace:
        key = (tuple(degree), tuple(depth))
        if key in self.pieces:
            return self.pieces[key]
        n = self.truncation.dim(degree, depth)
        return WeightSubspace(tuple(depth), n, self.truncation.field)

    def contains(self, degree: Degree, depth: Depth, vector: Sequence) -> bool:
        return self.piece(degree, depth).contains(vector)

    def issubset(self, other: "HomogeneousIdealTruncation") -> bool:
        if other.truncation is not self.truncation:
            raise AmbientMismatch("ideals of different truncations")
        return all(s.issubset(other.piece(*key)) for key, s in self.pieces.items())

    def quotient_dims(self) -> Dict[Piece, int]:
        return {
            (lam, m): self.truncation.dim(lam, m) - self.piece(lam, m).dim
            for lam, m in self.truncation.pieces()
        }


def demazure_ideal(w: WeylElement, truncation: GradedRingTruncation) -> HomogeneousIdealTruncation:
    """I^w: in each degree, the annihilator of the thick Demazure module L^w(lambda)."""
    ideal = HomogeneousIdealTruncation(truncation, w.label())
    for lam in truncation.degrees:
        family = thick_demazure(
            truncation.module(lam),
            w,
            truncation.depth_bound,
            truncation.modulus,
            allow_outside=True,
        )
        for m in truncation.depths(lam):
            ideal.pieces[(lam, m)] = family.subspace(m).annihilator()
    return ideal


@dataclass
class IdealReport:
    """Closure of I^w under multiplication and its quotient dims against the thick character.

    ``quotient_matches`` is None for infinite type, where no thick character is available.
    """

    w: str
    closed: bool
    quotient_matches: Optional[bool]
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.closed and self.quotient_matches is not False


def verify_ideal(w: WeylElement, truncation: GradedRingTruncation) -> IdealReport:
    """Check that I^w is closed under multiplication and that R/I^w has the thick Demazure dims."""
    ideal = demazure_ideal(w, truncation)
    report = IdealReport(w.label(), True, True)
    for lam, mu in truncation.product_pairs():
        for m1 in truncation.depths(lam):
            generators = ideal.piece(lam, m1).rows
            if not generators:
                continue
            for m2 in truncation.depths(mu):
                m = _add(m1, m2)
                if sum(m) > truncation.depth_bound:
                    continue
                target = ideal.piece(_add(lam, mu), m)
                for f in generators:
                    for c in range(truncation.dim(mu, m2)):
                        g = truncation.basis_vector(mu, m2, c)
                        if not target.contains(truncation.multiply(lam, f, m1, mu, g, m2)):
                            report.closed = False
                            report.failures.append(f"I*R not in I at {lam}+{mu}, depth {m}")
                            break
    quotient = ideal.quotient_dims()
    for lam in truncation.degrees:
        character = char_thick_demazure(truncation.gcm, lam, w, truncation.depth_bound)
        if character is None:
            report.quotient_matches = None
            continue
        for m in truncation.depths(lam):
            if quotient[(lam, m)] != character.coefficient(m):
                report.quotient_matches = False
                report.failures.append(
                    f"quotient dim {quotient[(lam, m)]} at {lam}, depth {m}; "
                    f"thick character gives {character.coefficient(m)}"
                )
    return report
