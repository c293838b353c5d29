"""Quadratic relations among the degree-one generators of a ring truncation."""

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from kmlab.errors import WindowTooSmall
from kmlab.reps.modules import format_fword
from kmlab.ring.section_ring import Degree, Depth, GradedRingTruncation
from kmlab.rootdata.weyl import WeylElement, longest_element
from kmlab.utils.linalg import Rows, Vector, nullspace, rank

logger = logging.getLogger(__name__)

# A variable is a dual basis vector of a generator piece: (generator index, depth, basis index).
Variable = Tuple[int, Depth, int]
Monomial = Tuple[Variable, ...]


def generator_variables(truncation: GradedRingTruncation, i: int) -> List[Variable]:
    degree = truncation.gcm.fundamental(i).anchor
    return [
        (i, m, a)
        for m in truncation.depths(degree)
        for a in range(truncation.dim(degree, m))
    ]


def monomials(truncation: GradedRingTruncation, degree: Degree, depth: Depth) -> List[Monomial]:
    """Commutative monomials in the generators of multidegree ``degree`` and depth ``depth``."""
    per_generator = []
    for i, count in enumerate(degree):
        if count:
            per_generator.append(
                list(combinations_with_replacement(generator_variables(truncation, i), count))
            )
    result = []
    for choice in product(*per_generator):
        mono = tuple(sorted(v for part in choice for v in part))
        total = tuple(sum(v[1][k] for v in mono) for k in range(truncation.gcm.rank))
        if total == tuple(depth):
            result.append(mono)
    return sorted(result)


def evaluate_monomial(truncation: GradedRingTruncation, mono: Monomial) -> Vector:
    """The product of the variables of ``mono`` as a vector of R_{degree, depth}."""
    i, m, a = mono[0]
    degree = truncation.gcm.fundamental(i).anchor
    vec = truncation.basis_vector(degree, m, a)
    for j, mj, b in mono[1:]:
        other = truncation.gcm.fundamental(j).anchor
        vec = truncation.multiply(degree, vec, m, other, truncation.basis_vector(other, mj, b), mj)
        degree = tuple(x + y for x, y in zip(degree, other))
        m = tuple(x + y for x, y in zip(m, mj))
    return vec


def _evaluation_columns(
    truncation: GradedRingTruncation, degree: Degree, depth: Depth, monos: List[Monomial]
) -> Rows:
    """Matrix whose rows are the target coordinates and columns the monomials."""
    images = [evaluate_monomial(truncation, mono) for mono in monos]
    target = truncation.dim(degree, depth)
    return [[image[k] for image in images] for k in range(target)]


@dataclass
class QuadricBlock:
    """Relations of multidegree varpi_i + varpi_j at one depth."""

    generators: Tuple[int, int]
    depth: Depth
    monomials: List[Monomial]
    relations: Rows
    tensor_kernel_dim: int

    @property
    def count(self) -> int:
        return len(self.relations)

    def coefficients(self, relation: Sequence) -> Dict[Monomial, object]:
        return {mono: c for mono, c in zip(self.monomials, relation) if c}


def pluecker_quadrics(truncation: GradedRingTruncation) -> List[QuadricBlock]:
    """Kernel of Sym/tensor multiplication on degree-one pieces into each degree-two piece."""
    if truncation.degree_bound < 2:
        raise WindowTooSmall("quadric relations need degree bound D >= 2")
    gens = [lam.index(1) for lam in truncation.generators()]
    blocks = []
    for i, j in combinations_with_replacement(gens, 2):
        degree = tuple(int(k == i) + int(k == j) for k in range(truncation.gcm.rank))
        for m in truncation.depths(degree):
            monos = monomials(truncation, degree, m)
            if not monos:
                continue
            matrix = _evaluation_columns(truncation, degree, m, monos)
            relations = nullspace(matrix, len(monos), truncation.field)
            tensor_kernel = len(relations)
            if i == j:
                embedding = truncation.tensor_embedding(
                    truncation.gcm.fundamental(i).anchor, truncation.gcm.fundamental(j).anchor, m
                )
                tensor_kernel = embedding.ncols - rank(
                    embedding.matrix, embedding.ncols, truncation.field
                )
            blocks.append(QuadricBlock((i, j), m, monos, relations, tensor_kernel))
    logger.info("found %d quadric relations", sum(b.count for b in blocks))
    if longest_element(truncation.gcm) is None:
        logger.warning("infinite type: quadric relations are complete on the window only")
    return blocks


def format_relation(
    truncation: GradedRingTruncation, block: QuadricBlock, relation: Sequence
) -> str:
    """Human-readable quadric, variables named by their dual basis words."""
    gcm = truncation.gcm

    def name(var: Variable) -> str:
        i, m, a = var
        words = truncation.module(gcm.fundamental(i).anchor).weight_space(m).basis_words
        return f"x{gcm.labels[i]}[{format_fword(gcm, words[a])}]"

    terms = []
    for mono, c in block.coefficients(relation).items():
        terms.append(f"{c}*" + "*".join(name(v) for v in mono))
    return " + ".join(terms) if terms else "0"


@dataclass
class ExtremalVanishing:
    """Evaluation of every quadric at the extremal point of one Weyl element."""

    w: str
    vanishes: Optional[bool]
    nonzero_values: List[Tuple[Tuple[int, int], str]] = field(default_factory=list)


def vanishing_at_extremal_points(
    truncation: GradedRingTruncation, blocks: List[QuadricBlock], elements: List[WeylElement]
) -> List[ExtremalVanishing]:
    """Check that each quadric vanishes at (v_{w varpi_i})_i.

    The outcome is None when the point leaves the window.
    """
    results = []
    for w in elements:
        points: Dict[int, Tuple[Depth, Vector]] = {}
        for lam in truncation.generators():
            i = lam.index(1)
            module = truncation.module(lam)
            points[i] = (module.extremal_depth(w), module.extremal_coords(w, truncation.modulus))
        outcome = ExtremalVanishing(w.label(), True)
        for block in blocks:
            i, j = block.generators
            (mi, xi), (mj, xj) = points[i], points[j]
            if sum(mi) + sum(mj) > truncation.depth_bound:
                if outcome.vanishes:
                    outcome.vanishes = None
                continue
            if tuple(x + y for x, y in zip(mi, mj)) != block.depth:
                continue
            for relation in block.relations:
                value = truncation.field.zero()
                for mono, c in block.coefficients(relation).items():
                    (gi, di, a), (gj, dj, b) = mono
                    if (di, dj) == (mi, mj) and (gi, gj) == (i, j):
                        value += c * xi[a] * xj[b]
                    elif (di, dj) == (mj, mi) and (gi, gj) == (j, i):
                        value += c * xj[a] * xi[b]
                value = truncation.field.reduce(value)
                if value:
                    outcome.vanishes = False
                    outcome.nonzero_values.append(((i, j), str(value)))
        results.append(outcome)
    return results


@dataclass
class PresentationReport:
    """Comparison of degree-three relations with those generated by the quadrics."""

    generated: Dict[Tuple[Degree, Depth], int] = field(default_factory=dict)
    required: Dict[Tuple[Degree, Depth], int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.generated[k] == self.required[k] for k in self.required)

    def failures(self) -> List[Tuple[Degree, Depth, int, int]]:
        return [
            (lam, m, self.generated[(lam, m)], n)
            for (lam, m), n in sorted(self.required.items())
            if self.generated[(lam, m)] != n
        ]


def required_depth(truncation: GradedRingTruncation) -> Optional[int]:
    """Largest depth of w0(varpi_i) over the generators, for finite type; None otherwise."""
    w0 = longest_element(truncation.gcm)
    if w0 is None:
        return None
    return max(
        (sum(truncation.module(lam).extremal_depth(w0)) for lam in truncation.generators()),
        default=0,
    )


def verify_degree2_presentation(
    truncation: GradedRingTruncation, blocks: Optional[List[QuadricBlock]] = None
) -> PresentationReport:
    """Check that the quadrics generate every degree-three relation inside the window.

    For each degree-three multidegree and depth, compares the dimension of the span of
    quadric x variable products with the dimension of the kernel of evaluation.

    Raises:
        WindowTooSmall: If D < 3, or for finite type when d cannot see w0(varpi_i)
    """
    if truncation.degree_bound < 3:
        raise WindowTooSmall("degree-two presentation check needs D >= 3")
    needed = required_depth(truncation)
    if needed is not None and truncation.depth_bound < needed:
        raise WindowTooSmall(
            f"finite type needs depth bound >= {needed} to reach w0 on every generator"
        )
    if blocks is None:
        blocks = pluecker_quadrics(truncation)

    report = PresentationReport()
    for lam in (deg for deg in truncation.degrees if sum(deg) == 3):
        for m in truncation.depths(lam):
            monos = monomials(truncation, lam, m)
            if not monos:
                continue
            index = {mono: k for k, mono in enumerate(monos)}
            matrix = _evaluation_columns(truncation, lam, m, monos)
            report.required[(lam, m)] = len(monos) - rank(matrix, len(monos), truncation.field)

            products = []
            for block in blocks:
                i, j = block.generators
                rest = list(lam)
                rest[i] -= 1
                rest[j] -= 1
                if min(rest) < 0:
                    continue
                k = rest.index(1)
                for var in generator_variables(truncation, k):
                    shifted = tuple(x - y for x, y in zip(m, var[1]))
                    if shifted != block.depth:
                        continue
                    for relation in block.relations:
                        row = [truncation.field.zero()] * len(monos)
                        for mono, c in block.coefficients(relation).items():
                            row[index[tuple(sorted(mono + (var,)))]] += c
                        products.append(row)
            report.generated[(lam, m)] = rank(products, len(monos), truncation.field)
    for lam, m, got, want in report.failures():
        logger.warning(
            "degree-three relations at %s depth %s: %d generated, %d needed", lam, m, got, want
        )
    return report
