"""Frobenius splittings of ring truncations over F_p.

A candidate is a family of F_p-linear maps phi: R_{p kappa, s} -> R_{kappa, t}. The solver looks
only for weight-graded maps (s = p t); hand-built candidates may map between arbitrary depths.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from kmlab.errors import AmbientMismatch, WindowTooSmall
from kmlab.ring.section_ring import (
    Degree,
    Depth,
    GradedRingTruncation,
    HomogeneousIdealTruncation,
)
from kmlab.rootdata.weyl import longest_element
from kmlab.utils.linalg import Rows, ScalarField, Vector, mat_vec, solve

logger = logging.getLogger(__name__)

MapKey = Tuple[Degree, Depth, Depth]


def _scale(p: int, v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(p * x for x in v)


def _add(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _lower(depth: Sequence[int], i: int, k: int) -> Tuple[int, ...]:
    return tuple(x - k if j == i else x for j, x in enumerate(depth))


def dual_lowering(
    truncation: GradedRingTruncation, degree: Degree, i: int, k: int, depth: Depth
) -> Optional[Rows]:
    """Matrix of e_i^(k): R_{degree, depth} -> R_{degree, depth - k alpha_i}.

    None when the target piece is zero. e_i^(k) acts on dual pieces as the transpose of
    F_i^(k), so the matrix is F_images itself.
    """
    lower = _lower(depth, i, k)
    if min(lower) < 0 or not truncation.dim(degree, lower):
        return None
    if k == 0:
        n = truncation.dim(degree, depth)
        return [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    return truncation.module(degree).F_images(i, k, lower, truncation.modulus)


@dataclass
class SplittingReport:
    unit: bool = True
    linear: bool = True
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.unit and self.linear


@dataclass
class SplittingCandidate:
    """Per-piece maps of a candidate Frobenius splitting.

    ``maps[(kappa, s, t)]`` has one row per basis vector of R_{kappa, t} and one column per
    basis vector of R_{p kappa, s}.
    """

    prime: int
    truncation: GradedRingTruncation
    maps: Dict[MapKey, Rows] = field(default_factory=dict)
    report: Optional[SplittingReport] = None

    @property
    def scalar_field(self) -> ScalarField:
        return self.truncation.field

    def apply(self, kappa: Degree, g: Sequence, source: Depth) -> Dict[Depth, Vector]:
        """phi(g) for g in R_{p kappa, source}, split by target depth; zero parts are dropped."""
        out: Dict[Depth, Vector] = {}
        for (k, s, t), matrix in self.maps.items():
            if k == tuple(kappa) and s == tuple(source):
                vec = mat_vec(matrix, g, self.scalar_field)
                if any(vec):
                    out[t] = vec
        return out

    def to_dict(self) -> Dict[str, object]:
        return {
            "prime": self.prime,
            "window": {
                "degree_bound": self.truncation.degree_bound,
                "depth_bound": self.truncation.depth_bound,
            },
            "maps": [
                {
                    "kappa": list(kappa),
                    "source_depth": list(s),
                    "target_depth": list(t),
                    "matrix": [[int(x) for x in row] for row in matrix],
                }
                for (kappa, s, t), matrix in sorted(self.maps.items())
            ],
        }


class _LinearSystem:
    """Sparse equations in the entries of the unknown maps."""

    def __init__(self, truncation: GradedRingTruncation, keys: List[MapKey]) -> None:
        self.truncation = truncation
        self.field = truncation.field
        self.shapes: Dict[MapKey, Tuple[int, int]] = {}
        self.offsets: Dict[MapKey, int] = {}
        size = 0
        p = truncation.modulus or 0
        for key in keys:
            kappa, s, t = key
            shape = (truncation.dim(kappa, t), truncation.dim(_scale(p, kappa), s))
            self.shapes[key] = shape
            self.offsets[key] = size
            size += shape[0] * shape[1]
        self.size = size
        self.equations: List[Tuple[Dict[int, int], int]] = []

    def var(self, key: MapKey, r: int, c: int) -> int:
        return self.offsets[key] + r * self.shapes[key][1] + c

    def add(self, coeffs: Dict[int, int], rhs: int = 0) -> None:
        coeffs = {v: self.field.reduce(c) for v, c in coeffs.items()}
        coeffs = {v: c for v, c in coeffs.items() if c}
        rhs = self.field.reduce(rhs)
        if coeffs or rhs:
            self.equations.append((coeffs, rhs))

    def solve(self) -> Optional[Vector]:
        rows = []
        for coeffs, _ in self.equations:
            row = [self.field.zero()] * self.size
            for v, c in coeffs.items():
                row[v] = c
            rows.append(row)
        return solve(rows, [rhs for _, rhs in self.equations], self.size, self.field)

    def maps(self, solution: Vector) -> Dict[MapKey, Rows]:
        result = {}
        for key, (nr, nc) in self.shapes.items():
            start = self.offsets[key]
            result[key] = [
                [solution[start + r * nc + c] for c in range(nc)] for r in range(nr)
            ]
        return result


def graded_keys(truncation: GradedRingTruncation) -> List[MapKey]:
    """Unknown blocks R_{p kappa, p n} -> R_{kappa, n} for nonzero kappa inside the window."""
    p = truncation.modulus
    stored = set(truncation.degrees)
    keys = []
    for kappa in truncation.degrees:
        source = _scale(p, kappa)
        if not any(kappa) or source not in stored:
            continue
        for n in truncation.depths(kappa):
            s = _scale(p, n)
            if sum(s) <= truncation.depth_bound and truncation.dim(source, s):
                keys.append((kappa, s, n))
    return keys


def _require_prime(truncation: GradedRingTruncation) -> int:
    if truncation.modulus is None:
        raise ValueError("Frobenius splittings need a truncation over F_p")
    return truncation.modulus


def _linearity_constraints(system: _LinearSystem) -> None:
    """phi(f^p g) = f phi(g) for f in generator pieces and g in p-divisible pieces."""
    trunc = system.truncation
    p = _require_prime(trunc)
    stored = set(trunc.degrees)
    zero = trunc.zero
    for gen in trunc.generators():
        for mf in trunc.depths(gen):
            if p * sum(mf) > trunc.depth_bound:
                continue
            for a in range(trunc.dim(gen, mf)):
                f = trunc.basis_vector(gen, mf, a)
                gen_p, fp, pmf = trunc.power(gen, f, mf, p)
                for kappa in trunc.degrees:
                    if _scale(p, _add(gen, kappa)) not in stored:
                        continue
                    g_degree = _scale(p, kappa)
                    for s in trunc.depths(g_degree):
                        if any(x % p for x in s) or sum(pmf) + sum(s) > trunc.depth_bound:
                            continue
                        n = tuple(x // p for x in s)
                        _linearity_block(system, gen, f, mf, gen_p, fp, pmf, kappa, s, n, zero)


def _linearity_block(
    system: _LinearSystem,
    gen: Degree,
    f: Vector,
    mf: Depth,
    gen_p: Degree,
    fp: Vector,
    pmf: Depth,
    kappa: Degree,
    s: Depth,
    n: Depth,
    zero: Degree,
) -> None:
    trunc = system.truncation
    p = trunc.modulus
    g_degree = _scale(p, kappa)
    target_degree = _add(gen, kappa)
    target = _add(mf, n)
    lhs_key = (target_degree, _add(pmf, s), target)
    rhs_key = (kappa, s, n)
    for c in range(trunc.dim(g_degree, s)):
        g = trunc.basis_vector(g_degree, s, c)
        h = trunc.multiply(gen_p, fp, pmf, g_degree, g, s)
        products = (
            [trunc.multiply(gen, f, mf, kappa, trunc.basis_vector(kappa, n, r), n)
             for r in range(trunc.dim(kappa, n))]
            if any(kappa) and rhs_key in system.offsets
            else []
        )
        for t in range(trunc.dim(target_degree, target)):
            coeffs: Dict[int, int] = {}
            if lhs_key in system.offsets:
                for k, hk in enumerate(h):
                    if hk:
                        v = system.var(lhs_key, t, k)
                        coeffs[v] = coeffs.get(v, 0) + hk
            rhs = 0
            if kappa == zero:
                rhs = f[t]
            else:
                for r, fe in enumerate(products):
                    if fe[t]:
                        v = system.var(rhs_key, r, c)
                        coeffs[v] = coeffs.get(v, 0) - fe[t]
            system.add(coeffs, rhs)


def _compatibility_constraints(system: _LinearSystem, ideal: HomogeneousIdealTruncation) -> None:
    """y . phi(x) = 0 for x in I_{p kappa, s} and y in the module side of I_{kappa, t}."""
    p = system.truncation.modulus
    for key in system.shapes:
        kappa, s, t = key
        for x in ideal.piece(_scale(p, kappa), s).rows:
            for y in ideal.piece(kappa, t).annihilator().rows:
                coeffs: Dict[int, int] = {}
                for r, yr in enumerate(y):
                    if yr:
                        for c, xc in enumerate(x):
                            if xc:
                                v = system.var(key, r, c)
                                coeffs[v] = coeffs.get(v, 0) + yr * xc
                system.add(coeffs)


def _canonical_terms(
    truncation: GradedRingTruncation,
    keys: Sequence[MapKey],
    i: int,
    kappa: Degree,
    s: Depth,
    f: Vector,
) -> Iterator[Tuple[int, Depth, int, MapKey, int, int, int]]:
    """Yield (j, depth, t, key, r, c, coefficient) for the entries of phi_{i,j}(f), j >= p."""
    p = truncation.modulus
    source = _scale(p, kappa)
    for m in range(s[i] + 1):
        lower_f = dual_lowering(truncation, source, i, m, s)
        if lower_f is None:
            continue
        fm = mat_vec(lower_f, f, truncation.field)
        if not any(fm):
            continue
        sign = -1 if m % 2 else 1
        sm = _lower(s, i, m)
        for key in keys:
            if key[0] != tuple(kappa) or key[1] != sm:
                continue
            t = key[2]
            for k in range(t[i] + 1):
                j = p * k + m
                if j < p:
                    continue
                lower = dual_lowering(truncation, tuple(kappa), i, k, t)
                if lower is None:
                    continue
                depth = _lower(t, i, k)
                for row, z in enumerate(lower):
                    for r, zr in enumerate(z):
                        if not zr:
                            continue
                        for c, fc in enumerate(fm):
                            if fc:
                                yield j, depth, row, key, r, c, sign * zr * fc


def _source_pieces(
    truncation: GradedRingTruncation, kappas: Sequence[Degree]
) -> Iterator[Tuple[Degree, Depth, Vector]]:
    p = truncation.modulus
    for kappa in kappas:
        source = _scale(p, kappa)
        for s in truncation.depths(source):
            for c in range(truncation.dim(source, s)):
                yield kappa, s, truncation.basis_vector(source, s, c)


def _canonical_constraints(system: _LinearSystem, i: int) -> None:
    trunc = system.truncation
    keys = list(system.shapes)
    kappas = sorted({key[0] for key in keys})
    for kappa, s, f in _source_pieces(trunc, kappas):
        grouped: Dict[Tuple[int, Depth, int], Dict[int, int]] = {}
        for j, depth, row, key, r, c, coeff in _canonical_terms(trunc, keys, i, kappa, s, f):
            entry = grouped.setdefault((j, depth, row), {})
            v = system.var(key, r, c)
            entry[v] = entry.get(v, 0) + coeff
        for coeffs in grouped.values():
            system.add(coeffs)


def find_splitting(
    truncation: GradedRingTruncation,
    compatible_with: Sequence[HomogeneousIdealTruncation] = (),
    canonical: bool = False,
) -> Optional[SplittingCandidate]:
    """Solve for a weight-graded Frobenius splitting on the window.

    Args:
        truncation: Ring truncation over F_p
        compatible_with: Ideals the splitting must preserve
        canonical: Also impose the canonical-degree condition for every index

    Returns:
        A verified SplittingCandidate, or None when the window system is inconsistent

    Raises:
        WindowTooSmall: If D < p, so no constraint f^p g fits
    """
    p = _require_prime(truncation)
    if truncation.degree_bound < p:
        raise WindowTooSmall(f"splitting constraints need degree bound D >= p = {p}")
    for ideal in compatible_with:
        if ideal.truncation is not truncation:
            raise AmbientMismatch("ideal belongs to a different truncation")
    if longest_element(truncation.gcm) is None:
        logger.warning("infinite type: splitting claims hold on the window only")

    system = _LinearSystem(truncation, graded_keys(truncation))
    _linearity_constraints(system)
    for ideal in compatible_with:
        _compatibility_constraints(system, ideal)
    if canonical:
        for i in truncation.gcm.indices:
            _canonical_constraints(system, i)
    logger.debug("splitting system: %d unknowns, %d equations", system.size, len(system.equations))

    solution = system.solve()
    if solution is None:
        logger.info(
            "no splitting on window D=%d d=%d", truncation.degree_bound, truncation.depth_bound
        )
        return None
    maps = system.maps(solution)
    zero = truncation.zero
    maps[(zero, zero, zero)] = [[truncation.field.one()]]
    candidate = SplittingCandidate(p, truncation, maps)
    candidate.report = verify_splitting(candidate)
    if not candidate.report.passed:
        logger.error("solved splitting failed re-verification: %s", candidate.report.failures)
    return candidate


def verify_splitting(candidate: SplittingCandidate) -> SplittingReport:
    """Unit and Frobenius-linearity for every stored f (not only generators) and p-divisible g."""
    trunc = candidate.truncation
    p = candidate.prime
    zero = trunc.zero
    stored = set(trunc.degrees)
    report = SplittingReport()
    if candidate.maps.get((zero, zero, zero)) != [[1]]:
        report.unit = False
        report.failures.append("phi(1) != 1")
    for kf in trunc.degrees:
        if not any(kf):
            continue
        for mf in trunc.depths(kf):
            if p * sum(mf) > trunc.depth_bound:
                continue
            for a in range(trunc.dim(kf, mf)):
                f = trunc.basis_vector(kf, mf, a)
                if _scale(p, kf) not in stored:
                    continue
                kf_p, fp, pmf = trunc.power(kf, f, mf, p)
                for kappa in trunc.degrees:
                    if _scale(p, _add(kf, kappa)) not in stored:
                        continue
                    g_degree = _scale(p, kappa)
                    for s in trunc.depths(g_degree):
                        if sum(pmf) + sum(s) > trunc.depth_bound:
                            continue
                        for c in range(trunc.dim(g_degree, s)):
                            g = trunc.basis_vector(g_degree, s, c)
                            lhs = candidate.apply(
                                _add(kf, kappa),
                                trunc.multiply(kf_p, fp, pmf, g_degree, g, s),
                                _add(pmf, s),
                            )
                            rhs: Dict[Depth, Vector] = {}
                            for t, phi_g in candidate.apply(kappa, g, s).items():
                                if sum(mf) + sum(t) > trunc.depth_bound:
                                    continue
                                vec = trunc.multiply(kf, f, mf, kappa, phi_g, t)
                                if any(vec):
                                    rhs[_add(mf, t)] = vec
                            if lhs != rhs:
                                report.linear = False
                                report.failures.append(
                                    "phi(f^p g) != f phi(g) "
                                    f"for f in R_{kf}{mf}, g in R_{g_degree}{s}"
                                )
    return report


def check_compatibility(candidate: SplittingCandidate, ideal: HomogeneousIdealTruncation) -> bool:
    """phi(I_{p kappa, s}) lies in I_{kappa, t} for every stored map.

    Raises:
        AmbientMismatch: If the ideal lives on another truncation
    """
    if ideal.truncation is not candidate.truncation:
        raise AmbientMismatch("ideal belongs to a different truncation")
    p = candidate.prime
    for (kappa, s, t), matrix in candidate.maps.items():
        target = ideal.piece(kappa, t)
        for x in ideal.piece(_scale(p, kappa), s).rows:
            if not target.contains(mat_vec(matrix, x, candidate.scalar_field)):
                return False
    return True


@dataclass
class CanonicalReport:
    index: int
    canonical: bool
    offending: List[Tuple[int, Depth]] = field(default_factory=list)


def canonical_degree_report(candidate: SplittingCandidate, i: int) -> CanonicalReport:
    """Expand phi_{i,j} = sum_{pk+m=j} (-1)^m e_i^(k) phi e_i^(m) and test phi_{i,j} = 0 for j >= p.

    Raises:
        WindowTooSmall: If d < p, so no term of z-degree p is visible
    """
    trunc = candidate.truncation
    p = candidate.prime
    if trunc.depth_bound < p:
        raise WindowTooSmall(f"canonical-degree check needs depth bound d >= p = {p}")
    keys = list(candidate.maps)
    kappas = sorted({key[0] for key in keys if any(key[0])})
    report = CanonicalReport(i, True)
    for kappa, s, f in _source_pieces(trunc, kappas):
        totals: Dict[Tuple[int, Depth, int], int] = {}
        for j, depth, row, key, r, c, coeff in _canonical_terms(trunc, keys, i, kappa, s, f):
            k = (j, depth, row)
            totals[k] = totals.get(k, 0) + coeff * candidate.maps[key][r][c]
        for (j, depth, _), value in totals.items():
            if trunc.field.reduce(value):
                report.canonical = False
                if (j, depth) not in report.offending:
                    report.offending.append((j, depth))
    return report


def check_canonical_degree(candidate: SplittingCandidate, i: int) -> bool:
    return canonical_degree_report(candidate, i).canonical


@dataclass
class QuotientSplittingReport:
    """Whether a splitting descends to R / I."""

    ideal: str
    compatible: bool
    unit_survives: bool
    linear_mod_ideal: bool

    @property
    def passed(self) -> bool:
        return self.compatible and self.unit_survives and self.linear_mod_ideal


def verify_quotient_splitting(
    candidate: SplittingCandidate, ideal: HomogeneousIdealTruncation
) -> QuotientSplittingReport:
    """Re-check the splitting axioms on R / I with representatives of the quotient basis."""
    trunc = candidate.truncation
    p = candidate.prime
    zero = trunc.zero
    compatible = check_compatibility(candidate, ideal)
    unit_survives = ideal.piece(zero, zero).dim == 0
    linear = True
    for gen in trunc.generators():
        for mf in trunc.depths(gen):
            if p * sum(mf) > trunc.depth_bound:
                continue
            for f in _quotient_basis(ideal, gen, mf):
                gen_p, fp, pmf = trunc.power(gen, f, mf, p)
                for (kappa, s, t) in candidate.maps:
                    g_degree = _scale(p, kappa)
                    if _scale(p, _add(gen, kappa)) not in set(trunc.degrees):
                        continue
                    if sum(pmf) + sum(s) > trunc.depth_bound:
                        continue
                    for g in _quotient_basis(ideal, g_degree, s):
                        lhs = candidate.apply(
                            _add(gen, kappa),
                            trunc.multiply(gen_p, fp, pmf, g_degree, g, s),
                            _add(pmf, s),
                        )
                        for u, phi_g in candidate.apply(kappa, g, s).items():
                            depth = _add(mf, u)
                            vec = trunc.multiply(gen, f, mf, kappa, phi_g, u)
                            lhs[depth] = [
                                trunc.field.reduce(x - y)
                                for x, y in zip(lhs.get(depth, [0] * len(vec)), vec)
                            ]
                        target = _add(gen, kappa)
                        if not all(ideal.piece(target, d).contains(v) for d, v in lhs.items()):
                            linear = False
    return QuotientSplittingReport(ideal.label, compatible, unit_survives, linear)


def _quotient_basis(
    ideal: HomogeneousIdealTruncation, degree: Degree, depth: Depth
) -> List[Vector]:
    """Unit vectors on the non-pivot coordinates of I, representing a basis of the quotient."""
    trunc = ideal.truncation
    pivots = set(ideal.piece(degree, depth).pivots)
    n = trunc.dim(degree, depth)
    return [trunc.basis_vector(degree, depth, k) for k in range(n) if k not in pivots]
