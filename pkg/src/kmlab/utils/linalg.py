"""Exact linear algebra over QQ and GF(p) on top of sympy's DomainMatrix.

Vectors are plain lists of scalars: ``Fraction`` over QQ, ``int`` in ``[0, p)`` over GF(p).
Matrices are lists of rows. All heavy lifting (row reduction, inversion, Hermite normal
forms) is delegated to sympy; this module only converts between representations.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, Matrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.matrices import DomainMatrix

Scalar = Union[Fraction, int]
Vector = List[Scalar]
Rows = List[Vector]


@dataclass(frozen=True)
class ScalarField:
    """The coefficient field: QQ when ``modulus`` is None, otherwise GF(modulus)."""

    modulus: Optional[int] = None

    @property
    def domain(self) -> Any:
        return QQ if self.modulus is None else GF(self.modulus)

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    def convert(self, x: Union[int, Fraction]) -> Scalar:
        """Bring an integer or rational into this field."""
        if self.modulus is None:
            return Fraction(x)
        x = Fraction(x)
        num = x.numerator % self.modulus
        den = x.denominator % self.modulus
        if den == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({self.modulus})")
        return (num * pow(den, -1, self.modulus)) % self.modulus

    def reduce(self, x: Scalar) -> Scalar:
        return x if self.modulus is None else x % self.modulus

    def zero(self) -> Scalar:
        return self.convert(0)

    def one(self) -> Scalar:
        return self.convert(1)

    def to_domain(self, x: Scalar) -> Any:
        if self.modulus is None:
            x = Fraction(x)
            return QQ(x.numerator, x.denominator)
        return self.domain(int(x) % self.modulus)

    def from_domain(self, x: Any) -> Scalar:
        if self.modulus is None:
            return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))
        return int(x) % self.modulus

    def label(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"


RATIONALS = ScalarField()


def to_domain_matrix(
    rows: Sequence[Sequence[Scalar]], ncols: int, field: ScalarField
) -> DomainMatrix:
    """Build a DomainMatrix from a list of rows."""
    converted = [[field.to_domain(x) for x in row] for row in rows]
    return DomainMatrix(converted, (len(converted), ncols), field.domain)


def from_domain_matrix(matrix: DomainMatrix, field: ScalarField) -> Rows:
    """Convert a DomainMatrix back into a list of rows."""
    return [[field.from_domain(x) for x in row] for row in matrix.to_list()]


def rref(
    rows: Sequence[Sequence[Scalar]], ncols: int, field: ScalarField = RATIONALS
) -> Tuple[Rows, List[int]]:
    """Reduced row echelon form, keeping only the nonzero rows.

    Args:
        rows: Matrix rows
        ncols: Number of columns (needed when ``rows`` is empty)
        field: Coefficient field

    Returns:
        Tuple of (nonzero rref rows, pivot columns)
    """
    if not rows or ncols == 0:
        return [], []
    reduced, pivots = to_domain_matrix(rows, ncols, field).rref()
    pivots = list(pivots)
    return from_domain_matrix(reduced, field)[: len(pivots)], pivots


def rank(rows: Sequence[Sequence[Scalar]], ncols: int, field: ScalarField = RATIONALS) -> int:
    if not rows or ncols == 0:
        return 0
    return to_domain_matrix(rows, ncols, field).rank()


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int, field: ScalarField = RATIONALS) -> Rows:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero()] * ncols
        x[f] = field.one()
        for r, c in enumerate(pivots):
            x[c] = field.reduce(-reduced[r][f])
        basis.append(x)
    return basis


def reduce_against(
    basis: Rows, pivots: Sequence[int], vector: Sequence[Scalar], field: ScalarField = RATIONALS
) -> Vector:
    """Remainder of ``vector`` after eliminating the pivots of an rref basis."""
    v = list(vector)
    for row, c in zip(basis, pivots):
        coeff = v[c]
        if coeff:
            v = [field.reduce(a - coeff * b) for a, b in zip(v, row)]
    return v


def in_row_space(
    basis: Rows, pivots: Sequence[int], vector: Sequence[Scalar], field: ScalarField = RATIONALS
) -> bool:
    return not any(reduce_against(basis, pivots, vector, field))


def intersect_row_spaces(
    a: Rows, b: Rows, ncols: int, field: ScalarField = RATIONALS
) -> Tuple[Rows, List[int]]:
    """Intersection of two row spaces, returned in rref.

    Solves x.A = y.B through the nullspace of the stacked transpose.
    """
    if not a or not b:
        return [], []
    stacked = [list(r) for r in a] + [[field.reduce(-x) for x in r] for r in b]
    columns = [[stacked[k][c] for k in range(len(stacked))] for c in range(ncols)]
    common = []
    for z in nullspace(columns, len(stacked), field):
        x = z[: len(a)]
        common.append(
            [
                field.reduce(sum((x[k] * a[k][c] for k in range(len(a))), field.zero()))
                for c in range(ncols)
            ]
        )
    return rref(common, ncols, field)


def solve(
    rows: Sequence[Sequence[Scalar]],
    rhs: Sequence[Scalar],
    ncols: int,
    field: ScalarField = RATIONALS,
) -> Optional[Vector]:
    """One solution of rows . x = rhs (free variables set to zero), or None."""
    if not rows:
        return [field.zero()] * ncols
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1, field)
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][ncols]
    return x


def inverse(rows: Sequence[Sequence[Scalar]], field: ScalarField = RATIONALS) -> Rows:
    n = len(rows)
    if n == 0:
        return []
    return from_domain_matrix(to_domain_matrix(rows, n, field).inv(), field)


def mat_vec(
    matrix: Sequence[Sequence[Scalar]], vector: Sequence[Scalar], field: ScalarField = RATIONALS
) -> Vector:
    return [field.reduce(sum((a * b for a, b in zip(row, vector)), field.zero())) for row in matrix]


def transpose(matrix: Sequence[Sequence[Scalar]], nrows_out: Optional[int] = None) -> Rows:
    if not matrix:
        return [[] for _ in range(nrows_out or 0)]
    return [list(col) for col in zip(*matrix)]


def hnf_lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> Rows:
    """Z-basis of the lattice spanned by integer vectors of length ``dim``.

    sympy's Hermite normal form works column-wise: the generators are placed as columns
    and the nonzero columns of the result form the basis.
    """
    if not vectors or dim == 0:
        return []
    columns = Matrix([[int(v[c]) for v in vectors] for c in range(dim)])
    hnf = hermite_normal_form(columns)
    basis = []
    for j in range(hnf.shape[1]):
        col = [int(hnf[i, j]) for i in range(hnf.shape[0])]
        if any(col):
            basis.append(col)
    return basis


def mat_mul(
    a: Sequence[Sequence[Scalar]],
    b: Sequence[Sequence[Scalar]],
    ncols: int,
    field: ScalarField = RATIONALS,
) -> Rows:
    """Product of a (n x k) and b (k x ncols) as row lists."""
    if not a:
        return []
    inner = len(b)
    if inner == 0:
        return [[field.zero()] * ncols for _ in a]
    product = to_domain_matrix(a, inner, field) * to_domain_matrix(b, ncols, field)
    return from_domain_matrix(product, field)


def combine_rows(
    coeffs: Sequence[Scalar],
    rows: Sequence[Sequence[Scalar]],
    ncols: int,
    field: ScalarField = RATIONALS,
) -> Vector:
    """The row vector coeffs . rows."""
    out = [field.zero()] * ncols
    for c, row in zip(coeffs, rows):
        if c:
            out = [field.reduce(x + c * y) for x, y in zip(out, row)]
    return out


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a subspace of field^ncols."""

    def __init__(self, ncols: int, field: ScalarField = RATIONALS) -> None:
        self.ncols = ncols
        self.field = field
        self.rows: Rows = []
        self.pivots: List[int] = []

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Scalar]], ncols: int, field: ScalarField = RATIONALS
    ) -> "EchelonBasis":
        basis = cls(ncols, field)
        basis.rows, basis.pivots = rref([list(r) for r in rows], ncols, field)
        return basis

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Sequence[Scalar]) -> Vector:
        return reduce_against(self.rows, self.pivots, vector, self.field)

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence[Scalar]) -> bool:
        """Insert a vector; returns False when it was already in the span."""
        r = self.reduce(vector)
        lead = next((c for c, x in enumerate(r) if x), None)
        if lead is None:
            return False
        if self.field.is_rational:
            inv = 1 / Fraction(r[lead])
        else:
            inv = pow(int(r[lead]), -1, self.field.modulus)
        r = [self.field.reduce(x * inv) for x in r]
        for k, row in enumerate(self.rows):
            coeff = row[lead]
            if coeff:
                self.rows[k] = [self.field.reduce(a - coeff * b) for a, b in zip(row, r)]
        position = sum(1 for c in self.pivots if c < lead)
        self.rows.insert(position, r)
        self.pivots.insert(position, lead)
        return True

    def extend(self, vectors: Sequence[Sequence[Scalar]]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.ncols, self.field)
        other.rows = [list(r) for r in self.rows]
        other.pivots = list(self.pivots)
        return other
