"""Generalized Cartan matrices, weights and the coroot pairing."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from kmlab.errors import NotDominant, NotGCM, NotSymmetrizable


@dataclass(frozen=True)
class Weight:
    """The weight ``anchor - sum_i depth[i] * alpha_i``.

    ``anchor`` is in fundamental-weight coordinates; ``depth`` counts simple roots.
    """

    anchor: Tuple[int, ...]
    depth: Tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.anchor, other.anchor)),
            tuple(a + b for a, b in zip(self.depth, other.depth)),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.anchor), tuple(-m for m in self.depth))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def scale(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.anchor), tuple(k * m for m in self.depth))

    @property
    def total_depth(self) -> int:
        return sum(self.depth)

    def with_depth(self, depth: Sequence[int]) -> "Weight":
        return Weight(self.anchor, tuple(depth))


@dataclass(frozen=True)
class GCM:
    """A validated generalized Cartan matrix."""

    labels: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    symmetrizer: Optional[Tuple[int, ...]] = None
    name: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def indices(self) -> range:
        return range(self.rank)

    @property
    def is_symmetrizable(self) -> bool:
        return self.symmetrizer is not None

    def index(self, label: str) -> int:
        """Map a label to its internal index.

        Raises:
            KeyError: If the label is unknown
        """
        try:
            return self.labels.index(str(label))
        except ValueError as e:
            raise KeyError(f"Unknown index label {label!r}; labels are {list(self.labels)}") from e

    # Weights ----------------------------------------------------------------

    def weight(self, anchor: Sequence[int], depth: Optional[Sequence[int]] = None) -> Weight:
        depth = tuple(depth) if depth is not None else (0,) * self.rank
        return Weight(tuple(anchor), depth)

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.rank, (0,) * self.rank)

    def fundamental(self, i: int) -> Weight:
        anchor = [0] * self.rank
        anchor[i] = 1
        return self.weight(anchor)

    def simple_root(self, i: int) -> Weight:
        depth = [0] * self.rank
        depth[i] = -1
        return Weight((0,) * self.rank, tuple(depth))

    @property
    def rho(self) -> Weight:
        return self.weight((1,) * self.rank)

    def pairing(self, i: int, w: Weight) -> int:
        """Return <alpha_i^vee, w> = anchor_i - sum_j depth_j c_ij."""
        row = self.matrix[i]
        return w.anchor[i] - sum(m * c for m, c in zip(w.depth, row))

    def root_pairing(self, i: int, root: Sequence[int]) -> int:
        """<alpha_i^vee, sum_j root_j alpha_j> for a root-lattice vector."""
        return sum(m * c for m, c in zip(root, self.matrix[i]))

    def reflect(self, i: int, w: Weight) -> Weight:
        """Return s_i(w) = w - <alpha_i^vee, w> alpha_i; the anchor is untouched."""
        n = self.pairing(i, w)
        if n == 0:
            return w
        depth = list(w.depth)
        depth[i] += n
        return Weight(w.anchor, tuple(depth))

    def is_dominant(self, w: Weight) -> bool:
        return all(self.pairing(i, w) >= 0 for i in self.indices)

    def is_regular_dominant(self, w: Weight) -> bool:
        return all(self.pairing(i, w) >= 1 for i in self.indices)

    def pairings(self, w: Weight) -> Tuple[int, ...]:
        return tuple(self.pairing(i, w) for i in self.indices)

    # Invariant form ---------------------------------------------------------

    def form(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Symmetrized bilinear form on the root lattice, (alpha_i | alpha_j) = d_i c_ij.

        Raises:
            NotSymmetrizable: If the matrix has no symmetrizer
        """
        if self.symmetrizer is None:
            raise NotSymmetrizable(self.name)
        d = self.symmetrizer
        return sum(
            a[i] * b[j] * d[i] * self.matrix[i][j]
            for i in self.indices
            for j in self.indices
            if a[i] and b[j]
        )

    def rho_form(self, a: Sequence[int]) -> int:
        """(rho | a) on the root lattice, using (rho | alpha_i) = d_i."""
        if self.symmetrizer is None:
            raise NotSymmetrizable(self.name)
        return sum(m * d for m, d in zip(a, self.symmetrizer))

    def blocks(self) -> List[List[int]]:
        """Indecomposable blocks, as sorted index lists."""
        return sorted(sorted(c) for c in nx.connected_components(_coxeter_graph(self.matrix)))

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "labels": list(self.labels),
            "matrix": [list(r) for r in self.matrix],
            "symmetrizer": list(self.symmetrizer) if self.symmetrizer else None,
        }


def _coxeter_graph(matrix: Sequence[Sequence[int]]) -> nx.Graph:
    graph = nx.Graph()
    n = len(matrix)
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if matrix[i][j] != 0)
    return graph


def _compute_symmetrizer(matrix: Sequence[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    """Componentwise-minimal positive integer d with d_i c_ij = d_j c_ji, or None."""
    n = len(matrix)
    graph = _coxeter_graph(matrix)
    d: List[Fraction] = [Fraction(0)] * n

    for component in nx.connected_components(graph):
        root = min(component)
        d[root] = Fraction(1)
        for i, j in nx.bfs_edges(graph, root):
            d[j] = d[i] * Fraction(matrix[i][j], matrix[j][i])
        for i in component:
            for j in component:
                if d[i] * matrix[i][j] != d[j] * matrix[j][i]:
                    return None
        scale = reduce(lcm, (d[i].denominator for i in component), 1)
        ints = [int(d[i] * scale) for i in component]
        common = reduce(gcd, ints)
        for i, v in zip(component, ints):
            d[i] = Fraction(v // common)

    return tuple(int(x) for x in d)


def validate_gcm(
    matrix: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None, name: str = ""
) -> GCM:
    """Validate a generalized Cartan matrix and compute its symmetrizer.

    Args:
        matrix: Square integer matrix
        labels: Index names; defaults to "1".."r"
        name: Optional display name

    Returns:
        Validated GCM (symmetrizer None when none exists)

    Raises:
        NotGCM: On a non-square matrix, a diagonal entry other than 2, a positive
            off-diagonal entry or an asymmetric zero pattern
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotGCM("matrix is not square")
    for i in range(n):
        for j in range(n):
            if not isinstance(rows[i][j], int) or isinstance(rows[i][j], bool):
                raise NotGCM("entries must be integers", (i, j))
    for i in range(n):
        if rows[i][i] != 2:
            raise NotGCM(f"diagonal entry is {rows[i][i]}, expected 2", (i, i))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry {rows[i][j]}", (i, j))
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise NotGCM("c_ij = 0 but c_ji != 0", (i, j))

    if labels is None:
        labels = [str(i + 1) for i in range(n)]
    labels = tuple(str(x) for x in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise NotGCM("labels must be distinct and one per row")

    return GCM(
        labels=labels,
        matrix=tuple(tuple(r) for r in rows),
        symmetrizer=_compute_symmetrizer(rows),
        name=name,
    )


WeightLike = Union[Weight, Sequence[int]]


def as_weight(gcm: GCM, weight: WeightLike) -> Weight:
    """Accept either a Weight or an anchor vector in fundamental-weight coordinates."""
    if isinstance(weight, Weight):
        return weight
    anchor = tuple(int(a) for a in weight)
    if len(anchor) != gcm.rank:
        raise ValueError(f"Weight {anchor} has {len(anchor)} entries, expected {gcm.rank}")
    return gcm.weight(anchor)


def require_dominant(gcm: GCM, weight: WeightLike) -> Weight:
    """Return ``weight`` as a Weight, raising NotDominant unless every pairing is >= 0."""
    w = as_weight(gcm, weight)
    if not gcm.is_dominant(w):
        raise NotDominant(w.anchor)
    return w
