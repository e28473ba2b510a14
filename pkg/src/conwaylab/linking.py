"""Linking matrices and the determinant route to the lowest coefficient.

For an n-component link the matrix has l_ij = lk(component i, component j)
off the diagonal and l_ii = -sum of the other entries in row i, so every row
and column sums to zero.  All first cofactors of such a matrix are equal,
and (-1)^(n-1) times that cofactor equals the lowest normal-form coefficient
a_0 of the Conway polynomial, giving an independent cross-check of the skein
engine.  All arithmetic is exact over Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from conwaylab.diagram import LinkDiagram, components

__all__ = [
    "LinkingMatrix",
    "linking_matrix",
    "cofactor",
    "a0_from_matrix",
    "bareiss_determinant",
    "is_algebraically_split",
]


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination.

    The empty matrix has determinant 1.  Intermediate divisions are exact,
    so no rationals ever appear.
    """
    n = len(rows)
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class LinkingMatrix:
    """Symmetric integer matrix of pairwise linking numbers.

    entries[i][j] is lk(i, j) for i != j; the diagonal makes every row sum
    to zero.  Indices follow the diagram's component labeling (free loops
    give zero rows).
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("linking matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("linking matrix must be symmetric")
            if sum(self.entries[i]) != 0:
                raise ValueError("linking matrix rows must sum to zero")

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def from_diagram(cls, d: LinkDiagram) -> "LinkingMatrix":
        return linking_matrix(d)

    def minor(self, row: int, col: int) -> int:
        sub = [
            [e for j, e in enumerate(r) if j != col]
            for i, r in enumerate(self.entries)
            if i != row
        ]
        return bareiss_determinant(sub)

    def cofactor(self, row: int, col: int) -> int:
        return (-1) ** (row + col) * self.minor(row, col)

    def mod(self, p: int) -> tuple[tuple[int, ...], ...]:
        if p < 2:
            raise ValueError("modulus must be at least 2")
        return tuple(tuple(e % p for e in row) for row in self.entries)

    def to_json_dict(self) -> dict:
        return {"schema": 1, "entries": [list(r) for r in self.entries]}


def linking_matrix(d: LinkDiagram) -> LinkingMatrix:
    """Pairwise linking numbers of all components in one crossing sweep."""
    lab = components(d)
    n = lab.count
    acc = [[0] * n for _ in range(n)]
    for c in d.crossings:
        i = lab.assignment[c.under_in]
        j = lab.assignment[c.over_in]
        if i != j:
            acc[i][j] += c.sign
            acc[j][i] += c.sign
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(0)
            else:
                if acc[i][j] % 2:
                    raise ValueError("odd crossing parity between components")
                row.append(acc[i][j] // 2)
        entries.append(row)
    for i in range(n):
        entries[i][i] = -sum(entries[i])
    return LinkingMatrix(tuple(tuple(r) for r in entries))


def cofactor(m: LinkingMatrix, row: int, col: int) -> int:
    """Signed cofactor (-1)^(row+col) * minor; any index pair gives the same
    value on a linking matrix."""
    return m.cofactor(row, col)


def a0_from_matrix(m: LinkingMatrix | LinkDiagram) -> int:
    """Lowest normal-form coefficient via the matrix route.

    a_0 = (-1)^(n-1) * cofactor(0, 0); for a single component the empty
    minor gives 1.
    """
    if isinstance(m, LinkDiagram):
        m = linking_matrix(m)
    n = m.size
    if n == 0:
        raise ValueError("a_0 needs at least one component")
    return (-1) ** (n - 1) * m.cofactor(0, 0)


def is_algebraically_split(d: LinkDiagram | LinkingMatrix) -> bool:
    """Whether all pairwise linking numbers vanish."""
    m = linking_matrix(d) if isinstance(d, LinkDiagram) else d
    return all(
        m.entries[i][j] == 0
        for i in range(m.size)
        for j in range(m.size)
        if i != j
    )
