"""Delta complexes: cells with face maps, no degeneracies.

Cells in dimension n carry opaque keys (chains, sign vectors, ...) for
readability; face maps are stored positionally as index tuples into the
dimension below. The defining identities d_i d_j = d_{j-1} d_i (i < j)
are checkable exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

__all__ = [
    "DeltaComplex",
    "validate_delta",
    "f_vector",
    "euler_characteristic",
    "components",
    "face_poset",
]


@dataclass(frozen=True)
class DeltaComplex:
    """cells[n] lists the n-cell keys; faces[n-1][c] = (d_0(c), ..., d_n(c))."""

    cells: tuple[tuple[Hashable, ...], ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.faces) != max(len(self.cells) - 1, 0):
            raise ValueError("faces must cover dimensions 1..top")

    def dim(self) -> int:
        return len(self.cells) - 1

    def size(self, n: int) -> int:
        if 0 <= n < len(self.cells):
            return len(self.cells[n])
        return 0

    def face(self, n: int, cell: int, i: int) -> int:
        """Index of d_i of the given n-cell, n >= 1."""
        return self.faces[n - 1][cell][i]


def validate_delta(k: DeltaComplex) -> list[str]:
    """Check index ranges and the simplicial identities; empty iff valid."""
    problems = []
    for n in range(1, k.dim() + 1):
        if len(k.faces[n - 1]) != k.size(n):
            problems.append(f"dimension {n}: face table size mismatch")
            continue
        for c, row in enumerate(k.faces[n - 1]):
            if len(row) != n + 1:
                problems.append(f"{n}-cell {c}: expected {n + 1} faces")
                continue
            for i, f in enumerate(row):
                if not 0 <= f < k.size(n - 1):
                    problems.append(f"{n}-cell {c}: face d_{i} out of range")
    if problems:
        return problems
    for n in range(2, k.dim() + 1):
        for c in range(k.size(n)):
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = k.face(n - 1, k.face(n, c, j), i)
                    rhs = k.face(n - 1, k.face(n, c, i), j - 1)
                    if lhs != rhs:
                        problems.append(
                            f"{n}-cell {c}: d_{i} d_{j} != d_{j - 1} d_{i}"
                        )
    return problems


def f_vector(k: DeltaComplex) -> tuple[int, ...]:
    return tuple(len(layer) for layer in k.cells)


def euler_characteristic(k: DeltaComplex) -> int:
    return sum((-1) ** n * len(layer) for n, layer in enumerate(k.cells))


def components(k: DeltaComplex) -> int:
    """Connected components of the 1-skeleton."""
    n0 = k.size(0)
    parent = list(range(n0))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in range(k.size(1)):
        a, b = find(k.face(1, c, 0)), find(k.face(1, c, 1))
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(n0)})


def face_poset(k: DeltaComplex):
    """Poset of all cells ordered by iterated faces, graded by dimension.

    For the barycentric subdivision of a totally normal space this is the
    face poset of a regular complex; elements are densely renumbered and
    labeled (dim, key).
    """
    from .poset import Poset

    ids: dict[tuple[int, int], int] = {}
    labels = {}
    grades = {}
    counter = 0
    for n, layer in enumerate(k.cells):
        for c, key in enumerate(layer):
            ids[(n, c)] = counter
            labels[counter] = (n, key)
            grades[counter] = n
            counter += 1
    covers = set()
    for n in range(1, k.dim() + 1):
        for c in range(k.size(n)):
            for i in range(n + 1):
                covers.add((ids[(n - 1, k.face(n, c, i))], ids[(n, c)]))
    return Poset(tuple(range(counter)), tuple(sorted(covers)), grades, labels)
