"""Finite graded posets.

A poset is stored by its covering pairs; the full order relation is
materialized on demand via transitive closure and cached on the instance.
Elements are integer ids. Grades are optional and, where present, must
strictly increase along covers; operations that need grades fail fast
rather than inferring them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .delta import DeltaComplex

__all__ = [
    "Poset",
    "validate_poset",
    "opposite",
    "product",
    "order_complex",
    "are_isomorphic",
]


@dataclass(frozen=True)
class Poset:
    """A finite poset given by elements and covering pairs.

    ``grades`` maps a subset of the elements to integers; ``labels`` is a
    side table of human-readable names and never affects the order.
    """

    elements: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]
    grades: dict[int, int] = field(default_factory=dict)
    labels: dict[int, Hashable] = field(default_factory=dict)

    @classmethod
    def from_relation(
        cls,
        elements: Iterable[int],
        less: Iterable[tuple[int, int]],
        grades: Mapping[int, int] | None = None,
        labels: Mapping[int, Hashable] | None = None,
    ) -> "Poset":
        """Build a poset from an arbitrary strict-order relation.

        The relation is transitively closed and then reduced to its
        covering pairs, so callers may pass any generating set of pairs.
        """
        elems = tuple(elements)
        down: dict[int, set[int]] = {e: set() for e in elems}
        for lo, hi in less:
            down[hi].add(lo)
        changed = True
        while changed:
            changed = False
            for e in elems:
                new = set().union(*(down[d] for d in down[e])) if down[e] else set()
                if not new <= down[e]:
                    down[e] |= new
                    changed = True
        covers = []
        for hi in elems:
            for lo in down[hi]:
                if not any(lo in down[mid] for mid in down[hi]):
                    covers.append((lo, hi))
        return cls(
            elems,
            tuple(sorted(covers, key=repr)),
            dict(grades) if grades else {},
            dict(labels) if labels else {},
        )

    @cached_property
    def _down(self) -> dict[int, frozenset[int]]:
        """Strict down-set of each element (transitive closure of covers)."""
        lower: dict[int, set[int]] = {e: set() for e in self.elements}
        children: dict[int, list[int]] = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            children[hi].append(lo)
        order = _toposort(self.elements, self.covers)
        for e in order:
            acc: set[int] = set()
            for c in children[e]:
                acc.add(c)
                acc |= lower[c]
            lower[e] = acc
        return {e: frozenset(s) for e, s in lower.items()}

    @cached_property
    def _up_covers(self) -> dict[int, tuple[int, ...]]:
        up: dict[int, list[int]] = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            up[lo].append(hi)
        return {e: tuple(v) for e, v in up.items()}

    def less(self, a: int, b: int) -> bool:
        return a in self._down[b]

    def leq(self, a: int, b: int) -> bool:
        return a == b or a in self._down[b]

    def down_set(self, e: int) -> frozenset[int]:
        return self._down[e]

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All strict pairs (a, b) with a < b."""
        return [(a, b) for b in self.elements for a in self._down[b]]

    def chains(self) -> list[tuple[int, ...]]:
        """All nonempty strictly increasing chains, shortest first."""
        out: list[tuple[int, ...]] = [(e,) for e in self.elements]
        frontier = list(out)
        while frontier:
            nxt = []
            for chain in frontier:
                for f in self.elements:
                    if chain[-1] in self._down[f]:
                        nxt.append(chain + (f,))
            out.extend(nxt)
            frontier = nxt
        return out

    def height(self) -> int:
        """Length (number of covers) of the longest chain; -1 if empty."""
        if not self.elements:
            return -1
        return max(len(c) for c in self.chains()) - 1


def _toposort(elements, covers) -> list[int]:
    children: dict[int, list[int]] = {e: [] for e in elements}
    indeg = {e: 0 for e in elements}
    for lo, hi in covers:
        children[lo].append(hi)
        indeg[hi] += 1
    queue = [e for e in elements if indeg[e] == 0]
    order = []
    while queue:
        e = queue.pop()
        order.append(e)
        for f in children[e]:
            indeg[f] -= 1
            if indeg[f] == 0:
                queue.append(f)
    if len(order) != len(elements):
        # cycle; callers detect this via validate_poset
        order.extend(e for e in elements if e not in set(order))
    return order


def validate_poset(p: Poset) -> list[str]:
    """Diagnostic check of the poset invariants; empty list iff valid."""
    problems = []
    seen = set()
    for e in p.elements:
        if e in seen:
            problems.append(f"duplicate element id {e}")
        seen.add(e)
    for lo, hi in p.covers:
        if lo not in seen or hi not in seen:
            problems.append(f"cover ({lo},{hi}) references unknown element")
            return problems
        if lo == hi:
            problems.append(f"reflexive cover ({lo},{hi})")

    # antisymmetry == acyclicity of the cover digraph
    children: dict[int, list[int]] = {e: [] for e in p.elements}
    indeg = {e: 0 for e in p.elements}
    for lo, hi in p.covers:
        children[lo].append(hi)
        indeg[hi] += 1
    queue = [e for e in p.elements if indeg[e] == 0]
    visited = 0
    while queue:
        e = queue.pop()
        visited += 1
        for f in children[e]:
            indeg[f] -= 1
            if indeg[f] == 0:
                queue.append(f)
    if visited != len(p.elements):
        problems.append("antisymmetry violation: cover relation contains a cycle")
        return problems

    down = p._down
    for lo, hi in p.covers:
        if any(lo in down[mid] for mid in down[hi]):
            problems.append(f"cover ({lo},{hi}) is a transitive shortcut")
    if p.grades:
        missing = [e for e in p.elements if e not in p.grades]
        if missing:
            problems.append(f"partial grading: elements {sorted(missing)} ungraded")
        else:
            for lo, hi in p.covers:
                if p.grades[lo] >= p.grades[hi]:
                    problems.append(
                        f"grade does not increase along cover ({lo},{hi})"
                    )
    return problems


def opposite(p: Poset) -> Poset:
    """Reverse all covers; grades dualize to top_grade - grade.

    Involutive: opposite(opposite(p)) == p element-for-element,
    cover-for-cover, grade-for-grade.
    """
    bad = validate_poset(p)
    if bad:
        raise ValueError("invalid poset: " + "; ".join(bad))
    grades = {}
    if p.grades:
        top = max(p.grades.values())
        grades = {e: top - g for e, g in p.grades.items()}
    return Poset(
        p.elements,
        tuple((hi, lo) for lo, hi in p.covers),
        grades,
        dict(p.labels),
    )


def product(p: Poset, q: Poset) -> Poset:
    """Componentwise order on pairs; grades add when both factors are graded."""
    for side, name in ((p, "first"), (q, "second")):
        bad = validate_poset(side)
        if bad:
            raise ValueError(f"invalid {name} factor: " + "; ".join(bad))
    pairs = [(a, b) for a in p.elements for b in q.elements]
    index = {pair: i for i, pair in enumerate(pairs)}
    covers = []
    for a, b in pairs:
        for a2 in p._up_covers[a]:
            covers.append((index[(a, b)], index[(a2, b)]))
        for b2 in q._up_covers[b]:
            covers.append((index[(a, b)], index[(a, b2)]))
    grades = {}
    if (not p.elements or p.grades) and (not q.elements or q.grades):
        for (a, b), i in index.items():
            grades[i] = p.grades[a] + q.grades[b]
    labels = {
        i: (p.labels.get(a, a), q.labels.get(b, b)) for (a, b), i in index.items()
    }
    return Poset(tuple(range(len(pairs))), tuple(sorted(covers)), grades, labels)


def order_complex(p: Poset) -> DeltaComplex:
    """Delta complex whose k-cells are the strictly increasing (k+1)-chains.

    The i-th face deletes the i-th chain entry.
    """
    bad = validate_poset(p)
    if bad:
        raise ValueError("invalid poset: " + "; ".join(bad))
    by_dim: list[list[tuple[int, ...]]] = []
    frontier = [(e,) for e in p.elements]
    while frontier:
        by_dim.append(sorted(frontier))
        nxt = [
            chain + (f,)
            for chain in frontier
            for f in p.elements
            if chain[-1] in p._down[f]
        ]
        frontier = nxt
    cells = tuple(tuple(c) for c in by_dim)
    index = [{c: i for i, c in enumerate(layer)} for layer in by_dim]
    faces = []
    for n in range(1, len(by_dim)):
        layer = []
        for chain in by_dim[n]:
            layer.append(
                tuple(
                    index[n - 1][chain[:i] + chain[i + 1 :]] for i in range(n + 1)
                )
            )
        faces.append(tuple(layer))
    return DeltaComplex(cells, tuple(faces))


def are_isomorphic(p: Poset, q: Poset) -> bool:
    """Graded-poset isomorphism via digraph matching on Hasse diagrams."""
    import networkx as nx

    if len(p.elements) != len(q.elements) or len(p.covers) != len(q.covers):
        return False

    def digraph(poset: Poset) -> "nx.DiGraph":
        g = nx.DiGraph()
        for e in poset.elements:
            g.add_node(e, grade=poset.grades.get(e))
        g.add_edges_from(poset.covers)
        return g

    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        digraph(p),
        digraph(q),
        node_match=lambda a, b: a["grade"] == b["grade"],
    )
    return matcher.is_isomorphic()
