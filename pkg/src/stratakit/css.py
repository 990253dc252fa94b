"""The category-only encoding of totally normal cellular/stellar
stratified spaces.

A combinatorial stratified space is an acyclic category whose objects are
the cells (graded by dimension) plus a closedness flag per cell. Domains
are never stored geometrically: the boundary decomposition of the domain
of a cell is recovered as its link poset, whose elements are the
non-identity morphisms into the cell. Barycentric subdivision, duality,
Salvetti complexes, products, complements and subdivisions all depend
only on this data.

Closedness is machine-checked through necessary conditions only (grading,
the diamond property, sphere homology of the link's order complex and of
its lower intervals). Full regular-CW-sphere recognition is undecidable
territory, so a cell may be flagged non-closed even though its link
passes the sphere test; a cell flagged closed whose link fails the test
is always an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import category as cat_ops
from .category import AcyclicCategory, Mid, Obj
from .delta import DeltaComplex
from .homology import chain_complex, homology
from .poset import Poset, order_complex

__all__ = [
    "CombinatorialCSS",
    "SalvettiPartition",
    "link_poset",
    "validate_total_normality",
    "sd",
    "salvetti_partition",
    "dual",
    "salvetti_complex",
    "product_css",
    "remove_closed_subcomplex",
    "cellular_closure",
    "subdivide",
    "identity_subdivision",
    "poset_to_css",
    "quotient_css",
]


@dataclass(frozen=True)
class CombinatorialCSS:
    """An acyclic face category with per-cell dimension and closed flag.

    ``ambient`` remembers the complex a stratified subspace was cut from;
    it is the closure certificate consumed by cellular_closure.
    """

    cat: AcyclicCategory
    closed: dict[Obj, bool]
    ambient: "CombinatorialCSS | None" = None

    @property
    def dims(self) -> dict[Obj, int]:
        return self.cat.grades

    def dim(self, x: Obj) -> int:
        return self.cat.grades[x]

    def cells(self) -> tuple[Obj, ...]:
        return self.cat.objects


def link_poset(x: CombinatorialCSS, cell: Obj) -> Poset:
    """Boundary poset of the domain of a cell.

    Elements are the non-identity morphisms into the cell, ordered by
    b' <= b iff b' = b . c for some morphism c; graded by source
    dimension. Total normality makes these biject with the boundary cells
    of the domain.
    """
    c = x.cat
    mids = list(c.in_morphisms(cell))
    index = {m: i for i, m in enumerate(mids)}
    less = []
    for b in mids:
        for piece in c.in_morphisms(c.src[b]):
            less.append((index[c.compose[(b, piece)]], index[b]))
    grades = {index[m]: c.grades[c.src[m]] for m in mids}
    labels = {index[m]: m for m in mids}
    return Poset.from_relation(range(len(mids)), less, grades, labels)


def _sphere_homology_ok(p: Poset, n: int) -> bool:
    """Does the order complex of p have the homology of S^(n-1)?

    n = 0 demands the empty poset (the boundary of a point)."""
    if n == 0:
        return not p.elements
    if not p.elements:
        return False
    kom = order_complex(p)
    h = homology(chain_complex(kom))
    want = [0] * max(n, 1)
    want[0] += 1
    if n >= 1:
        want[n - 1] += 1
    betti = list(h.betti) + [0] * (len(want) - len(h.betti))
    if len(betti) != len(want):
        return False
    return betti == want and all(not t for t in h.torsion)


def _diamond_ok(p: Poset) -> bool:
    """Every rank-2 interval has exactly two intermediate elements."""
    for a, b in p.comparable_pairs():
        if p.grades[b] - p.grades[a] == 2:
            middles = [
                m for m in p.elements if p.less(a, m) and p.less(m, b)
            ]
            if len(middles) != 2:
                return False
    return True


def _closed_cell_link_ok(p: Poset, n: int, problems: list[str], tag: str):
    if not _sphere_homology_ok(p, n):
        problems.append(
            f"{tag}: link is not a homology ({n - 1})-sphere as required "
            "for a closed cell"
        )
        return
    if set(p.grades.values()) != set(range(n)) and n > 0:
        problems.append(f"{tag}: link grades do not fill 0..{n - 1}")
    if not _diamond_ok(p):
        problems.append(f"{tag}: link violates the diamond property")
    # each boundary cell of the domain must itself bound a sphere
    for e in p.elements:
        g = p.grades[e]
        below = sorted(p.down_set(e), key=repr)
        sub = Poset.from_relation(
            below,
            [(a, b) for a in below for b in below if p.less(a, b)],
            {a: p.grades[a] for a in below},
        )
        if not _sphere_homology_ok(sub, g):
            problems.append(
                f"{tag}: lower interval under a grade-{g} boundary cell is "
                "not a homology sphere"
            )
            return


def validate_total_normality(x: CombinatorialCSS) -> list[str]:
    """Diagnostics for the totally normal encoding; empty iff valid.

    Checks, per cell: the link is graded by source dimension below the
    cell dimension; cells flagged closed have sphere links (homology,
    diamond property, spherical lower intervals); flags cover all cells.
    Failures name the offending cell.
    """
    problems = cat_ops.validate_category(x.cat)
    if problems:
        return [f"face category: {p}" for p in problems]
    c = x.cat
    for cell in c.objects:
        if cell not in c.grades:
            problems.append(f"cell {cell!r}: no dimension assigned")
        if cell not in x.closed:
            problems.append(f"cell {cell!r}: no closedness flag")
    if problems:
        return problems
    for m in c.morphisms:
        if c.grades[c.src[m]] >= c.grades[c.dst[m]]:
            problems.append(
                f"morphism {m!r}: lift does not strictly raise dimension"
            )
    if problems:
        return problems
    for cell in c.objects:
        n = c.grades[cell]
        lk = link_poset(x, cell)
        if any(g >= n for g in lk.grades.values()):
            problems.append(
                f"cell {cell!r}: boundary poset contains a cell of dimension "
                f">= {n}"
            )
            continue
        if n == 0 and lk.elements:
            problems.append(f"cell {cell!r}: 0-cell with nonempty boundary")
            continue
        if x.closed[cell]:
            _closed_cell_link_ok(lk, n, problems, f"cell {cell!r}")
    return problems


def _computed_closed_flags(c: AcyclicCategory) -> dict[Obj, bool]:
    """Flag each cell closed iff its link passes the sphere tests."""
    probe = CombinatorialCSS(c, {cell: False for cell in c.objects})
    flags = {}
    for cell in c.objects:
        lk = link_poset(probe, cell)
        trial: list[str] = []
        if _sphere_homology_ok(lk, c.grades[cell]):
            _closed_cell_link_ok(lk, c.grades[cell], trial, "probe")
            flags[cell] = not trial
        else:
            flags[cell] = False
    return flags


def make_css(
    c: AcyclicCategory,
    closed: dict[Obj, bool] | None = None,
    ambient: CombinatorialCSS | None = None,
    check: bool = True,
) -> CombinatorialCSS:
    """Assemble and validate; closed flags are computed when omitted."""
    flags = dict(closed) if closed is not None else _computed_closed_flags(c)
    x = CombinatorialCSS(c, flags, ambient)
    if check:
        bad = validate_total_normality(x)
        if bad:
            raise ValueError("not a totally normal encoding: " + "; ".join(bad))
    return x


def sd(x: CombinatorialCSS) -> DeltaComplex:
    """Barycentric subdivision: the nondegenerate nerve of the face
    category, graded by chain length."""
    bad = validate_total_normality(x)
    if bad:
        raise ValueError("invalid stratified space: " + "; ".join(bad))
    return cat_ops.nondegenerate_nerve(x.cat)


@dataclass(frozen=True)
class SalvettiPartition:
    """Sd cells tagged by the first and last object of their chains.

    Blocks of the source map are the upper stars (the stellar-dual
    strata, indexed by the opposite poset); blocks of the target map are
    the lower stars (the Salvetti strata)."""

    complex: DeltaComplex
    source: tuple[tuple[Obj, ...], ...]
    target: tuple[tuple[Obj, ...], ...]

    def source_block_sizes(self) -> dict[Obj, int]:
        out: dict[Obj, int] = {}
        for layer in self.source:
            for s in layer:
                out[s] = out.get(s, 0) + 1
        return out

    def target_block_sizes(self) -> dict[Obj, int]:
        out: dict[Obj, int] = {}
        for layer in self.target:
            for t in layer:
                out[t] = out.get(t, 0) + 1
        return out


def salvetti_partition(x: CombinatorialCSS) -> SalvettiPartition:
    dc = sd(x)
    c = x.cat
    source: list[tuple[Obj, ...]] = [tuple(c.objects)]
    target: list[tuple[Obj, ...]] = [tuple(c.objects)]
    for layer in dc.cells[1:]:
        source.append(tuple(c.src[chain[0]] for chain in layer))
        target.append(tuple(c.dst[chain[-1]] for chain in layer))
    return SalvettiPartition(dc, tuple(source), tuple(target))


def _upper_height(c: AcyclicCategory, cell: Obj) -> int:
    """Longest chain of non-identity morphisms out of a cell."""
    memo: dict[Obj, int] = {}

    def h(v: Obj) -> int:
        if v not in memo:
            memo[v] = max(
                (1 + h(c.dst[m]) for m in c.out_morphisms(v)), default=0
            )
        return memo[v]

    return h(cell)


def dual(x: CombinatorialCSS) -> CombinatorialCSS:
    """Stellar dual: the opposite category, with the dual dimension of a
    cell the chain height of its upper star (the simplicial dimension of
    the cone on its upper link). Closed flags are recomputed from the
    dual links."""
    bad = validate_total_normality(x)
    if bad:
        raise ValueError("invalid stratified space: " + "; ".join(bad))
    op = cat_ops.opposite_category(x.cat)
    heights = {cell: _upper_height(x.cat, cell) for cell in x.cat.objects}
    op = AcyclicCategory(
        op.objects, op.morphisms, op.src, op.dst, op.compose, heights
    )
    return make_css(op)


def salvetti_complex(x: CombinatorialCSS) -> CombinatorialCSS:
    """The double dual. When all cells of x are closed this is isomorphic
    to x: same objects, dimensions, hom-sets and composition."""
    return dual(dual(x))


def product_css(x: CombinatorialCSS, y: CombinatorialCSS) -> CombinatorialCSS:
    """Product stratification: product category, summed dimensions,
    closed flags AND-ed."""
    for side in (x, y):
        bad = validate_total_normality(side)
        if bad:
            raise ValueError("invalid factor: " + "; ".join(bad))
    prod = cat_ops.product_category(x.cat, y.cat)
    closed = {
        (a, b): x.closed[a] and y.closed[b] for a in x.cells() for b in y.cells()
    }
    return make_css(prod, closed)


def remove_closed_subcomplex(x: CombinatorialCSS, cells) -> CombinatorialCSS:
    """Complement of a union of strata closed under going down (a closed
    subcomplex) or under going up (so the remainder is a closed
    subcomplex, e.g. dropping a maximal cell).

    The result is the full subcategory on the remaining cells; a cell
    stays closed iff none of the removed cells lay below it. The input is
    stored as the ambient certificate for cellular_closure.
    """
    removed = set(cells)
    unknown = removed - set(x.cells())
    if unknown:
        raise ValueError(f"unknown cells: {sorted(map(repr, unknown))}")
    c = x.cat
    down_violation = up_violation = None
    for m in c.morphisms:
        if c.dst[m] in removed and c.src[m] not in removed:
            down_violation = (c.src[m], c.dst[m])
        if c.src[m] in removed and c.dst[m] not in removed:
            up_violation = (c.src[m], c.dst[m])
    if down_violation and up_violation:
        raise ValueError(
            "removal set is neither down-closed nor up-closed: cover "
            f"{down_violation[0]!r} < {down_violation[1]!r} keeps only the "
            f"smaller cell while {up_violation[0]!r} < {up_violation[1]!r} "
            "keeps only the larger"
        )
    keep = [v for v in c.objects if v not in removed]
    sub = cat_ops.full_subcategory(c, keep)
    closed = {}
    for v in keep:
        lost = any(c.src[m] in removed for m in c.in_morphisms(v))
        closed[v] = x.closed[v] and not lost
    return CombinatorialCSS(sub, closed, ambient=x)


def cellular_closure(
    x: CombinatorialCSS, ambient: CombinatorialCSS | None = None
) -> CombinatorialCSS:
    """Minimal all-cells-closed complex containing x as a full subcategory.

    Requires a closure certificate: either x already carries the ambient
    it was cut from, or one is supplied explicitly. An input whose cells
    are all closed is returned unchanged.
    """
    if all(x.closed[v] for v in x.cells()):
        return x
    amb = ambient if ambient is not None else x.ambient
    if amb is None:
        raise ValueError(
            "no closure certificate: complex has non-closed cells and no "
            "stored ambient"
        )
    if not all(amb.closed[v] for v in amb.cells()):
        raise ValueError("ambient certificate has non-closed cells")
    present = set(x.cells())
    if not present <= set(amb.cells()):
        raise ValueError("ambient does not contain the complex")
    needed = set(present)
    c = amb.cat
    for v in present:
        for m in c.in_morphisms(v):
            needed.add(c.src[m])
    # down-closure (links of links)
    changed = True
    while changed:
        changed = False
        for v in list(needed):
            for m in c.in_morphisms(v):
                if c.src[m] not in needed:
                    needed.add(c.src[m])
                    changed = True
    sub = cat_ops.full_subcategory(c, needed)
    return make_css(sub, {v: True for v in needed})


def poset_to_css(p: Poset, closed: dict | None = None) -> CombinatorialCSS:
    """A graded poset as a regular stratified space: the face category is
    the poset itself, with cell ids the poset labels when present."""
    bad_grades = [e for e in p.elements if e not in p.grades]
    if bad_grades:
        raise ValueError("poset must be fully graded to act as a face poset")
    c = AcyclicCategory.from_poset(p)
    if p.labels:
        rename = {e: p.labels.get(e, e) for e in p.elements}
        mids = tuple((rename[a], rename[b]) for a, b in c.morphisms)
        c = AcyclicCategory(
            tuple(rename[e] for e in c.objects),
            mids,
            {(rename[a], rename[b]): rename[a] for a, b in c.morphisms},
            {(rename[a], rename[b]): rename[b] for a, b in c.morphisms},
            {
                ((rename[g[0]], rename[g[1]]), (rename[f[0]], rename[f[1]])): (
                    rename[gf[0]],
                    rename[gf[1]],
                )
                for (g, f), gf in c.compose.items()
            },
            {rename[e]: g for e, g in c.grades.items()},
        )
    return make_css(c, closed)


@dataclass(frozen=True)
class SubdivisionData:
    """Per-cell subdivided domains and per-lift induced poset maps.

    ``domain[cell]`` is the face poset of the whole subdivided domain,
    graded by piece dimension, with ``interior[cell]`` the ids of pieces
    interior to the domain. ``on_lift[m]`` maps pieces of the source
    domain to pieces of the target domain, landing in its boundary part.
    """

    domain: dict[Obj, Poset]
    interior: dict[Obj, frozenset]
    on_lift: dict[Mid, dict]


def identity_subdivision(x: CombinatorialCSS) -> SubdivisionData:
    """The trivial plan: each domain is its link plus one interior piece."""
    c = x.cat
    domain = {}
    interior = {}
    top: dict[Obj, int] = {}
    elem_of: dict[Obj, dict[Mid, int]] = {}
    for cell in c.objects:
        lk = link_poset(x, cell)
        n = len(lk.elements)
        elems = list(lk.elements) + [n]
        less = [(a, b) for a, b in lk.comparable_pairs()]
        less += [(e, n) for e in lk.elements]
        grades = dict(lk.grades)
        grades[n] = c.grades[cell]
        labels = dict(lk.labels)
        labels[n] = cell
        domain[cell] = Poset.from_relation(elems, less, grades, labels)
        interior[cell] = frozenset([n])
        top[cell] = n
        elem_of[cell] = {lk.labels[e]: e for e in lk.elements}
    on_lift = {}
    for m in c.morphisms:
        srccell, dstcell = c.src[m], c.dst[m]
        fmap = {top[srccell]: elem_of[dstcell][m]}
        for bmid, e in elem_of[srccell].items():
            fmap[e] = elem_of[dstcell][c.compose[(m, bmid)]]
        on_lift[m] = fmap
    return SubdivisionData(domain, interior, on_lift)


def subdivide(x: CombinatorialCSS, plan: SubdivisionData) -> CombinatorialCSS:
    """Subdivide every cell according to a functorial plan.

    The new face category is the Grothendieck construction of the
    domain-poset functor, restricted to interior pieces (each interior
    piece of each domain is exactly one new cell). The underlying poset
    of the result surjects onto the original face poset.
    """
    bad = validate_total_normality(x)
    if bad:
        raise ValueError("invalid stratified space: " + "; ".join(bad))
    c = x.cat
    for cell in c.objects:
        if cell not in plan.domain or cell not in plan.interior:
            raise ValueError(f"no subdivision plan for cell {cell!r}")
        dom = plan.domain[cell]
        if [e for e in dom.elements if e not in dom.grades]:
            raise ValueError(f"domain poset of {cell!r} is not graded")
        boundary = set(dom.elements) - set(plan.interior[cell])
        covered = set()
        for m in c.in_morphisms(cell):
            if m not in plan.on_lift:
                raise ValueError(f"no subdivision plan for lift {m!r}")
            fmap = plan.on_lift[m]
            covered |= {fmap[a] for a in plan.interior[c.src[m]]}
        if not boundary <= covered:
            raise ValueError(
                f"domain boundary of {cell!r} is not covered by the "
                "subdivided lifts"
            )
    gr = cat_ops.grothendieck(c, plan.domain, plan.on_lift)
    keep = [
        (cell, a) for cell, a in gr.objects if a in plan.interior[cell]
    ]
    sub = cat_ops.full_subcategory(gr, keep)
    return make_css(sub)


def quotient_css(
    x: CombinatorialCSS, action: cat_ops.GroupActionOnCategory
) -> CombinatorialCSS:
    """Orbit space of a free cellular action; dimensions descend."""
    q = cat_ops.quotient_by_free_action(x.cat, action)
    return make_css(q)
