"""Finite acyclic categories with explicit hom-sets and composition.

Identities are synthetic: the stored morphism list contains non-identity
morphisms only, and nerve enumeration ranges over them, which is exactly
the nondegenerate nerve. Hom-sets are explicit id lists and composition
is an explicit table, because the categories arising from cell
structures are small and their compositions are non-uniform (two
composite paths may coincide).

Object and morphism ids are arbitrary hashables; all iteration follows
the stored tuple order, so outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Mapping

from .delta import DeltaComplex
from .poset import Poset

__all__ = [
    "AcyclicCategory",
    "GroupActionOnCategory",
    "validate_category",
    "underlying_poset",
    "nondegenerate_nerve",
    "sd_category",
    "upper_star",
    "upper_link",
    "lower_star",
    "lower_link",
    "product_category",
    "opposite_category",
    "full_subcategory",
    "grothendieck",
    "quotient_by_free_action",
    "categories_isomorphic",
]

Obj = Hashable
Mid = Hashable

IDENTITY = "1"  # sentinel tag for identity components in derived categories


@dataclass(frozen=True)
class AcyclicCategory:
    """Objects, non-identity morphisms, and a total composition table.

    ``compose[(g, f)] = g . f`` for every composable pair of non-identity
    morphisms (dst(f) == src(g)). ``grades`` optionally assigns an integer
    to each object (the cell dimension, for face categories).
    """

    objects: tuple[Obj, ...]
    morphisms: tuple[Mid, ...]
    src: dict[Mid, Obj]
    dst: dict[Mid, Obj]
    compose: dict[tuple[Mid, Mid], Mid]
    grades: dict[Obj, int] = field(default_factory=dict)

    @cached_property
    def _out(self) -> dict[Obj, tuple[Mid, ...]]:
        out: dict[Obj, list[Mid]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            out[self.src[m]].append(m)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def _in(self) -> dict[Obj, tuple[Mid, ...]]:
        inc: dict[Obj, list[Mid]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            inc[self.dst[m]].append(m)
        return {x: tuple(v) for x, v in inc.items()}

    def hom(self, x: Obj, y: Obj) -> tuple[Mid, ...]:
        return tuple(m for m in self._out.get(x, ()) if self.dst[m] == y)

    def out_morphisms(self, x: Obj) -> tuple[Mid, ...]:
        return self._out[x]

    def in_morphisms(self, x: Obj) -> tuple[Mid, ...]:
        return self._in[x]

    @classmethod
    def from_poset(cls, p: Poset) -> "AcyclicCategory":
        """A poset as a category: one morphism per strict pair."""
        mids = [(a, b) for b in p.elements for a in sorted(p.down_set(b), key=repr)]
        comp = {}
        for a, b in mids:
            for c in p.elements:
                if p.less(b, c):
                    comp[((b, c), (a, b))] = (a, c)
        return cls(
            tuple(p.elements),
            tuple(sorted(mids)),
            {m: m[0] for m in mids},
            {m: m[1] for m in mids},
            comp,
            dict(p.grades),
        )


def validate_category(c: AcyclicCategory) -> list[str]:
    """Report unit/associativity/acyclicity violations; empty iff valid."""
    problems = []
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        problems.append("duplicate object ids")
    mids = set(c.morphisms)
    if len(mids) != len(c.morphisms):
        problems.append("duplicate morphism ids")
    for m in c.morphisms:
        if c.src.get(m) not in objs or c.dst.get(m) not in objs:
            problems.append(f"morphism {m!r} has undefined endpoints")
            return problems
        if c.src[m] == c.dst[m]:
            problems.append(
                f"morphism {m!r}: Hom(x,x) may only contain the identity"
            )
    # acyclicity of the underlying relation
    adj: dict[Obj, set[Obj]] = {x: set() for x in c.objects}
    for m in c.morphisms:
        adj[c.src[m]].add(c.dst[m])
    state: dict[Obj, int] = {}

    def has_cycle(x: Obj) -> bool:
        stack = [(x, iter(adj[x]))]
        state[x] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for y in it:
                if state.get(y) == 1:
                    return True
                if y not in state:
                    state[y] = 1
                    stack.append((y, iter(adj[y])))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                stack.pop()
        return False

    for x in c.objects:
        if x not in state and has_cycle(x):
            problems.append("acyclicity violation: Hom cycle through objects")
            break
    if problems:
        return problems

    for (g, f), gf in c.compose.items():
        if g not in mids or f not in mids or gf not in mids:
            problems.append(f"composition entry ({g!r},{f!r}) references unknown ids")
        elif c.dst[f] != c.src[g]:
            problems.append(f"composition entry ({g!r},{f!r}) is not composable")
        elif c.src[gf] != c.src[f] or c.dst[gf] != c.dst[g]:
            problems.append(f"composite {gf!r} of ({g!r},{f!r}) has wrong endpoints")
    for f in c.morphisms:
        for g in c._out[c.dst[f]]:
            if (g, f) not in c.compose:
                problems.append(f"missing composition entry for ({g!r},{f!r})")
    if problems:
        return problems
    for f in c.morphisms:
        for g in c._out[c.dst[f]]:
            gf = c.compose[(g, f)]
            for h in c._out[c.dst[g]]:
                if c.compose[(h, gf)] != c.compose[(c.compose[(h, g)], f)]:
                    problems.append(
                        f"associativity fails on ({h!r},{g!r},{f!r})"
                    )
    return problems


def underlying_poset(c: AcyclicCategory) -> Poset:
    """Order x <= y iff Hom(x,y) is nonempty; grades copied.

    Elements are densely renumbered in object order; labels retain the
    original object ids.
    """
    bad = validate_category(c)
    if bad:
        raise ValueError("invalid category: " + "; ".join(bad))
    index = {x: i for i, x in enumerate(c.objects)}
    less = [(index[c.src[m]], index[c.dst[m]]) for m in c.morphisms]
    grades = {index[x]: g for x, g in c.grades.items()}
    labels = {i: x for x, i in index.items()}
    return Poset.from_relation(range(len(c.objects)), less, grades, labels)


def _chains_by_length(c: AcyclicCategory) -> list[list[tuple[Mid, ...]]]:
    """Nondegenerate chains, grouped by length; depth-first in stored order."""
    layers: list[list[tuple[Mid, ...]]] = []
    frontier = [(m,) for m in c.morphisms]
    while frontier:
        layers.append(frontier)
        frontier = [
            chain + (m,)
            for chain in frontier
            for m in c._out[c.dst[chain[-1]]]
        ]
    return layers


def nondegenerate_nerve(c: AcyclicCategory) -> DeltaComplex:
    """The Delta complex of composable tuples of non-identity morphisms.

    d_0 drops the first morphism, d_k the last, and inner d_i composes
    the adjacent pair; for 1-chains the two faces are target and source.
    """
    bad = validate_category(c)
    if bad:
        raise ValueError("invalid category: " + "; ".join(bad))
    layers = _chains_by_length(c)
    cells: list[tuple[Hashable, ...]] = [tuple(c.objects)]
    cells.extend(tuple(layer) for layer in layers)
    obj_index = {x: i for i, x in enumerate(c.objects)}
    indexes = [{ch: i for i, ch in enumerate(layer)} for layer in layers]
    faces = []
    for n, layer in enumerate(layers, start=1):
        rows = []
        for chain in layer:
            row = []
            for i in range(n + 1):
                if n == 1:
                    row.append(
                        obj_index[c.dst[chain[0]] if i == 0 else c.src[chain[0]]]
                    )
                elif i == 0:
                    row.append(indexes[n - 2][chain[1:]])
                elif i == n:
                    row.append(indexes[n - 2][chain[:-1]])
                else:
                    merged = (
                        chain[: i - 1]
                        + (c.compose[(chain[i], chain[i - 1])],)
                        + chain[i + 1 :]
                    )
                    row.append(indexes[n - 2][merged])
            rows.append(tuple(row))
        faces.append(tuple(rows))
    return DeltaComplex(tuple(cells), tuple(faces))


def _segment_composites(c: AcyclicCategory, chain: tuple[Mid, ...]):
    """comp[i][j] = composite of morphisms i+1..j of the chain (0<=i<j<=n)."""
    n = len(chain)
    comp: dict[tuple[int, int], Mid] = {}
    for i in range(n):
        comp[(i, i + 1)] = chain[i]
        for j in range(i + 2, n + 1):
            comp[(i, j)] = c.compose[(chain[j - 1], comp[(i, j - 1)])]
    return comp


def _chain_objects(c: AcyclicCategory, chain: tuple[Mid, ...]) -> tuple[Obj, ...]:
    return (c.src[chain[0]],) + tuple(c.dst[m] for m in chain)


def _factors_through(
    c: AcyclicCategory,
    f_objs: tuple[Obj, ...],
    f_chain: tuple[Mid, ...],
    g_objs: tuple[Obj, ...],
    g_comp: Mapping[tuple[int, int], Mid],
) -> bool:
    """Is there an injective monotone phi with g . phi = f?

    Positions are matched left to right; for each step the composite of
    the g-segment must equal the corresponding f-morphism.
    """
    m = len(f_chain)
    n = len(g_objs) - 1

    def extend(i: int, pos: int) -> bool:
        if i == m + 1:
            return True
        lo = 0 if i == 0 else pos + 1
        for p in range(lo, n + 1):
            if g_objs[p] != f_objs[i]:
                continue
            if i > 0 and g_comp[(pos, p)] != f_chain[i - 1]:
                continue
            if extend(i + 1, p):
                return True
        return False

    return extend(0, -1)


def sd_category(c: AcyclicCategory) -> Poset:
    """Barycentric subdivision of an acyclic category.

    Elements are the nondegenerate chains (objects are the 0-chains);
    f <= g iff f factors as g . phi for an injective order map phi. For
    acyclic categories the factorization is unique when it exists, so the
    result is a poset, graded by chain length.
    """
    bad = validate_category(c)
    if bad:
        raise ValueError("invalid category: " + "; ".join(bad))
    layers = _chains_by_length(c)
    elements: list[tuple] = [("o", x) for x in c.objects]
    chain_of: list[tuple[Mid, ...] | None] = [None] * len(c.objects)
    objs_of: list[tuple[Obj, ...]] = [(x,) for x in c.objects]
    grades = {}
    for k, layer in enumerate(layers, start=1):
        for chain in layer:
            elements.append(("m",) + chain)
            chain_of.append(chain)
            objs_of.append(_chain_objects(c, chain))
    grades = {i: len(objs_of[i]) - 1 for i in range(len(elements))}
    labels = {i: elements[i] for i in range(len(elements))}
    comps = [
        _segment_composites(c, ch) if ch else {} for ch in chain_of
    ]
    less = []
    for j in range(len(elements)):
        for i in range(len(elements)):
            if grades[i] < grades[j] and _factors_through(
                c,
                objs_of[i],
                chain_of[i] or (),
                objs_of[j],
                comps[j],
            ):
                less.append((i, j))
    return Poset.from_relation(range(len(elements)), less, grades, labels)


def _comma_under(c: AcyclicCategory, x: Obj, include_identity: bool):
    """The comma category x|C: objects are morphisms out of x."""
    one = (IDENTITY, x)
    objects: list[Obj] = ([one] if include_identity else []) + list(c._out[x])
    mids = []
    src: dict[Mid, Obj] = {}
    dst: dict[Mid, Obj] = {}
    if include_identity:
        for w in c._out[x]:
            a = (one, w, w)
            mids.append(a)
            src[a], dst[a] = one, w
    for u in c._out[x]:
        for w in c._out[c.dst[u]]:
            a = (u, w, c.compose[(w, u)])
            mids.append(a)
            src[a], dst[a] = u, a[2]
    comp = {}
    for a in mids:
        for b in mids:
            if dst[a] == src[b]:
                comp[(b, a)] = (a[0], c.compose[(b[1], a[1])], b[2])
    grades = {u: c.grades[c.dst[u]] for u in c._out[x] if c.dst[u] in c.grades}
    if include_identity and x in c.grades:
        grades[one] = c.grades[x]
    return AcyclicCategory(
        tuple(objects), tuple(mids), src, dst, comp, grades
    )


def _comma_over(c: AcyclicCategory, x: Obj, include_identity: bool):
    """The comma category C|x: objects are morphisms into x."""
    one = (IDENTITY, x)
    objects: list[Obj] = list(c._in[x]) + ([one] if include_identity else [])
    mids = []
    src: dict[Mid, Obj] = {}
    dst: dict[Mid, Obj] = {}
    for v in c._in[x]:
        for w in c._in[c.src[v]]:
            # arrow from v.w to v along w
            a = (c.compose[(v, w)], w, v)
            mids.append(a)
            src[a], dst[a] = a[0], v
    if include_identity:
        for u in c._in[x]:
            a = (u, u, one)
            mids.append(a)
            src[a], dst[a] = u, one
    comp = {}
    for a in mids:
        for b in mids:
            if dst[a] == src[b]:
                if b[2] == one:
                    comp[(b, a)] = (a[0], c.compose[(b[1], a[1])], one)
                else:
                    comp[(b, a)] = (a[0], c.compose[(b[1], a[1])], b[2])
    grades = {u: c.grades[c.src[u]] for u in c._in[x] if c.src[u] in c.grades}
    if include_identity and x in c.grades:
        grades[one] = c.grades[x]
    return AcyclicCategory(
        tuple(objects), tuple(mids), src, dst, comp, grades
    )


def upper_star(c: AcyclicCategory, x: Obj) -> DeltaComplex:
    """Nondegenerate nerve of x|C; its cell counts satisfy the cone
    identity over the upper link."""
    if x not in set(c.objects):
        raise KeyError(f"unknown object {x!r}")
    return nondegenerate_nerve(_comma_under(c, x, include_identity=True))


def upper_link(c: AcyclicCategory, x: Obj) -> DeltaComplex:
    if x not in set(c.objects):
        raise KeyError(f"unknown object {x!r}")
    return nondegenerate_nerve(_comma_under(c, x, include_identity=False))


def lower_star(c: AcyclicCategory, x: Obj) -> DeltaComplex:
    if x not in set(c.objects):
        raise KeyError(f"unknown object {x!r}")
    return nondegenerate_nerve(_comma_over(c, x, include_identity=True))


def lower_link(c: AcyclicCategory, x: Obj) -> DeltaComplex:
    if x not in set(c.objects):
        raise KeyError(f"unknown object {x!r}")
    return nondegenerate_nerve(_comma_over(c, x, include_identity=False))


def _is_ident(m) -> bool:
    return isinstance(m, tuple) and len(m) == 2 and m[0] == IDENTITY


def product_category(c: AcyclicCategory, d: AcyclicCategory) -> AcyclicCategory:
    """Pairs with componentwise composition; hom-sets multiply:
    Hom((x,y),(x',y')) = Hom(x,x') x Hom(y,y')."""
    for side, name in ((c, "first"), (d, "second")):
        bad = validate_category(side)
        if bad:
            raise ValueError(f"invalid {name} factor: " + "; ".join(bad))
    objects = [(x, y) for x in c.objects for y in d.objects]
    mids = []
    src: dict[Mid, Obj] = {}
    dst: dict[Mid, Obj] = {}
    # morphisms: (f, g) with f in Mor(c)+identities, g in Mor(d)+identities,
    # excluding identity-identity pairs
    c_parts = [((IDENTITY, x), x, x) for x in c.objects] + [
        (f, c.src[f], c.dst[f]) for f in c.morphisms
    ]
    d_parts = [((IDENTITY, y), y, y) for y in d.objects] + [
        (g, d.src[g], d.dst[g]) for g in d.morphisms
    ]
    for f, fs, fd in c_parts:
        for g, gs, gd in d_parts:
            if _is_ident(f) and _is_ident(g):
                continue
            m = (f, g)
            mids.append(m)
            src[m], dst[m] = (fs, gs), (fd, gd)

    def comp_side(side: AcyclicCategory, b, a):
        if _is_ident(a):
            return b
        if _is_ident(b):
            return a
        return side.compose[(b, a)]

    comp = {}
    for a in mids:
        for b in mids:
            if dst[a] == src[b]:
                comp[(b, a)] = (
                    comp_side(c, b[0], a[0]),
                    comp_side(d, b[1], a[1]),
                )
    grades = {}
    if (not c.objects or c.grades) and (not d.objects or d.grades):
        grades = {(x, y): c.grades[x] + d.grades[y] for x, y in objects}
    return AcyclicCategory(tuple(objects), tuple(mids), src, dst, comp, grades)


def opposite_category(c: AcyclicCategory) -> AcyclicCategory:
    """Reverse all morphisms; applying it twice restores the input."""
    comp = {(f, g): gf for (g, f), gf in c.compose.items()}
    return AcyclicCategory(
        c.objects, c.morphisms, dict(c.dst), dict(c.src), comp, dict(c.grades)
    )


def full_subcategory(c: AcyclicCategory, keep) -> AcyclicCategory:
    keep = set(keep)
    mids = tuple(
        m for m in c.morphisms if c.src[m] in keep and c.dst[m] in keep
    )
    mset = set(mids)
    return AcyclicCategory(
        tuple(x for x in c.objects if x in keep),
        mids,
        {m: c.src[m] for m in mids},
        {m: c.dst[m] for m in mids},
        {k: v for k, v in c.compose.items() if k[0] in mset and k[1] in mset},
        {x: g for x, g in c.grades.items() if x in keep},
    )


def grothendieck(
    c: AcyclicCategory,
    fibers: Mapping[Obj, Poset],
    maps: Mapping[Mid, Mapping[int, int]],
) -> AcyclicCategory:
    """Grothendieck construction of a poset-valued functor on c.

    Objects are pairs (x, a) with a in fibers[x]. There is one morphism
    (x,a) -> (y,b) for each u in Hom(x,y) with maps[u](a) <= b, plus the
    fiber relations a < b over a fixed object. Raises on non-functorial
    input.
    """
    bad = validate_category(c)
    if bad:
        raise ValueError("invalid category: " + "; ".join(bad))
    for x in c.objects:
        if x not in fibers:
            raise ValueError(f"no fiber poset for object {x!r}")
    for u in c.morphisms:
        fu = maps.get(u)
        if fu is None:
            raise ValueError(f"no poset map for morphism {u!r}")
        source, target = fibers[c.src[u]], fibers[c.dst[u]]
        if set(fu) != set(source.elements):
            raise ValueError(f"map for {u!r} is not total on its fiber")
        if not set(fu.values()) <= set(target.elements):
            raise ValueError(f"map for {u!r} leaves the target fiber")
        for lo, hi in source.covers:
            if not target.leq(fu[lo], fu[hi]):
                raise ValueError(f"map for {u!r} is not monotone")
    for f in c.morphisms:
        for g in c._out[c.dst[f]]:
            gf = c.compose[(g, f)]
            for a in fibers[c.src[f]].elements:
                if maps[gf][a] != maps[g][maps[f][a]]:
                    raise ValueError(
                        f"functoriality fails: F({gf!r}) != F({g!r}).F({f!r})"
                    )

    objects = [(x, a) for x in c.objects for a in fibers[x].elements]
    mids: list[Mid] = []
    src: dict[Mid, Obj] = {}
    dst: dict[Mid, Obj] = {}
    for x in c.objects:
        p = fibers[x]
        for b in p.elements:
            for a in sorted(p.down_set(b), key=repr):
                m = ((IDENTITY, x), a, b)
                mids.append(m)
                src[m], dst[m] = (x, a), (x, b)
    for u in c.morphisms:
        x, y = c.src[u], c.dst[u]
        for a in fibers[x].elements:
            fa = maps[u][a]
            for b in fibers[y].elements:
                if fibers[y].leq(fa, b):
                    m = (u, a, b)
                    mids.append(m)
                    src[m], dst[m] = (x, a), (y, b)

    def compose_pair(b_mid, a_mid):
        u2, u1 = b_mid[0], a_mid[0]
        a1, b2 = a_mid[1], b_mid[2]
        if _is_ident(u1):
            return (u2, a1, b2)
        if _is_ident(u2):
            return (u1, a1, b2)
        return (c.compose[(u2, u1)], a1, b2)

    comp = {}
    for a_mid in mids:
        for b_mid in mids:
            if dst[a_mid] == src[b_mid]:
                comp[(b_mid, a_mid)] = compose_pair(b_mid, a_mid)
    graded_fibers = all(
        p.grades or not p.elements for p in fibers.values()
    )
    if graded_fibers:
        grades = {(x, a): fibers[x].grades[a] for x, a in objects}
    else:
        grades = {
            (x, a): c.grades[x] for x, a in objects if x in c.grades
        }
    out = AcyclicCategory(tuple(objects), tuple(mids), src, dst, comp, grades)
    bad = validate_category(out)
    if bad:
        raise ValueError("construction not acyclic: " + "; ".join(bad))
    return out


@dataclass(frozen=True)
class GroupActionOnCategory:
    """A finite permutation group acting on a category, by generators.

    Each generator is a pair of mappings (on objects, on morphisms)
    commuting with src/dst/composition.
    """

    category: AcyclicCategory
    generators: tuple[tuple[dict[Obj, Obj], dict[Mid, Mid]], ...]

    def validate(self) -> list[str]:
        problems = []
        c = self.category
        for k, (omap, mmap) in enumerate(self.generators):
            if set(omap) != set(c.objects) or set(omap.values()) != set(c.objects):
                problems.append(f"generator {k}: not an object bijection")
                continue
            if set(mmap) != set(c.morphisms) or set(mmap.values()) != set(
                c.morphisms
            ):
                problems.append(f"generator {k}: not a morphism bijection")
                continue
            for m in c.morphisms:
                if c.src[mmap[m]] != omap[c.src[m]] or c.dst[mmap[m]] != omap[
                    c.dst[m]
                ]:
                    problems.append(
                        f"generator {k}: does not commute with src/dst on {m!r}"
                    )
            for (g, f), gf in c.compose.items():
                if c.compose[(mmap[g], mmap[f])] != mmap[gf]:
                    problems.append(
                        f"generator {k}: not functorial on ({g!r},{f!r})"
                    )
                    break
            for x in c.objects:
                if x in c.grades and c.grades[omap[x]] != c.grades[x]:
                    problems.append(f"generator {k}: does not preserve grades")
                    break
        return problems

    def elements(self):
        """All group elements as (object map, morphism map) pairs."""
        c = self.category
        ident = (
            {x: x for x in c.objects},
            {m: m for m in c.morphisms},
        )

        def key(el):
            return (
                tuple(el[0][x] for x in c.objects),
                tuple(el[1][m] for m in c.morphisms),
            )

        seen = {key(ident): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for omap, mmap in frontier:
                for go, gm in self.generators:
                    el = (
                        {x: go[omap[x]] for x in c.objects},
                        {m: gm[mmap[m]] for m in c.morphisms},
                    )
                    k = key(el)
                    if k not in seen:
                        seen[k] = el
                        nxt.append(el)
            frontier = nxt
        return list(seen.values())


def quotient_by_free_action(
    c: AcyclicCategory, action: GroupActionOnCategory
) -> AcyclicCategory:
    """Orbit category of a free action.

    Freeness on objects makes composition of orbit representatives
    well-defined; the nondegenerate nerve of the quotient is the orbit
    complex of the nerve.
    """
    if action.category is not c and action.category != c:
        raise ValueError("action is attached to a different category")
    bad = action.validate()
    if bad:
        raise ValueError("invalid action: " + "; ".join(bad))
    elements = action.elements()
    for omap, mmap in elements:
        if all(omap[x] == x for x in c.objects) and all(
            mmap[m] == m for m in c.morphisms
        ):
            continue
        fixed = [x for x in c.objects if omap[x] == x]
        if fixed:
            raise ValueError(
                f"action is not free: object {fixed[0]!r} is fixed by a "
                "non-identity element"
            )
    obj_index = {x: i for i, x in enumerate(c.objects)}
    obj_rep: dict[Obj, Obj] = {}
    for x in c.objects:
        orbit = {omap[x] for omap, _ in elements}
        obj_rep[x] = min(orbit, key=obj_index.__getitem__)
    reps = tuple(x for x in c.objects if obj_rep[x] == x)

    # a morphism orbit has a unique member whose source is an orbit rep
    mor_rep: dict[Mid, Mid] = {}
    for m in c.morphisms:
        candidates = [
            mmap[m] for omap, mmap in elements if omap[c.src[m]] == obj_rep[c.src[m]]
        ]
        mor_rep[m] = candidates[0]
    mids = tuple(m for m in c.morphisms if mor_rep[m] == m)

    def normalize(m: Mid) -> Mid:
        return mor_rep[m]

    src = {m: c.src[m] for m in mids}
    dst = {m: obj_rep[c.dst[m]] for m in mids}
    comp = {}
    for f in mids:
        # true target of the representative f
        y = c.dst[f]
        for g in mids:
            if obj_rep[y] != c.src[g]:
                continue
            translate = next(
                mmap for omap, mmap in elements if omap[c.src[g]] == y
            )
            comp[(g, f)] = normalize(c.compose[(translate[g], f)])
    grades = {x: c.grades[x] for x in reps if x in c.grades}
    return AcyclicCategory(reps, mids, src, dst, comp, grades)


def categories_isomorphic(
    c: AcyclicCategory, d: AcyclicCategory, match_grades: bool = True
) -> bool:
    """Search for an isomorphism: an object bijection preserving grades
    and hom cardinalities that extends to morphisms respecting
    composition. Backtracking; meant for desk-scale categories."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return False

    def signature(cat: AcyclicCategory, x: Obj):
        return (
            cat.grades.get(x) if match_grades else None,
            len(cat._out[x]),
            len(cat._in[x]),
        )

    d_by_sig: dict[tuple, list[Obj]] = {}
    for y in d.objects:
        d_by_sig.setdefault(signature(d, y), []).append(y)
    for x in c.objects:
        if signature(c, x) not in d_by_sig:
            return False

    order = sorted(c.objects, key=lambda x: len(d_by_sig[signature(c, x)]))

    def mor_bijections(ms1, ms2):
        if len(ms1) != len(ms2):
            return
        if not ms1:
            yield {}
            return
        first, rest = ms1[0], ms1[1:]
        for i, m2 in enumerate(ms2):
            for tail in mor_bijections(rest, ms2[:i] + ms2[i + 1 :]):
                yield {first: m2, **tail}

    def extend(i: int, omap: dict):
        if i == len(order):
            # match morphisms hom-set by hom-set, then check composition
            hom_maps = []
            for x in c.objects:
                for y in c.objects:
                    h1 = c.hom(x, y)
                    if not h1:
                        continue
                    h2 = d.hom(omap[x], omap[y])
                    options = list(mor_bijections(h1, h2))
                    if not options:
                        return False
                    hom_maps.append(options)

            def assemble(k: int, mmap: dict):
                if k == len(hom_maps):
                    return all(
                        d.compose[(mmap[g], mmap[f])] == mmap[gf]
                        for (g, f), gf in c.compose.items()
                    )
                for option in hom_maps[k]:
                    merged = {**mmap, **option}
                    good = all(
                        d.compose.get((merged[g], merged[f])) == merged.get(gf)
                        for (g, f), gf in c.compose.items()
                        if g in merged and f in merged and gf in merged
                    )
                    if good and assemble(k + 1, merged):
                        return True
                return False

            return assemble(0, {})
        x = order[i]
        used = set(omap.values())
        for y in d_by_sig[signature(c, x)]:
            if y in used:
                continue
            ok = all(
                len(c.hom(x, z)) == len(d.hom(y, omap[z]))
                and len(c.hom(z, x)) == len(d.hom(omap[z], y))
                for z in omap
            )
            if not ok:
                continue
            omap[x] = y
            if extend(i + 1, omap):
                return True
            del omap[x]
        return False

    return extend(0, {})
