"""Named builders for the standard stratified-space fixtures.

These are the running examples everything else is tested against: the
minimal circle, simplices and their boundaries, the (punctured) torus,
and the circle-with-a-tail whose double dual slims down to the minimal
circle.
"""

from __future__ import annotations

from itertools import combinations

from .category import AcyclicCategory
from .css import CombinatorialCSS, make_css, product_css, remove_closed_subcomplex
from .poset import Poset

__all__ = [
    "simplex",
    "boundary_simplex",
    "circle_minimal",
    "circle_subdivided",
    "y_space",
    "rp2",
    "torus",
    "punctured_torus",
    "css_fixture",
    "CSS_FIXTURES",
]


def _simplex_poset(n: int, drop_top: bool = False) -> Poset:
    subsets = [
        s
        for k in range(1, n + 2)
        for s in combinations(range(n + 1), k)
        if not (drop_top and k == n + 1)
    ]
    index = {s: i for i, s in enumerate(subsets)}
    less = [
        (index[a], index[b])
        for a in subsets
        for b in subsets
        if set(a) < set(b)
    ]
    grades = {index[s]: len(s) - 1 for s in subsets}
    labels = {index[s]: s for s in subsets}
    return Poset.from_relation(range(len(subsets)), less, grades, labels)


def simplex(n: int) -> CombinatorialCSS:
    """The n-simplex as a regular complex; cells are vertex subsets."""
    from .css import poset_to_css

    return poset_to_css(_simplex_poset(n))


def boundary_simplex(n: int) -> CombinatorialCSS:
    """The boundary of the n-simplex: an (n-1)-sphere."""
    from .css import poset_to_css

    return poset_to_css(_simplex_poset(n, drop_top=True))


def circle_minimal() -> CombinatorialCSS:
    """S^1 = e^0 u e^1 with the two lifts of the vertex map."""
    c = AcyclicCategory(
        objects=("v", "e"),
        morphisms=("b-", "b+"),
        src={"b-": "v", "b+": "v"},
        dst={"b-": "e", "b+": "e"},
        compose={},
        grades={"v": 0, "e": 1},
    )
    return make_css(c, {"v": True, "e": True})


def circle_subdivided() -> CombinatorialCSS:
    """S^1 with two vertices and two edges (a regular circle)."""
    c = AcyclicCategory(
        objects=("p", "q", "a", "b"),
        morphisms=(("p", "a"), ("q", "a"), ("p", "b"), ("q", "b")),
        src={("p", "a"): "p", ("q", "a"): "q", ("p", "b"): "p", ("q", "b"): "q"},
        dst={("p", "a"): "a", ("q", "a"): "a", ("p", "b"): "b", ("q", "b"): "b"},
        compose={},
        grades={"p": 0, "q": 0, "a": 1, "b": 1},
    )
    return make_css(c)


def y_space() -> CombinatorialCSS:
    """A circle with a half-open tail: one vertex, one stellar 1-cell.

    The tail's free endpoint is absent, so only two of the three boundary
    vertices of the Y-shaped domain carry lifts and the 1-cell is not
    closed. The face category coincides with the minimal circle's; the
    non-closed flag is what distinguishes the space.
    """
    base = circle_minimal()
    return CombinatorialCSS(base.cat, {"v": True, "e": False})


def rp2() -> CombinatorialCSS:
    """The projective plane glued from a square with boundary word abab.

    Two vertices p, q; edges a: p->q and b: q->p, each lifting twice into
    the square; the four corner lifts are the composites. The
    subdivision's homology exhibits the 2-torsion.
    """
    mids = (
        "a0", "a1", "b0", "b1",          # vertex ends of the edges
        "bottom", "top", "right", "left",  # edge lifts into the square
        "c1", "c2", "c3", "c4",          # corner lifts of the vertices
    )
    src = {
        "a0": "p", "a1": "q", "b0": "q", "b1": "p",
        "bottom": "a", "top": "a", "right": "b", "left": "b",
        "c1": "p", "c2": "q", "c3": "p", "c4": "q",
    }
    dst = {
        "a0": "a", "a1": "a", "b0": "b", "b1": "b",
        "bottom": "T", "top": "T", "right": "T", "left": "T",
        "c1": "T", "c2": "T", "c3": "T", "c4": "T",
    }
    compose = {
        ("bottom", "a0"): "c1", ("left", "b1"): "c1",
        ("bottom", "a1"): "c2", ("right", "b0"): "c2",
        ("top", "a0"): "c3", ("right", "b1"): "c3",
        ("top", "a1"): "c4", ("left", "b0"): "c4",
    }
    c = AcyclicCategory(
        objects=("p", "q", "a", "b", "T"),
        morphisms=mids,
        src=src,
        dst=dst,
        compose=compose,
        grades={"p": 0, "q": 0, "a": 1, "b": 1, "T": 2},
    )
    return make_css(c)


def torus() -> CombinatorialCSS:
    return product_css(circle_minimal(), circle_minimal())


def punctured_torus() -> CombinatorialCSS:
    """The torus minus its vertex; the subdivision is a wedge of two
    circles."""
    return remove_closed_subcomplex(torus(), [("v", "v")])


def _conf2_loop() -> CombinatorialCSS:
    from .graphconf import conf_category, loop_graph

    return conf_category(loop_graph(), 2)


CSS_FIXTURES = {
    "circle-minimal": circle_minimal,
    "circle-subdivided": circle_subdivided,
    "simplex-1": lambda: simplex(1),
    "simplex-2": lambda: simplex(2),
    "simplex-3": lambda: simplex(3),
    "boundary-simplex-2": lambda: boundary_simplex(2),
    "boundary-simplex-3": lambda: boundary_simplex(3),
    "torus": torus,
    "punctured-torus": punctured_torus,
    "y-space": y_space,
    "rp2": rp2,
    "conf2-loop": _conf2_loop,
}


def css_fixture(name: str) -> CombinatorialCSS:
    try:
        return CSS_FIXTURES[name]()
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; available: {sorted(CSS_FIXTURES)}"
        ) from None
