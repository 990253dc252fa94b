"""Rational hyperplane arrangements and their sign-vector stratifications.

A face of the level-1 stratification is a realizable sign vector in
{-1,0,+1}^k; realizability is decided by exact rational LP. The level-l
stratification of the l-fold thickening assigns each form a value in
S_l = {0, +-e_1, ..., +-e_l}: the sign and position of the last nonzero
evaluation. Its faces are computed combinatorially by combining one
affine level-1 face with l-1 independent central level-1 faces (the
constant term enters only at level 1, matching the complexification
convention), never by an LP in the thickened space.

Sign values are encoded as 0 or (sign, level); the pointwise order on
sign vectors is taken as the closure order, with a rational segment
spot-check available as a validator.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .css import CombinatorialCSS, poset_to_css, salvetti_complex
from .delta import DeltaComplex
from .lp import Feasibility, rational_rank, strict_feasibility
from .poset import Poset, order_complex

__all__ = [
    "Arrangement",
    "SignVector",
    "validate_arrangement",
    "faces_level1",
    "faces_higher",
    "complement_poset",
    "higher_salvetti",
    "salvetti_cellular",
    "symmetric_subdivision",
    "symmetric_collapse",
    "permute_central_levels",
    "euler_sum",
    "closure_order_spotcheck",
    "braid_arrangement",
]

Sign = int  # -1, 0, +1
Value = "int | tuple[int, int]"  # 0 or (sign, level)


@dataclass(frozen=True)
class Arrangement:
    """Affine forms l_i(x) = a_i . x + b_i with rational coefficients."""

    n: int
    forms: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    @classmethod
    def from_lists(cls, n: int, rows) -> "Arrangement":
        forms = tuple(
            (tuple(Fraction(v) for v in a), Fraction(b)) for a, b in rows
        )
        arr = cls(n, forms)
        bad = validate_arrangement(arr)
        if bad:
            raise ValueError("; ".join(bad))
        return arr

    def evaluate(self, x) -> list[Fraction]:
        return [
            sum(ai * xi for ai, xi in zip(a, x)) + b for a, b in self.forms
        ]


def validate_arrangement(arr: Arrangement) -> list[str]:
    problems = []
    seen: list[tuple[int, tuple]] = []
    for i, (a, b) in enumerate(arr.forms):
        if len(a) != arr.n:
            problems.append(f"form {i}: expected {arr.n} coefficients")
            continue
        if not any(a):
            problems.append(f"form {i}: zero linear part does not cut a hyperplane")
            continue
        lead = next(v for v in a if v)
        scaled = tuple(v / lead for v in list(a) + [b])
        for j, other in seen:
            if other == scaled:
                problems.append(
                    f"form {i} duplicates form {j} up to scaling"
                )
        seen.append((i, scaled))
    return problems


@dataclass(frozen=True)
class SignVector:
    """A map from the forms to S_l; values are 0 or (sign, level)."""

    values: tuple
    order: int

    def __post_init__(self):
        for v in self.values:
            if v == 0:
                continue
            if (
                not isinstance(v, tuple)
                or len(v) != 2
                or v[0] not in (-1, 1)
                or not 1 <= v[1] <= self.order
            ):
                raise ValueError(f"malformed sign value {v!r}")

    def leq(self, other: "SignVector") -> bool:
        """Pointwise order: 0 < +-e_1 < ... < +-e_l, +-e_j incomparable
        to -+e_j."""
        if self.order != other.order or len(self.values) != len(other.values):
            raise ValueError("sign vectors live over different data")
        return all(_value_leq(v, w) for v, w in zip(self.values, other.values))


def _value_leq(v, w) -> bool:
    if v == 0:
        return True
    if w == 0:
        return False
    return v[1] < w[1] or v == w


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get("STRATAKIT_THREADS", "1")))
    except ValueError:
        return 1


def _level1_candidates(
    arr: Arrangement, central: bool
) -> list[tuple[tuple[Sign, ...], int, Feasibility]]:
    """Realizable sign vectors in {-1,0,1}^k with their dimensions."""
    k = len(arr.forms)

    def check(sigma: tuple[Sign, ...]):
        eqs = []
        stricts = []
        for s, (a, b) in zip(sigma, arr.forms):
            rhs = Fraction(0) if central else -b
            if s == 0:
                eqs.append((list(a), rhs))
            elif s > 0:
                stricts.append((list(a), rhs))
            else:
                stricts.append(([-v for v in a], -rhs))
        return strict_feasibility(eqs, stricts, arr.n)

    candidates = list(iproduct((-1, 0, 1), repeat=k))
    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, candidates))
    else:
        results = [check(s) for s in candidates]
    out = []
    for sigma, feas in zip(candidates, results):
        if not feas.feasible:
            continue
        zero_rows = [list(a) for s, (a, _) in zip(sigma, arr.forms) if s == 0]
        dim = arr.n - rational_rank(zero_rows) if zero_rows else arr.n
        out.append((sigma, dim, feas))
    return out


def _poset_from_faces(faces: dict, leq) -> Poset:
    """faces: label -> dim; order induced by the given comparison."""
    labels = sorted(faces, key=repr)
    index = {lab: i for i, lab in enumerate(labels)}
    less = [
        (index[a], index[b])
        for a in labels
        for b in labels
        if a != b and leq(a, b)
    ]
    return Poset.from_relation(
        range(len(labels)),
        less,
        {index[lab]: faces[lab] for lab in labels},
        {index[lab]: lab for lab in labels},
    )


def _level1_leq(a, b) -> bool:
    return all(x == 0 or x == y for x, y in zip(a, b))


def faces_level1(arr: Arrangement) -> Poset:
    """Face poset of the arrangement's own stratification of R^n.

    Labels are sign tuples in {-1,0,1}^k; grades are face dimensions.
    """
    bad = validate_arrangement(arr)
    if bad:
        raise ValueError("; ".join(bad))
    faces = {
        sigma: dim for sigma, dim, _ in _level1_candidates(arr, central=False)
    }
    return _poset_from_faces(faces, _level1_leq)


def _combine(affine: tuple[Sign, ...], centrals) -> tuple:
    """Last-nonzero rule: level 1 is the affine face, levels 2..l the
    central ones."""
    k = len(affine)
    out = []
    for i in range(k):
        value = 0
        for level in range(len(centrals), 0, -1):
            s = centrals[level - 1][i]
            if s:
                value = (s, level + 1)
                break
        if value == 0 and affine[i]:
            value = (affine[i], 1)
        out.append(value)
    return tuple(out)


def _higher_leq(a, b) -> bool:
    return all(_value_leq(v, w) for v, w in zip(a, b))


def faces_higher(arr: Arrangement, order: int) -> Poset:
    """Face poset of the level-`order` stratification of R^n (x) R^order.

    A stratum's dimension is the largest total dimension of a compatible
    tuple of level-1 faces, one per level.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    bad = validate_arrangement(arr)
    if bad:
        raise ValueError("; ".join(bad))
    affine = _level1_candidates(arr, central=False)
    central = _level1_candidates(arr, central=True) if order > 1 else []
    faces: dict[tuple, int] = {}
    for parts in iproduct(
        [(s, d) for s, d, _ in affine],
        *[[(s, d) for s, d, _ in central] for _ in range(order - 1)],
    ):
        label = _combine(parts[0][0], [p[0] for p in parts[1:]])
        dim = sum(p[1] for p in parts)
        if faces.get(label, -1) < dim:
            faces[label] = dim
    return _poset_from_faces(faces, _higher_leq)


def complement_poset(arr: Arrangement, order: int) -> Poset:
    """Subposet of the strata avoiding every thickened hyperplane."""
    p = faces_higher(arr, order)
    keep = [e for e in p.elements if all(v != 0 for v in p.labels[e])]
    kept = set(keep)
    less = [
        (a, b) for a in keep for b in keep if b in kept and p.less(a, b)
    ]
    return Poset.from_relation(
        keep,
        less,
        {e: p.grades[e] for e in keep},
        {e: p.labels[e] for e in keep},
    )


def higher_salvetti(arr: Arrangement, order: int) -> DeltaComplex:
    """Order complex of the complement poset: the classifying space of
    the complement's face category (regular, so category = poset)."""
    return order_complex(complement_poset(arr, order))


def salvetti_cellular(arr: Arrangement, order: int) -> CombinatorialCSS:
    """The complement as a stratified space, coarsened by double duality.

    Output cells biject with complement strata; dimensions are chain
    heights under the dual."""
    return salvetti_complex(poset_to_css(complement_poset(arr, order)))


def symmetric_subdivision(arr: Arrangement, order: int) -> Poset:
    """Level-symmetric refinement by product sign vectors S_1^order.

    Labels are per-form tuples of level signs (level 1 affine, levels
    >= 2 central); the symmetric group on the central levels acts by
    permuting coordinates."""
    if order < 1:
        raise ValueError("order must be >= 1")
    bad = validate_arrangement(arr)
    if bad:
        raise ValueError("; ".join(bad))
    affine = _level1_candidates(arr, central=False)
    central = _level1_candidates(arr, central=True) if order > 1 else []
    faces: dict[tuple, int] = {}
    for parts in iproduct(
        [(s, d) for s, d, _ in affine],
        *[[(s, d) for s, d, _ in central] for _ in range(order - 1)],
    ):
        label = tuple(
            tuple(p[0][i] for p in parts) for i in range(len(arr.forms))
        )
        faces[label] = sum(p[1] for p in parts)

    def leq(a, b):
        return all(
            x == 0 or x == y for fa, fb in zip(a, b) for x, y in zip(fa, fb)
        )

    return _poset_from_faces(faces, leq)


def symmetric_collapse(label: tuple) -> tuple:
    """The collapse c(eps_1,...,eps_l) = eps_m e_m, m the top nonzero
    level, applied formwise; maps symmetric labels onto level-l labels."""
    out = []
    for levels in label:
        value = 0
        for m in range(len(levels), 0, -1):
            if levels[m - 1]:
                value = (levels[m - 1], m)
                break
        out.append(value)
    return tuple(out)


def permute_central_levels(label: tuple, perm: dict[int, int]) -> tuple:
    """Permute levels 2..l of a symmetric label; level 1 must stay put."""
    if any(p == 1 or q == 1 for p, q in perm.items()):
        raise ValueError("level 1 is affine and cannot be permuted")
    out = []
    for levels in label:
        arranged = list(levels)
        for src_level, dst_level in perm.items():
            arranged[dst_level - 1] = levels[src_level - 1]
        out.append(tuple(arranged))
    return tuple(out)


def euler_sum(p: Poset) -> int:
    """Compactly-supported Euler characteristic: sum of (-1)^dim over
    strata."""
    return sum((-1) ** p.grades[e] for e in p.elements)


def _witness(arr: Arrangement, order: int, label: tuple):
    """A rational point of R^n x ... x R^n realizing a level-`order`
    stratum, built from per-level witnesses."""
    points = []
    for level in range(1, order + 1):
        eqs = []
        stricts = []
        for value, (a, b) in zip(label, arr.forms):
            rhs = -b if level == 1 else Fraction(0)
            wanted = 0
            if value != 0:
                sign, m = value
                if level == m:
                    wanted = sign
                elif level < m:
                    wanted = None  # unconstrained at this level
            if wanted is None:
                continue
            if wanted == 0:
                eqs.append((list(a), rhs))
            elif wanted > 0:
                stricts.append((list(a), rhs))
            else:
                stricts.append(([-v for v in a], -rhs))
        feas = strict_feasibility(eqs, stricts, arr.n)
        if not feas.feasible:
            return None
        points.append(feas.witness)
    return points


def closure_order_spotcheck(
    arr: Arrangement, order: int, seed: int = 0, pairs: int = 25
) -> list[str]:
    """Validate that the pointwise order embeds in the closure order.

    For sampled comparable pairs s' < s, points on the segment from a
    witness of s' toward a witness of s must realize s for small rational
    parameters; evaluation is exact. Returns violations (empty = passed).
    """
    p = faces_higher(arr, order)
    rng = random.Random(seed)
    comparable = p.comparable_pairs()
    if not comparable:
        return []
    problems = []
    for a, b in rng.sample(comparable, min(pairs, len(comparable))):
        lo, hi = p.labels[a], p.labels[b]
        w_lo, w_hi = _witness(arr, order, lo), _witness(arr, order, hi)
        if w_lo is None or w_hi is None:
            problems.append(f"no witness for {lo!r} or {hi!r}")
            continue
        t = Fraction(1, 997)
        point = [
            tuple((1 - t) * u + t * v for u, v in zip(pl, ph))
            for pl, ph in zip(w_lo, w_hi)
        ]
        if _signs_at(arr, point) != hi:
            problems.append(
                f"segment from {lo!r} toward {hi!r} leaves the larger stratum"
            )
    return problems


def _signs_at(arr: Arrangement, points) -> tuple:
    """Level-l sign vector of a tuple of per-level points."""
    out = []
    for i, (a, b) in enumerate(arr.forms):
        value = 0
        for level in range(len(points), 0, -1):
            x = points[level - 1]
            v = sum(ai * xi for ai, xi in zip(a, x))
            if level == 1:
                v += b
            if v:
                value = (1 if v > 0 else -1, level)
                break
        out.append(value)
    return tuple(out)


def braid_arrangement(k: int) -> Arrangement:
    """The braid arrangement A_{k-1} in R^k: hyperplanes x_i = x_j."""
    rows = []
    for i in range(k):
        for j in range(i + 1, k):
            a = [Fraction(0)] * k
            a[i], a[j] = Fraction(1), Fraction(-1)
            rows.append((a, Fraction(0)))
    return Arrangement.from_lists(k, rows)
