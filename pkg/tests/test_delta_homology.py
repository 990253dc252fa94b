import random

import pytest

from stratakit.delta import (
    DeltaComplex,
    components,
    euler_characteristic,
    f_vector,
    validate_delta,
)
from stratakit.css import sd
from stratakit.fixtures import boundary_simplex, punctured_torus, rp2, simplex
from stratakit.homology import (
    chain_complex,
    homology,
    integer_rank,
    snf_diagonal,
)
from stratakit.poset import Poset, order_complex


def two_cell_circle():
    # two vertices, two edges both running p -> q
    return DeltaComplex(
        ((0, 1), ("a", "b")),
        ((((1, 0)), (1, 0)),),
    )


class TestChainComplex:
    def test_circle_boundary_matrix(self):
        cc = chain_complex(two_cell_circle())
        # d1 columns: q - p for both edges
        assert cc.boundary(1) == {(0, 0): -1, (1, 0): 1, (0, 1): -1, (1, 1): 1}
        h = homology(cc)
        assert h.betti == (1, 1)

    def test_single_vertex(self):
        cc = chain_complex(DeltaComplex(((0,),), ()))
        assert cc.shape == (1,)
        assert homology(cc).betti == (1,)

    def test_triangle_dd_zero(self):
        k = order_complex(
            Poset((0, 1, 2), ((0, 1), (1, 2)), {i: i for i in range(3)})
        )
        cc = chain_complex(k)  # raises if boundary squared is nonzero
        assert homology(cc).betti == (1, 0, 0)

    def test_dd_violation_detected(self):
        # a fake 2-cell whose faces do not satisfy the identities
        k = DeltaComplex(
            ((0, 1, 2), ("a", "b", "c"), ("T",)),
            (
                ((1, 0), (2, 0), (2, 1)),
                ((0, 1, 0),),
            ),
        )
        assert validate_delta(k)


class TestHomology:
    def test_boundary_of_tetrahedron(self):
        h = homology(chain_complex(sd(boundary_simplex(3))))
        assert h.betti == (1, 0, 1)
        assert not any(h.torsion)

    def test_projective_plane_torsion(self):
        h = homology(chain_complex(sd(rp2())))
        assert h.betti == (1, 0, 0)
        assert h.torsion == ((), (2,), ())

    def test_rank_only_mode_matches(self):
        for fixture in (boundary_simplex(3), rp2(), punctured_torus()):
            cc = chain_complex(sd(fixture))
            assert homology(cc, rank_only=True).betti == homology(cc).betti

    def test_relabeling_invariance(self):
        rng = random.Random(2)
        k = sd(rp2())
        perms = [list(range(len(layer))) for layer in k.cells]
        for p in perms:
            rng.shuffle(p)
        inverse = [
            {old: new for new, old in enumerate(p)} for p in perms
        ]
        cells = tuple(
            tuple(layer[p.index(i)] for i in range(len(layer)))
            for layer, p in zip(k.cells, perms)
        )
        faces = []
        for n in range(1, k.dim() + 1):
            rows = [None] * k.size(n)
            for c in range(k.size(n)):
                rows[inverse[n][c]] = tuple(
                    inverse[n - 1][f] for f in k.faces[n - 1][c]
                )
            faces.append(tuple(rows))
        shuffled = DeltaComplex(cells, tuple(faces))
        assert validate_delta(shuffled) == []
        assert homology(chain_complex(shuffled)) == homology(chain_complex(k))


class TestSmithNormalForm:
    def test_divisibility_chain(self):
        rng = random.Random(9)
        for _ in range(25):
            m, n = rng.randrange(1, 6), rng.randrange(1, 6)
            mat = {
                (i, j): rng.randrange(-8, 9)
                for i in range(m)
                for j in range(n)
                if rng.random() < 0.7
            }
            diag = snf_diagonal(mat)
            assert all(d > 0 for d in diag)
            for a, b in zip(diag, diag[1:]):
                assert b % a == 0
            assert len(diag) == integer_rank(mat)

    def test_against_sympy(self):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form

        rng = random.Random(13)
        for _ in range(15):
            m, n = rng.randrange(1, 5), rng.randrange(1, 5)
            rows = [
                [rng.randrange(-6, 7) for _ in range(n)] for _ in range(m)
            ]
            mat = {
                (i, j): rows[i][j]
                for i in range(m)
                for j in range(n)
                if rows[i][j]
            }
            expected = smith_normal_form(sympy.Matrix(rows))
            exp_diag = sorted(
                abs(expected[i, i])
                for i in range(min(m, n))
                if expected[i, i] != 0
            )
            assert sorted(snf_diagonal(mat)) == exp_diag


class TestCounting:
    def test_punctured_torus_counts(self):
        k = sd(punctured_torus())
        assert f_vector(k) == (3, 4)
        assert euler_characteristic(k) == -1

    def test_empty_complex(self):
        k = DeltaComplex((), ())
        assert f_vector(k) == ()
        assert euler_characteristic(k) == 0
        assert components(k) == 0

    def test_two_points(self):
        k = DeltaComplex(((0, 1),), ())
        assert components(k) == 2

    def test_euler_equals_alternating_betti(self):
        for fixture in (simplex(2), boundary_simplex(3), rp2(), punctured_torus()):
            k = sd(fixture)
            h = homology(chain_complex(k))
            assert euler_characteristic(k) == sum(
                (-1) ** n * b for n, b in enumerate(h.betti)
            )
