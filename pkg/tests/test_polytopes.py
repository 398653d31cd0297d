import random
from fractions import Fraction

import pytest

from torusbase.polytopes import (
    LatticePolytope,
    PolytopeError,
    delzant_check,
    stratum_cut,
    vertex_blowup,
    vertices,
)


def unit_square():
    return LatticePolytope(
        2,
        [((-1, 0), 0), ((0, -1), 0), ((1, 0), 1), ((0, 1), 1)],
    )


def cp2_triangle(scale=1):
    return LatticePolytope(
        2,
        [((-1, 0), 0), ((0, -1), 0), ((1, 1), scale)],
    )


def simplex3():
    return LatticePolytope(
        3,
        [((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0), ((1, 1, 1), 1)],
    )


def test_vertices_square():
    vs = vertices(unit_square())
    pts = {v.point for v in vs}
    assert pts == {
        (Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(1)),
    }


def test_vertices_triangle():
    vs = vertices(cp2_triangle())
    pts = {v.point for v in vs}
    assert pts == {
        (Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
    }


def test_vertices_simplex3():
    assert len(vertices(simplex3())) == 4


def test_unbounded_rejected():
    P = LatticePolytope(2, [((-1, 0), 0), ((0, -1), 0)])
    with pytest.raises(PolytopeError):
        vertices(P)


def test_delzant_pass():
    assert delzant_check(cp2_triangle()).ok
    assert delzant_check(unit_square()).ok
    assert delzant_check(simplex3()).ok


def test_delzant_fail_named_vertex():
    # triangle (0,0), (2,0), (0,1): at (0,1) the edges are (0,-1) and (2,-1)
    P = LatticePolytope(2, [((-1, 0), 0), ((0, -1), 0), ((1, 2), 2)])
    rep = delzant_check(P)
    assert not rep.ok
    assert rep.failing_vertex is not None
    assert "fail" in str(rep)


def test_vertex_blowup_cp2():
    P = cp2_triangle()
    Q = vertex_blowup(P, (Fraction(0), Fraction(0)), Fraction(1, 2))
    assert len(Q.halfspaces) == len(P.halfspaces) + 1
    assert delzant_check(Q).ok
    assert len(vertices(Q)) == 4


def test_vertex_blowup_eps_too_large():
    with pytest.raises(PolytopeError):
        vertex_blowup(cp2_triangle(), (Fraction(0), Fraction(0)), 2)


def test_blowup_then_recheck_property():
    rng = random.Random(5)
    for _ in range(20):
        s = rng.randint(2, 5)
        P = cp2_triangle(s)
        vs = vertices(P)
        v = vs[rng.randrange(len(vs))]
        Q = vertex_blowup(P, v, Fraction(1, rng.randint(3, 7)))
        assert delzant_check(Q).ok
        assert len(Q.halfspaces) == len(P.halfspaces) + 1


def test_stratum_cut_square():
    P = unit_square()
    Q = stratum_cut(P, 3, Fraction(1, 4))
    ys = {v.point[1] for v in vertices(Q)}
    assert max(ys) == Fraction(3, 4)
    assert delzant_check(Q).ok


def test_stratum_cut_triangle():
    P = cp2_triangle()
    Q = stratum_cut(P, 2, Fraction(1, 4))
    assert delzant_check(Q).ok
    assert len(vertices(Q)) == 3


def test_stratum_cut_too_large():
    with pytest.raises(PolytopeError):
        stratum_cut(unit_square(), 3, 1)


def test_delzant_unimodular_invariance():
    rng = random.Random(9)
    from torusbase.exact import intmat

    for _ in range(20):
        P = cp2_triangle(3)
        # random unimodular map x -> Ux + c applied to the halfspaces:
        # normals transform by the inverse transpose
        U = intmat([[1, rng.randint(-2, 2)], [0, 1]])
        if rng.random() < 0.5:
            U = U.T
        c = (rng.randint(-3, 3), rng.randint(-3, 3))
        from torusbase.exact import inv2

        W = inv2(U).T
        hs = []
        for a, b in P.halfspaces:
            a2 = tuple(int(x) for x in W.dot(intmat([[a[0]], [a[1]]]))[:, 0])
            b2 = b + a2[0] * c[0] + a2[1] * c[1]
            hs.append((a2, b2))
        Q = LatticePolytope(2, hs)
        assert delzant_check(Q).ok == delzant_check(P).ok
