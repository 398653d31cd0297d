import random
from fractions import Fraction

import pytest

from torusbase.affine import (
    AffineError,
    AffineSurface,
    EdgeTransition,
    SingularityMark,
    affine_area,
    affine_disjoint_union,
    affine_eq,
    affine_identity,
    boundary_word_holonomy,
    build_I_sheaf,
    build_R_sheaf,
    dhat,
    lagrangian_moduli,
    monodromy_rep,
    rechart,
    torus_bundle_h1,
    unipotent_power,
    validate_affine,
)
from torusbase.catalog import (
    cp2_triangle_surface,
    cut_triangle_surface,
    ff_disk_surface,
    flat_torus_surface,
    klein_affine_surface,
    sphere_24ff_surface,
)
from torusbase.exact import AbelianGroup, PresentedGroup, eye, fracvec, intmat
from torusbase.sheaves import CohomologyClass, cohomology, validate_sheaf


def zero_translation_torus():
    S = flat_torus_surface()
    transitions = {
        e: EdgeTransition(tr.from_face, tr.to_face, tr.A, fracvec([0, 0]))
        for e, tr in S.transitions.items()
    }
    return AffineSurface(base=S.base, charts={}, transitions=transitions)


def test_validate_flat_torus():
    assert validate_affine(flat_torus_surface()).valid


def test_validate_ff_disk():
    S = ff_disk_surface(1)
    rep = validate_affine(S)
    assert rep.valid
    # the wheel around the marked vertex is the standard unipotent
    from torusbase.affine import vertex_wheel

    W = vertex_wheel(S, "c")
    assert unipotent_power(W[0]) == 1


def test_validate_rejects_bad_marking():
    # a regular marking on a vertex whose wheel is a shear
    S = ff_disk_surface(1)
    S2 = AffineSurface(
        base=S.base, charts=S.charts, transitions=S.transitions, markings={}
    )
    rep = validate_affine(S2)
    assert not rep.valid
    assert any("identity" in v for v in rep.violations)


def test_validate_rejects_nonunimodular():
    S = flat_torus_surface()
    e = next(iter(S.transitions))
    tr = S.transitions[e]
    S.transitions[e] = EdgeTransition(tr.from_face, tr.to_face, intmat([[2, 0], [0, 1]]), tr.t)
    rep = validate_affine(S)
    assert not rep.valid
    assert any("unimodular" in v for v in rep.violations)


def test_monodromy_flat_torus_trivial():
    S = flat_torus_surface()
    rep = monodromy_rep(S)
    for M in rep.images:
        assert all(M[i, j] == (1 if i == j else 0) for i in range(2) for j in range(2))


def test_monodromy_ff_disk():
    S = ff_disk_surface(1)
    rep = monodromy_rep(S)
    ks = [unipotent_power(M) for l, M in zip(rep.loops, rep.images) if l.kind == "vertex"]
    assert ks == [1]
    S3 = ff_disk_surface(3)
    rep3 = monodromy_rep(S3)
    ks3 = [unipotent_power(M) for l, M in zip(rep3.loops, rep3.images) if l.kind == "vertex"]
    assert ks3 == [3]


def test_monodromy_klein_orientation_character():
    S = klein_affine_surface()
    rep = monodromy_rep(S)
    dets = {M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] for M in rep.images}
    assert -1 in dets


def test_monodromy_invariant_under_recharting():
    rng = random.Random(31)
    S = ff_disk_surface(1)
    base_rep = monodromy_rep(S)
    base_ks = sorted(
        unipotent_power(M) for l, M in zip(base_rep.loops, base_rep.images) if l.kind == "vertex"
    )
    for _ in range(5):
        maps = {}
        for f in S.base.cells_of_dim(2):
            U = eye(2)
            U[0, 1] = rng.randint(-2, 2)
            if rng.random() < 0.5:
                U = U.T
            maps[f] = (U, fracvec([rng.randint(-2, 2), rng.randint(-2, 2)]))
        S2 = rechart(S, maps)
        assert validate_affine(S2).valid
        rep2 = monodromy_rep(S2)
        ks = sorted(
            unipotent_power(M) for l, M in zip(rep2.loops, rep2.images) if l.kind == "vertex"
        )
        assert ks == base_ks


def test_R_sheaf_flat_torus():
    S = flat_torus_surface()
    R = build_R_sheaf(S)
    assert validate_sheaf(R).valid
    assert cohomology(R, 2).group == AbelianGroup(2)


def test_R_sheaf_ff_disk():
    R = build_R_sheaf(ff_disk_surface(1))
    assert validate_sheaf(R).valid
    assert cohomology(R, 0).group == AbelianGroup(1)
    assert cohomology(R, 1).group == AbelianGroup(0)


def test_R_sheaf_triangle():
    R = build_R_sheaf(cp2_triangle_surface())
    groups = [cohomology(R, k).group for k in range(3)]
    assert groups == [AbelianGroup(2), AbelianGroup(0), AbelianGroup(0)]


def test_R_sheaf_fixed_covector_identity():
    # the focus-focus stalk generator is fixed by the dual local monodromy
    from torusbase.affine import dual_matrix, vertex_wheel

    for k in (1, 2):
        S = ff_disk_surface(k)
        R = build_R_sheaf(S)
        W = vertex_wheel(S, "c")[0]
        D = dual_matrix(W)
        e = sorted((e for e, _ in S.base.cofaces_of("c")), key=str)[0]
        col = R.restriction("c", e)
        img = D.dot(col)
        # generator expressed in the edge frame equals its dual transport
        assert all(a == b for a, b in zip(img[:, 0], col[:, 0]))


def test_I_sheaf_split_for_zero_translations():
    S = zero_translation_torus()
    assert validate_affine(S).valid
    I, ses = build_I_sheaf(S)
    assert ses.validate().valid
    from torusbase.sheaves import connecting_map, image_dimension

    for k in (0, 1):
        delta = connecting_map(ses, k, check=False)
        assert image_dimension(delta) == 0


def test_I_sheaf_flat_torus_exact():
    S = flat_torus_surface()
    I, ses = build_I_sheaf(S)
    assert ses.validate().valid


def test_dhat_zero_class():
    S = flat_torus_surface()
    R = build_R_sheaf(S)
    cls = CohomologyClass(R, 2, R.zero_cochain(2))
    _, coords = dhat(S, cls)
    assert all(c == 0 for c in coords)


def test_dhat_top_degree_vanishes():
    S = flat_torus_surface()
    R = build_R_sheaf(S)
    h2 = cohomology(R, 2)
    for g in h2.generator_cocycles():
        _, coords = dhat(S, CohomologyClass(R, 2, g))
        assert all(c == 0 for c in coords)


def test_dhat_linear():
    S = flat_torus_surface()
    R = build_R_sheaf(S)
    h1 = cohomology(R, 1)
    gens = h1.generator_cocycles()
    _, ses = build_I_sheaf(S)
    a = CohomologyClass(R, 1, gens[0])
    b = CohomologyClass(R, 1, gens[1])
    _, ca = dhat(S, a, ses)
    _, cb = dhat(S, b, ses)
    ab = CohomologyClass(R, 1, gens[0] + gens[1])
    _, cab = dhat(S, ab, ses)
    assert tuple(x + y for x, y in zip(ca, cb)) == cab


def test_moduli_examples():
    assert lagrangian_moduli(flat_torus_surface()) == (1, 1)
    assert lagrangian_moduli(cp2_triangle_surface()) == (0, 0)
    both = affine_disjoint_union(flat_torus_surface(), flat_torus_surface())
    assert validate_affine(both).valid
    assert lagrangian_moduli(both) == (2, 2)


def test_torus_bundle_h1_examples():
    assert torus_bundle_h1((1, 0)) == AbelianGroup(3)
    assert torus_bundle_h1((0, 0)) == AbelianGroup(4)
    assert torus_bundle_h1((2, 4)) == AbelianGroup(3, (2,))


def test_torus_bundle_h1_gcd_property():
    from math import gcd

    from torusbase.exact import intmat as im

    for c1 in range(-10, 11):
        for c2 in range(-10, 11):
            got = torus_bundle_h1((c1, c2))
            g = gcd(abs(c1), abs(c2))
            # independent oracle: Smith form of the full abelianized
            # relation matrix of the central extension
            rel = im([[c1, c2, 0, 0]])
            want = PresentedGroup(4, rel).group
            assert got == want
            if g == 0:
                assert got == AbelianGroup(4)
            elif g == 1:
                assert got == AbelianGroup(3)
            else:
                assert got == AbelianGroup(3, (g,))


def test_affine_area_examples():
    assert affine_area(flat_torus_surface()) == 1
    assert affine_area(cp2_triangle_surface()) == Fraction(1, 2)


def test_affine_area_recharting_invariance():
    S = cp2_triangle_surface()
    maps = {"f": (intmat([[1, 1], [0, 1]]), fracvec([3, -2]))}
    S2 = rechart(S, maps)
    assert validate_affine(S2).valid
    assert affine_area(S2) == Fraction(1, 2)


def test_area_requires_charts():
    S = zero_translation_torus()
    with pytest.raises(AffineError):
        affine_area(S)


def test_cut_triangle():
    S = cut_triangle_surface()
    assert validate_affine(S).valid
    assert S.focus_focus_count() == 3
    from torusbase.complexes import classify_surface

    assert classify_surface(S.base, 3).kind == "disk"


def test_sphere_relator():
    S = sphere_24ff_surface()
    assert affine_eq(boundary_word_holonomy(S), affine_identity())


def trace3_disk():
    """Disk whose central vertex wheel is hyperbolic (trace 3)."""
    S = ff_disk_surface(1)
    tr = S.transitions[("e", ("b", 0), "c")]
    A = intmat([[2, 1], [1, 1]])
    transitions = dict(S.transitions)
    transitions[("e", ("b", 0), "c")] = EdgeTransition(tr.from_face, tr.to_face, A, tr.t)
    return AffineSurface(base=S.base, charts={}, transitions=transitions)


def test_trace3_wheel_not_regular():
    S = trace3_disk()
    rep = validate_affine(S)
    assert not rep.valid
    assert any("identity" in v for v in rep.violations)


def test_trace3_wheel_not_focus_focus():
    S = trace3_disk()
    S.markings["c"] = SingularityMark("focus_focus", 1)
    rep = validate_affine(S)
    assert not rep.valid
    assert any("unipotent" in v for v in rep.violations)


def test_dhat_degree1_zero_translations():
    S = zero_translation_torus()
    R = build_R_sheaf(S)
    h1 = cohomology(R, 1)
    _, ses = build_I_sheaf(S)
    for g in h1.generator_cocycles():
        _, coords = dhat(S, CohomologyClass(R, 1, g), ses)
        assert all(c == 0 for c in coords)
