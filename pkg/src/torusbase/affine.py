"""Integral affine surfaces with singular points.

Charts are per-face vertex positions over Q; transitions across interior
edges are pairs (A, t) in GL(2,Z) x Q^2 mapping from_face coordinates to
to_face coordinates.  Action coordinates transform by A, so covectors (the
stalks of the monodromy sheaf) transform by the inverse transpose; that
convention is fixed here and used everywhere.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complexes import boundary_traversal, dual_loops, vertex_star_cycle
from .exact import (
    PresentedGroup,
    eye,
    fracmat,
    fracvec,
    intmat,
    intvec,
    inv2,
    kernel,
    mat_eq,
    q_rank,
    snf,
    zeros,
)
from .sheaves import (
    CellularSheaf,
    CohomologyClass,
    SheafMap,
    ShortExactSequence,
    Stalk,
    cohomology,
    validate_sheaf,
)


class AffineError(ValueError):
    pass


@dataclass(frozen=True)
class SingularityMark:
    kind: str = "regular"
    k: int = 0  # multiplicity of a focus_focus point

    def __post_init__(self):
        kinds = (
            "regular",
            "focus_focus",
            "elliptic_edge",
            "elliptic_vertex",
            "hyperbolic_edge",
            "hyperbolic_vertex",
        )
        if self.kind not in kinds:
            raise AffineError("unknown singularity kind %r" % (self.kind,))
        if self.kind == "focus_focus" and self.k < 1:
            raise AffineError("focus_focus multiplicity must be positive")


REGULAR = SingularityMark()


@dataclass
class EdgeTransition:
    from_face: object
    to_face: object
    A: np.ndarray  # 2x2 integer, |det| = 1
    t: np.ndarray  # length 2 over Q


def affine_compose(m2, m1):
    """(B, s) after (A, t): x -> B(Ax + t) + s."""
    B, s = m2
    A, t = m1
    return B.dot(A), B.dot(t) + s


def affine_inverse(m):
    A, t = m
    Ai = inv2(A)
    return Ai, -Ai.dot(t)


def affine_identity():
    return eye(2), fracvec([0, 0])


def affine_eq(m1, m2):
    return mat_eq(m1[0], m2[0]) and all(a == b for a, b in zip(m1[1], m2[1]))


def dual_matrix(A):
    """Covector pushforward: inverse transpose."""
    return inv2(A).T.copy()


@dataclass
class AffineSurface:
    base: object  # CellComplex of dimension 2
    charts: dict  # face -> {vertex: (qx, qy)}
    transitions: dict  # interior edge -> EdgeTransition
    markings: dict = field(default_factory=dict)  # cell -> SingularityMark
    chern_cocycle: dict = field(default_factory=dict)  # face -> int 2-vector

    def mark(self, cell):
        return self.markings.get(cell, REGULAR)

    def position(self, face, vertex):
        return self.charts[face][vertex]

    def crossing(self, edge, from_face):
        """Affine map for crossing edge out of from_face."""
        tr = self.transitions[edge]
        m = (tr.A, tr.t)
        if tr.from_face == from_face:
            return m, tr.to_face
        if tr.to_face == from_face:
            return affine_inverse(m), tr.from_face
        raise AffineError("face %s is not a side of edge %s" % (from_face, edge))

    def focus_focus_vertices(self):
        return [c for c in self.base.cells_of_dim(0) if self.mark(c).kind == "focus_focus"]

    def focus_focus_count(self):
        return len(self.focus_focus_vertices())


def vertex_fan(X, v):
    """Faces and crossed edges around v; cyclic for interior, a fan otherwise.

    Returns (faces, edges, closed).  For a closed star edges[i] joins faces[i]
    and faces[i+1 mod m]; otherwise edges has one fewer entry than faces.
    """
    star_edges = [e for e, _ in X.cofaces_of(v) if X.dim(e) == 1]
    boundary = [e for e in star_edges if len(X.cofaces_of(e)) == 1]
    if not boundary:
        faces, edges = vertex_star_cycle(X, v)
        return faces, edges, True
    # start at a boundary edge and walk across interior edges
    start = sorted(boundary, key=str)[0]
    f = X.cofaces_of(start)[0][0]
    faces = [f]
    edges = []
    prev = start
    while True:
        nxt = [
            e2
            for e2, _ in X.faces_of(f)
            if e2 != prev and any(w == v for w, _ in X.faces_of(e2))
        ]
        if len(nxt) != 1:
            raise AffineError("vertex %s has a non-disk star" % (v,))
        e = nxt[0]
        if len(X.cofaces_of(e)) == 1:
            break
        g = next(h for h, _ in X.cofaces_of(e) if h != f)
        edges.append(e)
        faces.append(g)
        prev = e
        f = g
    return faces, edges, False


def star_transports(S, v):
    """Affine transports from the first star face's frame to every star face."""
    faces, edges, closed = vertex_fan(S.base, v)
    T = [affine_identity()]
    for i, e in enumerate(edges if not closed else edges[:-1]):
        m, other = S.crossing(e, faces[i])
        if other != faces[i + 1]:
            raise AffineError("star walk mismatch at %s" % (v,))
        T.append(affine_compose(m, T[i]))
    return faces, edges, closed, T


def vertex_wheel(S, v):
    """Total affine holonomy around an interior vertex, or None on boundary."""
    faces, edges, closed, T = star_transports(S, v)
    if not closed:
        return None
    m, other = S.crossing(edges[-1], faces[-1])
    if other != faces[0]:
        raise AffineError("star walk does not close at %s" % (v,))
    return affine_compose(m, T[-1])


def unipotent_power(W):
    """k with W conjugate in GL(2,Z) to [[1,k],[0,1]], else None."""
    if W[0, 0] * W[1, 1] - W[0, 1] * W[1, 0] != 1:
        return None
    if W[0, 0] + W[1, 1] != 2:
        return None
    N = W - eye(2)
    if all(x == 0 for x in N.flat):
        return 0
    d = snf(N).diagonal
    if d[1] != 0:
        return None
    return int(d[0])


@dataclass
class AffineReport:
    violations: list

    @property
    def valid(self):
        return not self.violations

    def __str__(self):
        return "valid" if self.valid else "\n".join(map(str, self.violations))


def validate_affine(S):
    """All affine invariants: transitions, chart positions, vertex wheels."""
    from .complexes import validate as validate_complex

    bad = []
    rep = validate_complex(S.base)
    if not rep.valid:
        return AffineReport(["base complex invalid: %s" % rep])
    X = S.base
    if X.dimension != 2:
        bad.append("base complex must be 2-dimensional")
        return AffineReport(bad)
    # polygon charts are optional (needed for areas); when present they must
    # cover the face's vertices and agree with the transitions
    for f, ch in S.charts.items():
        if X.dim(f) != 2:
            bad.append("chart on non-face %s" % (f,))
            continue
        verts = {w for e, _ in X.faces_of(f) for w, _ in X.faces_of(e)}
        missing = verts - set(ch)
        if missing:
            bad.append("chart of %s misses vertices %s" % (f, sorted(missing, key=str)))
    if bad:
        return AffineReport(bad)
    for e in X.cells_of_dim(1):
        cofs = [g for g, _ in X.cofaces_of(e)]
        if len(cofs) == 2:
            tr = S.transitions.get(e)
            if tr is None:
                bad.append("interior edge %s has no transition" % (e,))
                continue
            if {tr.from_face, tr.to_face} != set(cofs):
                bad.append("transition of %s names wrong faces" % (e,))
                continue
            d = tr.A[0, 0] * tr.A[1, 1] - tr.A[0, 1] * tr.A[1, 0]
            if d not in (1, -1):
                bad.append("transition of %s is not unimodular" % (e,))
            if tr.from_face in S.charts and tr.to_face in S.charts:
                for u, _ in X.faces_of(e):
                    src = S.charts[tr.from_face][u]
                    dst = S.charts[tr.to_face][u]
                    img = tr.A.dot(fracvec(src)) + tr.t
                    if not all(a == b for a, b in zip(img, fracvec(dst))):
                        bad.append(
                            "transition of %s moves vertex %s off its chart" % (e, u)
                        )
        elif e in S.transitions:
            bad.append("boundary edge %s carries a transition" % (e,))
    if bad:
        return AffineReport(bad)
    for cell, mark in S.markings.items():
        if mark.kind == "focus_focus" and X.dim(cell) != 0:
            bad.append("focus_focus mark on non-vertex %s" % (cell,))
        if mark.kind in ("hyperbolic_edge", "hyperbolic_vertex"):
            bad.append(
                "hyperbolic mark on %s: hyperbolic strata live on graph bases only" % (cell,)
            )
        if mark.kind == "elliptic_edge" and (
            X.dim(cell) != 1 or len(X.cofaces_of(cell)) != 1
        ):
            bad.append("elliptic_edge mark on non-boundary-edge %s" % (cell,))
        if mark.kind == "elliptic_vertex" and X.dim(cell) != 0:
            bad.append("elliptic_vertex mark on non-vertex %s" % (cell,))
    for v in X.cells_of_dim(0):
        mark = S.mark(v)
        wheel = vertex_wheel(S, v)
        if wheel is None:
            if mark.kind == "focus_focus":
                bad.append("focus-focus mark on boundary vertex %s" % (v,))
            continue
        if mark.kind == "focus_focus":
            k = unipotent_power(wheel[0])
            if k != mark.k or k == 0:
                bad.append(
                    "vertex %s wheel is not conjugate to the %d-fold standard unipotent"
                    % (v, mark.k)
                )
                continue
            faces, _, _, _ = star_transports(S, v)
            if faces[0] in S.charts:
                pos = fracvec(S.charts[faces[0]][v])
                img = wheel[0].dot(pos) + wheel[1]
                if not all(a == b for a, b in zip(img, pos)):
                    bad.append("wheel at focus-focus vertex %s does not fix it" % (v,))
            else:
                # without a chart, a fixed point must at least exist over Q
                W = wheel[0] - eye(2)
                from .exact import solve

                if solve(-W, wheel[1], "Q") is None:
                    bad.append("wheel at focus-focus vertex %s has no fixed point" % (v,))
        else:
            if not affine_eq(wheel, affine_identity()):
                bad.append("wheel at %s vertex %s is not the identity" % (mark.kind, v))
    return AffineReport(bad)


# ---------------------------------------------------------------------------
# Monodromy


@dataclass
class MonodromyRep:
    basepoint: object
    loops: list
    images: list  # GL(2,Z) matrices, one per loop

    def vertex_images(self):
        return {
            l.about: M for l, M in zip(self.loops, self.images) if l.kind == "vertex"
        }


def loop_holonomy(S, loop):
    """Affine holonomy of a face loop, in the frame of its first face."""
    m = affine_identity()
    for i, e in enumerate(loop.edges):
        step, other = S.crossing(e, loop.faces[i])
        if other != loop.faces[i + 1]:
            raise AffineError("loop does not follow edge %s" % (e,))
        m = affine_compose(step, m)
    return m


def monodromy_rep(S, basepoint=None):
    """Holonomy of generating face loops; images recorded up to conjugation."""
    X = S.base
    if basepoint is None:
        basepoint = X.cells_of_dim(2)[0]
    loops = dual_loops(X, basepoint)
    images = [loop_holonomy(S, l)[0] for l in loops]
    return MonodromyRep(basepoint=basepoint, loops=loops, images=images)


def boundary_word_holonomy(S, basepoint=None):
    """Global relator of the monodromy presentation, as a holonomy product.

    Cutting the surface open along the co-tree edges leaves a disk whose
    interior is free of vertices, so the based co-tree loops multiplied in
    the order their sides appear along the disk boundary are contractible in
    the punctured surface.  The returned affine map is that ordered product;
    it must be the identity on any valid closed surface.  Seam letters are
    conjugates of the focus-focus vertex loops, so for a sphere of
    focus-focus points this is the global triviality of the product of all
    singular-fiber monodromies.
    """
    from .complexes import _dual_tree

    X = S.base
    if basepoint is None:
        basepoint = X.cells_of_dim(2)[0]
    walk = boundary_traversal(X, basepoint, record_tree=True)
    tree, _ = _dual_tree(X, basepoint)
    transport = {basepoint: affine_identity()}

    def T(face):
        if face not in transport:
            parent, e = tree[face]
            step, other = S.crossing(e, parent)
            if other != face:
                raise AffineError("tree walk mismatch at %s" % (e,))
            transport[face] = affine_compose(step, T(parent))
        return transport[face]

    total = affine_identity()
    for e, f, g, kind in walk:
        if g is None:
            raise AffineError("boundary word holonomy requires a closed surface")
        if kind == "tree":
            continue
        step, other = S.crossing(e, f)
        if other != g:
            raise AffineError("walk mismatch at %s" % (e,))
        based = affine_compose(affine_inverse(T(g)), affine_compose(step, T(f)))
        total = affine_compose(based, total)
    return total


# ---------------------------------------------------------------------------
# The monodromy sheaf


_STALK_RANKS = {
    "regular": None,  # by dimension, below
    "focus_focus": 1,
    "elliptic_edge": 2,
    "elliptic_vertex": 2,
    "hyperbolic_edge": 1,
    "hyperbolic_vertex": 0,
}


def covector_transport(S, v):
    """Dual transports along the star fan of v, per star face."""
    faces, edges, closed, T = star_transports(S, v)
    duals = [dual_matrix(m[0]) for m in T]
    return faces, edges, closed, T, duals


def _edge_frame_owner(S, e):
    cofs = S.base.cofaces_of(e)
    if len(cofs) == 1:
        return cofs[0][0]
    return S.transitions[e].from_face


def fixed_covector(W):
    """Primitive covector fixed by the dual of the wheel linear part W."""
    K = kernel((W - eye(2)).T)
    if K.shape[1] != 1:
        return None
    return K[:, 0].copy()


def build_R_sheaf(S):
    """The sheaf of local fiberwise circle actions, over Z.

    Face and edge stalks are Z^2 in chart frames (edges use the frame of the
    transition's from_face); a focus-focus vertex carries the rank-1 lattice
    of covectors fixed by its local monodromy.
    """
    X = S.base
    stalks = {}
    restrictions = {}
    for f in X.cells_of_dim(2):
        stalks[f] = Stalk(2)
    for e in X.cells_of_dim(1):
        mark = S.mark(e)
        if mark.kind not in ("regular", "elliptic_edge"):
            raise AffineError("unsupported edge mark %s on a surface" % (mark.kind,))
        stalks[e] = Stalk(2)
        cofs = [g for g, _ in X.cofaces_of(e)]
        if len(cofs) == 1:
            restrictions[(e, cofs[0])] = eye(2)
        else:
            tr = S.transitions[e]
            restrictions[(e, tr.from_face)] = eye(2)
            restrictions[(e, tr.to_face)] = dual_matrix(tr.A)
    for v in X.cells_of_dim(0):
        mark = S.mark(v)
        faces, edges, closed, T, duals = covector_transport(S, v)
        if mark.kind == "focus_focus":
            wheel = vertex_wheel(S, v)
            xi = fixed_covector(wheel[0])
            if xi is None:
                raise AffineError("no fixed covector at focus-focus vertex %s" % (v,))
            stalks[v] = Stalk(1)
            incl = zeros(2, 1)
            incl[0, 0], incl[1, 0] = xi[0], xi[1]
        else:
            stalks[v] = Stalk(2)
            incl = eye(2)
        star_edges = [e for e, _ in X.cofaces_of(v) if X.dim(e) == 1]
        for e in star_edges:
            owner = _edge_frame_owner(S, e)
            idx = faces.index(owner)
            restrictions[(v, e)] = duals[idx].dot(incl)
    F = CellularSheaf(X, "Z", stalks, restrictions)
    rep = validate_sheaf(F)
    if not rep.valid:
        raise AffineError("monodromy sheaf invalid: %s" % rep)
    return F


def _affine_block(A, t):
    """Restriction of (constant, covector) data across a transition."""
    D = dual_matrix(A)
    M = zeros(3, 3, "Q")
    M[0, 0] = Fraction(1)
    for j in range(2):
        M[0, 1 + j] = -sum(Fraction(t[i]) * Fraction(D[i, j]) for i in range(2))
    for i in range(2):
        for j in range(2):
            M[1 + i, 1 + j] = Fraction(D[i, j])
    return M


def build_I_sheaf(S):
    """Sheaf of local integral affine functions over Q, with its sequence.

    Returns (I, ses) where ses is 0 -> Q -> I -> R_Q -> 0, exact stalkwise.
    The stalk of I is constants plus the rationalized monodromy stalk; the
    translation parts of the transitions twist the constant component.
    """
    from .sheaves import constant_sheaf

    R = build_R_sheaf(S)
    X = S.base
    RQ = CellularSheaf(
        X,
        "Q",
        {c: R.stalk(c) for c in X.cells},
        {k: M.astype(object) * Fraction(1) for k, M in R.restrictions.items()},
    )
    stalks = {c: Stalk(1 + R.rank(c)) for c in X.cells}
    restrictions = {}
    for e in X.cells_of_dim(1):
        cofs = [g for g, _ in X.cofaces_of(e)]
        if len(cofs) == 1:
            restrictions[(e, cofs[0])] = eye(3, "Q")
        else:
            tr = S.transitions[e]
            restrictions[(e, tr.from_face)] = eye(3, "Q")
            restrictions[(e, tr.to_face)] = _affine_block(tr.A, tr.t)
    for v in X.cells_of_dim(0):
        faces, edges, closed, T, duals = covector_transport(S, v)
        rv = R.rank(v)
        incl = zeros(3, 1 + rv, "Q")
        incl[0, 0] = Fraction(1)
        if rv == 1:
            xi = None
            wheel = vertex_wheel(S, v)
            xi = fixed_covector(wheel[0])
            incl[1, 1] = Fraction(xi[0])
            incl[2, 1] = Fraction(xi[1])
        else:
            incl[1, 1] = Fraction(1)
            incl[2, 2] = Fraction(1)
        star_edges = [e for e, _ in X.cofaces_of(v) if X.dim(e) == 1]
        for e in star_edges:
            owner = _edge_frame_owner(S, e)
            idx = faces.index(owner)
            block = _affine_block(T[idx][0], T[idx][1])
            restrictions[(v, e)] = block.dot(incl)
    I = CellularSheaf(X, "Q", stalks, restrictions)
    rep = validate_sheaf(I)
    if not rep.valid:
        raise AffineError("affine-function sheaf invalid: %s" % rep)
    QQ = constant_sheaf(X, 1, "Q")
    iblocks = {}
    pblocks = {}
    for c in X.cells:
        r = R.rank(c)
        ib = zeros(1 + r, 1, "Q")
        ib[0, 0] = Fraction(1)
        pb = zeros(r, 1 + r, "Q")
        for i in range(r):
            pb[i, 1 + i] = Fraction(1)
        iblocks[c] = ib
        pblocks[c] = pb
    ses = ShortExactSequence(
        i=SheafMap(QQ, I, iblocks), p=SheafMap(I, RQ, pblocks)
    )
    return I, ses


def rationalize_R_class(S, ses, cls):
    """View an integral monodromy-sheaf class inside the rational model."""
    RQ = ses.p.target
    vec = np.array([Fraction(x) for x in cls.cocycle], dtype=object)
    return CohomologyClass(RQ, cls.degree, vec)


def dhat(S, cls, ses=None, target=None):
    """Connecting map of the affine-function sequence applied to a class.

    Returns (cohomology result of H^{k+1}(O, Q), canonical coordinates).
    The affine-function sheaf splits stalkwise as constants plus covectors,
    so the zig-zag lift is the explicit section: embed the cocycle with zero
    constant components, differentiate, and read off the constant parts.
    In top degree on a surface the target vanishes and the map is zero.
    """
    if ses is None:
        _, ses = build_I_sheaf(S)
    RQ = ses.p.target
    I = ses.B
    QQ = ses.i.source
    k = cls.degree
    hA = target if target is not None else cohomology(QQ, k + 1)
    if RQ.cochain_rank(k) == 0 or hA.presentation.n == 0:
        return hA, tuple(Fraction(0) for _ in range(hA.presentation.dimension))
    b = I.zero_cochain(k)
    offI, _ = I.offsets(k)
    offR, _ = RQ.offsets(k)
    for c in I.cochain_cells(k):
        r = RQ.rank(c)
        i0 = offI[c]
        j0 = offR[c]
        for i in range(r):
            b[i0 + 1 + i] = Fraction(cls.cocycle[j0 + i])
    db = I.differential(k).dot(b)
    a = QQ.zero_cochain(k + 1)
    offI1, _ = I.offsets(k + 1)
    offQ1, _ = QQ.offsets(k + 1)
    for c in I.cochain_cells(k + 1):
        i0 = offI1[c]
        a[offQ1[c]] = db[i0]
        for i in range(RQ.rank(c)):
            if db[i0 + 1 + i] != 0:
                raise AffineError("zig-zag left the constant subsheaf; not a cocycle")
    return hA, hA.coordinates(a)


def lagrangian_moduli(S):
    """(dim H^2(O, R-coefficients), rank of the dhat image of H^1(O, R)).

    Presents the symplectic moduli H^2(O, R)/dhat(H^1(O, R-sheaf)) as an
    ambient dimension and a lattice rank.
    """
    I, ses = build_I_sheaf(S)
    R = build_R_sheaf(S)
    h1 = cohomology(R, 1)
    QQ = ses.i.source
    hA = cohomology(QQ, 2)
    dim = hA.presentation.dimension
    images = []
    for g in h1.generator_cocycles():
        cls = CohomologyClass(R, 1, g)
        _, coords = dhat(S, cls, ses, target=hA)
        images.append(list(coords))
    if not images or dim == 0:
        return dim, 0
    rank = q_rank(fracmat(images))
    return dim, rank


def torus_bundle_h1(c):
    """H_1 of the total space of a torus bundle over the torus with Chern c.

    Abelianization of the central extension with commutator pairing c: the
    group is Z^3 + Z/gcd(c1, c2), with gcd 0 meaning a free factor.
    """
    c1, c2 = int(c[0]), int(c[1])
    rel = intmat([[c1, c2, 0, 0]])
    return PresentedGroup(4, rel).group


def affine_area(S):
    """Total chart area; invariant under unimodular rechartings."""
    X = S.base
    total = Fraction(0)
    for f in X.cells_of_dim(2):
        word = X.boundary_words.get(f)
        if word is None or f not in S.charts:
            raise AffineError("face %s has no polygonal chart" % (f,))
        cycle = []
        for e, s in word:
            tail = next(w for w, val in X.faces_of(e) if val == (-1 if s == 1 else 1))
            cycle.append(tail)
        pts = [fracvec(S.charts[f][v]) for v in cycle]
        area2 = Fraction(0)
        for i in range(len(pts)):
            x1, y1 = pts[i]
            x2, y2 = pts[(i + 1) % len(pts)]
            area2 += x1 * y2 - x2 * y1
        total += abs(area2) / 2
    return total


def rechart(S, maps):
    """Apply a unimodular affine change of frame to some faces.

    maps: {face: (U, c)} with U in GL(2, Z) and rational c; transitions and
    chart positions are conjugated accordingly.
    """

    def get(face):
        return maps.get(face, affine_identity())

    charts = {}
    for f, ch in S.charts.items():
        U, c = get(f)
        charts[f] = {v: tuple(U.dot(fracvec(p)) + c) for v, p in ch.items()}
    transitions = {}
    for e, tr in S.transitions.items():
        m = affine_compose(get(tr.to_face), affine_compose((tr.A, tr.t), affine_inverse(get(tr.from_face))))
        transitions[e] = EdgeTransition(tr.from_face, tr.to_face, m[0], m[1])
    chern = {}
    for f, val in S.chern_cocycle.items():
        U, _ = get(f)
        vec = dual_matrix(U).dot(intvec([val[0], val[1]]))
        chern[f] = (int(vec[0]), int(vec[1]))
    return AffineSurface(
        base=S.base,
        charts=charts,
        transitions=transitions,
        markings=S.markings,
        chern_cocycle=chern,
    )


def affine_disjoint_union(S1, S2, tags=("A", "B")):
    """Disjoint union of two affine surfaces, cells tagged by side."""
    from .complexes import disjoint_union

    X = disjoint_union(S1.base, S2.base, *tags)

    def retag(surface, tag):
        charts = {
            (tag, f): {(tag, v): p for v, p in ch.items()} for f, ch in surface.charts.items()
        }
        transitions = {
            (tag, e): EdgeTransition((tag, tr.from_face), (tag, tr.to_face), tr.A, tr.t)
            for e, tr in surface.transitions.items()
        }
        markings = {(tag, c): m for c, m in surface.markings.items()}
        chern = {(tag, f): v for f, v in surface.chern_cocycle.items()}
        return charts, transitions, markings, chern

    c1, t1, m1, ch1 = retag(S1, tags[0])
    c2, t2, m2, ch2 = retag(S2, tags[1])
    c1.update(c2)
    t1.update(t2)
    m1.update(m2)
    ch1.update(ch2)
    return AffineSurface(base=X, charts=c1, transitions=t1, markings=m1, chern_cocycle=ch1)


def gl2_orbit_matrices():
    """Action of the mapping-class generators on H^2(T^2, R-sheaf) = Z^2.

    An affine automorphism with linear part A acts on covector coefficients
    by the inverse transpose and on the fundamental class by det A, so the
    induced matrix is det(A) * (A^T)^{-1}.
    """
    S = intmat([[0, -1], [1, 0]])
    T = intmat([[1, 1], [0, 1]])
    out = []
    for A in (S, T):
        d = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        out.append(d * inv2(A).T)
    return out
