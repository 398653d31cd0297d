"""Finite regular cell complexes.

A complex is stored as cell ids with dimensions, signed incidence numbers for
covering pairs (coface, face), and optional cyclic boundary words on 2-cells.
Cells of each dimension are ordered by sorted id; every matrix-valued
computation elsewhere relies on that ordering.
"""

from dataclasses import dataclass, field

from .exact import AbelianGroup, PresentedGroup, intmat, zeros


class ComplexError(ValueError):
    pass


class NotASurfaceError(ComplexError):
    pass


@dataclass
class CellComplex:
    cells: dict  # id -> dimension
    incidence: dict  # (coface_id, face_id) -> +-1
    boundary_words: dict = field(default_factory=dict)  # 2-cell -> ((edge, sign), ...)

    def __post_init__(self):
        self._faces_of = {}
        self._cofaces_of = {}
        for (cof, face), val in self.incidence.items():
            self._faces_of.setdefault(cof, []).append((face, val))
            self._cofaces_of.setdefault(face, []).append((cof, val))

    @property
    def dimension(self):
        return max(self.cells.values(), default=-1)

    def cells_of_dim(self, k):
        return sorted((c for c, d in self.cells.items() if d == k), key=str)

    def dim(self, cell):
        return self.cells[cell]

    def faces_of(self, cell):
        return self._faces_of.get(cell, [])

    def cofaces_of(self, cell):
        return self._cofaces_of.get(cell, [])

    def euler_characteristic(self):
        chi = 0
        for d in self.cells.values():
            chi += 1 if d % 2 == 0 else -1
        return chi

    def boundary_matrix(self, k):
        """Matrix of the boundary map from k-cells to (k-1)-cells."""
        rows = self.cells_of_dim(k - 1)
        cols = self.cells_of_dim(k)
        idx = {c: i for i, c in enumerate(rows)}
        M = zeros(len(rows), len(cols))
        for j, c in enumerate(cols):
            for face, val in self.faces_of(c):
                M[idx[face], j] += val
        return M

    def is_connected(self):
        verts = self.cells_of_dim(0)
        if not verts:
            return True
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for e, _ in self.cofaces_of(v):
                if self.dim(e) != 1:
                    continue
                for w, _ in self.faces_of(e):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return len(seen) == len(verts)


@dataclass
class ValidationReport:
    violations: list

    @property
    def valid(self):
        return not self.violations

    def __str__(self):
        if self.valid:
            return "valid"
        return "\n".join("violation: %s" % v for v in self.violations)


def validate(X):
    """Check d(d(.)) = 0, regularity basics, and boundary-word consistency."""
    bad = []
    for (cof, face), val in X.incidence.items():
        if cof not in X.cells or face not in X.cells:
            bad.append("incidence names unknown cell (%s, %s)" % (cof, face))
            continue
        if X.dim(cof) != X.dim(face) + 1:
            bad.append("incidence pair (%s, %s) is not a covering pair" % (cof, face))
        if val not in (1, -1):
            bad.append("incidence coefficient of (%s, %s) is %s" % (cof, face, val))
    if bad:
        return ValidationReport(bad)
    for cell, d in X.cells.items():
        if d >= 1 and not X.faces_of(cell):
            bad.append("cell %s of dim %d has empty boundary" % (cell, d))
        if d == 1:
            vals = sorted(v for _, v in X.faces_of(cell))
            if vals != [-1, 1]:
                bad.append("edge %s does not have one head and one tail" % (cell,))
    # d of d = 0 cell pair by pair
    for rho in X.cells:
        if X.dim(rho) < 2:
            continue
        acc = {}
        for tau, a in X.faces_of(rho):
            for sigma, b in X.faces_of(tau):
                acc[sigma] = acc.get(sigma, 0) + a * b
        for sigma, total in acc.items():
            if total != 0:
                bad.append("dd != 0 at pair (%s, %s): sum %d" % (rho, sigma, total))
    for f, word in X.boundary_words.items():
        if X.dim(f) != 2:
            bad.append("boundary word on non-2-cell %s" % (f,))
            continue
        counts = {}
        for e, s in word:
            counts[e] = counts.get(e, 0) + s
        inc = {e: v for e, v in X.faces_of(f)}
        if counts != inc:
            bad.append("boundary word of %s disagrees with incidence" % (f,))
    return ValidationReport(bad)


# ---------------------------------------------------------------------------
# Construction helpers


@dataclass(frozen=True)
class Seg:
    """Explicitly named and oriented edge, for parallel edges."""

    name: object
    tail: object
    head: object


def complex_from_polygons(polygons, extra_vertices=()):
    """Build a 2-complex from faces given as cyclic vertex sequences.

    polygons: {face_id: [step, ...]} traversed with the face's chosen
    orientation, where a step is either a vertex v (the edge to the next
    vertex is named ("e", v, w) with endpoints in string order) or a pair
    (v, Seg(...)) pinning the edge from v to the next vertex to an explicit
    id with a fixed orientation.
    """
    cells = {v: 0 for v in extra_vertices}
    incidence = {}
    words = {}
    for f, cycle in polygons.items():
        cells[f] = 2
        word = []
        n = len(cycle)
        verts = []
        segs = []
        for item in cycle:
            if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], Seg):
                verts.append(item[0])
                segs.append(item[1])
            else:
                verts.append(item)
                segs.append(None)
        for i in range(n):
            v = verts[i]
            w = verts[(i + 1) % n]
            seg = segs[i]
            if seg is not None:
                if {seg.tail, seg.head} != {v, w}:
                    raise ComplexError("edge %s does not match cycle at %s" % (seg.name, f))
                e, tail, head = seg.name, seg.tail, seg.head
            else:
                tail, head = (v, w) if str(v) <= str(w) else (w, v)
                e = ("e", tail, head)
            sign = 1 if (tail, head) == (v, w) else -1
            cells[v] = 0
            cells[e] = 1
            if incidence.get((e, tail), -1) != -1 or incidence.get((e, head), 1) != 1:
                raise ComplexError("edge %s used with inconsistent endpoints" % (e,))
            incidence[(e, tail)] = -1
            incidence[(e, head)] = 1
            key = (f, e)
            if key in incidence:
                raise ComplexError("face %s repeats edge %s" % (f, e))
            incidence[key] = sign
            word.append((e, sign))
        words[f] = tuple(word)
    return CellComplex(cells=cells, incidence=incidence, boundary_words=words)


def disjoint_union(X, Y, tagx="A", tagy="B"):
    cells = {(tagx, c): d for c, d in X.cells.items()}
    cells.update({(tagy, c): d for c, d in Y.cells.items()})
    inc = {((tagx, a), (tagx, b)): v for (a, b), v in X.incidence.items()}
    inc.update({((tagy, a), (tagy, b)): v for (a, b), v in Y.incidence.items()})
    words = {(tagx, f): tuple(((tagx, e), s) for e, s in w) for f, w in X.boundary_words.items()}
    words.update(
        {(tagy, f): tuple(((tagy, e), s) for e, s in w) for f, w in Y.boundary_words.items()}
    )
    return CellComplex(cells=cells, incidence=inc, boundary_words=words)


def product(X, Y):
    """Product complex with graded Leibniz signs.

    Returns (complex, factors) where factors maps each product cell to its
    pair of factor cells.  Cell ids are ("x", a, b) pairs.
    """
    cells = {}
    factors = {}
    for a, da in X.cells.items():
        for b, db in Y.cells.items():
            cid = ("x", a, b)
            cells[cid] = da + db
            factors[cid] = (a, b)
    incidence = {}
    for a, da in X.cells.items():
        for b, db in Y.cells.items():
            cid = ("x", a, b)
            for fa, v in X.faces_of(a):
                incidence[(cid, ("x", fa, b))] = v
            sgn = 1 if da % 2 == 0 else -1
            for fb, v in Y.faces_of(b):
                incidence[(cid, ("x", a, fb))] = sgn * v
    Z = CellComplex(cells=cells, incidence=incidence)
    _fill_square_words(Z, X, Y)
    return Z, factors


def _fill_square_words(Z, X, Y):
    words = {}
    for cid in Z.cells:
        if Z.dim(cid) != 2:
            continue
        _, a, b = cid
        da = X.cells[a]
        if da == 2:
            words[cid] = tuple((("x", e, b), s) for e, s in X.boundary_words.get(a, ()))
            if not X.boundary_words.get(a):
                words.pop(cid, None)
        elif da == 0:
            words[cid] = tuple((("x", a, e), s) for e, s in Y.boundary_words.get(b, ()))
            if not Y.boundary_words.get(b):
                words.pop(cid, None)
        else:
            # edge x edge: square with word  a x tail_b, head_a x b,
            # reversed a x head_b, reversed tail_a x b
            ta = next(f for f, v in X.faces_of(a) if v == -1)
            ha = next(f for f, v in X.faces_of(a) if v == 1)
            tb = next(f for f, v in Y.faces_of(b) if v == -1)
            hb = next(f for f, v in Y.faces_of(b) if v == 1)
            words[cid] = (
                (("x", a, tb), 1),
                (("x", ha, b), 1),
                (("x", a, hb), -1),
                (("x", ta, b), -1),
            )
    Z.boundary_words.update(words)


def _infer_signs(X, mapping):
    """Orientation signs eps(c) with [mc:mt] = eps(c) eps(t) [c:t], or None."""
    eps = {}
    for c in X.cells_of_dim(0):
        eps[c] = 1
    for k in range(1, X.dimension + 1):
        for c in X.cells_of_dim(k):
            faces = X.faces_of(c)
            t, v = faces[0]
            mv = X.incidence.get((mapping[c], mapping[t]))
            if mv is None:
                return None
            eps[c] = mv * eps[t] * v
            for t2, v2 in faces:
                mv2 = X.incidence.get((mapping[c], mapping[t2]))
                if mv2 is None or mv2 != eps[c] * eps[t2] * v2:
                    return None
    return eps


def quotient_by_free_involution(X, mapping):
    """Quotient of X by a fixed-point-free cellular involution.

    mapping: cell -> cell.  Orientation bookkeeping signs are inferred; raises
    when the map has a fixed cell, is not an involution, or is incompatible
    with the incidence structure.
    """
    for c, mc in mapping.items():
        if mc == c:
            raise ComplexError("involution fixes cell %s" % (c,))
        if mapping.get(mc) != c:
            raise ComplexError("mapping is not an involution at %s" % (c,))
        if X.dim(c) != X.dim(mc):
            raise ComplexError("involution is not dimension preserving at %s" % (c,))
    if set(mapping) != set(X.cells):
        raise ComplexError("involution must move every cell")
    eps = _infer_signs(X, mapping)
    if eps is None:
        raise ComplexError("involution does not commute with incidence")
    rep = {}
    for c in X.cells:
        o = min(c, mapping[c], key=lambda z: str(z))
        rep[c] = o
    cells = {}
    incidence = {}
    for c in X.cells:
        if rep[c] != c:
            continue
        cells[("q", c)] = X.dim(c)
        for t, v in X.faces_of(c):
            key = (("q", c), ("q", rep[t]))
            w = v if rep[t] == t else v * eps[t]
            if key in incidence and incidence[key] != w:
                raise ComplexError("quotient is not regular at %s" % (key,))
            if key in incidence:
                raise ComplexError("quotient face repeats in boundary at %s" % (key,))
            incidence[key] = w
    words = {}
    for c in X.cells:
        if rep[c] != c or X.dim(c) != 2 or c not in X.boundary_words:
            continue
        word = []
        for e, s in X.boundary_words[c]:
            w = s if rep[e] == e else s * eps[e]
            word.append((("q", rep[e]), w))
        words[("q", c)] = tuple(word)
    Z = CellComplex(cells=cells, incidence=incidence, boundary_words=words)
    orbit = {c: ("q", rep[c]) for c in X.cells}
    return Z, orbit


def identify_cells(X, pairs):
    """Quotient X by identifying cell b with cell a for each (a, b) pair.

    Used for gluing constructions.  The identification may flip orientations;
    the relative sign is inferred from vertex incidences upward.  Identified
    cells must have equal dimension and isomorphic boundaries.
    """
    parent = {c: c for c in X.cells}
    sign = {c: 1 for c in X.cells}  # sign of c relative to its parent

    def rel_sign(c):
        s, cur = 1, c
        while parent[cur] != cur:
            s *= sign[cur]
            cur = parent[cur]
        return s, cur

    by_dim = sorted(pairs, key=lambda p: X.dim(p[0]))
    for a, b in by_dim:
        if X.dim(a) != X.dim(b):
            raise ComplexError("cannot identify cells of different dimension")
        sa, ra = rel_sign(a)
        sb, rb = rel_sign(b)
        if ra == rb:
            continue
        if X.dim(a) == 0:
            parent[rb] = ra
            sign[rb] = 1
            continue
        # determine relative orientation from identified faces
        s = None
        for t, v in X.faces_of(a):
            st, rt = rel_sign(t)
            for t2, v2 in X.faces_of(b):
                st2, rt2 = rel_sign(t2)
                if rt == rt2:
                    cand = (v * st) * (v2 * st2)
                    if s is None:
                        s = cand
                    elif s != cand:
                        raise ComplexError(
                            "identification of %s and %s twists its boundary" % (a, b)
                        )
        if s is None:
            raise ComplexError("cells %s and %s share no boundary data" % (a, b))
        parent[rb] = ra
        sign[rb] = sa * sb * s
    cells = {}
    incidence = {}
    relabel = {}
    for c in X.cells:
        s, r = rel_sign(c)
        relabel[c] = r
        if r == c:
            cells[c] = X.dim(c)
    for c in X.cells:
        sc, rc = rel_sign(c)
        for t, v in X.faces_of(c):
            st, rt = rel_sign(t)
            key = (rc, rt)
            val = v * sc * st
            if key in incidence:
                if incidence[key] != val:
                    raise ComplexError("inconsistent identification at %s" % (key,))
            else:
                incidence[key] = val
    words = {}
    for f, word in X.boundary_words.items():
        sf, rf = rel_sign(f)
        if rf in words:
            continue
        words[rf] = tuple((rel_sign(e)[1], s * sf * rel_sign(e)[0]) for e, s in word)
    Z = CellComplex(cells=cells, incidence=incidence, boundary_words=words)
    return Z, relabel


# ---------------------------------------------------------------------------
# Surface recognition


@dataclass(frozen=True)
class SurfaceType:
    kind: str


@dataclass
class SurfaceClassification:
    kind: str
    euler_characteristic: int
    orientable: bool
    boundary_components: int
    constraint_violation: str = None

    @property
    def surface(self):
        return SurfaceType(self.kind)


def _check_surface(X):
    if any(d > 2 for d in X.cells.values()):
        raise NotASurfaceError("complex has cells of dimension > 2")
    for e in X.cells_of_dim(1):
        cofs = [f for f, _ in X.cofaces_of(e)]
        if len(cofs) not in (1, 2):
            raise NotASurfaceError("edge %s has %d cofaces" % (e, len(cofs)))
    for v in X.cells_of_dim(0):
        if not X.cofaces_of(v):
            raise NotASurfaceError("isolated vertex %s" % (v,))


def orientable(X):
    """Try to orient all 2-cells compatibly by breadth-first propagation."""
    faces = X.cells_of_dim(2)
    orient = {}
    for start in faces:
        if start in orient:
            continue
        orient[start] = 1
        queue = [start]
        while queue:
            f = queue.pop()
            for e, v in X.faces_of(f):
                for g, w in X.cofaces_of(e):
                    if g == f:
                        continue
                    want = -orient[f] * v * w
                    if g in orient:
                        if orient[g] != want:
                            return False
                    else:
                        orient[g] = want
                        queue.append(g)
    return True


def boundary_components(X):
    bedges = [e for e in X.cells_of_dim(1) if len(X.cofaces_of(e)) == 1]
    adj = {}
    for e in bedges:
        for v, _ in X.faces_of(e):
            adj.setdefault(v, []).append(e)
    seen = set()
    comps = 0
    for e in bedges:
        if e in seen:
            continue
        comps += 1
        stack = [e]
        seen.add(e)
        while stack:
            cur = stack.pop()
            for v, _ in X.faces_of(cur):
                for nxt in adj[v]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return comps


_SURFACES = {
    (2, True, 0): "sphere",
    (0, True, 0): "torus",
    (1, False, 0): "projective_plane",
    (0, False, 0): "klein_bottle",
    (1, True, 1): "disk",
    (0, True, 2): "annulus",
    (0, False, 1): "möbius_band",
}


def classify_surface(X, focus_focus_count=0):
    """Recognize a compact surface from Euler data; Prop-style side condition.

    Raises NotASurfaceError when the complex is not a surface complex.  For a
    sphere or projective plane with no focus-focus points the classification
    carries a constraint violation instead of failing.
    """
    _check_surface(X)
    chi = X.euler_characteristic()
    orient = orientable(X)
    b = boundary_components(X)
    kind = _SURFACES.get((chi, orient, b))
    if kind is None:
        raise NotASurfaceError(
            "surface (chi=%d, orientable=%s, boundary=%d) is not in the allowed list"
            % (chi, orient, b)
        )
    violation = None
    if kind in ("sphere", "projective_plane") and focus_focus_count == 0:
        violation = "a closed %s base requires focus-focus points" % kind
    return SurfaceClassification(
        kind=kind,
        euler_characteristic=chi,
        orientable=orient,
        boundary_components=b,
        constraint_violation=violation,
    )


# ---------------------------------------------------------------------------
# Fundamental group


@dataclass
class GroupPresentation:
    generators: list
    relators: list  # each a tuple of (generator, +-1)

    def abelianization(self):
        idx = {g: i for i, g in enumerate(self.generators)}
        rows = []
        for rel in self.relators:
            row = [0] * len(self.generators)
            for g, s in rel:
                row[idx[g]] += s
            rows.append(row)
        if not self.generators:
            return AbelianGroup(0)
        rel = intmat(rows) if rows else zeros(0, len(self.generators))
        return PresentedGroup(len(self.generators), rel).group


def _vertex_spanning_tree(X, basepoint):
    tree = {}
    seen = {basepoint}
    queue = [basepoint]
    while queue:
        v = queue.pop(0)
        for e, _ in sorted(X.cofaces_of(v), key=lambda p: str(p[0])):
            if X.dim(e) != 1:
                continue
            for w, _ in X.faces_of(e):
                if w not in seen:
                    seen.add(w)
                    tree[e] = (v, w)
                    queue.append(w)
    return tree, seen


def pi1_presentation(X, basepoint):
    """Presentation of pi_1 from a spanning tree; needs 2-cell boundary words."""
    if not X.is_connected():
        raise ComplexError("complex is not connected")
    if X.dimension > 2:
        raise ComplexError("pi1 presentation requires dimension <= 2")
    for f in X.cells_of_dim(2):
        if f not in X.boundary_words:
            raise ComplexError("2-cell %s is missing its boundary word" % (f,))
    tree, seen = _vertex_spanning_tree(X, basepoint)
    if len(seen) != len(X.cells_of_dim(0)):
        raise ComplexError("complex is not connected")
    generators = [e for e in X.cells_of_dim(1) if e not in tree]
    relators = []
    for f in X.cells_of_dim(2):
        rel = tuple((e, s) for e, s in X.boundary_words[f] if e not in tree)
        relators.append(rel)
    return GroupPresentation(generators=generators, relators=relators)


# ---------------------------------------------------------------------------
# Dual face loops for monodromy transport


@dataclass
class FaceLoop:
    """Closed path of 2-cells; edges[i] is crossed between faces[i], faces[i+1]."""

    faces: list
    edges: list
    kind: str  # "vertex" or "cycle"
    about: object = None  # the encircled vertex for vertex loops


def interior_vertices(X):
    out = []
    for v in X.cells_of_dim(0):
        edges = [e for e, _ in X.cofaces_of(v) if X.dim(e) == 1]
        if all(len(X.cofaces_of(e)) == 2 for e in edges):
            out.append(v)
    return out


def vertex_star_cycle(X, v):
    """Faces and edges around an interior vertex in cyclic order."""
    edges = sorted((e for e, _ in X.cofaces_of(v) if X.dim(e) == 1), key=str)
    e0 = edges[0]
    faces_cycle = []
    edges_cycle = []
    f = X.cofaces_of(e0)[0][0]
    e = e0
    while True:
        faces_cycle.append(f)
        # next edge of f at v, different from e
        candidates = [
            e2
            for e2, _ in X.faces_of(f)
            if e2 != e and any(w == v for w, _ in X.faces_of(e2))
        ]
        if len(candidates) != 1:
            raise NotASurfaceError("vertex %s has a non-disk star at face %s" % (v, f))
        e = candidates[0]
        edges_cycle.append(e)
        nxt = [g for g, _ in X.cofaces_of(e) if g != f]
        if len(nxt) != 1:
            raise NotASurfaceError("edge %s is not interior" % (e,))
        f = nxt[0]
        if f == faces_cycle[0] and e == e0:
            break
        if len(faces_cycle) > len(X.cells):
            raise NotASurfaceError("star walk at %s does not close" % (v,))
    return faces_cycle, edges_cycle


def _dual_tree(X, base_face):
    tree = {}
    seen = {base_face}
    queue = [base_face]
    parent = {base_face: None}
    while queue:
        f = queue.pop(0)
        for e, _ in sorted(X.faces_of(f), key=lambda p: str(p[0])):
            if len(X.cofaces_of(e)) != 2:
                continue
            g = next(h for h, _ in X.cofaces_of(e) if h != f)
            if g not in seen:
                seen.add(g)
                tree[g] = (f, e)
                queue.append(g)
    return tree, seen


def _tree_path(tree, base_face, f):
    """Faces and edges from base_face to f through the dual tree."""
    faces = [f]
    edges = []
    while f != base_face:
        parent, e = tree[f]
        edges.append(e)
        faces.append(parent)
        f = parent
    return list(reversed(faces)), list(reversed(edges))


def dual_loops(X, base_face):
    """Generating face loops of the fundamental group of the regular part.

    Returns loops based at base_face: one through each co-tree interior edge
    and one around each interior vertex.
    """
    _check_surface(X)
    tree, seen = _dual_tree(X, base_face)
    if len(seen) != len(X.cells_of_dim(2)):
        raise ComplexError("2-cells are not face-connected")
    tree_edges = {e for (_, e) in tree.values()}
    loops = []
    for e in X.cells_of_dim(1):
        if e in tree_edges or len(X.cofaces_of(e)) != 2:
            continue
        f, g = (h for h, _ in X.cofaces_of(e))
        pf, pe = _tree_path(tree, base_face, f)
        pg, pge = _tree_path(tree, base_face, g)
        faces = pf + pg[::-1]
        edges = pe + [e] + pge[::-1]
        loops.append(FaceLoop(faces=faces, edges=edges, kind="cycle", about=e))
    for v in interior_vertices(X):
        fc, ec = vertex_star_cycle(X, v)
        pf, pe = _tree_path(tree, base_face, fc[0])
        # out along the tree, once around the star, back along the tree
        faces = pf[:-1] + fc + [fc[0]] + pf[:-1][::-1]
        edges = pe + ec + pe[::-1]
        loops.append(FaceLoop(faces=faces, edges=edges, kind="vertex", about=v))
    return loops


def boundary_traversal(X, base_face, record_tree=False):
    """Cut the surface open along co-tree edges and read the disk boundary.

    Walks the boundary of the dual-tree disk and reports the edges passed.
    With record_tree False the result is [(edge, from_face, to_face), ...]
    for co-tree interior edges (to_face None on surface-boundary edges); each
    co-tree edge appears exactly twice, once per side.  With record_tree True
    the items are (edge, from_face, to_face, kind) and descents/returns
    through dual-tree edges are reported as well, so composing transitions
    over the whole list develops the cut-open surface.
    """
    _check_surface(X)
    for f in X.cells_of_dim(2):
        if f not in X.boundary_words:
            raise ComplexError("boundary traversal requires boundary words")
    tree, seen = _dual_tree(X, base_face)
    if len(seen) != len(X.cells_of_dim(2)):
        raise ComplexError("2-cells are not face-connected")
    tree_edges = {e for (_, e) in tree.values()}
    emissions = []

    def emit(e, f, g, kind):
        if record_tree:
            emissions.append((e, f, g, kind))
        elif kind in ("cotree", "boundary"):
            emissions.append((e, f, g))

    def walk(face, enter_edge):
        word = list(X.boundary_words[face])
        n = len(word)
        if enter_edge is None:
            start = 0
        else:
            start = next(i for i, (e, _) in enumerate(word) if e == enter_edge)
            start += 1
        for k in range(n if enter_edge is None else n - 1):
            e, _ = word[(start + k) % n]
            cofs = [g for g, _ in X.cofaces_of(e)]
            if len(cofs) == 1:
                emit(e, face, None, "boundary")
            elif e in tree_edges:
                # a tree edge met mid-walk always leads to an unvisited child
                g = next(h for h in cofs if h != face)
                emit(e, face, g, "tree")
                walk(g, e)
                emit(e, g, face, "tree")
            else:
                g = next(h for h in cofs if h != face)
                emit(e, face, g, "cotree")

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(X.cells) + 100))
    try:
        walk(base_face, None)
    finally:
        sys.setrecursionlimit(old)
    return emissions
