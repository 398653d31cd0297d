"""Base-level integrable surgery: gluing, obstructions, Dehn regluing.

The gluing obstruction of two pieces over a common overlap is computed in
the integer cohomology of the overlap sheaf: the quotient of H^2(overlap) by
the images of both pieces' H^2, applied to the difference of the supplied
restricted classes.  A rational part (the same quotient with constant
rational coefficients) is reported alongside, so the topological and
symplectic obstructions stay distinguishable.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .affine import (
    AffineSurface,
    build_R_sheaf,
    lagrangian_moduli,
    monodromy_rep,
)
from .complexes import CellComplex, disjoint_union, identify_cells, validate
from .exact import PresentedGroup, stack_rows, zeros, zerovec
from .sheaves import (
    CellularSheaf,
    cohomology,
    constant_sheaf,
    restrict_sheaf,
    restriction_on_cohomology,
    subcomplex,
)


class SurgeryError(ValueError):
    pass


@dataclass
class GluingSpec:
    """Two complex-with-sheaf pieces identified over a common subcomplex."""

    complex1: CellComplex
    sheaf1: CellularSheaf
    complex2: CellComplex
    sheaf2: CellularSheaf
    overlap1: CellComplex  # full subcomplex of complex1
    overlap2: CellComplex  # full subcomplex of complex2
    cell_map: dict  # overlap1 cell -> overlap2 cell
    stalk_isos: dict  # overlap1 cell -> matrix stalk1(c) -> stalk2(map c)

    def validate(self):
        bad = []
        if set(self.cell_map) != set(self.overlap1.cells):
            bad.append("cell map does not cover the overlap")
            return bad
        if set(self.cell_map.values()) != set(self.overlap2.cells):
            bad.append("cell map is not onto the second overlap")
            return bad
        for c, d in self.cell_map.items():
            if self.overlap1.dim(c) != self.overlap2.dim(d):
                bad.append("cell map changes dimension at %s" % (c,))
        for (cof, face), v in self.overlap1.incidence.items():
            w = self.overlap2.incidence.get((self.cell_map[cof], self.cell_map[face]))
            if w is None:
                bad.append("cell map breaks incidence at (%s, %s)" % (cof, face))
        for c in self.overlap1.cells:
            J = self.stalk_isos.get(c)
            if J is None:
                bad.append("missing stalk iso at %s" % (c,))
                continue
            if J.shape != (self.sheaf2.rank(self.cell_map[c]), self.sheaf1.rank(c)):
                bad.append("stalk iso at %s has the wrong shape" % (c,))
        if bad:
            return bad
        for (cof, face), v in self.overlap1.incidence.items():
            left = self.stalk_isos[cof].dot(self.sheaf1.restriction(face, cof))
            right = self.sheaf2.restriction(
                self.cell_map[face], self.cell_map[cof]
            ).dot(self.stalk_isos[face])
            if not all(x == 0 for x in (left - right).flat):
                bad.append("stalk isos break restriction at (%s, %s)" % (face, cof))
        return bad


def glue(spec):
    """Pushout complex with the induced sheaf.

    Cells are tagged by piece; overlap cells of the second piece are
    identified onto the first piece's copy, so restriction to either tag
    recovers the input.
    """
    bad = spec.validate()
    if bad:
        raise SurgeryError("invalid gluing: %s" % "; ".join(map(str, bad)))
    D = disjoint_union(spec.complex1, spec.complex2, "A", "B")
    pairs = [(("A", c), ("B", spec.cell_map[c])) for c in spec.overlap1.cells]
    Z, relabel = identify_cells(D, pairs)
    stalks = {}
    restrictions = {}
    to2 = {}  # overlap2 cell -> iso stalk1 -> stalk2
    to1 = {}  # overlap2 cell -> iso stalk2 -> stalk1
    for c in spec.overlap1.cells:
        J = spec.stalk_isos[c]
        to2[spec.cell_map[c]] = J
        to1[spec.cell_map[c]] = _invert_iso(J)
    for c in spec.complex1.cells:
        stalks[relabel[("A", c)]] = spec.sheaf1.stalk(c)
    for c in spec.complex2.cells:
        key = relabel[("B", c)]
        if key not in stalks:
            stalks[key] = spec.sheaf2.stalk(c)
    for (face, cof), M in spec.sheaf1.restrictions.items():
        restrictions[(relabel[("A", face)], relabel[("A", cof)])] = M
    for (face, cof), M in spec.sheaf2.restrictions.items():
        key = (relabel[("B", face)], relabel[("B", cof)])
        if key in restrictions:
            continue
        # identified cells keep the first piece's stalk; reroute through isos
        if face in to2:
            M = M.dot(to2[face])
        if cof in to1:
            M = to1[cof].dot(M)
        restrictions[key] = M
    F = CellularSheaf(Z, spec.sheaf1.ring, stalks, restrictions)
    return Z, F, relabel


def _invert_iso(J):
    n = J.shape[0]
    if J.shape[0] != J.shape[1]:
        raise SurgeryError("stalk iso is not square")
    if n == 0:
        return J
    from .exact import hnf, mat_eq, eye

    H, U = hnf(J)
    if not mat_eq(H, eye(n)):
        raise SurgeryError("stalk iso is not invertible over Z")
    return U


@dataclass
class ObstructionReport:
    group: object  # AbelianGroup of the obstruction quotient
    coordinates: tuple
    rational_dimension: int
    rational_coordinates: tuple

    @property
    def vanishes(self):
        return all(c == 0 for c in self.coordinates) and all(
            c == 0 for c in self.rational_coordinates
        )

    def __str__(self):
        head = "obstruction group %s, element %s" % (self.group, self.coordinates)
        tail = "; rational part dim %d, element %s" % (
            self.rational_dimension,
            tuple(str(c) for c in self.rational_coordinates),
        )
        verdict = "gluable" if self.vanishes else "obstructed"
        return "%s%s -> %s" % (head, tail, verdict)


def gluing_obstruction(spec, class1, class2, rational_difference=None):
    """Obstruction to matching the supplied restricted classes over the overlap.

    class1, class2 are cocycles on the overlap sheaf (the restriction of the
    first piece's sheaf).  The obstruction is the image of class2 - class1 in
    H^2(overlap) / (im H^2(piece1) + im H^2(piece2)); it vanishes exactly
    when the pieces can be matched.  The rational part repeats the quotient
    with constant rational coefficients, applied to rational_difference when
    one is supplied.
    """
    bad = spec.validate()
    if bad:
        raise SurgeryError("invalid gluing: %s" % "; ".join(map(str, bad)))
    over1 = spec.overlap1
    G1 = restrict_sheaf(spec.sheaf1, over1)
    h_over = cohomology(G1, 2)
    f1, _ = restriction_on_cohomology(spec.sheaf1, over1, 2)
    # route the second piece through the overlap identification
    G2 = restrict_sheaf(spec.sheaf2, spec.overlap2)
    h2_full = cohomology(spec.sheaf2, 2)
    off2, _ = spec.sheaf2.offsets(2)
    offo, n_o = G1.offsets(2)
    iso_inv = {c: _invert_iso(spec.stalk_isos[c]) for c in over1.cells if over1.dim(c) == 2}

    def pull_to_overlap1(vec2):
        out = zerovec(n_o, G1.ring)
        for c in over1.cells_of_dim(2):
            d = spec.cell_map[c]
            i = offo[c]
            j = off2[d]
            vals = vec2[j:j + spec.sheaf2.rank(d)]
            out[i:i + G1.rank(c)] = iso_inv[c].dot(vals)
        return out

    from .sheaves import induced_map

    f2 = induced_map(h2_full, h_over, pull_to_overlap1)
    rel_rows = h_over.presentation.relations
    im_rows = [f1.matrix[:, j] for j in range(f1.matrix.shape[1])]
    im_rows += [f2.matrix[:, j] for j in range(f2.matrix.shape[1])]
    n = h_over.presentation.n
    rows = zeros(len(im_rows), n)
    for i, r in enumerate(im_rows):
        rows[i] = r
    if rel_rows.shape[0]:
        rows = stack_rows(rows, rel_rows) if rows.shape[0] else rel_rows
    Q = PresentedGroup(n, rows)
    delta = class2.cocycle - class1.cocycle
    coords = Q.reduce(h_over.to_presentation_coords(delta))

    # rational comparison with constant coefficients on the complexes; the
    # symplectic difference class is a separate input when available
    CQo = constant_sheaf(over1, 1, "Q")
    hq = cohomology(CQo, 2)
    g1, _ = restriction_on_cohomology(constant_sheaf(spec.complex1, 1, "Q"), over1, 2)
    FQ2 = constant_sheaf(spec.complex2, 1, "Q")
    hq2_full = cohomology(FQ2, 2)
    offq2, _ = FQ2.offsets(2)
    offo_q, _ = CQo.offsets(2)

    def pull_q(vec2):
        out = zerovec(CQo.cochain_rank(2), "Q")
        for c in over1.cells_of_dim(2):
            d = spec.cell_map[c]
            out[offo_q[c]] = vec2[offq2[d]]
        return out

    g2 = induced_map(hq2_full, hq, pull_q)
    qrows = [g1.matrix[:, j] for j in range(g1.matrix.shape[1])]
    qrows += [g2.matrix[:, j] for j in range(g2.matrix.shape[1])]
    from .exact import QuotientSpace

    mat = zeros(len(qrows), hq.presentation.n, "Q")
    for i, r in enumerate(qrows):
        mat[i] = r
    QQ = QuotientSpace(hq.presentation.n, mat)
    if rational_difference is not None:
        qcoords = QQ.reduce(hq.to_presentation_coords(rational_difference))
    else:
        qcoords = tuple(Fraction(0) for _ in range(QQ.dimension))
    return ObstructionReport(
        group=Q.group,
        coordinates=coords,
        rational_dimension=QQ.dimension,
        rational_coordinates=qcoords,
    )


# ---------------------------------------------------------------------------
# Dehn regluing


def dehn_reglue(S, disk_faces, twist):
    """Compose the fibered gluing over the boundary of a regular disk.

    disk_faces: 2-cells of a disk inside the regular part; twist: a map from
    the boundary edges of the disk to integer covectors in the edge frame of
    the monodromy sheaf.  The base affine structure is unchanged; the carried
    Chern cocycle changes by the Mayer-Vietoris image of the twist,
    accumulated on the outside faces along the cut.
    """
    X = S.base
    disk = set(disk_faces)
    R = build_R_sheaf(S)
    cut_edges = []
    for e in X.cells_of_dim(1):
        cofs = [f for f, _ in X.cofaces_of(e)]
        inside = [f for f in cofs if f in disk]
        if len(cofs) == 2 and len(inside) == 1:
            cut_edges.append(e)
    region_cells = set(disk)
    for f in disk:
        for e, _ in X.faces_of(f):
            region_cells.add(e)
            for v, _ in X.faces_of(e):
                region_cells.add(v)
    for c in region_cells:
        if S.mark(c).kind != "regular":
            raise SurgeryError("reglued region touches the singular cell %s" % (c,))
    for e in twist:
        if e not in cut_edges:
            raise SurgeryError("twist is supported off the cut circle at %s" % (e,))
    new_chern = dict(S.chern_cocycle)
    for e in cut_edges:
        val = twist.get(e)
        if val is None:
            continue
        vec = np.array([int(val[0]), int(val[1])], dtype=object)
        for f, sign in X.cofaces_of(e):
            if f in disk:
                continue
            moved = R.restriction(e, f).dot(vec)
            cur = new_chern.get(f, (0, 0))
            new_chern[f] = (
                int(cur[0]) + sign * int(moved[0]),
                int(cur[1]) + sign * int(moved[1]),
            )
    return AffineSurface(
        base=S.base,
        charts=S.charts,
        transitions=S.transitions,
        markings=S.markings,
        chern_cocycle=new_chern,
    )


def chern_class_coordinates(S):
    """Canonical coordinates of the carried Chern cocycle in H^2(O, R-sheaf)."""
    R = build_R_sheaf(S)
    h2 = cohomology(R, 2)
    vec = R.zero_cochain(2)
    off, _ = R.offsets(2)
    for f, val in S.chern_cocycle.items():
        i = off[f]
        vec[i] = int(val[0])
        vec[i + 1] = int(val[1])
    return h2.coordinates(vec)


# ---------------------------------------------------------------------------
# Realizability


@dataclass
class RealizabilityReport:
    verdict: str  # "realizable" or "undecided"
    dimension: int
    details: dict = field(default_factory=dict)

    def __str__(self):
        lines = ["verdict: %s (base dimension %d)" % (self.verdict, self.dimension)]
        for k in sorted(self.details):
            lines.append("  %s: %s" % (k, self.details[k]))
        return "\n".join(lines)


def realizability_report_2d(S):
    """Two-dimensional bases are always realizable; report the invariants.

    Accepts an affine surface, or a (complex, sheaf) pair for bases of other
    dimensions, which are reported as undecided here.
    """
    if isinstance(S, AffineSurface):
        rep = validate(S.base)
        if not rep.valid:
            raise SurgeryError("base complex invalid")
        R = build_R_sheaf(S)
        details = {
            "H2(O, R)": str(cohomology(R, 2).group),
            "moduli (dim, lattice rank)": lagrangian_moduli(S),
            "focus_focus_points": S.focus_focus_count(),
        }
        if S.base.is_connected():
            mon = monodromy_rep(S)
            details["monodromy generators"] = len(mon.loops)
        return RealizabilityReport(verdict="realizable", dimension=2, details=details)
    X, F = S
    dim = X.dimension
    if dim <= 2:
        return RealizabilityReport(
            verdict="realizable",
            dimension=dim,
            details={"H2": str(cohomology(F, 2).group)},
        )
    h3 = cohomology(constant_sheaf(X, 1, "Q"), 3)
    return RealizabilityReport(
        verdict="undecided",
        dimension=dim,
        details={
            "reason": "realizability is decided by the gluing obstruction in dimension > 2",
            "H3(O, R-coefficients) dimension": h3.presentation.dimension,
        },
    )