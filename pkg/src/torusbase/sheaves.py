"""Constructible sheaves on cell complexes and their cohomology.

Restriction maps point from a cell to its cofaces (open-star convention).
The differential is d(x)_tau = sum_sigma [tau:sigma] * R(sigma<=tau) x_sigma,
fixed once and used everywhere.

Stalks over Z may carry torsion: a stalk is rank many generators where
generator i has order moduli[i] (0 meaning infinite).  This is needed for
mod-n coefficient sheaves and their Bockstein connecting maps.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    LinearSystem,
    PresentedGroup,
    QuotientSpace,
    eye,
    hnf_rank,
    intmat,
    lattice_eq,
    lattice_hnf,
    preimage_lattice,
    q_rank,
    stack_rows,
    zerovec,
    zeros,
)


class SheafError(ValueError):
    pass


@dataclass
class Stalk:
    rank: int
    moduli: tuple = ()  # per-generator orders, padded with 0 = free

    def order(self, i):
        return self.moduli[i] if i < len(self.moduli) else 0


def _as_stalk(s):
    if isinstance(s, Stalk):
        return s
    return Stalk(rank=int(s))


class CellularSheaf:
    """Stalk per cell plus restriction matrices along covering face pairs."""

    def __init__(self, base, ring, stalks, restrictions):
        if ring not in ("Z", "Q"):
            raise SheafError("ring must be 'Z' or 'Q'")
        self.base = base
        self.ring = ring
        self.stalks = {c: _as_stalk(s) for c, s in stalks.items()}
        self.restrictions = dict(restrictions)
        self._offsets = {}
        self._diff = {}

    def stalk(self, cell):
        return self.stalks.get(cell, Stalk(0))

    def rank(self, cell):
        return self.stalk(cell).rank

    def restriction(self, face, coface):
        R = self.restrictions.get((face, coface))
        if R is None:
            R = zeros(self.rank(coface), self.rank(face), self.ring)
        return R

    def cochain_cells(self, k):
        return self.base.cells_of_dim(k)

    def offsets(self, k):
        if k not in self._offsets:
            off = {}
            pos = 0
            for c in self.cochain_cells(k):
                off[c] = pos
                pos += self.rank(c)
            self._offsets[k] = (off, pos)
        return self._offsets[k]

    def cochain_rank(self, k):
        return self.offsets(k)[1]

    def zero_cochain(self, k):
        return zerovec(self.cochain_rank(k), self.ring)

    def component(self, vec, k, cell):
        off, _ = self.offsets(k)
        i = off[cell]
        return vec[i:i + self.rank(cell)]

    def differential(self, k):
        if k in self._diff:
            return self._diff[k]
        off_k, n_k = self.offsets(k)
        off_k1, n_k1 = self.offsets(k + 1)
        D = zeros(n_k1, n_k, self.ring)
        for tau in self.cochain_cells(k + 1):
            for sigma, sign in self.base.faces_of(tau):
                R = self.restriction(sigma, tau)
                i, j = off_k1[tau], off_k[sigma]
                D[i:i + self.rank(tau), j:j + self.rank(sigma)] += sign * R
        self._diff[k] = D
        return D

    def moduli_rows(self, k):
        """Rows spanning the torsion lattice of C^k (Z sheaves only)."""
        off, n = self.offsets(k)
        rows = []
        for c in self.cochain_cells(k):
            st = self.stalk(c)
            for i in range(st.rank):
                m = st.order(i)
                if m:
                    row = zerovec(n)
                    row[off[c] + i] = m
                    rows.append(row)
        if not rows:
            return zeros(0, n)
        out = zeros(len(rows), n)
        for i, r in enumerate(rows):
            out[i] = r
        return out

    def is_cocycle(self, k, vec):
        D = self.differential(k)
        img = D.dot(vec)
        if self.ring == "Q":
            return all(x == 0 for x in img)
        L = self.moduli_rows(k + 1)
        if L.shape[0] == 0:
            return all(x == 0 for x in img)
        from .exact import lattice_member

        return lattice_member(L, img)


def constant_sheaf(base, rank=1, ring="Z", moduli=()):
    stalks = {c: Stalk(rank, tuple(moduli)) for c in base.cells}
    restrictions = {}
    I = eye(rank, ring)
    for (cof, face) in base.incidence:
        restrictions[(face, cof)] = I
    return CellularSheaf(base, ring, stalks, restrictions)


@dataclass
class SheafReport:
    violations: list

    @property
    def valid(self):
        return not self.violations

    def __str__(self):
        return "valid" if self.valid else "\n".join(map(str, self.violations))


def _respects_moduli(F, M, src_stalk, dst_stalk):
    if F.ring == "Q":
        return True
    for i in range(src_stalk.rank):
        m = src_stalk.order(i)
        if not m:
            continue
        for r in range(dst_stalk.rank):
            d = dst_stalk.order(r)
            v = M[r, i] * m
            if d == 0:
                if v != 0:
                    return False
            elif v % d != 0:
                return False
    return True


def validate_sheaf(F):
    """Shape consistency and codim-2 commutativity of restrictions."""
    bad = []
    X = F.base
    for (face, cof), M in F.restrictions.items():
        if X.incidence.get((cof, face)) is None:
            bad.append("restriction on non-covering pair (%s, %s)" % (face, cof))
            continue
        if M.shape != (F.rank(cof), F.rank(face)):
            bad.append(
                "restriction (%s, %s) has shape %s, expected (%d, %d)"
                % (face, cof, M.shape, F.rank(cof), F.rank(face))
            )
            continue
        if not _respects_moduli(F, M, F.stalk(face), F.stalk(cof)):
            bad.append("restriction (%s, %s) ignores stalk torsion" % (face, cof))
    if bad:
        return SheafReport(bad)
    for rho in X.cells:
        if X.dim(rho) < 2:
            continue
        # collect composite maps sigma -> rho through every intermediate tau
        composites = {}
        for tau, _ in X.faces_of(rho):
            R2 = F.restriction(tau, rho)
            for sigma, _ in X.faces_of(tau):
                comp = R2.dot(F.restriction(sigma, tau))
                composites.setdefault(sigma, []).append((tau, comp))
        for sigma, pairs in composites.items():
            base_tau, base = pairs[0]
            for tau, comp in pairs[1:]:
                diff = comp - base
                ok = (
                    all(x == 0 for x in diff.flat)
                    if F.ring == "Q" or not F.stalk(rho).moduli
                    else _diff_in_moduli(F.stalk(rho), F.stalk(sigma), diff)
                )
                if not ok:
                    bad.append(
                        "restrictions around (%s <= %s) do not commute (via %s vs %s)"
                        % (sigma, rho, base_tau, tau)
                    )
                    break
    return SheafReport(bad)


def _diff_in_moduli(dst_stalk, src_stalk, diff):
    for r in range(diff.shape[0]):
        d = dst_stalk.order(r)
        for c in range(diff.shape[1]):
            v = diff[r, c]
            if d == 0:
                if v != 0:
                    return False
            elif v % d != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Cohomology


class CohomologyResult:
    """H^k of a sheaf with canonical coordinates and generator cocycles."""

    def __init__(self, sheaf, degree):
        self.sheaf = sheaf
        self.degree = degree
        F, k = sheaf, degree
        n_k = F.cochain_rank(k)
        self._n = n_k
        if n_k == 0:
            self._basis = zeros(n_k, 0, F.ring)
            self._pg = PresentedGroup(0) if F.ring == "Z" else QuotientSpace(0)
            self._sys = None
            return
        if k < 0 or k > F.base.dimension:
            D_k = zeros(0, n_k, F.ring)
        else:
            D_k = F.differential(k)
        if F.ring == "Z":
            Lk1 = F.moduli_rows(k + 1)
            P = preimage_lattice(D_k, Lk1)  # rows span the cocycle lattice
            self._basis = P.T.copy()  # columns are the cocycle basis
            self._sys = LinearSystem(self._basis) if self._basis.shape[1] else None
            rel_rows = []
            gens = []
            if k >= 1:
                Dprev = F.differential(k - 1)
                for j in range(Dprev.shape[1]):
                    gens.append(Dprev[:, j])
            Lk = F.moduli_rows(k)
            for i in range(Lk.shape[0]):
                gens.append(Lk[i])
            z = self._basis.shape[1]
            for g in gens:
                if z == 0:
                    continue
                coef = self._sys.solve(g, "Z")
                if coef is None:
                    raise SheafError("coboundary lies outside the cocycle lattice")
                rel_rows.append(coef)
            rel = zeros(len(rel_rows), z)
            for i, r in enumerate(rel_rows):
                rel[i] = r
            self._pg = PresentedGroup(z, rel)
        else:
            from .exact import q_kernel

            K = q_kernel(D_k)
            self._basis = K
            self._sys = LinearSystem(self._basis) if self._basis.shape[1] else None
            rel_rows = []
            z = self._basis.shape[1]
            if k >= 1 and z:
                Dprev = F.differential(k - 1)
                for j in range(Dprev.shape[1]):
                    coef = self._sys.solve(Dprev[:, j], "Q")
                    if coef is None:
                        raise SheafError("coboundary is not a cocycle")
                    rel_rows.append(coef)
            rel = zeros(len(rel_rows), z, "Q")
            for i, r in enumerate(rel_rows):
                rel[i] = r
            self._pg = QuotientSpace(z, rel)

    @property
    def group(self):
        return self._pg.group

    @property
    def presentation(self):
        return self._pg

    def coordinates(self, cocycle):
        """Canonical coordinates of a cocycle's class."""
        if self._n == 0:
            return ()
        if self._sys is None:
            if any(x != 0 for x in cocycle):
                raise SheafError("vector is not a cocycle")
            return self._pg.reduce(zerovec(0, self.sheaf.ring))
        coef = self._sys.solve(cocycle, self.sheaf.ring)
        if coef is None:
            raise SheafError("vector is not a cocycle")
        return self._pg.reduce(coef)

    def to_presentation_coords(self, cocycle):
        coef = self._sys.solve(cocycle, self.sheaf.ring) if self._sys else zerovec(0, self.sheaf.ring)
        if coef is None:
            raise SheafError("vector is not a cocycle")
        return coef

    def generator_cocycles(self):
        gens = []
        for g in self._pg.generators():
            gens.append(self._basis.dot(g))
        return gens

    def is_zero_class(self, cocycle):
        return all(c == 0 for c in self.coordinates(cocycle))


def cohomology(F, k):
    """H^k(base, F) with representative cocycles.

    Out-of-range degrees give the zero group (their cochain spaces are empty).
    """
    return CohomologyResult(F, k)


@dataclass
class CohomologyClass:
    sheaf: CellularSheaf
    degree: int
    cocycle: np.ndarray

    def __post_init__(self):
        if len(self.cocycle) != self.sheaf.cochain_rank(self.degree):
            raise SheafError("cocycle has the wrong length")

    def component(self, cell):
        return self.sheaf.component(self.cocycle, self.degree, cell)


def class_from_components(F, degree, components):
    vec = F.zero_cochain(degree)
    off, _ = F.offsets(degree)
    for cell, vals in components.items():
        i = off[cell]
        for j, v in enumerate(vals):
            vec[i + j] = v if F.ring == "Z" else Fraction(v)
    return CohomologyClass(sheaf=F, degree=degree, cocycle=vec)


def class_add(a, b):
    if a.sheaf is not b.sheaf or a.degree != b.degree:
        raise SheafError("classes live on different sheaves or degrees")
    return CohomologyClass(a.sheaf, a.degree, a.cocycle + b.cocycle)


def class_neg(a):
    return CohomologyClass(a.sheaf, a.degree, -a.cocycle)


def class_reduce(c, result=None):
    """Coordinates of [c] in the canonical basis of H^degree."""
    if result is None:
        result = cohomology(c.sheaf, c.degree)
    return result.coordinates(c.cocycle)


# ---------------------------------------------------------------------------
# Sheaf maps and exact sequences


class SheafMap:
    """Cellwise map between sheaves over the same base complex."""

    def __init__(self, source, target, blocks):
        if source.base is not target.base:
            raise SheafError("sheaf map requires a common base complex")
        self.source = source
        self.target = target
        self.blocks = dict(blocks)

    def block(self, cell):
        B = self.blocks.get(cell)
        if B is None:
            B = zeros(self.target.rank(cell), self.source.rank(cell), self.source.ring)
        return B

    def validate(self):
        bad = []
        X = self.source.base
        for cell in X.cells:
            B = self.block(cell)
            if B.shape != (self.target.rank(cell), self.source.rank(cell)):
                bad.append("block at %s has the wrong shape" % (cell,))
            elif not _respects_moduli(self.source, B, self.source.stalk(cell), self.target.stalk(cell)):
                bad.append("block at %s ignores stalk torsion" % (cell,))
        if bad:
            return SheafReport(bad)
        for (cof, face) in X.incidence:
            left = self.block(cof).dot(self.source.restriction(face, cof))
            right = self.target.restriction(face, cof).dot(self.block(face))
            diff = left - right
            ok = (
                all(x == 0 for x in diff.flat)
                if self.source.ring == "Q" or not self.target.stalk(cof).moduli
                else _diff_in_moduli(self.target.stalk(cof), self.source.stalk(face), diff)
            )
            if not ok:
                bad.append("map does not commute with restriction (%s, %s)" % (face, cof))
        return SheafReport(bad)

    def cochain_matrix(self, k):
        soff, sn = self.source.offsets(k)
        toff, tn = self.target.offsets(k)
        M = zeros(tn, sn, self.source.ring)
        for cell in self.source.cochain_cells(k):
            B = self.block(cell)
            i, j = toff[cell], soff[cell]
            M[i:i + B.shape[0], j:j + B.shape[1]] = M[i:i + B.shape[0], j:j + B.shape[1]] + B
        return M

    def apply_class(self, cls):
        M = self.cochain_matrix(cls.degree)
        return CohomologyClass(self.target, cls.degree, M.dot(cls.cocycle))


@dataclass
class ShortExactSequence:
    i: SheafMap  # A -> B
    p: SheafMap  # B -> C

    @property
    def A(self):
        return self.i.source

    @property
    def B(self):
        return self.i.target

    @property
    def C(self):
        return self.p.target

    def validate(self):
        bad = []
        for rep in (self.i.validate(), self.p.validate()):
            bad.extend(rep.violations)
        if self.p.source is not self.i.target:
            bad.append("maps do not compose")
        if bad:
            return SheafReport(bad)
        ring = self.A.ring
        for cell in self.B.base.cells:
            iB = self.i.block(cell)
            pB = self.p.block(cell)
            comp = pB.dot(iB)
            if ring == "Q":
                if any(x != 0 for x in comp.flat):
                    bad.append("p after i is nonzero at %s" % (cell,))
                    continue
                if q_rank(iB) != self.A.rank(cell):
                    bad.append("i is not injective at %s" % (cell,))
                if q_rank(pB) != self.C.rank(cell):
                    bad.append("p is not surjective at %s" % (cell,))
                if q_rank(iB) + q_rank(pB) != self.B.rank(cell):
                    bad.append("sequence is not exact at %s" % (cell,))
            else:
                if not _diff_in_moduli(self.C.stalk(cell), self.A.stalk(cell), comp):
                    bad.append("p after i is nonzero at %s" % (cell,))
                    continue
                if not self._exact_at(cell):
                    bad.append("sequence is not exact at %s" % (cell,))
        return SheafReport(bad)

    def _exact_at(self, cell):
        # kernel of (B -> C) equals image of (A -> B), as subgroups of the
        # ambient generator lattice of the B stalk
        A, B, C = self.A.stalk(cell), self.B.stalk(cell), self.C.stalk(cell)
        iB = self.i.block(cell)
        pB = self.p.block(cell)
        LB = _stalk_moduli_rows(B)
        LC = _stalk_moduli_rows(C)
        LA = _stalk_moduli_rows(A)
        ker = preimage_lattice(pB, LC)
        im_rows = [iB[:, j] for j in range(iB.shape[1])] + [LB[i] for i in range(LB.shape[0])]
        im = zeros(len(im_rows), B.rank)
        for i, r in enumerate(im_rows):
            im[i] = r
        if not lattice_eq(ker, lattice_hnf(im)):
            return False
        # injectivity of i: preimage of LB under i equals LA
        pre = preimage_lattice(iB, LB)
        if not lattice_eq(pre, lattice_hnf(LA) if LA.shape[0] else LA):
            return False
        # surjectivity of p: image of p plus torsion covers the C lattice
        sur_rows = [pB[:, j] for j in range(pB.shape[1])] + [LC[i] for i in range(LC.shape[0])]
        if C.rank:
            sur = zeros(len(sur_rows), C.rank)
            for i, r in enumerate(sur_rows):
                sur[i] = r
            if not lattice_eq(lattice_hnf(sur), eye(C.rank)):
                return False
        return True


def _stalk_moduli_rows(stalk):
    rows = [i for i in range(stalk.rank) if stalk.order(i)]
    out = zeros(len(rows), stalk.rank)
    for r, i in enumerate(rows):
        out[r, i] = stalk.order(i)
    return out


@dataclass
class InducedMap:
    """A homomorphism between cohomology groups in canonical presentations."""

    source: CohomologyResult
    target: CohomologyResult
    matrix: np.ndarray  # presentation coords of target per source generator

    def apply_coords(self, pres_coords):
        return self.matrix.dot(pres_coords)

    def image_rows(self):
        """Rows spanning image + target relations in the target presentation."""
        cols = [self.matrix[:, j] for j in range(self.matrix.shape[1])]
        n = self.target.presentation.n
        rel = self.target.presentation.relations if self.source.sheaf.ring == "Z" else None
        rows = zeros(len(cols), n, self.source.sheaf.ring)
        for i, c in enumerate(cols):
            rows[i] = c
        if rel is not None and rel.shape[0]:
            rows = stack_rows(rows, rel) if rows.shape[0] else rel
        return rows

    def is_surjective(self):
        if self.source.sheaf.ring == "Q":
            return image_dimension(self) == self.target.presentation.dimension
        return lattice_eq(lattice_hnf(self.image_rows()), eye(self.target.presentation.n))


def induced_map(source_result, target_result, cochain_map):
    """Map on cohomology induced by a cocycle-level linear map."""
    src = source_result
    tgt = target_result
    z = src._basis.shape[1]
    M = zeros(tgt.presentation.n, z, src.sheaf.ring)
    for j in range(z):
        img = cochain_map(src._basis[:, j])
        M[:, j] = tgt.to_presentation_coords(img)
    return InducedMap(source=src, target=tgt, matrix=M)


def image_dimension(f):
    """Dimension (Q) or rank (Z, modulo torsion) of the image of an InducedMap."""
    cols = [f.target.presentation.reduce(f.matrix[:, j]) for j in range(f.matrix.shape[1])]
    if not cols:
        return 0
    if f.source.sheaf.ring == "Q":
        from .exact import fracmat

        return q_rank(fracmat(cols))
    orders = f.target.presentation.coordinate_orders()
    free = [i for i, d in enumerate(orders) if d == 0]
    rows = intmat([[c[i] for i in free] for c in cols]) if free else zeros(len(cols), 0)
    return hnf_rank(rows) if free else 0


def rank_exact_at(f, g):
    """Rank exactness at the middle group of X -f-> Y -g-> Z."""
    if f.target is not g.source:
        raise SheafError("maps are not composable at the middle group")
    hY = g.source
    if hY.sheaf.ring == "Q":
        dim_y = hY.presentation.dimension
    else:
        dim_y = hY.group.free_rank
    return dim_y == image_dimension(f) + image_dimension(g)


def torsion_exact_at(f, g):
    """Exactness im f = ker g over Z, torsion included (presentation lattices)."""
    if f.target is not g.source:
        raise SheafError("maps are not composable at the middle group")
    im = lattice_hnf(f.image_rows())
    ker = preimage_lattice(g.matrix, g.target.presentation.relations)
    return lattice_eq(im, ker)


def connecting_map(ses, k, rng=None, check=True):
    """Connecting homomorphism H^k(C) -> H^{k+1}(A) by the zig-zag.

    When rng is given, cellwise lifts are randomized by kernel elements; the
    induced map on cohomology is independent of these choices.
    """
    if check:
        rep = ses.validate()
        if not rep.valid:
            raise SheafError("sequence is not exact: %s" % rep)
    A, B, C = ses.A, ses.B, ses.C
    ring = A.ring
    hC = cohomology(C, k)
    hA = cohomology(A, k + 1)

    p_k = ses.p.cochain_matrix(k)
    i_k1 = ses.i.cochain_matrix(k + 1)
    dB = B.differential(k)
    sys_p = LinearSystem(_augment(p_k, C.moduli_rows(k))) if ring == "Z" else LinearSystem(p_k)
    sys_i = LinearSystem(_augment(i_k1, B.moduli_rows(k + 1))) if ring == "Z" else LinearSystem(i_k1)
    nB = B.cochain_rank(k)
    nA = A.cochain_rank(k + 1)

    def delta(c_vec):
        target = c_vec
        if ring == "Z":
            sol = sys_p.solve(target, "Z")
        else:
            sol = sys_p.solve(target, "Q")
        if sol is None:
            raise SheafError("cannot lift cocycle through p")
        b = sol[:nB]
        if rng is not None:
            K = sys_p.kernel_columns()
            for j in range(K.shape[1]):
                b = b + rng.randint(-2, 2) * K[:nB, j]
        dbv = dB.dot(b)
        sol2 = sys_i.solve(dbv, "Z" if ring == "Z" else "Q")
        if sol2 is None:
            raise SheafError("d of the lift does not come from the subsheaf")
        return sol2[:nA]

    return induced_map(hC, hA, delta)


def _augment(M, extra_rows_as_cols):
    """Columns of M plus torsion relation columns, for solving mod torsion."""
    L = extra_rows_as_cols
    if L.shape[0] == 0:
        return M
    out = zeros(M.shape[0], M.shape[1] + L.shape[0])
    out[:, :M.shape[1]] = M
    for i in range(L.shape[0]):
        out[:, M.shape[1] + i] = L[i]
    return out


# ---------------------------------------------------------------------------
# Subcomplex restriction


def subcomplex(X, cells):
    """Full subcomplex on the given cell set (must be closed under faces)."""
    from .complexes import CellComplex

    cells = set(cells)
    for c in cells:
        for f, _ in X.faces_of(c):
            if f not in cells:
                raise SheafError("cell set is not closed under faces at %s" % (c,))
    sub = CellComplex(
        cells={c: X.dim(c) for c in cells},
        incidence={(a, b): v for (a, b), v in X.incidence.items() if a in cells and b in cells},
        boundary_words={f: w for f, w in X.boundary_words.items() if f in cells},
    )
    return sub


def restrict_sheaf(F, sub):
    stalks = {c: F.stalk(c) for c in sub.cells}
    restrictions = {
        (a, b): M for (a, b), M in F.restrictions.items() if a in sub.cells and b in sub.cells
    }
    return CellularSheaf(sub, F.ring, stalks, restrictions)


def restriction_on_cohomology(F, sub, k):
    """Induced map H^k(base) -> H^k(sub) for a full subcomplex."""
    G = restrict_sheaf(F, sub)
    hX = cohomology(F, k)
    hS = cohomology(G, k)
    offX, _ = F.offsets(k)
    offS, nS = G.offsets(k)

    def project(vec):
        out = zerovec(nS, F.ring)
        for c in G.cochain_cells(k):
            i, j = offS[c], offX[c]
            out[i:i + G.rank(c)] = vec[j:j + F.rank(c)]
        return out

    return induced_map(hX, hS, project), G


# ---------------------------------------------------------------------------
# Products and automorphisms


def pullback_sum(F1, F2, Z, factors):
    """p1*F1 (+) p2*F2 on a product complex built by complexes.product."""
    if F1.ring != F2.ring:
        raise SheafError("summands must share a ring")
    ring = F1.ring
    stalks = {}
    for cell, (a, b) in factors.items():
        s1, s2 = F1.stalk(a), F2.stalk(b)
        moduli = tuple(s1.order(i) for i in range(s1.rank)) + tuple(
            s2.order(i) for i in range(s2.rank)
        )
        if not any(moduli):
            moduli = ()
        stalks[cell] = Stalk(s1.rank + s2.rank, moduli)
    restrictions = {}
    for (cof, face) in Z.incidence:
        a1, b1 = factors[face]
        a2, b2 = factors[cof]
        r1 = F1.restriction(a1, a2) if a1 != a2 else eye(F1.rank(a1), ring)
        r2 = F2.restriction(b1, b2) if b1 != b2 else eye(F2.rank(b1), ring)
        M = zeros(r1.shape[0] + r2.shape[0], r1.shape[1] + r2.shape[1], ring)
        M[:r1.shape[0], :r1.shape[1]] = r1
        M[r1.shape[0]:, r1.shape[1]:] = r2
        restrictions[(face, cof)] = M
    return CellularSheaf(Z, ring, stalks, restrictions)


class SheafAutomorphism:
    """Complex automorphism with compatible stalk isomorphisms."""

    def __init__(self, sheaf, cell_map, stalk_isos):
        self.sheaf = sheaf
        self.cell_map = dict(cell_map)
        self.stalk_isos = dict(stalk_isos)

    def validate(self):
        bad = []
        X = self.sheaf.base
        img = set(self.cell_map.values())
        if set(self.cell_map) != set(X.cells) or img != set(X.cells):
            bad.append("cell map is not a bijection of the cells")
            return SheafReport(bad)
        for c in X.cells:
            if X.dim(self.cell_map[c]) != X.dim(c):
                bad.append("cell map changes dimension at %s" % (c,))
        for (cof, face), v in X.incidence.items():
            if (self.cell_map[cof], self.cell_map[face]) not in X.incidence:
                bad.append("cell map breaks incidence at (%s, %s)" % (cof, face))
        if bad:
            return SheafReport(bad)
        for (cof, face) in X.incidence:
            J_f = self.stalk_isos[face]
            J_c = self.stalk_isos[cof]
            left = self.sheaf.restriction(self.cell_map[face], self.cell_map[cof]).dot(J_f)
            right = J_c.dot(self.sheaf.restriction(face, cof))
            if not all(x == 0 for x in (left - right).flat):
                bad.append("stalk isos break restriction at (%s, %s)" % (face, cof))
        return SheafReport(bad)


def automorphism_action(aut, cls):
    """Pushforward of a cohomology class along a sheaf automorphism."""
    rep = aut.validate()
    if not rep.valid:
        raise SheafError("not an automorphism: %s" % rep)
    F = aut.sheaf
    k = cls.degree
    X = F.base
    eps = _automorphism_signs(X, aut.cell_map)
    if eps is None:
        raise SheafError("cell map does not commute with incidence signs")
    out = F.zero_cochain(k)
    off, _ = F.offsets(k)
    for c in F.cochain_cells(k):
        img = aut.cell_map[c]
        vals = aut.stalk_isos[c].dot(cls.component(c))
        i = off[img]
        out[i:i + F.rank(img)] = out[i:i + F.rank(img)] + eps[c] * vals
    return CohomologyClass(F, k, out)


def _automorphism_signs(X, mapping):
    from .complexes import _infer_signs

    return _infer_signs(X, mapping)


def orbit_of_class(results, action_mats, start_coords, max_word_length=6):
    """Orbit of canonical coordinates under matrices acting on coordinates."""
    start = tuple(start_coords)
    seen = {start}
    frontier = [start]
    mats = []
    for M in action_mats:
        mats.append(M)
        mats.append(unimodular_inv(M))
    for _ in range(max_word_length):
        new = []
        for c in frontier:
            vec = intmat([[x] for x in c])
            for M in mats:
                img = tuple(int(v) for v in M.dot(vec)[:, 0])
                if img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
        if not frontier:
            break
    return seen


def unimodular_inv(M):
    from .exact import unimodular_inverse

    return unimodular_inverse(M)
