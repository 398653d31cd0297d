"""Exact linear algebra over Z and Q.

Everything here works on numpy arrays of dtype=object holding python ints
(arbitrary precision) or fractions.Fraction.  Row convention: matrices act on
column vectors; relation subgroups/subspaces are given by rows.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


def intmat(rows):
    """Build an object-dtype integer matrix from nested sequences."""
    rows = [[int(x) for x in r] for r in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            a[i, j] = x
    return a


def fracmat(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            a[i, j] = x
    return a


def zeros(m, n, ring="Z"):
    a = np.empty((m, n), dtype=object)
    fill = 0 if ring == "Z" else Fraction(0)
    a[:, :] = fill
    return a


def eye(n, ring="Z"):
    a = zeros(n, n, ring)
    one = 1 if ring == "Z" else Fraction(1)
    for i in range(n):
        a[i, i] = one
    return a


def intvec(xs):
    a = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        a[i] = int(x)
    return a


def fracvec(xs):
    a = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        a[i] = Fraction(x)
    return a


def zerovec(n, ring="Z"):
    a = np.empty(n, dtype=object)
    a[:] = 0 if ring == "Z" else Fraction(0)
    return a


def mat_eq(A, B):
    return A.shape == B.shape and all(
        A[i, j] == B[i, j] for i in range(A.shape[0]) for j in range(A.shape[1])
    )


def is_zero(A):
    return all(x == 0 for x in A.flat)


def det2(A):
    return A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]


def inv2(A):
    """Inverse of a 2x2 integer matrix of determinant +-1."""
    d = det2(A)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return intmat([[A[1, 1] * d, -A[0, 1] * d], [-A[1, 0] * d, A[0, 0] * d]])


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hnf(M):
    """Row Hermite normal form.

    Returns (H, U) with H = U @ M, U unimodular, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    H = M.astype(object).copy()
    m, n = H.shape
    U = eye(m)
    r = 0
    for c in range(n):
        # pick the nonzero pivot of least magnitude to limit entry growth
        piv = None
        for i in range(r, m):
            if H[i, c] != 0 and (piv is None or abs(H[i, c]) < abs(H[piv, c])):
                piv = i
        if piv is None:
            continue
        if piv != r:
            H[[r, piv]] = H[[piv, r]]
            U[[r, piv]] = U[[piv, r]]
        while True:
            done = True
            for i in range(r + 1, m):
                if H[i, c] != 0:
                    q = H[i, c] // H[r, c]
                    if q != 0:
                        H[i] = H[i] - q * H[r]
                        U[i] = U[i] - q * U[r]
                    if H[i, c] != 0:
                        H[[r, i]] = H[[i, r]]
                        U[[r, i]] = U[[i, r]]
                        done = False
            if done:
                break
        if H[r, c] < 0:
            H[r] = -H[r]
            U[r] = -U[r]
        for i in range(r):
            q = H[i, c] // H[r, c]
            if q != 0:
                H[i] = H[i] - q * H[r]
                U[i] = U[i] - q * U[r]
        r += 1
        if r == m:
            break
    return H, U


def hnf_rank(M):
    H, _ = hnf(M)
    return sum(1 for i in range(H.shape[0]) if any(x != 0 for x in H[i]))


def unimodular_inverse(U):
    """Inverse of a unimodular integer matrix."""
    H, W = hnf(U)
    n = U.shape[0]
    if not mat_eq(H, eye(n)):
        raise ValueError("matrix is not unimodular")
    return W


@dataclass
class SmithDecomposition:
    """D = U @ M @ V with U, V unimodular and D diagonal.

    The diagonal entries are nonnegative and satisfy d1 | d2 | ... .
    """

    D: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self):
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)

    def invariant_factors(self):
        return [d for d in self.diagonal if d > 1]


def _min_nonzero(D, t):
    best = None
    m, n = D.shape
    for i in range(t, m):
        for j in range(t, n):
            if D[i, j] != 0 and (best is None or abs(D[i, j]) < abs(D[best[0], best[1]])):
                best = (i, j)
    return best


def snf(M):
    """Smith normal form with transformation matrices."""
    D = M.astype(object).copy()
    m, n = D.shape
    U, V = eye(m), eye(n)
    t = 0
    while t < min(m, n):
        pos = _min_nonzero(D, t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            D[[t, i]] = D[[i, t]]
            U[[t, i]] = U[[i, t]]
        if j != t:
            D[:, [t, j]] = D[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
        dirty = False
        for i in range(t + 1, m):
            if D[i, t] != 0:
                q = D[i, t] // D[t, t]
                D[i] = D[i] - q * D[t]
                U[i] = U[i] - q * U[t]
                if D[i, t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if D[t, j] != 0:
                q = D[t, j] // D[t, t]
                D[:, j] = D[:, j] - q * D[:, t]
                V[:, j] = V[:, j] - q * V[:, t]
                if D[t, j] != 0:
                    dirty = True
        if dirty:
            continue
        # divisibility: fold any entry not divisible by the pivot into column t
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if D[i, j] % D[t, t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            D[t] = D[t] + D[bad]
            U[t] = U[t] + U[bad]
            continue
        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
        t += 1
    return SmithDecomposition(D=D, U=U, V=V)


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk."""

    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be >= 2")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.invariant_factors)
        return " ⊕ ".join(parts) if parts else "0"


def group_from_diagonal(diag, free_rank):
    return AbelianGroup(free_rank=free_rank, invariant_factors=tuple(d for d in diag if d > 1))


def cokernel(M):
    """Z^cols modulo the row span of M, in canonical form."""
    if M.shape[0] == 0:
        return AbelianGroup(free_rank=M.shape[1])
    dec = snf(M)
    return group_from_diagonal(dec.diagonal, M.shape[1] - dec.rank)


# ---------------------------------------------------------------------------
# Kernels and linear systems


def kernel(M):
    """Integer matrix whose columns are a basis of ker(M) as a lattice.

    The kernel of an integer matrix is saturated, so the columns generate all
    integer solutions of Mx = 0.
    """
    m, n = M.shape
    H, U = hnf(M.T)
    rank = sum(1 for i in range(n) if any(x != 0 for x in H[i]))
    return U[rank:].T.copy()


class LinearSystem:
    """Repeated exact solving of M x = b, over Z via a cached Smith form or
    over Q via a cached row reduction when the matrix has rational entries."""

    def __init__(self, M):
        self.M = M
        self._rational = any(isinstance(x, Fraction) for x in M.flat)
        if self._rational:
            self._init_rational()
        else:
            self.dec = snf(M)
            self.rank = self.dec.rank
            self._Vcols = self.dec.V

    def _init_rational(self):
        m, n = self.M.shape
        A = zeros(m, n + m, "Q")
        for i in range(m):
            for j in range(n):
                A[i, j] = Fraction(self.M[i, j])
            A[i, n + i] = Fraction(1)
        pivots = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, m) if A[i, c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            A[r] = A[r] / A[r, c]
            for i in range(m):
                if i != r and A[i, c] != 0:
                    A[i] = A[i] - A[i, c] * A[r]
            pivots.append(c)
            r += 1
            if r == m:
                break
        self._A = A
        self._pivots = pivots
        self.rank = r

    def solve(self, b, ring="Z"):
        """A particular solution or None; exact in the requested ring."""
        if self._rational:
            if ring != "Q":
                raise ValueError("rational system solves over Q only")
            return self._solve_rational(b)
        c = self.dec.U.dot(b)
        m, n = self.M.shape
        y = zerovec(n, ring)
        for i in range(min(m, n)):
            d = self.dec.D[i, i]
            if d == 0:
                if c[i] != 0:
                    return None
                continue
            if ring == "Z":
                if c[i] % d != 0:
                    return None
                y[i] = c[i] // d
            else:
                y[i] = Fraction(c[i], d)
        if any(c[i] != 0 for i in range(min(m, n), m)):
            return None
        return self._Vcols.dot(y)

    def _solve_rational(self, b):
        m, n = self.M.shape
        E = self._A[:, n:]
        c = E.dot(np.array([Fraction(x) for x in b], dtype=object))
        for i in range(self.rank, m):
            if c[i] != 0:
                return None
        x = zerovec(n, "Q")
        for row, p in enumerate(self._pivots):
            x[p] = c[row]
        return x

    def kernel_columns(self):
        if self._rational:
            m, n = self.M.shape
            free = [j for j in range(n) if j not in self._pivots]
            K = zeros(n, len(free), "Q")
            for k, j in enumerate(free):
                K[j, k] = Fraction(1)
                for row, p in enumerate(self._pivots):
                    K[p, k] = -self._A[row, j]
            return K
        return self._Vcols[:, self.rank:].copy()


def solve(M, b, ring="Z"):
    """Solve M x = b exactly; returns a vector or None when unsolvable."""
    if len(b) != M.shape[0]:
        raise ValueError("dimension mismatch: len(b) != rows of M")
    return LinearSystem(M).solve(b, ring)


# ---------------------------------------------------------------------------
# Rational elimination


def rref(M):
    """Reduced row echelon form over Q. Returns (R, pivot_columns)."""
    R = M.astype(object).copy()
    m, n = R.shape
    for i in range(m):
        for j in range(n):
            R[i, j] = Fraction(R[i, j])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] / R[r, c]
        for i in range(m):
            if i != r and R[i, c] != 0:
                R[i] = R[i] - R[i, c] * R[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def q_rank(M):
    return len(rref(M)[1])


def q_kernel(M):
    """Columns spanning the rational kernel of M."""
    R, pivots = rref(M)
    m, n = M.shape
    free = [j for j in range(n) if j not in pivots]
    K = zeros(n, len(free), "Q")
    for k, j in enumerate(free):
        K[j, k] = Fraction(1)
        for r, p in enumerate(pivots):
            K[p, k] = -R[r, j]
    return K


# ---------------------------------------------------------------------------
# Lattices (subgroups of Z^n given by spanning rows)


def lattice_hnf(rows):
    """Canonical basis (HNF rows, zero rows dropped) of the row lattice."""
    if rows.shape[0] == 0:
        return rows.copy()
    H, _ = hnf(rows)
    keep = [i for i in range(H.shape[0]) if any(x != 0 for x in H[i])]
    return H[keep].copy()


def lattice_eq(A, B):
    return mat_eq(lattice_hnf(A), lattice_hnf(B))


def lattice_member(rows, v):
    if rows.shape[0] == 0:
        return all(x == 0 for x in v)
    return solve(rows.T, v, "Z") is not None


def stack_rows(*mats):
    mats = [m for m in mats if m.shape[0] > 0]
    if not mats:
        raise ValueError("nothing to stack")
    n = mats[0].shape[1]
    out = zeros(sum(m.shape[0] for m in mats), n)
    r = 0
    for m in mats:
        out[r:r + m.shape[0]] = m
        r += m.shape[0]
    return out


def preimage_lattice(M, target_rows):
    """Rows spanning {x in Z^n : M x lies in the row lattice of target_rows}."""
    m, n = M.shape
    k = target_rows.shape[0]
    if k == 0:
        return lattice_hnf(kernel(M).T)
    A = zeros(m, n + k)
    A[:, :n] = M
    A[:, n:] = -target_rows.T
    K = kernel(A)
    return lattice_hnf(K[:n].T)


# ---------------------------------------------------------------------------
# Finitely presented abelian groups with coordinates


class PresentedGroup:
    """Z^n modulo the lattice spanned by the given relation rows.

    Provides canonical coordinates: reduce() maps a vector to a tuple that is
    equal for two vectors iff they represent the same element.
    """

    def __init__(self, n, relations=None):
        self.n = n
        if relations is None or relations.shape[0] == 0:
            relations = zeros(0, n)
        if relations.shape[1] != n:
            raise ValueError("relation width mismatch")
        self.relations = lattice_hnf(relations)
        dec = snf(self.relations.T) if self.relations.shape[0] else None
        if dec is None:
            self._T = eye(n)
            self._orders = [0] * n
        else:
            # columns of relations.T span the relation lattice; z = U x puts
            # the lattice into diagonal form
            self._T = dec.U
            diag = dec.diagonal
            self._orders = [diag[i] if i < len(diag) else 0 for i in range(n)]
        self._Tinv = None

    @property
    def group(self):
        free = sum(1 for d in self._orders if d == 0)
        tor = [d for d in self._orders if d > 1]
        return AbelianGroup(free_rank=free, invariant_factors=tuple(sorted(tor)))

    def reduce(self, x):
        """Canonical coordinate tuple of the class of x."""
        z = self._T.dot(x)
        out = []
        for zi, d in zip(z, self._orders):
            if d == 1:
                continue
            out.append(int(zi % d) if d > 1 else int(zi))
        return tuple(out)

    def coordinate_orders(self):
        return tuple(d for d in self._orders if d != 1)

    def generators(self):
        """Ambient vectors mapping to the canonical coordinate unit classes."""
        if self._Tinv is None:
            self._Tinv = unimodular_inverse(self._T)
        gens = []
        for i, d in enumerate(self._orders):
            if d == 1:
                continue
            gens.append(self._Tinv[:, i].copy())
        return gens

    def is_zero(self, x):
        return all(c == 0 for c in self.reduce(x))


class QuotientSpace:
    """Q^n modulo the span of the given rows, with canonical coordinates."""

    def __init__(self, n, relations=None):
        self.n = n
        if relations is None or relations.shape[0] == 0:
            self._R = zeros(0, n, "Q")
            self._pivots = []
        else:
            self._R, self._pivots = rref(relations)
        self._free = [j for j in range(n) if j not in self._pivots]

    @property
    def dimension(self):
        return len(self._free)

    @property
    def group(self):
        return AbelianGroup(free_rank=self.dimension)

    def reduce(self, x):
        x = np.array([Fraction(v) for v in x], dtype=object)
        for r, p in enumerate(self._pivots):
            if x[p] != 0:
                x = x - x[p] * self._R[r]
        return tuple(x[j] for j in self._free)

    def generators(self):
        gens = []
        for j in self._free:
            v = zerovec(self.n, "Q")
            v[j] = Fraction(1)
            gens.append(v)
        return gens

    def is_zero(self, x):
        return all(c == 0 for c in self.reduce(x))
