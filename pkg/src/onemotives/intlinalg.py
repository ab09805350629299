"""Exact integer linear algebra over arbitrary-precision integers.

Everything downstream (weight lattices, finite-level realizations, divisor
lattices on curves) reduces to Hermite/Smith normal forms, kernels and
saturations of integer matrices.  All arithmetic here is exact; floats never
enter.  Matrices are immutable and small (ranks well under 20), so the
classical O(n^3)-with-coefficient-swell algorithms are entirely adequate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _xgcd(a, b):
    # returns (g, s, t) with s*a + t*b == g == gcd(a, b), g >= 0.
    # When a | b the result is (|a|, ±1, 0): callers rely on this to make
    # gcd steps degenerate to pure elimination (no remixing of the pivot).
    if b % a == 0 if a else False:
        return (a, 1, 0) if a > 0 else (-a, -1, 0)
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class IntMatrix:
    """Immutable integer matrix, row-major, arbitrary precision.

    >>> A = IntMatrix([[2, 1], [0, 3]])
    >>> (A * A.identity(2)) == A
    True
    >>> A.det()
    6
    """

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        # ncols disambiguates the 0 x k case, where no row exists to measure
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        width = len(rows[0]) if rows else (0 if ncols is None else int(ncols))
        if rows and ncols is not None and ncols != width:
            raise ValueError("ncols does not match row length")
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, *a):
        raise AttributeError("IntMatrix is immutable")

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = list(cols)
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    # -- basic protocol ----------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.shape, self.data))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]})"

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    # -- arithmetic --------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[x * other for x in r] for r in self.data],
                             ncols=self.ncols)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        if self.ncols == 0 or other.ncols == 0:
            return IntMatrix.zeros(self.nrows, other.ncols)
        bt = list(zip(*other.data))
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in bt] for r in self.data],
            ncols=other.ncols,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[x + y for x, y in zip(r, s)]
                          for r, s in zip(self.data, other.data)],
                         ncols=self.ncols)

    def __neg__(self):
        return IntMatrix([[-x for x in r] for r in self.data], ncols=self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def matvec(self, v):
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def transpose(self):
        if not self.data:
            return IntMatrix([() for _ in range(self.ncols)], ncols=self.nrows)
        return IntMatrix(list(zip(*self.data)), ncols=self.nrows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix([r + s for r, s in zip(self.data, other.data)],
                         ncols=self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return IntMatrix(list(self.data) + list(other.data), ncols=self.ncols)

    def submatrix(self, rows, cols):
        return IntMatrix([[self.data[i][j] for j in cols] for i in rows],
                         ncols=len(cols))

    def is_zero(self):
        return all(x == 0 for r in self.data for x in r)

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(r) for r in self.data]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self):
        return self.nrows == self.ncols and self.det() in (1, -1)

    def to_float(self):
        import numpy as np

        out = np.zeros(self.shape, dtype=float)
        for i, r in enumerate(self.data):
            out[i, :] = [float(x) for x in r]
        return out

    def to_lists(self):
        return [list(r) for r in self.data]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    ``invariant_factors`` is the chain d_1 | d_2 | ... with every d_i >= 2;
    ``free_rank`` counts Z summands.

    >>> FiniteAbelianGroup((2, 6), 0).order()
    12
    >>> FiniteAbelianGroup((), 1)
    FiniteAbelianGroup(invariant_factors=(), free_rank=1)
    """

    invariant_factors: tuple
    free_rank: int = 0

    def __post_init__(self):
        fac = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fac)
        if any(d < 2 for d in fac):
            raise ValueError("invariant factors must be >= 2")
        for a, b in zip(fac, fac[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    def order(self):
        """Group order; None for infinite (positive free rank)."""
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    def elementary_divisors(self):
        """Prime-power decomposition, sorted."""
        out = []
        for d in self.invariant_factors:
            m = d
            p = 2
            while p * p <= m:
                if m % p == 0:
                    q = 1
                    while m % p == 0:
                        m //= p
                        q *= p
                    out.append(q)
                p += 1
            if m > 1:
                out.append(m)
        return sorted(out)

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def hnf(A: IntMatrix):
    """Row Hermite normal form with unimodular witness.

    Returns (H, U) with H = U*A, U unimodular, pivots positive, entries above
    each pivot reduced into [0, pivot), zero rows last.

    >>> H, U = hnf(IntMatrix([[4, 6], [6, 9]]))
    >>> H.to_lists()
    [[2, 3], [0, 0]]
    >>> (U * IntMatrix([[4, 6], [6, 9]])) == H
    True
    """
    m, n = A.nrows, A.ncols
    a = [list(r) for r in A.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(n):
        # gcd out the column below pivot_row
        nz = [i for i in range(pivot_row, m) if a[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        if i0 != pivot_row:
            a[pivot_row], a[i0] = a[i0], a[pivot_row]
            u[pivot_row], u[i0] = u[i0], u[pivot_row]
        for i in range(pivot_row + 1, m):
            while a[i][col] != 0:
                # one xgcd step concentrates the gcd in the pivot row
                g, s, t = _xgcd(a[pivot_row][col], a[i][col])
                p, q = a[pivot_row][col] // g, a[i][col] // g
                rp = [s * x + t * y for x, y in zip(a[pivot_row], a[i])]
                ri = [-q * x + p * y for x, y in zip(a[pivot_row], a[i])]
                a[pivot_row], a[i] = rp, ri
                rp = [s * x + t * y for x, y in zip(u[pivot_row], u[i])]
                ri = [-q * x + p * y for x, y in zip(u[pivot_row], u[i])]
                u[pivot_row], u[i] = rp, ri
        if a[pivot_row][col] < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        # reduce entries above the pivot into [0, pivot)
        piv = a[pivot_row][col]
        for i in range(pivot_row):
            q = a[i][col] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivot_row += 1
        if pivot_row == m:
            break
    return IntMatrix(a, ncols=n), IntMatrix(u, ncols=m)


def snf(A: IntMatrix):
    """Smith normal form with witnesses: D = U*A*V, d_i >= 0, d_i | d_{i+1}.

    >>> D, U, V = snf(IntMatrix([[2, 4], [6, 8]]))
    >>> [D[0, 0], D[1, 1]]
    [2, 4]
    >>> (U * IntMatrix([[2, 4], [6, 8]]) * V) == D
    True
    """
    m, n = A.nrows, A.ncols
    a = [list(r) for r in A.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, g, s, t, p, q):
        a[i], a[j] = (
            [s * x + t * y for x, y in zip(a[i], a[j])],
            [-q * x + p * y for x, y in zip(a[i], a[j])],
        )
        u[i], u[j] = (
            [s * x + t * y for x, y in zip(u[i], u[j])],
            [-q * x + p * y for x, y in zip(u[i], u[j])],
        )

    def col_op(i, j, g, s, t, p, q):
        for r in a:
            r[i], r[j] = s * r[i] + t * r[j], -q * r[i] + p * r[j]
        for r in v:
            r[i], r[j] = s * r[i] + t * r[j], -q * r[i] + p * r[j]

    k = 0
    while k < min(m, n):
        # move a nonzero entry to (k, k)
        pos = next(((i, j) for i in range(k, m) for j in range(k, n) if a[i][j]), None)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != k:
            a[k], a[i0] = a[i0], a[k]
            u[k], u[i0] = u[i0], u[k]
        if j0 != k:
            for r in a:
                r[k], r[j0] = r[j0], r[k]
            for r in v:
                r[k], r[j0] = r[j0], r[k]
        while True:
            for i in range(k + 1, m):
                if a[i][k]:
                    g, s, t = _xgcd(a[k][k], a[i][k])
                    row_op(k, i, g, s, t, a[k][k] // g, a[i][k] // g)
            for j in range(k + 1, n):
                if a[k][j]:
                    g, s, t = _xgcd(a[k][k], a[k][j])
                    col_op(k, j, g, s, t, a[k][k] // g, a[k][j] // g)
            if all(a[i][k] == 0 for i in range(k + 1, m)) and all(
                a[k][j] == 0 for j in range(k + 1, n)
            ):
                # enforce divisibility of the lower-right block by a[k][k]
                bad = next(
                    (
                        (i, j)
                        for i in range(k + 1, m)
                        for j in range(k + 1, n)
                        if a[i][j] % a[k][k]
                    ),
                    None,
                )
                if bad is None:
                    break
                i, j = bad
                a[k] = [x + y for x, y in zip(a[k], a[i])]
                u[k] = [x + y for x, y in zip(u[k], u[i])]
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
        k += 1
    return IntMatrix(a, ncols=n), IntMatrix(u, ncols=m), IntMatrix(v, ncols=n)


def rank(A: IntMatrix):
    """Exact rank via Hermite form."""
    H, _ = hnf(A)
    return sum(1 for r in H.data if any(x != 0 for x in r))


def kernel_basis(A: IntMatrix):
    """Basis of the integral kernel {x : A*x = 0}, as matrix columns.

    The kernel of an integer matrix is automatically saturated; the basis is
    canonicalized by Hermite reduction so two computations of the same kernel
    produce identical matrices.
    """
    # rows u of U with u*A^T = 0  <=>  A*u^T = 0
    H, U = hnf(A.transpose())
    vecs = [U.row(i) for i in range(H.nrows) if all(x == 0 for x in H.row(i))]
    if not vecs:
        return IntMatrix.zeros(A.ncols, 0)
    K, _ = hnf(IntMatrix(vecs))
    rows = [r for r in K.data if any(x != 0 for x in r)]
    return IntMatrix(rows).transpose()


def canonical_columns(A: IntMatrix):
    """Canonical basis of the column lattice: same span <=> same matrix.

    Hermite reduction applied to the rows of A^T, with zero rows dropped, so
    the result depends only on the lattice spanned by the columns of ``A``.
    """
    if A.ncols == 0:
        return IntMatrix.zeros(A.nrows, 0)
    H, _ = hnf(A.transpose())
    rows = [r for r in H.data if any(x != 0 for x in r)]
    if not rows:
        return IntMatrix.zeros(A.nrows, 0)
    return IntMatrix(rows).transpose()


def lattice_intersection(A: IntMatrix, B: IntMatrix):
    """Canonical basis of col-lattice(A) ∩ col-lattice(B).

    A vector lies in both lattices iff it is A*x = B*y for integral x, y,
    i.e. iff (x, -y) is in the kernel of [A | B].
    """
    if A.nrows != B.nrows:
        raise ValueError("ambient ranks differ")
    if A.ncols == 0 or B.ncols == 0:
        return IntMatrix.zeros(A.nrows, 0)
    K = kernel_basis(A.hstack(B))
    if K.ncols == 0:
        return IntMatrix.zeros(A.nrows, 0)
    top = K.submatrix(range(A.ncols), range(K.ncols))
    return canonical_columns(A * top)


def cokernel_structure(A: IntMatrix):
    """Structure of Z^rows / im(A) as a FiniteAbelianGroup.

    >>> str(cokernel_structure(IntMatrix([[2, 4], [6, 8]])))
    'Z/2 + Z/4'
    """
    D, _, _ = snf(A)
    diag = [D[i, i] for i in range(min(D.nrows, D.ncols))]
    nonzero = [d for d in diag if d != 0]
    return FiniteAbelianGroup(
        tuple(d for d in nonzero if d > 1),
        free_rank=A.nrows - len(nonzero),
    )


def saturate(Lsub: IntMatrix, in_rank=None):
    """Saturation of the column span: basis of span_Q(Lsub) ∩ Z^n.

    Columns of ``Lsub`` must be independent; rank deficiency raises.
    """
    n = Lsub.nrows if in_rank is None else in_rank
    if n != Lsub.nrows:
        raise ValueError("ambient rank does not match column length")
    k = Lsub.ncols
    if rank(Lsub) != k:
        raise ValueError("columns are not linearly independent")
    if k == 0:
        return IntMatrix.zeros(n, 0)
    # double-kernel: saturation = ker(ker(L^T)^T)
    K = kernel_basis(Lsub.transpose())  # n x (n-k)
    return kernel_basis(K.transpose())


def solve_integral(A: IntMatrix, b):
    """Some x with A*x = b over Z, or None when no integral solution exists.

    Decided exactly through the Hermite form of A^T: with H = U*A^T we have
    A*(U^T y) = H^T y, and H^T is in column-echelon form, so forward
    substitution with divisibility checks settles solvability.
    """
    b = [int(x) for x in b]
    if len(b) != A.nrows:
        raise ValueError("length mismatch")
    H, U = hnf(A.transpose())
    T = H.transpose()  # A * U^T = T, column echelon
    m, n = T.nrows, T.ncols
    rem = list(b)
    y = [0] * n
    for j in range(n):
        p = next((i for i in range(m) if T[i, j] != 0), None)
        if p is None:
            continue
        if rem[p] % T[p, j]:
            return None
        y[j] = rem[p] // T[p, j]
        for i in range(m):
            rem[i] -= T[i, j] * y[j]
    if any(rem):
        return None
    return U.transpose().matvec(y)


def member_of_column_span(L: IntMatrix, v):
    """Integral membership v ∈ L·Z^k, with the witness coordinates or None."""
    return solve_integral(L, v)


def unimodular_inverse(A: IntMatrix):
    """Exact integer inverse of a unimodular matrix.

    The Hermite form of a unimodular matrix is the identity, so its
    transformation witness is the inverse.
    """
    if A.nrows != A.ncols:
        raise ValueError("inverse needs a square matrix")
    H, U = hnf(A)
    if H != IntMatrix.identity(A.nrows):
        raise ValueError("matrix is not unimodular")
    return U


def lattice_complement(sub: IntMatrix, sup: IntMatrix):
    """Vectors of the `sup` lattice whose classes are a basis of sup/sub.

    Both arguments are column bases. `sub` must sit inside the column span
    of `sup` integrally and be saturated there (torsion-free quotient);
    anything else raises. The returned matrix C satisfies: columns of
    [sub | C] generate the same lattice as `sup`.
    """
    b = sup.ncols
    if sub.ncols == 0:
        return sup
    coord_cols = []
    for j in range(sub.ncols):
        x = solve_integral(sup, sub.column(j))
        if x is None:
            raise ValueError("sub lattice does not lie inside sup")
        coord_cols.append(x)
    X = IntMatrix.from_columns(coord_cols, nrows=b)
    D, U, _ = snf(X)
    k = min(D.nrows, D.ncols)
    divisors = [D[i, i] for i in range(k)]
    if any(d == 0 for d in divisors) or any(d > 1 for d in divisors):
        raise ValueError("sub lattice is not saturated in sup")
    # in the U-basis of Z^b the image of X is the first ncols coordinates,
    # so the remaining columns of U^{-1} descend to a basis of the quotient
    Uinv = unimodular_inverse(U)
    cols = [Uinv.column(j) for j in range(sub.ncols, b)]
    coords = IntMatrix.from_columns(cols, nrows=b)
    return sup * coords


def symplectic_basis(E: IntMatrix):
    """Integral symplectic basis for a unimodular alternating form.

    Returns a unimodular U with U^T * E * U == [[0, I], [-I, 0]] in g+g block
    form.  Only the principally polarized case (det E = 1) is supported, which
    is what period lattices of principally polarized abelian parts produce.
    """
    n = E.nrows
    if E.ncols != n or n % 2:
        raise ValueError("alternating form must be square of even rank")
    if E.transpose() != -E or any(E[i, i] for i in range(n)):
        raise ValueError("form is not alternating")
    if E.det() != 1:
        raise ValueError("form is not unimodular")
    g = n // 2

    basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    a_vecs, b_vecs = [], []
    work = basis
    for _ in range(g):
        v = work[0]
        # E(v, .) restricted to the current lattice is a primitive functional,
        # so E(v, w) = 1 has a solution among integer combinations of `work`
        vals = [sum(vi * x for vi, x in zip(E.matvec(w), v)) for w in work]
        # vals[j] = v^T E w_j = E(v, w_j); want E(v, sum c_j w_j) = 1
        c = solve_integral(IntMatrix([vals]), [1])
        if c is None:
            raise ValueError("form is degenerate on the working lattice")
        w = tuple(sum(ci * wj[k] for ci, wj in zip(c, work)) for k in range(n))
        a_vecs.append(v)
        b_vecs.append(w)

        def pair(x, y):
            return sum(a * b for a, b in zip(E.matvec(y), x))

        # project the rest onto the E-orthogonal complement of (v, w)
        projected = []
        for x in work:
            xv, xw = pair(x, v), pair(x, w)
            # x' = x - E(x,w) v + E(x,v) w  kills both pairings
            projected.append(
                tuple(a - xw * b + xv * c_ for a, b, c_ in zip(x, v, w))
            )
        H, _ = hnf(IntMatrix(projected))
        work = [r for r in H.data if any(r)]
        if len(work) != n - 2 * len(a_vecs):
            raise ValueError("unexpected rank drop while splitting form")
    U = IntMatrix.from_columns(a_vecs + b_vecs, nrows=n)
    std = standard_symplectic_form(g)
    if U.transpose() * E * U != std:
        raise AssertionError("symplectic reduction failed verification")
    return U


def standard_symplectic_form(g):
    """The block form [[0, I_g], [-I_g, 0]]."""
    rows = []
    for i in range(g):
        rows.append([0] * g + [1 if j == i else 0 for j in range(g)])
    for i in range(g):
        rows.append([-1 if j == i else 0 for j in range(g)] + [0] * g)
    return IntMatrix(rows)
