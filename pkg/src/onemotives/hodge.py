"""Torsion-free mixed Hodge structures concentrated in weights 0, -1, -2.

The objects here are integral lattices Z^n with a two-step weight
filtration W_{-2} ⊆ W_{-1} ⊆ Z^n and a complex subspace F⁰ ⊆ ℂ^n, subject
to the type conditions making every graded weight piece what it must be:
pure (0,0) in weight 0, principally split (−1,0)+(0,−1) in weight −1, and
pure (−1,−1) in weight −2.  These are exactly the Hodge-theoretic shadows
of the motives in `motives`, and everything downstream (realization
comparison, duality) reduces to the operations in this module.

Weight steps are stored saturated and Hermite-canonicalized, so lattice
equality is literal matrix equality.  F⁰ is a double-precision complex
basis; all subspace comparisons go through a configurable tolerance.
"""

import numpy as np

from .config import resolve
from .intlinalg import (
    IntMatrix,
    canonical_columns,
    kernel_basis,
    lattice_complement,
    saturate,
    solve_integral,
    unimodular_inverse,
)

# ---------------------------------------------------------------------------
# numeric subspace helpers (shared by the realization and duality code)


def as_complex_matrix(A, rows=None):
    """Coerce lists / IntMatrix / ndarray to a 2-d complex ndarray."""
    if isinstance(A, IntMatrix):
        return A.to_float().astype(complex)
    arr = np.asarray(A, dtype=complex)
    if arr.ndim != 2:
        if arr.size == 0:
            arr = arr.reshape(rows if rows is not None else 0, 0)
        else:
            raise ValueError(f"expected a matrix, got shape {arr.shape}")
    return arr


def numeric_rank(A, eps=None):
    """Rank of a complex matrix with relative singular-value cutoff."""
    A = as_complex_matrix(A)
    if min(A.shape) == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > resolve(eps, "eps") * max(1.0, s[0])))


def nullspace(A, eps=None):
    """Orthonormal basis (columns) of the right kernel of a complex matrix."""
    A = as_complex_matrix(A)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    if m == 0:
        return np.eye(n, dtype=complex)
    u, s, vh = np.linalg.svd(A)
    r = int(np.sum(s > resolve(eps, "eps") * max(1.0, s[0])))
    return vh[r:].conj().T


def span_contains(A, B, eps=None):
    """True when every column of B lies in the column span of A."""
    A, B = as_complex_matrix(A), as_complex_matrix(B)
    if B.shape[1] == 0:
        return True
    stacked = np.hstack([A, B])
    return numeric_rank(stacked, eps) == numeric_rank(A, eps)


def spans_equal(A, B, eps=None):
    A, B = as_complex_matrix(A), as_complex_matrix(B)
    ra, rb = numeric_rank(A, eps), numeric_rank(B, eps)
    return ra == rb and numeric_rank(np.hstack([A, B]), eps) == ra


def span_intersection(A, B, eps=None):
    """Orthonormal basis of span(A) ∩ span(B)."""
    A, B = as_complex_matrix(A), as_complex_matrix(B)
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], 0), dtype=complex)
    N = nullspace(np.hstack([A, -B]), eps)
    vecs = A @ N[: A.shape[1]]
    if vecs.shape[1] == 0:
        return vecs
    u, s, _ = np.linalg.svd(vecs)
    r = int(np.sum(s > resolve(eps, "eps") * max(1.0, s[0])))
    return u[:, :r]


_canon_cols = canonical_columns


def _as_intmatrix(A, nrows):
    if isinstance(A, IntMatrix):
        M = A
    else:
        rows = [list(r) for r in A]
        M = IntMatrix(rows, ncols=len(rows[0]) if rows else 0)
    if M.nrows != nrows:
        raise ValueError(f"expected {nrows} rows, got {M.nrows}")
    return M


# ---------------------------------------------------------------------------


class ValidationReport:
    """Outcome of `validate_type`: empty failure list means the type holds."""

    def __init__(self, failures):
        self.failures = tuple(failures)

    @property
    def ok(self):
        return not self.failures

    def __repr__(self):
        return f"ValidationReport(ok={self.ok}, failures={list(self.failures)})"


class MixedHodgeStructure:
    """Lattice Z^n with weights in {0, -1, -2} and a Hodge subspace F⁰.

    Parameters
    ----------
    rank : lattice rank n
    w2_basis, w1_basis : columns spanning the weight ≤ −2 and ≤ −1 steps
        (IntMatrix or nested lists); stored saturated + canonicalized
    f0_basis : complex n×k matrix whose columns span F⁰
    polarization : optional integral alternating form on the weight −1
        graded piece, written in the coordinates of `lift_basis`
    lift_basis : optional integral lift of a basis of gr_{-1}; computed as
        a canonical complement of W_{-2} in W_{-1} when omitted

    The constructor enforces only data sanity (shapes, genuine nested
    sublattices).  The mathematical type conditions are a diagnostic
    concern: see `validate_type`.
    """

    __slots__ = ("rank", "w2_basis", "w1_basis", "f0_basis", "lift_basis", "polarization")

    def __init__(self, rank, w2_basis, w1_basis, f0_basis, polarization=None, lift_basis=None):
        n = int(rank)
        w2 = _canon_cols(_as_intmatrix(w2_basis, n))
        w1 = _canon_cols(_as_intmatrix(w1_basis, n))
        f0 = as_complex_matrix(f0_basis, rows=n)
        if f0.shape[0] != n:
            raise ValueError(f"f0 basis needs {n} rows, got {f0.shape[0]}")
        if not span_contains(w1.to_float(), w2.to_float()):
            raise ValueError("weight steps are not nested")

        if lift_basis is None:
            lift = lattice_complement(w2, w1)
        else:
            lift = _as_intmatrix(lift_basis, n)
            if lift.ncols != w1.ncols - w2.ncols:
                raise ValueError("lift basis has the wrong number of columns")
            joint = _canon_cols(w2.hstack(lift))
            if joint != w1:
                raise ValueError("lift basis does not complete W_-2 to W_-1")

        if polarization is not None:
            pol = _as_intmatrix(polarization, lift.ncols)
            if pol.ncols != lift.ncols:
                raise ValueError("polarization must be square on the lift basis")
        else:
            pol = None

        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "w2_basis", w2)
        object.__setattr__(self, "w1_basis", w1)
        object.__setattr__(self, "f0_basis", f0)
        object.__setattr__(self, "lift_basis", lift)
        object.__setattr__(self, "polarization", pol)

    def __setattr__(self, *_):
        raise AttributeError("MixedHodgeStructure is immutable")

    # -- invariants ---------------------------------------------------------
    def graded_rank(self, i):
        """Rank of the weight-i graded lattice, i ∈ {0, -1, -2}."""
        if i == -2:
            return self.w2_basis.ncols
        if i == -1:
            return self.w1_basis.ncols - self.w2_basis.ncols
        if i == 0:
            return self.rank - self.w1_basis.ncols
        raise ValueError(f"weight {i} outside the supported window")

    @property
    def f0_dim(self):
        return self.f0_basis.shape[1]

    def __eq__(self, other):
        if not isinstance(other, MixedHodgeStructure):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.w2_basis == other.w2_basis
            and self.w1_basis == other.w1_basis
            and self.f0_dim == other.f0_dim
            and spans_equal(self.f0_basis, other.f0_basis)
        )

    def __repr__(self):
        grades = tuple(self.graded_rank(i) for i in (0, -1, -2))
        return f"MixedHodgeStructure(rank={self.rank}, graded_ranks(0,-1,-2)={grades})"


def _gr_minus1_f0(H: MixedHodgeStructure, eps=None):
    """Coordinates on the lift basis of the F⁰ part of gr_{-1}, as columns."""
    twog = H.graded_rank(-1)
    if twog == 0:
        return np.zeros((0, 0), dtype=complex)
    F1 = span_intersection(H.f0_basis, H.w1_basis.to_float(), eps)
    if F1.shape[1] == 0:
        return np.zeros((twog, 0), dtype=complex)
    basis = np.hstack([H.lift_basis.to_float(), H.w2_basis.to_float().astype(complex)])
    coords, *_ = np.linalg.lstsq(basis.astype(complex), F1, rcond=None)
    return coords[:twog]


def validate_type(H: MixedHodgeStructure, eps=None) -> ValidationReport:
    """Check the weight/Hodge type conditions, naming each failure.

    Verifies: saturation of the weight steps, evenness of the weight −1
    graded rank, independence of the F⁰ basis, F⁰ ∩ W_{-2,ℂ} = 0, that F⁰
    fills gr_0 ⊗ ℂ, that F⁰ and its conjugate split gr_{-1} ⊗ ℂ, and — when
    a polarization is present — that it is alternating, F⁰-isotropic and
    Riemann-positive.
    """
    eps = resolve(eps, "eps")
    failures = []
    n = H.rank
    w2f = H.w2_basis.to_float().astype(complex)
    w1f = H.w1_basis.to_float().astype(complex)

    for name, step in (("W_-2", H.w2_basis), ("W_-1", H.w1_basis)):
        if step.ncols and saturate(step) != step:
            failures.append(f"{name} not saturated")

    twog = H.graded_rank(-1)
    if twog % 2:
        failures.append("gr_-1 rank odd")

    if numeric_rank(H.f0_basis, eps) != H.f0_dim:
        failures.append("F0 basis rank-deficient")

    if span_intersection(H.f0_basis, w2f, eps).shape[1] > 0:
        failures.append("F0 nonzero on gr_-2")

    if numeric_rank(np.hstack([H.f0_basis, w1f]), eps) != n:
        failures.append("F0 not everything on gr_0")

    g = twog // 2
    B = _gr_minus1_f0(H, eps)
    if not twog % 2:
        if B.shape[1] != g:
            failures.append("F0 part of gr_-1 not half-dimensional")
        elif twog and numeric_rank(np.hstack([B, B.conj()]), eps) != twog:
            failures.append("F0 and conjugate do not split gr_-1")

    E = H.polarization
    if E is not None and not failures:
        if E.transpose() != -E:
            failures.append("polarization not alternating")
        else:
            Ef = E.to_float().astype(complex)
            if B.shape[1] and np.max(np.abs(B.T @ Ef @ B)) > eps * max(
                1.0, float(np.max(np.abs(B))) ** 2
            ):
                failures.append("polarization not F0-isotropic on gr_-1")
            elif B.shape[1]:
                herm = 1j * (B.T @ Ef @ B.conj())
                herm = (herm + herm.conj().T) / 2
                if np.min(np.linalg.eigvalsh(herm)) <= eps:
                    failures.append("polarization positivity fails")
    return ValidationReport(failures)


def _require_valid(H, eps=None):
    report = validate_type(H, eps)
    if not report.ok:
        raise ValueError("structure fails type validation: " + ", ".join(report.failures))


def graded_piece(H: MixedHodgeStructure, i, eps=None) -> MixedHodgeStructure:
    """Pure structure gr^W_i(H) on its own coordinates, i ∈ {0, -1, -2}."""
    if i == -2:
        t = H.graded_rank(-2)
        return MixedHodgeStructure(
            t, IntMatrix.identity(t), IntMatrix.identity(t), np.zeros((t, 0))
        )
    if i == -1:
        twog = H.graded_rank(-1)
        return MixedHodgeStructure(
            twog,
            IntMatrix.zeros(twog, 0),
            IntMatrix.identity(twog),
            _gr_minus1_f0(H, eps),
            polarization=H.polarization,
        )
    if i == 0:
        r = H.graded_rank(0)
        return MixedHodgeStructure(
            r, IntMatrix.zeros(r, 0), IntMatrix.zeros(r, 0), np.eye(r)
        )
    raise ValueError(f"weight {i} outside the supported window")


def tate_twist(H: MixedHodgeStructure, k) -> MixedHodgeStructure:
    """Twist by the rank-1 weight −2k structure; weights shift by −2k.

    Raises when the result leaves the three-weight window (e.g. twisting
    anything with weight < 0 content up by −1, or weight > −2 content
    down by +1).
    """
    k = int(k)
    if k == 0:
        return H
    n = H.rank
    full = IntMatrix.identity(n)
    zero = IntMatrix.zeros(n, 0)

    def step(i):
        # W_i(H) reconstructed from the stored three-step filtration
        if i >= 0:
            return full
        if i == -1:
            return H.w1_basis
        if i == -2:
            return H.w2_basis
        return zero

    if step(2 * k - 3).ncols != 0:
        raise ValueError(f"twist by {k} pushes weights below -2")
    if step(2 * k).ncols != n:
        raise ValueError(f"twist by {k} pushes weights above 0")
    f0 = np.zeros((n, 0)) if k >= 1 else np.eye(n, dtype=complex)
    return MixedHodgeStructure(n, step(2 * k - 2), step(2 * k - 1), f0)


def internal_dual(H: MixedHodgeStructure, eps=None) -> MixedHodgeStructure:
    """The twisted dual Hom(H, Z(1)) on the dual lattice.

    In dual coordinates (evaluation = standard dot product) the weight
    steps are annihilators — W_{-2}(H*) kills W_{-1}(H) and W_{-1}(H*)
    kills W_{-2}(H) — and F⁰(H*) consists of the functionals vanishing on
    F⁰(H).  A principal polarization is transported to the dual graded
    piece through the evaluation pairing; a non-unimodular one is dropped.
    """
    _require_valid(H, eps)
    n = H.rank
    w2d = kernel_basis(H.w1_basis.transpose())
    w1d = kernel_basis(H.w2_basis.transpose())
    f0d = nullspace(H.f0_basis.T, eps)

    pol = None
    E = H.polarization
    if E is not None and E.ncols and E.is_unimodular():
        dual_lift = lattice_complement(w2d, w1d)
        G = dual_lift.transpose() * H.lift_basis
        if G.is_unimodular():
            pol = -(G * unimodular_inverse(E) * G.transpose())
        else:  # pragma: no cover - saturation makes the graded pairing perfect
            raise ValueError("graded evaluation pairing is not unimodular")
        return MixedHodgeStructure(n, w2d, w1d, f0d, polarization=pol, lift_basis=dual_lift)
    return MixedHodgeStructure(n, w2d, w1d, f0d)


def direct_sum(H1: MixedHodgeStructure, H2: MixedHodgeStructure) -> MixedHodgeStructure:
    """Componentwise direct sum; keeps a polarization when both sides have one."""
    n1, n2 = H1.rank, H2.rank
    n = n1 + n2

    def block(a, b):
        top = a.hstack(IntMatrix.zeros(n1, b.ncols))
        bot = IntMatrix.zeros(n2, a.ncols).hstack(b)
        return top.vstack(bot)

    f0 = np.zeros((n, H1.f0_dim + H2.f0_dim), dtype=complex)
    f0[:n1, : H1.f0_dim] = H1.f0_basis
    f0[n1:, H1.f0_dim :] = H2.f0_basis

    pol = None
    lift = None
    p1 = H1.polarization if H1.graded_rank(-1) else IntMatrix.zeros(0, 0)
    p2 = H2.polarization if H2.graded_rank(-1) else IntMatrix.zeros(0, 0)
    if p1 is not None and p2 is not None:
        lift = block(H1.lift_basis, H2.lift_basis)
        top = p1.hstack(IntMatrix.zeros(p1.nrows, p2.ncols))
        bot = IntMatrix.zeros(p2.nrows, p1.ncols).hstack(p2)
        pol = top.vstack(bot)
    return MixedHodgeStructure(
        n,
        block(H1.w2_basis, H2.w2_basis),
        block(H1.w1_basis, H2.w1_basis),
        f0,
        polarization=pol,
        lift_basis=lift,
    )


def tate(k, copies=1) -> MixedHodgeStructure:
    """Z(k)^copies for k ∈ {0, 1}: weight 0 trivial or weight −2 twisted."""
    m = int(copies)
    if k == 1:
        return MixedHodgeStructure(
            m, IntMatrix.identity(m), IntMatrix.identity(m), np.zeros((m, 0))
        )
    if k == 0:
        return MixedHodgeStructure(
            m, IntMatrix.zeros(m, 0), IntMatrix.zeros(m, 0), np.eye(m)
        )
    raise ValueError("only Z(0) and Z(1) sit inside the three-weight window")


# ---------------------------------------------------------------------------


class ExtClassPoint:
    """Point of a complex torus: a value vector taken modulo a period lattice.

    Models a class in Ext¹(H, Z(1)) for a pure weight −1 structure H of
    rank 2g: `value` lives in ℂ^g and `lattice` (g × 2g, full real rank)
    lists the period generators of the chart.  Two points are equal when
    their values differ by an integral combination of the periods, within
    tolerance.
    """

    __slots__ = ("ambient", "value", "lattice", "eps")

    def __init__(self, ambient, value, lattice, eps=None):
        if ambient is not None:
            if ambient.graded_rank(-1) != ambient.rank:
                raise ValueError("ambient structure must be pure of weight -1")
        self.ambient = ambient
        self.value = np.asarray(value, dtype=complex).reshape(-1)
        self.lattice = as_complex_matrix(lattice, rows=self.value.size)
        g = self.value.size
        if self.lattice.shape != (g, 2 * g):
            raise ValueError(f"lattice must be {g}x{2 * g}, got {self.lattice.shape}")
        real = self._real_lattice()
        if g and np.linalg.matrix_rank(real) != 2 * g:
            raise ValueError("period lattice is degenerate over the reals")
        self.eps = resolve(eps, "eps")

    def _real_lattice(self):
        return np.vstack([self.lattice.real, self.lattice.imag])

    def lattice_coordinates(self, vector):
        """Real coordinates of a ℂ^g vector in the period basis."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        rhs = np.concatenate([v.real, v.imag])
        return np.linalg.solve(self._real_lattice(), rhs)

    def __eq__(self, other):
        if not isinstance(other, ExtClassPoint):
            return NotImplemented
        if self.value.size != other.value.size:
            return False
        if not np.allclose(self.lattice, other.lattice, atol=self.eps):
            return False
        coeff = self.lattice_coordinates(self.value - other.value)
        return bool(np.max(np.abs(coeff - np.round(coeff)), initial=0.0) <= self.eps)

    def reduced(self):
        """Representative with period coordinates in [0, 1)."""
        coeff = self.lattice_coordinates(self.value)
        shift = self.lattice @ np.floor(coeff)
        return ExtClassPoint(self.ambient, self.value - shift, self.lattice, self.eps)

    def __repr__(self):
        return f"ExtClassPoint(value={self.value}, periods={self.lattice.shape[1]})"
