"""Concrete 1-motives over ℂ: a lattice mapping to a semi-abelian group.

A motive is presented by period data.  The semi-abelian group G (torus
rank t, abelian part of genus g with normalized period matrix (I | Ω),
extension rows η) is the quotient of its Lie algebra ℂ^{t+g} by the
lattice spanned by the columns of the block presentation

    P = [ 2πi·I_t   η        ]      (t+g) rows, (t+2g) columns.
        [ 0         (I | Ω)  ]

A rank-r lattice maps into G(ℂ) through a chosen matrix of logarithms
Ũ ∈ ℂ^{(t+g)×r}; only its class modulo the column lattice of P matters,
and the tests pin that down.  Morphisms are pairs (lattice map, Lie map)
with an integral witness that the Lie map respects the period lattices.
"""

import cmath
import math

import numpy as np

from .config import resolve
from .hodge import ValidationReport, as_complex_matrix
from .intlinalg import IntMatrix

TWO_PI_I = 2j * math.pi


def _real_stack(A):
    return np.vstack([A.real, A.imag])


def in_period_lattice(P, vectors, eps=None):
    """Test columns ∈ P·Z^k (simultaneously); returns (ok, integer coeffs).

    P must have ℝ-independent columns (a discrete lattice), so the real
    coordinates are unique; they are rounded and the residual compared
    against the tolerance.
    """
    eps = resolve(eps, "eps")
    P = as_complex_matrix(P)
    V = as_complex_matrix(vectors, rows=P.shape[0])
    if V.shape[1] == 0 or P.shape[0] == 0:
        return True, np.zeros((P.shape[1], V.shape[1]), dtype=int)
    if P.shape[1] == 0:
        return bool(np.max(np.abs(V)) <= eps), np.zeros((0, V.shape[1]), dtype=int)
    A = _real_stack(P)
    B = _real_stack(V)
    coords, *_ = np.linalg.lstsq(A, B, rcond=None)
    rounded = np.round(coords)
    residual = A @ rounded - B
    ok = bool(np.max(np.abs(residual)) <= eps * max(1.0, float(np.max(np.abs(V)))))
    return ok, rounded.astype(int)


class Torus:
    """Split torus of dimension t, carried by its character lattice Z^t."""

    __slots__ = ("char_rank",)

    def __init__(self, char_rank):
        t = int(char_rank)
        if t < 0:
            raise ValueError("torus rank must be nonnegative")
        object.__setattr__(self, "char_rank", t)

    def __setattr__(self, *_):
        raise AttributeError("Torus is immutable")

    def __repr__(self):
        return f"Torus({self.char_rank})"


class PolarizedAbelianVariety:
    """Principally polarized abelian variety with periods (I_g | Ω).

    Ω must be symmetric with positive definite imaginary part; both are
    checked at construction.
    """

    __slots__ = ("genus", "omega")

    def __init__(self, omega, eps=None):
        eps = resolve(eps, "eps")
        om = as_complex_matrix(omega, rows=0)
        if om.shape[0] != om.shape[1]:
            raise ValueError(f"omega must be square, got {om.shape}")
        g = om.shape[0]
        if g:
            scale = max(1.0, float(np.max(np.abs(om))))
            if np.max(np.abs(om - om.T)) > eps * scale:
                raise ValueError("omega is not symmetric")
            if np.min(np.linalg.eigvalsh(om.imag)) <= eps:
                raise ValueError("Im(omega) is not positive definite")
        object.__setattr__(self, "genus", g)
        object.__setattr__(self, "omega", om)

    def __setattr__(self, *_):
        raise AttributeError("PolarizedAbelianVariety is immutable")

    @property
    def period_matrix(self):
        g = self.genus
        return np.hstack([np.eye(g, dtype=complex), self.omega])

    def __repr__(self):
        return f"PolarizedAbelianVariety(genus={self.genus})"


class SemiAbelianVariety:
    """Extension of an abelian variety by a torus, in period presentation.

    Row j of `eta` lists the values of a logarithm of the extension class
    of the j-th character against the abelian periods; modulo 2πi it is a
    point of the dual abelian variety.
    """

    __slots__ = ("torus_rank", "abelian", "eta")

    def __init__(self, torus_rank, abelian, eta, eps=None):
        t = int(torus_rank)
        if t < 0:
            raise ValueError("torus rank must be nonnegative")
        g = abelian.genus
        H = as_complex_matrix(eta, rows=t)
        if H.shape != (t, 2 * g):
            raise ValueError(f"eta must be {t}x{2 * g}, got {H.shape}")
        object.__setattr__(self, "torus_rank", t)
        object.__setattr__(self, "abelian", abelian)
        object.__setattr__(self, "eta", H)
        P = self.period_presentation()
        if t + 2 * g and np.linalg.matrix_rank(_real_stack(P)) != t + 2 * g:
            raise ValueError("period columns are not R-independent (lattice not discrete)")

    def __setattr__(self, *_):
        raise AttributeError("SemiAbelianVariety is immutable")

    @property
    def genus(self):
        return self.abelian.genus

    @property
    def dim(self):
        return self.torus_rank + self.abelian.genus

    def period_presentation(self):
        """The (t+g) x (t+2g) block matrix whose columns span H_1(G, Z)."""
        t, g = self.torus_rank, self.abelian.genus
        P = np.zeros((t + g, t + 2 * g), dtype=complex)
        P[:t, :t] = TWO_PI_I * np.eye(t)
        P[:t, t:] = self.eta
        P[t:, t:] = self.abelian.period_matrix
        return P

    def __repr__(self):
        return f"SemiAbelianVariety(t={self.torus_rank}, g={self.genus})"


class OneMotive:
    """A lattice Z^r mapping to a semi-abelian group, as period data.

    `u_lift` columns are chosen logarithms in Lie(G) of the images of the
    standard lattice generators; the motive itself only depends on them
    modulo the period lattice.
    """

    __slots__ = ("lattice_rank", "group", "u_lift")

    def __init__(self, lattice_rank, group, u_lift):
        r = int(lattice_rank)
        if r < 0:
            raise ValueError("lattice rank must be nonnegative")
        U = as_complex_matrix(u_lift, rows=group.dim)
        if U.shape != (group.dim, r):
            raise ValueError(f"u_lift must be {group.dim}x{r}, got {U.shape}")
        object.__setattr__(self, "lattice_rank", r)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "u_lift", U)

    def __setattr__(self, *_):
        raise AttributeError("OneMotive is immutable")

    @property
    def torus_rank(self):
        return self.group.torus_rank

    @property
    def genus(self):
        return self.group.genus

    def rank_triple(self):
        """(r, t, g): lattice rank, torus rank, abelian genus."""
        return (self.lattice_rank, self.torus_rank, self.genus)

    def period_presentation(self):
        return self.group.period_presentation()

    def full_presentation(self):
        """[P | Ũ]: periods and lattice logarithms side by side."""
        return np.hstack([self.group.period_presentation(), self.u_lift])

    def __repr__(self):
        r, t, g = self.rank_triple()
        return f"OneMotive(r={r}, t={t}, g={g})"


def same_presentation(M1: OneMotive, M2: OneMotive, eps=None):
    """Literal equality of the period data within tolerance (not isomorphism)."""
    eps = resolve(eps, "eps")
    if M1.rank_triple() != M2.rank_triple():
        return False
    return bool(
        np.allclose(M1.group.abelian.omega, M2.group.abelian.omega, atol=eps)
        and np.allclose(M1.group.eta, M2.group.eta, atol=eps)
        and np.allclose(M1.u_lift, M2.u_lift, atol=eps)
    )


# -- constructors -------------------------------------------------------------


def make_semiabelian(torus_rank, abelian, eta, eps=None) -> SemiAbelianVariety:
    """Validated semi-abelian group from (t, A, extension rows)."""
    return SemiAbelianVariety(torus_rank, abelian, eta, eps)


def make_motive(lattice_rank, group, u_lift) -> OneMotive:
    """Validated 1-motive from (r, G, lattice logarithms)."""
    return OneMotive(lattice_rank, group, u_lift)


def trivial_group() -> SemiAbelianVariety:
    return SemiAbelianVariety(0, PolarizedAbelianVariety(np.zeros((0, 0))), np.zeros((0, 0)))


def from_torus(t) -> OneMotive:
    """Pure torus motive [0 → T]."""
    G = SemiAbelianVariety(t, PolarizedAbelianVariety(np.zeros((0, 0))), np.zeros((int(t), 0)))
    return OneMotive(0, G, np.zeros((G.dim, 0)))


def from_abelian(abelian) -> OneMotive:
    """Pure abelian motive [0 → A]."""
    G = SemiAbelianVariety(0, abelian, np.zeros((0, 2 * abelian.genus)))
    return OneMotive(0, G, np.zeros((G.dim, 0)))


def from_lattice(r) -> OneMotive:
    """Shifted lattice motive [Z^r → 0]."""
    return OneMotive(r, trivial_group(), np.zeros((0, int(r))))


def kummer(q) -> OneMotive:
    """The motive [Z → G_m] sending 1 to q, with the principal logarithm."""
    q = complex(q)
    if q == 0:
        raise ValueError("kummer parameter must be nonzero")
    G = SemiAbelianVariety(1, PolarizedAbelianVariety(np.zeros((0, 0))), np.zeros((1, 0)))
    return OneMotive(1, G, [[cmath.log(q)]])


def rebase_u(M: OneMotive, N) -> OneMotive:
    """Replace Ũ by Ũ + P·N (integer N): the same motive, different lifts."""
    N = N if isinstance(N, IntMatrix) else IntMatrix([list(r) for r in N], ncols=M.lattice_rank)
    P = M.period_presentation()
    shift = P @ N.to_float() if P.shape[1] else np.zeros((M.group.dim, M.lattice_rank))
    return OneMotive(M.lattice_rank, M.group, M.u_lift + shift)


# -- weight filtration ---------------------------------------------------------


def weight_sub(M: OneMotive, i) -> OneMotive:
    """The weight ≤ i sub-1-motive: M, its group, its torus, or zero."""
    i = int(i)
    if i >= 0:
        return M
    if i == -1:
        return OneMotive(0, M.group, np.zeros((M.group.dim, 0)))
    if i == -2:
        return from_torus(M.torus_rank)
    return from_lattice(0)


# -- morphisms -------------------------------------------------------------------


class MotiveMorphism:
    """Morphism of 1-motives: lattice map + Lie map + period-lattice witness.

    `lattice_map` is integral of shape r'×r, `lie_map` complex of shape
    (t'+g')×(t+g), and `period_map` integral of shape (t'+2g')×(t+2g)
    expressing where the source period columns land inside the target
    period lattice.  `verify_morphism` checks the defining congruences.
    """

    __slots__ = ("source", "target", "lattice_map", "lie_map", "period_map")

    def __init__(self, source, target, lattice_map, lie_map, period_map):
        f = lattice_map if isinstance(lattice_map, IntMatrix) else IntMatrix(
            [list(r) for r in lattice_map], ncols=source.lattice_rank
        )
        lam = period_map if isinstance(period_map, IntMatrix) else IntMatrix(
            [list(r) for r in period_map],
            ncols=source.torus_rank + 2 * source.genus,
        )
        phi = as_complex_matrix(lie_map, rows=target.group.dim)
        if f.nrows != target.lattice_rank or f.ncols != source.lattice_rank:
            raise ValueError("lattice map has the wrong shape")
        if phi.shape != (target.group.dim, source.group.dim):
            raise ValueError("Lie map has the wrong shape")
        if lam.nrows != target.torus_rank + 2 * target.genus or lam.ncols != (
            source.torus_rank + 2 * source.genus
        ):
            raise ValueError("period map has the wrong shape")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "lattice_map", f)
        object.__setattr__(self, "lie_map", phi)
        object.__setattr__(self, "period_map", lam)

    def __setattr__(self, *_):
        raise AttributeError("MotiveMorphism is immutable")

    def __repr__(self):
        return f"MotiveMorphism({self.source!r} -> {self.target!r})"


def identity_morphism(M: OneMotive) -> MotiveMorphism:
    n = M.torus_rank + 2 * M.genus
    return MotiveMorphism(
        M,
        M,
        IntMatrix.identity(M.lattice_rank),
        np.eye(M.group.dim, dtype=complex),
        IntMatrix.identity(n),
    )


def compose(m1: MotiveMorphism, m2: MotiveMorphism, eps=None) -> MotiveMorphism:
    """The composite m2 ∘ m1 (apply m1 first); targets must chain up."""
    if not same_presentation(m1.target, m2.source, eps):
        raise ValueError("morphisms do not chain: target of the first != source of the second")
    return MotiveMorphism(
        m1.source,
        m2.target,
        m2.lattice_map * m1.lattice_map,
        m2.lie_map @ m1.lie_map,
        m2.period_map * m1.period_map,
    )


def verify_morphism(m: MotiveMorphism, eps=None) -> ValidationReport:
    """Check the two defining congruences of a motive morphism.

    (1) lie_map · P = P' · period_map exactly within tolerance (the Lie
        map sends the source period lattice into the target one, with the
        claimed integral coordinates);
    (2) lie_map · Ũ ≡ Ũ' · lattice_map modulo the target period lattice
        (the defining square commutes).
    """
    eps = resolve(eps, "eps")
    failures = []
    P, Pp = m.source.period_presentation(), m.target.period_presentation()
    lhs = m.lie_map @ P
    rhs = Pp @ m.period_map.to_float()
    scale = max(1.0, float(np.max(np.abs(P))) if P.size else 1.0)
    if lhs.size and np.max(np.abs(lhs - rhs)) > eps * scale:
        failures.append(
            f"lie map does not match the period witness (max err {np.max(np.abs(lhs - rhs)):.3g})"
        )
    diff = m.lie_map @ m.source.u_lift - m.target.u_lift @ m.lattice_map.to_float()
    ok, _ = in_period_lattice(Pp, diff, eps)
    if not ok:
        failures.append("square does not commute modulo target periods")
    return ValidationReport(failures)


def canonical_sequence(M: OneMotive):
    """The exact sequence 0 → G → M → L[1] → 0 as two morphisms.

    Returns (incl, proj): the weight ≤ −1 part included with identity Lie
    map, and the projection onto the shifted lattice with zero Lie map.
    """
    r = M.lattice_rank
    n = M.torus_rank + 2 * M.genus
    G_part = weight_sub(M, -1)
    L_part = from_lattice(r)
    incl = MotiveMorphism(
        G_part,
        M,
        IntMatrix.zeros(r, 0),
        np.eye(M.group.dim, dtype=complex),
        IntMatrix.identity(n),
    )
    proj = MotiveMorphism(
        M,
        L_part,
        IntMatrix.identity(r),
        np.zeros((0, M.group.dim), dtype=complex),
        IntMatrix.zeros(0, n),
    )
    return incl, proj
