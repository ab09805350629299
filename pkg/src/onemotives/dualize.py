"""Cartier duality computed through the Hodge realization.

The dual of a 1-motive is read off the twisted dual of its Hodge
structure and normalized back to period form.  The byproducts of that
route — the evaluation pairing between the two Hodge lattices and the
extension classes of the characters — are packaged as the symmetric
presentation data and the finite-level pairings.
"""

import math

import numpy as np

from .config import resolve
from .hodge import ExtClassPoint, internal_dual
from .intlinalg import IntMatrix
from .motives import TWO_PI_I, OneMotive
from .realize import iso_test, motivic, t_hodge

__all__ = [
    "SymmetricAvatar",
    "cartier_dual",
    "symmetric_avatar",
    "pairing_mod_m",
    "double_dual_compare",
]


def _dual_with_pairing(M, eps=None):
    """The dual motive and the evaluation pairing matrix.

    The dual Hodge lattice starts out in coordinates dual to the source
    (evaluation = dot product, valued in Z(1) on the basis 2πi), and the
    normalization to period shape rebases it by a unimodular matrix; that
    matrix IS the Gram matrix of the evaluation pairing between the
    source basis and the dual motive's basis.
    """
    H = t_hodge(M, eps)
    result = motivic(internal_dual(H, eps), eps)
    return result.motive, result.lattice_witness


def cartier_dual(M: OneMotive, eps=None) -> OneMotive:
    """The dual 1-motive: lattice and character roles exchange, genus stays."""
    dual, _ = _dual_with_pairing(M, eps)
    return dual


class SymmetricAvatar:
    """The self-dual presentation (lattice, characters, A, A^∨, u, v, ψ).

    `v_points` lists, per character of the torus part, its extension
    class as a point of the dual abelian variety; `psi` is the integral
    evaluation pairing between the Hodge lattice of the motive and that
    of its dual, valued in Z(1) on the basis 2πi.
    """

    __slots__ = (
        "lattice_rank",
        "character_rank",
        "abelian",
        "dual_abelian",
        "u_lift",
        "v_points",
        "psi",
    )

    def __init__(self, lattice_rank, character_rank, abelian, dual_abelian, u_lift, v_points, psi):
        object.__setattr__(self, "lattice_rank", int(lattice_rank))
        object.__setattr__(self, "character_rank", int(character_rank))
        object.__setattr__(self, "abelian", abelian)
        object.__setattr__(self, "dual_abelian", dual_abelian)
        object.__setattr__(self, "u_lift", u_lift)
        object.__setattr__(self, "v_points", tuple(v_points))
        object.__setattr__(self, "psi", psi)

    def __setattr__(self, *_):
        raise AttributeError("SymmetricAvatar is immutable")

    def __repr__(self):
        return (
            f"SymmetricAvatar(r={self.lattice_rank}, t={self.character_rank}, "
            f"g={self.abelian.genus})"
        )


def symmetric_avatar(M: OneMotive, eps=None) -> SymmetricAvatar:
    """Extract the symmetric presentation data of a 1-motive.

    The extension class of character j is the point η_b − η_a·Ω of the
    dual torus ℂ^g / 2πi(Z^g + Ω^T Z^g): exactly the obstruction row that
    must land in that lattice for the extension to trivialize on j.
    """
    r, t, g = M.rank_triple()
    dual, psi = _dual_with_pairing(M, eps)
    omega = M.group.abelian.omega
    eta = M.group.eta
    dual_lattice = TWO_PI_I * np.hstack([np.eye(g), -omega.T])
    v_points = [
        ExtClassPoint(None, eta[j, g:] - eta[j, :g] @ omega, dual_lattice, eps=eps)
        for j in range(t)
    ]
    return SymmetricAvatar(
        lattice_rank=r,
        character_rank=t,
        abelian=M.group.abelian,
        dual_abelian=dual.group.abelian,
        u_lift=M.u_lift,
        v_points=v_points,
        psi=psi,
    )


def pairing_mod_m(M: OneMotive, m, eps=None) -> IntMatrix:
    """Gram matrix of the level-m duality pairing, entries reduced mod m.

    Reduction of the integral evaluation pairing; perfectness (the
    determinant is a unit mod m) is checked, not assumed.
    """
    m = int(m)
    if m < 2:
        raise ValueError("level must be at least 2")
    _, psi = _dual_with_pairing(M, eps)
    if math.gcd(psi.det() % m, m) != 1:
        raise ArithmeticError("level pairing is degenerate")
    return IntMatrix([[x % m for x in row] for row in psi.data], ncols=psi.ncols)


def double_dual_compare(M: OneMotive, eps=None, denom_bound=None) -> dict:
    """Check that dualizing twice lands back on the motive, up to isomorphism."""
    eps = resolve(eps, "eps")
    double = cartier_dual(cartier_dual(M, eps), eps)
    result = iso_test(M, double, eps=eps, denom_bound=denom_bound)
    exchange_ok = double.rank_triple() == M.rank_triple()
    status = "pass" if (result.status == "verified_iso" and exchange_ok) else "fail"
    return {
        "check": "double_dual",
        "status": status,
        "details": {
            "rank_triple": list(M.rank_triple()),
            "double_dual_rank_triple": list(double.rank_triple()),
            "iso_status": result.status,
            "iso_detail": result.detail,
        },
    }
