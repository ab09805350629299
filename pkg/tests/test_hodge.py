import cmath
import math

import numpy as np
import pytest

from onemotives.hodge import (
    ExtClassPoint,
    MixedHodgeStructure,
    direct_sum,
    graded_piece,
    internal_dual,
    nullspace,
    span_intersection,
    spans_equal,
    tate,
    tate_twist,
    validate_type,
)
from onemotives.intlinalg import IntMatrix

TAUS = [1j, 0.3 + 1.2j, -0.5 + 0.8j]
STD2 = [[0, 1], [-1, 0]]


def elliptic_h1(tau, polarized=True):
    # H_1 of the torus C/(Z + Z tau): F0 is the kernel of the period row (1, tau)
    return MixedHodgeStructure(
        2,
        IntMatrix.zeros(2, 0),
        IntMatrix.identity(2),
        [[-tau], [1]],
        polarization=STD2 if polarized else None,
    )


def kummer_mhs(q):
    # weight structure of [Z -> C^*], 1 -> q: F0 kills the row (2 pi i, log q);
    # no abelian part, so the two weight steps agree
    return MixedHodgeStructure(
        2,
        [[1], [0]],
        [[1], [0]],
        [[-cmath.log(q) / (2j * math.pi)], [1]],
    )


# -- validation ----------------------------------------------------------------

def test_validate_tate_structures():
    assert validate_type(tate(1)).ok
    assert validate_type(tate(0)).ok
    bad = MixedHodgeStructure(1, IntMatrix.identity(1), IntMatrix.identity(1), [[1.0]])
    report = validate_type(bad)
    assert not report.ok
    assert "F0 nonzero on gr_-2" in report.failures


@pytest.mark.parametrize("tau", TAUS)
def test_validate_elliptic_any_nonreal_line(tau):
    # without a polarization any line not defined over R is fine
    H = MixedHodgeStructure(
        2, IntMatrix.zeros(2, 0), IntMatrix.identity(2), [[tau], [1]]
    )
    assert validate_type(H).ok
    real = MixedHodgeStructure(
        2, IntMatrix.zeros(2, 0), IntMatrix.identity(2), [[1.0], [0.5]]
    )
    assert "F0 and conjugate do not split gr_-1" in validate_type(real).failures


@pytest.mark.parametrize("tau", TAUS)
def test_polarization_sign_convention(tau):
    # our convention: F0 = ker(1, tau) is the positive line for [[0,1],[-1,0]];
    # the opposite line fails positivity rather than isotropy
    assert validate_type(elliptic_h1(tau)).ok
    flipped = MixedHodgeStructure(
        2,
        IntMatrix.zeros(2, 0),
        IntMatrix.identity(2),
        [[tau], [1]],
        polarization=STD2,
    )
    assert "polarization positivity fails" in validate_type(flipped).failures


def test_validate_kummer():
    assert validate_type(kummer_mhs(5)).ok
    assert validate_type(kummer_mhs(2 + 1j)).ok


def test_validate_flags_unsaturated_step():
    H = MixedHodgeStructure(
        2, IntMatrix.zeros(2, 0), [[2], [0]], [[0.0], [1.0]]
    )
    # canonicalization keeps the lattice 2Z x 0, which is not saturated
    assert "W_-1 not saturated" in validate_type(H).failures


# -- graded pieces ---------------------------------------------------------------

def test_graded_pieces_of_tate():
    assert graded_piece(tate(1), -2) == tate(1)
    assert graded_piece(tate(1), 0).rank == 0
    assert graded_piece(tate(1), -1).rank == 0
    with pytest.raises(ValueError):
        graded_piece(tate(1), -3)


def test_graded_pieces_of_kummer():
    H = kummer_mhs(7)
    assert graded_piece(H, -1).rank == 0  # t=1, g=0, r=1 leaves nothing in weight -1
    assert graded_piece(H, -2) == tate(1)
    assert graded_piece(H, 0) == tate(0)


@pytest.mark.parametrize("tau", TAUS)
def test_graded_piece_elliptic(tau):
    H = elliptic_h1(tau)
    G = graded_piece(H, -1)
    assert G.rank == 2 and G.graded_rank(-1) == 2
    assert spans_equal(G.f0_basis, np.array([[-tau], [1]]))
    assert validate_type(G).ok


# -- Tate twist ------------------------------------------------------------------

def test_tate_twist_basics():
    assert tate_twist(tate(0), 1) == tate(1)
    assert tate_twist(tate(1), -1) == tate(0)
    assert tate_twist(kummer_mhs(3), 0) == kummer_mhs(3)
    with pytest.raises(ValueError):
        tate_twist(elliptic_h1(1j), 1)  # weight -1 content would land at -3
    with pytest.raises(ValueError):
        tate_twist(tate(1), 1)
    with pytest.raises(ValueError):
        tate_twist(tate(0), -1)


# -- internal dual ---------------------------------------------------------------

def test_internal_dual_of_tate():
    assert internal_dual(tate(1)) == tate(0)
    assert internal_dual(tate(0)) == tate(1)
    assert internal_dual(tate(1, copies=3)) == tate(0, copies=3)


@pytest.mark.parametrize("tau", TAUS)
def test_internal_dual_elliptic_is_modular_image(tau):
    D = internal_dual(elliptic_h1(tau))
    assert D.rank == 2 and D.graded_rank(-1) == 2
    assert validate_type(D).ok
    v = D.f0_basis[:, 0]
    tau_dual = -v[0] / v[1]
    assert tau_dual.imag > 0
    # dual modulus is an integral Moebius image of tau (here -1/tau)
    hits = [
        (a, b, c, d)
        for a in range(-2, 3)
        for b in range(-2, 3)
        for c in range(-2, 3)
        for d in range(-2, 3)
        if a * d - b * c == 1
        and abs(tau_dual - (a * tau + b) / (c * tau + d)) < 1e-9
    ]
    assert hits
    # principal polarization transports to the standard form again
    assert D.polarization == IntMatrix(STD2)


def test_internal_dual_rejects_invalid():
    bad = MixedHodgeStructure(1, IntMatrix.identity(1), IntMatrix.identity(1), [[1.0]])
    with pytest.raises(ValueError):
        internal_dual(bad)


@pytest.mark.parametrize(
    "H",
    [
        tate(0),
        tate(1),
        elliptic_h1(1j),
        elliptic_h1(0.3 + 1.2j),
        kummer_mhs(5),
        kummer_mhs(2 - 3j),
        direct_sum(kummer_mhs(2), elliptic_h1(0.3 + 1.2j)),
    ],
)
def test_internal_dual_invariants(H):
    D = internal_dual(H)
    # graded ranks mirror around weight -1
    for i in (0, -1, -2):
        assert D.graded_rank(i) == H.graded_rank(-2 - i)
    assert D.f0_dim + H.f0_dim == H.rank
    # annihilation is exact on the integral level
    assert (D.w2_basis.transpose() * H.w1_basis).is_zero()
    assert (D.w1_basis.transpose() * H.w2_basis).is_zero()
    # evaluation pairing in these coordinates is the standard (unimodular) one
    assert IntMatrix.identity(H.rank).is_unimodular()
    # double dual returns the original canonical data
    assert internal_dual(D) == H


# -- direct sum ------------------------------------------------------------------

def test_direct_sum_with_zero():
    H = kummer_mhs(3)
    Z = tate(0, copies=0)
    assert direct_sum(H, Z) == H
    assert direct_sum(Z, H) == H


def test_direct_sum_mixes_weights():
    S = direct_sum(tate(0), tate(1))
    assert (S.graded_rank(0), S.graded_rank(-1), S.graded_rank(-2)) == (1, 0, 1)
    assert validate_type(S).ok


def test_direct_sum_rank_additivity():
    A, B = elliptic_h1(1j), kummer_mhs(4)
    S = direct_sum(A, B)
    assert validate_type(S).ok
    for i in (0, -1, -2):
        assert S.graded_rank(i) == A.graded_rank(i) + B.graded_rank(i)
    assert S.polarization is not None  # kummer side contributes a 0x0 block
    D = internal_dual(S)
    assert validate_type(D).ok


# -- helpers ---------------------------------------------------------------------

def test_nullspace_and_intersection():
    A = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    B = np.array([[1.0], [0.0], [0.0]])
    N = nullspace(A.T)
    assert N.shape == (3, 1)
    assert np.allclose(A.T @ N, 0)
    I = span_intersection(A, B)
    assert I.shape[1] == 1 and spans_equal(I, B)


# -- torus points ----------------------------------------------------------------

def test_ext_class_point_mod_lattice():
    tau = 0.3 + 1.2j
    p = ExtClassPoint(None, [0.3 + 0.1j], [[1, tau]])
    assert p == ExtClassPoint(None, [0.3 + 0.1j + 2 - 3 * tau], [[1, tau]])
    assert p != ExtClassPoint(None, [0.3 + 0.1j + 0.5], [[1, tau]])
    r = p.reduced()
    assert p == r
    coords = r.lattice_coordinates(r.value)
    assert np.all(coords >= -1e-9) and np.all(coords < 1 + 1e-9)


def test_ext_class_point_rejects_bad_data():
    with pytest.raises(ValueError):
        ExtClassPoint(None, [0.1], [[1, 2]])  # real-degenerate lattice
    with pytest.raises(ValueError):
        ExtClassPoint(None, [0.1], [[1, 1j], [0, 0]])
    with pytest.raises(ValueError):
        ExtClassPoint(kummer_mhs(2), [0.1], [[1, 1j]])  # ambient not pure -1
