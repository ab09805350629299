"""Acceptance suite: ten criteria, one test (and one pass/fail line) each.

Criteria 1-4 share one deterministic family of 54 motives covering every
rank triple with t, g, r in {0, 1, 2} (two independent draws per triple).
Criteria 5 and 9 share a family of 20 random proper seminormal
configurations.  Stated runtime budgets are asserted, not just hoped for.
"""

import cmath
import math
import time

import numpy as np
import pytest

from _families import random_curve_config, random_motive
from onemotives.curves import (
    CurveConfiguration,
    abel_jacobi_plus,
    alb_minus,
    alb_plus,
    check_lemma_dual,
    dual_graph,
    pic_minus,
    pic_plus,
)
from onemotives.dualize import (
    cartier_dual,
    double_dual_compare,
    pairing_mod_m,
    symmetric_avatar,
)
from onemotives.intlinalg import IntMatrix
from onemotives.motives import (
    PolarizedAbelianVariety,
    from_abelian,
    from_lattice,
    from_torus,
    kummer,
    rebase_u,
    same_presentation,
)
from onemotives.realize import iso_test, motivic, realization_sequences_check, t_hodge, t_mod_m

LEVELS = (2, 3, 4, 5, 6, 12)


@pytest.fixture(scope="module")
def family():
    rng = np.random.default_rng(20260816)
    motives = []
    for t in (0, 1, 2):
        for g in (0, 1, 2):
            for r in (0, 1, 2):
                motives.append(random_motive(rng, r, t, g))
                motives.append(random_motive(rng, r, t, g))
    return motives


@pytest.fixture(scope="module")
def curve_family():
    rng = np.random.default_rng(20260817)
    proper = [random_curve_config(rng) for _ in range(20)]
    opened = [random_curve_config(rng, allow_deleted=True) for _ in range(8)]
    return proper + opened


def nodal_cubic():
    return CurveConfiguration(
        [("c", 0)], [("p0", "c", 0), ("p1", "c", "inf")], gluings=[["p0", "p1"]]
    )


def triangle():
    return CurveConfiguration(
        [("x", 0), ("y", 0), ("z", 0)],
        [
            ("x0", "x", 0),
            ("x1", "x", 1),
            ("y0", "y", 0),
            ("y1", "y", 1),
            ("z0", "z", 0),
            ("z1", "z", 1),
        ],
        gluings=[["x1", "y0"], ["y1", "z0"], ["z1", "x0"]],
    )


def test_01_hodge_round_trip_on_family(family):
    assert len(family) >= 50
    start = time.monotonic()
    for M in family:
        back = motivic(t_hodge(M, eps=1e-6), eps=1e-6).motive
        result = iso_test(M, back, eps=1e-6)
        assert result.status == "verified_iso", (M.rank_triple(), result.detail)
    assert time.monotonic() - start < 60.0


def test_02_realization_sequences_on_family(family):
    start = time.monotonic()
    for M in family:
        for m in LEVELS:
            report = realization_sequences_check(M, m)
            assert report["status"] == "pass", report
    assert time.monotonic() - start < 60.0


def test_03_finite_level_size_law(family):
    for M in family:
        r, t, g = M.rank_triple()
        for m in LEVELS:
            assert t_mod_m(M, m).group.order() == m ** (t + 2 * g + r)


def test_04_double_duality_on_family(family):
    for M in family:
        report = double_dual_compare(M)
        assert report["status"] == "pass", report
        assert report["details"]["iso_status"] == "verified_iso"
        r, t, g = M.rank_triple()
        assert cartier_dual(M).rank_triple() == (t, r, g)
        assert abs(symmetric_avatar(M).psi.det()) == 1
        for m in LEVELS:
            assert math.gcd(int(pairing_mod_m(M, m).det()) % m, m) == 1


def test_05_albanese_picard_coincidence_on_random_configurations(curve_family):
    assert len(curve_family) >= 20
    for C in curve_family:
        P = pic_plus(C)
        assert P.torus_rank == dual_graph(C).b1
        result = iso_test(alb_plus(C), P)
        assert result.status == "verified_iso", result.detail


def test_06_named_instances():
    multiplicative, lattice_shift = from_torus(1), from_lattice(1)
    for C in (nodal_cubic(), triangle()):
        assert same_presentation(alb_plus(C), multiplicative)
        assert same_presentation(pic_plus(C), multiplicative)
        assert same_presentation(alb_minus(C), lattice_shift)
        assert same_presentation(pic_minus(C), lattice_shift)
    tau = 0.3 + 1.2j
    E = CurveConfiguration([("e", 1, tau)], [])
    target = from_abelian(PolarizedAbelianVariety([[tau]]))
    for M in (alb_plus(E), alb_minus(E), pic_plus(E), pic_minus(E)):
        assert iso_test(M, target).status == "verified_iso"


def _distinct_cell_points(rng, tau, count, taken):
    points = []
    while len(points) < count:
        z = rng.uniform(-0.45, 0.45) + rng.uniform(-0.45, 0.45) * tau
        if all(abs(z - w) > 5e-2 for w in taken + points):
            points.append(complex(z))
    return points


def test_07_marked_divisor_duality():
    rng = np.random.default_rng(20260818)
    tau = 1j
    for n_s, n_t in ((1, 1), (2, 3), (3, 3)):
        s_coords = _distinct_cell_points(rng, tau, n_s, [])
        t_coords = _distinct_cell_points(rng, tau, n_t, s_coords)
        points = [(f"s{i}", "e", z) for i, z in enumerate(s_coords)]
        points += [(f"t{i}", "e", z) for i, z in enumerate(t_coords)]
        C = CurveConfiguration([("e", 1, tau)], points)
        start = time.monotonic()
        report = check_lemma_dual(
            C, [f"s{i}" for i in range(n_s)], [f"t{i}" for i in range(n_t)], eps=1e-6
        )
        assert report["status"] == "pass", report
        assert time.monotonic() - start < 30.0
    line = CurveConfiguration(
        [("l", 0)],
        [("a", "l", 0), ("b", "l", "inf"), ("c", "l", 1), ("d", "l", -1)],
    )
    start = time.monotonic()
    report = check_lemma_dual(line, ["a", "b"], ["c", "d"], eps=1e-6)
    assert report["status"] == "pass", report
    assert time.monotonic() - start < 30.0


def _nonzero_draw(rng):
    z = complex(rng.normal(), rng.normal())
    while not 0.3 < abs(z) < 3.0:
        z = complex(rng.normal(), rng.normal())
    return z


def test_08_abel_jacobi_on_the_nodal_cubic():
    C = nodal_cubic()
    rng = np.random.default_rng(20260819)
    for _ in range(100):
        x, y = _nonzero_draw(rng), _nonzero_draw(rng)
        point = abel_jacobi_plus(C, [("c", x, 1), ("c", y, -1)])
        assert abs(cmath.exp(point.value[0]) - x / y) < 1e-9
    for _ in range(20):
        # f = prod(z - a_i) / prod(z - b_i) with prod a = prod b and equal
        # degrees: then f(0) = f(inf) = 1, i.e. f is 1 on both node branches.
        degree = int(rng.integers(2, 4))
        while True:
            zeros = [_nonzero_draw(rng) for _ in range(degree)]
            poles = [_nonzero_draw(rng) for _ in range(degree - 1)]
            last = np.prod(zeros) / np.prod(poles)
            poles.append(complex(last))
            if abs(last) < 1e-6:
                continue
            support = zeros + poles
            if all(
                abs(a - b) > 1e-6
                for i, a in enumerate(support)
                for b in support[i + 1 :]
            ):
                break
        divisor = [("c", z, 1) for z in zeros] + [("c", p, -1) for p in poles]
        assert abel_jacobi_plus(C, divisor).is_identity()


def test_09_betti_rank_of_picard_minus(curve_family):
    proper = [C for C in curve_family if not C.deleted]
    assert len(proper) >= 20
    for C in proper:
        total_genus = sum(comp.genus for comp in C.components)
        expected = dual_graph(C).b1 + 2 * total_genus
        assert t_hodge(pic_minus(C)).rank == expected


def test_10_faithfulness_probe():
    assert iso_test(kummer(2), kummer(3)).status != "verified_iso"
    rng = np.random.default_rng(20260820)
    for q in (2, 5, 7):
        M = kummer(q)
        shift = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        rebased = rebase_u(M, IntMatrix([[shift]]))
        assert iso_test(M, rebased).status == "verified_iso"
