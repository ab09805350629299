"""Shared generators for randomized motive families used across test modules."""

import numpy as np

from onemotives.motives import OneMotive, PolarizedAbelianVariety, SemiAbelianVariety


def random_period_matrix(rng, g):
    """Symmetric g x g with positive definite imaginary part, entries O(1)."""
    S = rng.normal(size=(g, g))
    re = rng.normal(size=(g, g))
    return (re + re.T) / 2 + 1j * (S @ S.T + 0.6 * np.eye(g))


def random_motive(rng, r, t, g):
    omega = random_period_matrix(rng, g)
    eta = rng.normal(size=(t, 2 * g)) + 1j * rng.normal(size=(t, 2 * g))
    u = rng.normal(size=(t + g, r)) + 1j * rng.normal(size=(t + g, r))
    G = SemiAbelianVariety(t, PolarizedAbelianVariety(omega), eta)
    return OneMotive(r, G, u)


def product_motive(rng, taus, t, r=0):
    """Torus extension of a product of elliptic curves (diagonal periods)."""
    g = len(taus)
    omega = np.diag(np.asarray(taus, dtype=complex))
    eta = rng.normal(size=(t, 2 * g)) + 1j * rng.normal(size=(t, 2 * g))
    u = rng.normal(size=(t + g, r)) + 1j * rng.normal(size=(t + g, r))
    G = SemiAbelianVariety(t, PolarizedAbelianVariety(omega), eta)
    return OneMotive(r, G, u)


def random_unimodular(rng, n, steps=12):
    """Product of random elementary row operations: always determinant ±1."""
    M = np.eye(n, dtype=int)
    if n < 2:
        return M
    for _ in range(steps):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        M[i] += int(rng.integers(-2, 3)) * M[j]
    if rng.integers(0, 2):
        M[[0, n - 1]] = M[[n - 1, 0]]
    return M


def random_curve_config(rng, max_components=4, max_edges=5, allow_deleted=False):
    """Seminormal curve configuration with genus <= 1 components.

    The total edge count of the dual graph (after class expansion) stays
    within ``max_edges``.  Genus-1 coordinates are drawn inside the open
    fundamental cell so distinct draws are never lattice-equivalent.
    """
    from onemotives.curves import CurveConfiguration

    n = int(rng.integers(1, max_components + 1))
    components, genus_of, taus = [], {}, {}
    for i in range(n):
        label = f"c{i}"
        if rng.random() < 0.4:
            tau = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.6))
            components.append((label, 1, tau))
            genus_of[label], taus[label] = 1, tau
        else:
            components.append((label, 0))
            genus_of[label] = 0

    points, used, counter = [], {c[0]: [] for c in components}, iter(range(10**6))

    def fresh_point(comp):
        while True:
            if genus_of[comp]:
                a, b = rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45)
                coord = complex(a + b * taus[comp])
            elif rng.random() < 0.1:
                coord = "inf"
            else:
                coord = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            clear = all(
                isinstance(coord, str) != isinstance(seen, str)
                or (isinstance(coord, str) and coord != seen)
                or (not isinstance(coord, str) and abs(coord - seen) > 1e-2)
                for seen in used[comp]
            )
            if clear:
                used[comp].append(coord)
                label = f"p{next(counter)}"
                points.append((label, comp, coord))
                return label

    comp_labels = [c[0] for c in components]
    budget, gluings = int(rng.integers(0, max_edges + 1)), []
    while budget > 0:
        size = 3 if budget >= 2 and rng.random() < 0.3 else 2
        hosts = [comp_labels[int(rng.integers(0, n))] for _ in range(size)]
        gluings.append([fresh_point(c) for c in hosts])
        budget -= size - 1

    deleted = []
    if allow_deleted:
        for _ in range(int(rng.integers(0, 4))):
            deleted.append(fresh_point(comp_labels[int(rng.integers(0, n))]))

    return CurveConfiguration(components, points, gluings, deleted)
