"""Analytic building blocks for genus-1 components.

Everything here lives on the complex torus C/(Z + Z*tau) with Im(tau) > 0:
Jacobi theta series, the weight-2 Eisenstein series, the quasi-periods of
the Weierstrass zeta function, and the Weierstrass sigma function.  Sigma
is evaluated through theta (quadratically convergent series) after exact
reduction of the argument into the centered fundamental cell, so a single
truncation order serves arguments of any size.

Truncation orders default to ``settings.sigma_n``; every public evaluator
re-sums at twice the order and insists the two values agree within
``settings.eps``, so an under-converged result raises instead of silently
returning garbage.
"""

import cmath
import math

from .config import resolve

TWO_PI_I = 2j * math.pi


class ConvergenceError(ArithmeticError):
    """Series truncation did not stabilize under doubling the order."""


def _check_tau(tau):
    if not tau.imag > 0:
        raise ValueError(f"need Im(tau) > 0, got tau = {tau}")


def _stable(f, n, eps):
    # evaluate at order n and 2n; accept only if doubling changes nothing
    coarse, fine = f(n), f(2 * n)
    if abs(fine - coarse) > eps * max(1.0, abs(fine)):
        raise ConvergenceError(
            f"series unstable under doubling ({coarse} vs {fine}); "
            f"raise the truncation order (sigma_n)"
        )
    return fine


def _theta1_raw(v, tau, n):
    # 2 * sum_{k>=0} (-1)^k q^{(k+1/2)^2} sin((2k+1) pi v),  q = e^{i pi tau}
    acc = 0j
    for k in range(n):
        term = cmath.exp(1j * math.pi * tau * (k + 0.5) ** 2) * cmath.sin(
            (2 * k + 1) * math.pi * v
        )
        acc += -term if k % 2 else term
    return 2 * acc


def _theta1_deriv0_raw(tau, n, order):
    # d^order/dv^order theta1 at v = 0, for odd order (even ones vanish)
    acc = 0j
    for k in range(n):
        term = (2 * k + 1) ** order * cmath.exp(1j * math.pi * tau * (k + 0.5) ** 2)
        acc += -term if k % 2 else term
    sign = -1 if order % 4 == 3 else 1
    return 2 * sign * math.pi**order * acc


def theta1(v, tau, n_terms=None, eps=None):
    """First Jacobi theta function of v in C/(Z + Z*tau).

    Odd in v, simple zeros exactly on the lattice.  The series converges
    everywhere but degrades for arguments far outside the fundamental
    cell; `sigma` reduces first, and callers evaluating theta directly
    should too.
    """
    _check_tau(tau)
    n = resolve(n_terms, "sigma_n")
    return _stable(lambda k: _theta1_raw(v, tau, k), n, resolve(eps, "eps"))


def theta1_prime0(tau, n_terms=None, eps=None):
    """Derivative of theta1 in its first argument, at v = 0."""
    _check_tau(tau)
    n = resolve(n_terms, "sigma_n")
    return _stable(lambda k: _theta1_deriv0_raw(tau, k, 1), n, resolve(eps, "eps"))


def theta1_third0(tau, n_terms=None, eps=None):
    """Third derivative of theta1 in its first argument, at v = 0.

    The ratio -theta1'''(0) / (3 * theta1'(0)) reproduces `eta1` by a
    route independent of the Eisenstein series; the tests hold the two
    implementations against each other.
    """
    _check_tau(tau)
    n = resolve(n_terms, "sigma_n")
    return _stable(lambda k: _theta1_deriv0_raw(tau, k, 3), n, resolve(eps, "eps"))


def eisenstein_e2(tau, n_terms=None, eps=None):
    """Weight-2 Eisenstein series 1 - 24 * sum sigma_1(k) e^{2 pi i k tau}."""
    _check_tau(tau)
    n = resolve(n_terms, "sigma_n")

    def partial(order):
        divisor_sum = [0] * (order + 1)
        for d in range(1, order + 1):
            for mult in range(d, order + 1, d):
                divisor_sum[mult] += d
        acc = 0j
        for k in range(1, order + 1):
            acc += divisor_sum[k] * cmath.exp(TWO_PI_I * k * tau)
        return 1 - 24 * acc

    return _stable(partial, n, resolve(eps, "eps"))


def eta1(tau, n_terms=None, eps=None):
    """Quasi-period of the Weierstrass zeta function along z -> z + 1.

    Equals (pi^2 / 3) * E_2(tau); for tau = i this is pi on the nose.
    """
    return math.pi**2 / 3 * eisenstein_e2(tau, n_terms, eps)


def quasi_periods(tau, n_terms=None, eps=None):
    """Quasi-periods (eta_1, eta_tau) along the generators 1 and tau.

    eta_tau is pinned by the Legendre relation
    eta_1 * tau - eta_tau = 2 pi i, which the sigma quasi-periodicity
    tests exercise along the tau direction.
    """
    e1 = eta1(tau, n_terms, eps)
    return e1, e1 * tau - TWO_PI_I


def reduce_to_cell(z, tau):
    """Split z as z0 + m + n*tau with the real coordinates of z0 in [-1/2, 1/2).

    Returns (z0, m, n).  Exact in m, n; z0 is computed by subtracting the
    integer parts, which keeps it small whenever z itself is moderate.
    """
    _check_tau(tau)
    y = z.imag / tau.imag
    x = z.real - y * tau.real
    m = math.floor(x + 0.5)
    n = math.floor(y + 0.5)
    return z - m - n * tau, m, n


def sigma(z, tau, n_terms=None, eps=None):
    """Weierstrass sigma function for the lattice Z + Z*tau.

    Built as exp(eta_1 z^2 / 2) * theta1(z | tau) / theta1'(0 | tau) after
    reducing z into the centered fundamental cell; the omitted cell
    translation is restored through the exact quasi-periodicity law
    sigma(z + w) = (-1)^(m + n + mn) e^{eta_w (z + w/2)} sigma(z) for
    w = m + n*tau.  Vanishes (to first order) exactly on the lattice.
    """
    _check_tau(tau)
    z = complex(z)
    z0, m, n = reduce_to_cell(z, tau)
    e1, etau = quasi_periods(tau, n_terms, eps)
    base = (
        cmath.exp(e1 * z0 * z0 / 2)
        * theta1(z0, tau, n_terms, eps)
        / theta1_prime0(tau, n_terms, eps)
    )
    if m == 0 and n == 0:
        return base
    w = m + n * tau
    factor = cmath.exp((m * e1 + n * etau) * (z0 + w / 2))
    sign = -1 if (m + n + m * n) % 2 else 1
    return sign * factor * base
