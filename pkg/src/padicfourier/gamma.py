"""p-adic Gamma functions, regularization constants, and exact power sums.

Closed forms implemented here:

* Gamma_p(alpha) = (1 - p^{alpha-1}) / (1 - p^{-alpha}), with
  alpha-derivatives to any order via jet arithmetic;
* Gamma_p(pi_alpha) for a ramified pi_1, computed as the stabilized
  improper integral sum_gamma p^{gamma(alpha-1)} G_gamma where G_gamma is
  the exact Haar integral of pi_1 * chi_p over the sphere S_gamma (all but
  one shell vanish exactly, so the partial sums stabilize exactly);
* I_0(alpha; m), the regularized unit-ball integral of
  |x|^{alpha-1} pi_1(x) log_p^m |x|: identically zero for ramified pi_1,
  and the log_p e - scaled derivative jet of (1-1/p)/(1-p^{-alpha})
  otherwise;
* Bernoulli numbers from the binomial recurrence, and the power-sum
  polynomial S_s(n) = 1^s + ... + n^s evaluated as a polynomial at any
  integer (for n <= -1 it gives -sum_{n+1 <= g <= 0} g^s).

Poles of the continued forms sit at alpha = 2 pi i j / ln p; inputs within
``POLE_TOLERANCE`` of one are a hard error.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import comb

from .characters import MultChar, NormedMultChar, sphere_char_chi_integral
from .errors import NotStabilized, PoleProximity
from .jets import Jet, p_power_jet
from .qp import Prime

#: hard-error radius around the poles of 1/(1 - p^{-alpha})
POLE_TOLERANCE = 1e-12

#: increment threshold certifying a stabilized improper integral
STABILIZATION_EPS = 1e-13


def logp_e(p: int) -> float:
    """log_p e = 1 / ln p."""
    return 1.0 / math.log(p)


def check_pole(prime: Prime, alpha: complex) -> None:
    d = 1 - cmath.exp(-complex(alpha) * math.log(prime.p))
    if abs(d) <= POLE_TOLERANCE:
        raise PoleProximity(
            f"alpha = {alpha} is within {POLE_TOLERANCE} of a pole "
            f"2*pi*i*j/ln({prime.p}) (|1 - p^-alpha| = {abs(d):.3e})"
        )


def gamma_p(prime: Prime, alpha: complex, order: int = 0) -> Jet:
    """Jet of Gamma_p(alpha) = (1 - p^{alpha-1}) / (1 - p^{-alpha})."""
    check_pole(prime, alpha)
    p = prime.p
    one = Jet.constant(1, order)
    num = one - p_power_jet(p, 1, alpha, order).scale(Fraction(1, p))
    den = one - p_power_jet(p, -1, alpha, order)
    return num / den


def ball_norm_power_jet(prime: Prime, lam: int, alpha: complex, order: int) -> Jet:
    """Jet of the continued integral over B_lam of |x|^{alpha-1} dx,
    i.e. (1 - 1/p) p^{lam*alpha} / (1 - p^{-alpha})."""
    check_pole(prime, alpha)
    p = prime.p
    den = Jet.constant(1, order) - p_power_jet(p, -1, alpha, order)
    return (p_power_jet(p, lam, alpha, order) / den).scale(1 - Fraction(1, p))


def logp_scaled(jet: Jet, p: int) -> Jet:
    """Apply the log_p^k e factor to entry k, turning d^k/dalpha^k into
    the log_p-derivative normalization the asymptotic formulas use."""
    s = logp_e(p)
    return Jet(tuple(c * s**k for k, c in enumerate(jet.coeffs)))


def i0(prime: Prime, chr_: NormedMultChar, alpha: complex, order: int = 0) -> Jet:
    """Jet whose entry k is log_p^k e * d^k I_0(alpha)/dalpha^k, where
    I_0(alpha) is the unit-ball integral of |x|^{alpha-1} pi_1(x):
    zero for ramified pi_1, (1-1/p)/(1-p^{-alpha}) for trivial pi_1."""
    if not chr_.is_trivial():
        return Jet.constant(0, order)
    return logp_scaled(ball_norm_power_jet(prime, 0, alpha, order), prime.p)


def gamma_pi(chr_: MultChar, order: int = 0, max_shell: int | None = None) -> Jet:
    """Jet of Gamma_p(pi_alpha) = F[pi_alpha](1).

    Trivial pi_1 delegates to the closed form :func:`gamma_p`.  Ramified
    pi_1 sums the exact sphere integrals G_gamma of pi_1 * chi_p over
    shells |gamma| <= K together with their term-wise alpha-derivatives
    (gamma ln p)^k p^{gamma(alpha-1)} G_gamma; stabilization is certified
    by the last two shell increments.
    """
    pi1 = chr_.pi1
    prime = pi1.prime
    if pi1.is_trivial():
        return gamma_p(prime, chr_.alpha, order)
    k0 = pi1.k0
    K = k0 + 4 if max_shell is None else int(max_shell)
    if K < k0 + 2:
        raise NotStabilized(f"max_shell K = {K} below k0 + 2 = {k0 + 2}")
    p = prime.p
    total = Jet.constant(0, order)
    increments = []
    for gamma in range(-K, K + 1):
        g = sphere_char_chi_integral(pi1, gamma, 1)
        term = p_power_jet(p, gamma, chr_.alpha, order).scale(
            g * float(Fraction(p) ** (-gamma))
        )
        total = total + term
        increments.append(max(abs(c) for c in term.coeffs))
    if max(increments[-2:]) >= STABILIZATION_EPS:
        raise NotStabilized(
            f"Gamma_p(pi_alpha) partial sums not stabilized by shell {K}: "
            f"last increments {increments[-2:]}"
        )
    return total


# ---------------------------------------------------------------------------
# Bernoulli numbers and Faulhaber power-sum polynomials


@lru_cache(maxsize=None)
def bernoulli(r: int) -> Fraction:
    """Bernoulli number B_r (convention B_1 = -1/2), by the recurrence
    B_0 = 1, sum_{j=0}^{g-1} C(g, j) B_j = 0."""
    if r < 0:
        raise ValueError(f"negative Bernoulli index {r}")
    if r == 0:
        return Fraction(1)
    g = r + 1
    acc = sum(comb(g, j) * bernoulli(j) for j in range(r))
    return -Fraction(acc, comb(g, r))


@lru_cache(maxsize=None)
def faulhaber_coeffs(s: int) -> tuple[Fraction, ...]:
    """Coefficients (by power, constant first) of the polynomial S_s with
    S_s(n) = 1^s + ... + n^s for n >= 1; S_s has no constant term."""
    if s < 0:
        raise ValueError(f"negative power-sum exponent {s}")
    if s == 0:
        return (Fraction(0), Fraction(1))
    coeffs = [Fraction(0)] * (s + 2)
    for r in range(s + 1):
        coeffs[s + 1 - r] += Fraction(comb(s + 1, r), s + 1) * bernoulli(r)
    coeffs[s] += 1  # B_1 = -1/2 convention needs the extra n^s term
    return tuple(coeffs)


def faulhaber_sum(s: int, gamma0: int) -> Fraction:
    """S_s(gamma0), as a polynomial for any integer gamma0.

    For gamma0 >= 1 this is sum_{g=1}^{gamma0} g^s; for gamma0 <= -1 it
    equals -sum_{g=gamma0+1}^{0} g^s.
    """
    coeffs = faulhaber_coeffs(s)
    acc = Fraction(0)
    power = 1
    for c in coeffs:
        acc += c * power
        power *= gamma0
    return acc
