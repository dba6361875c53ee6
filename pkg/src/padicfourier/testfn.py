"""The test-function space D^l_N(Q_p).

A TestFunction is locally constant with support in the ball B_N and
declared parameter of constancy l <= N: it is determined by one complex
value per coset of B_l inside B_N (p^{N-l} values, canonical digit order,
zero coset first, so phi(0) is always values[0]).

The Fourier transform F[phi](xi) = integral of chi_p(xi x) phi(x) dx is
computed exactly as a finite character sum: for |xi|_p <= p^{-l},
F[phi](xi) = p^l * sum_c phi(c) chi_p(xi c), and F maps D^l_N onto
D^{-N}_{-l} (support and constancy swap with a sign).  On the canonical
coset words this is a plain DFT of length p^{N-l}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import qp
from .errors import BadWindow, ZeroArgument
from .qp import Prime, Rational


class TestFunction:
    """Element of D^l_N(Q_p) given by values on the canonical cosets.

    l is the declared constancy parameter; the representation is not
    required to be minimal (the true parameter may be larger).
    """

    __test__ = False  # keep pytest from collecting the class by name

    def __init__(self, prime: Prime, N: int, l: int, values):
        if l > N:
            raise BadWindow(f"constancy l = {l} exceeds support N = {N}")
        vals = np.asarray(values, dtype=np.complex128).reshape(-1)
        expected = prime.p ** (N - l)
        if vals.shape[0] != expected:
            raise BadWindow(
                f"need p^(N-l) = {expected} coset values, got {vals.shape[0]}"
            )
        self.prime = prime
        self.N = int(N)
        self.l = int(l)
        self.values = vals

    @property
    def at_zero(self) -> complex:
        return complex(self.values[0])

    def at(self, x: Rational) -> complex:
        """phi(x): 0 outside B_N, else the stored value of x's coset."""
        x = Fraction(x)
        if qp.norm(x, self.prime) > Fraction(self.prime.p) ** self.N:
            return 0j
        return complex(self.values[qp.coset_index(x, self.prime, self.N, self.l)])

    def window(self) -> tuple[int, int]:
        return (self.N, self.l)

    def __repr__(self):
        return (
            f"TestFunction(p={self.prime.p}, N={self.N}, l={self.l}, "
            f"{len(self.values)} cosets)"
        )


def delta_indicator(prime: Prime, k: int) -> TestFunction:
    """Delta_k, the indicator of the ball B_k; an element of D^k_k."""
    return TestFunction(prime, k, k, [1.0])


@lru_cache(maxsize=None)
def _dft_matrix(p: int, n: int) -> np.ndarray:
    # W[j, c] = chi(xi_j * x_c) = e^{2 pi i w_j w_c / p^n}
    if p**n > 1 << 12:
        raise BadWindow(
            f"Fourier window too wide: p^(N-l) = {p}^{n} cosets"
        )
    w = np.arange(p**n, dtype=np.int64)
    prod = np.outer(w, w) % p**n
    return np.exp(2j * np.pi * prod / p**n)


def fourier(phi: TestFunction) -> TestFunction:
    """Exact Fourier transform; maps D^l_N into D^{-N}_{-l}."""
    p = phi.prime.p
    n = phi.N - phi.l
    scale = float(Fraction(p) ** phi.l)
    vals = scale * (_dft_matrix(p, n) @ phi.values)
    return TestFunction(phi.prime, -phi.l, -phi.N, vals)


def convolve(phi: TestFunction, psi: TestFunction) -> TestFunction:
    """(phi * psi)(x) = integral of phi(y) psi(x - y) dy, exactly;
    the result lies in D^{max(l)}_{max(N)}."""
    if phi.prime != psi.prime:
        raise BadWindow("convolution operands live over different primes")
    N = max(phi.N, psi.N)
    l = max(phi.l, psi.l)
    reps = qp.enumerate_cosets(phi.prime, N, l)
    sources = qp.enumerate_cosets(phi.prime, phi.N, phi.l)
    measure = float(Fraction(phi.prime.p) ** phi.l)
    out = np.zeros(len(reps), dtype=np.complex128)
    for i, r in enumerate(reps):
        acc = 0j
        for c, v in zip(sources, phi.values):
            if v != 0:
                acc += complex(v) * psi.at(r - c)
        out[i] = acc * measure
    return TestFunction(phi.prime, N, l, out)


def dilate(phi: TestFunction, t: Rational) -> TestFunction:
    """x |-> phi(x/t); for |t|_p = p^a the result lies in D^{l+a}_{N+a}."""
    t = Fraction(t)
    if t == 0:
        raise ZeroArgument("cannot dilate by t = 0")
    a = -qp.valuation(t, phi.prime)
    N, l = phi.N + a, phi.l + a
    reps = qp.enumerate_cosets(phi.prime, N, l)
    vals = [phi.at(c / t) for c in reps]
    return TestFunction(phi.prime, N, l, vals)


def random_testfn(prime: Prime, N: int, l: int, seed: int) -> TestFunction:
    """Reproducible pseudorandom member of D^l_N with values in the unit disc."""
    if l > N:
        raise BadWindow(f"constancy l = {l} exceeds support N = {N}")
    rng = np.random.default_rng(seed)
    n = prime.p ** (N - l)
    radius = np.sqrt(rng.uniform(size=n))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return TestFunction(prime, N, l, radius * np.exp(1j * angle))
