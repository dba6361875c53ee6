"""Regularized pairings of QAH distributions and the scaling law."""

import random
from fractions import Fraction as Fr

import pytest

from padicfourier import (
    DiracDelta,
    PiAlphaLog,
    PLog,
    Prime,
    apply,
    brute_force_oracle,
    delta_indicator,
    homogeneity_defect,
    quadratic_character,
    random_testfn,
    table_character,
    trivial_character,
)
from padicfourier.errors import PoleProximity, ZeroArgument
from padicfourier.singular import SingularIntegralRequest

P2, P3, P5 = Prime(2), Prime(3), Prime(5)


def cubic_mod9():
    return table_character(
        P3, 2, {1: Fr(0), 2: Fr(2, 3), 4: Fr(1, 3), 5: Fr(1, 3), 7: Fr(2, 3), 8: Fr(0)}
    )


def test_variant_validation():
    with pytest.raises(ValueError):
        PiAlphaLog(0, trivial_character(P2), 0)  # that's pi_0: use PLog/delta
    PiAlphaLog(0, quadratic_character(P3), 0)  # fine: ramified at alpha = 0
    with pytest.raises(ValueError):
        PLog(0)
    with pytest.raises(ValueError):
        PiAlphaLog(1, trivial_character(P2), -1)


def test_apply_examples():
    # <P(1/|x|), Delta_0> = 0: no interior difference, no exterior support
    assert apply(PLog(1), delta_indicator(P3, 0)) == pytest.approx(0)
    # <pi_alpha, Delta_0> = (1 - 1/p)/(1 - p^-alpha)
    for p, alpha in ((2, 1.5), (3, 0.5 - 0.7j)):
        prime = Prime(p)
        f = PiAlphaLog(alpha, trivial_character(prime), 0)
        want = (1 - 1 / p) / (1 - complex(p) ** -alpha)
        assert apply(f, delta_indicator(prime, 0)) == pytest.approx(want)
    # ramified character: I_0 = 0, so <f, Delta_0> = 0
    for m in (0, 1, 3):
        f = PiAlphaLog(1.2, quadratic_character(P3), m)
        assert abs(apply(f, delta_indicator(P3, 0))) < 1e-14


def test_apply_dirac_delta():
    phi = random_testfn(P2, 1, -1, seed=1)
    assert apply(DiracDelta(), phi) == phi.at(0)


def test_apply_pole_proximity():
    with pytest.raises(PoleProximity):
        apply(PiAlphaLog(1e-15 + 0j, trivial_character(P2), 1), delta_indicator(P2, 0))


def test_apply_is_linear():
    rng = random.Random(31)
    fs = [
        PiAlphaLog(1.3 - 0.8j, trivial_character(P3), 1),
        PiAlphaLog(0.6, quadratic_character(P3), 2),
        PLog(2),
        DiracDelta(),
    ]
    for f in fs:
        for trial in range(5):
            a = random_testfn(P3, 1, -1, seed=100 + trial)
            b = random_testfn(P3, 1, -1, seed=200 + trial)
            c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            combo = type(a)(P3, 1, -1, c * a.values + b.values)
            lhs = apply(f, combo)
            rhs = c * apply(f, a) + apply(f, b)
            assert abs(lhs - rhs) < 1e-11 * (1 + abs(lhs))


def test_apply_agrees_with_direct_integral_for_positive_re_alpha():
    # with |t|_p <= p^-N, chi(xt) == 1 on the support, so the oracle's
    # absolutely convergent direct sum computes the plain pairing
    rng = random.Random(32)
    for trial in range(10):
        p = rng.choice([2, 3, 5])
        prime = Prime(p)
        pi1 = trivial_character(prime)
        if p == 3 and trial % 2:
            pi1 = quadratic_character(prime)
        alpha = complex(rng.uniform(0.2, 2.8), rng.uniform(-1.5, 1.5))
        f = PiAlphaLog(alpha, pi1, rng.randint(0, 2))
        phi = random_testfn(prime, 1, -1, seed=300 + trial)
        t = Fr(p) ** 1  # |t| = p^-1 <= p^-N
        direct = brute_force_oracle(SingularIntegralRequest(f, phi, t))
        reg = apply(f, phi)
        assert abs(direct - reg) < 1e-10 * (1 + abs(reg)), (p, alpha, f.m)


def test_homogeneity_defect_examples():
    phi = random_testfn(P2, 1, -1, seed=5)
    assert abs(homogeneity_defect(DiracDelta(), phi, Fr(1, 2))) < 1e-14
    d0 = delta_indicator(P2, 0)
    f = PiAlphaLog(2, trivial_character(P2), 0)
    assert abs(homogeneity_defect(f, d0, Fr(1, 2))) < 1e-12
    f1 = PiAlphaLog(2, trivial_character(P2), 1)
    assert abs(homogeneity_defect(f1, d0, Fr(1, 2))) < 1e-12
    with pytest.raises(ZeroArgument):
        homogeneity_defect(f, d0, 0)


def defect_scale(f, phi, t):
    lead = abs(apply(f, phi)) + abs(phi.at(0)) + 1
    return lead


def test_homogeneity_defect_all_variants():
    rng = random.Random(33)
    variants = [
        PiAlphaLog(1.5, trivial_character(P3), 0),
        PiAlphaLog(-0.4 + 0.2j, trivial_character(P3), 1),
        PiAlphaLog(2.0, trivial_character(P3), 2),
        PiAlphaLog(1.0, quadratic_character(P3), 1),
        PiAlphaLog(0.8 + 0.5j, cubic_mod9(), 2),
        PLog(1),
        PLog(2),
        PLog(3),
        DiracDelta(),
    ]
    for f in variants:
        for trial in range(10):
            phi = random_testfn(P3, 1, -1, seed=500 + trial)
            for e in (-2, -1, 1, 2):
                t = Fr(rng.choice([1, 2])) * Fr(3) ** e
                d = homogeneity_defect(f, phi, t)
                assert abs(d) < 1e-10 * defect_scale(f, phi, t), (f, e, abs(d))
