"""Partial sums g_n, monic G_n, and the step ratios delta_k.

Oracle values were derived independently with exact rational arithmetic
(Fraction) and are frozen here as literals.
"""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersum.errors import DomainError
from hypersum.partial_sums import (
    Gn_by_recurrence,
    Gn_monic,
    HypParams,
    PowerSeriesCoeffs,
    delta_k,
    generic_partial_sums,
    gn_by_recurrence,
    gn_direct,
    hyp_coeff,
)

EXP = HypParams(a=(), b=())  # 0F0: sum z^k/k!
CONFLUENT = HypParams(a=(1.0,), b=(2.0,))
BESSEL_LIKE = HypParams(a=(), b=(2.0,))
GAUSS_LIKE = HypParams(a=(1.0, 2.0), b=(3.0,))

# Exact coefficient oracles, derived with Fraction arithmetic.
XI_CONFLUENT = (1.0, 1 / 2, 1 / 6, 1 / 24, 1 / 120)  # 1/(k+1)!
XI_GAUSS = (1.0, 2 / 3, 1 / 2, 2 / 5, 1 / 3)  # 2/(k+2)
XI_BESSEL = (1.0, 1 / 2, 1 / 12, 1 / 144, 1 / 2880)
DELTA_CONFLUENT = (2.0, 3.0, 4.0, 5.0)  # k+1
DELTA_GAUSS = (3 / 2, 4 / 3, 5 / 4, 6 / 5)  # (k+2)/(k+1)
DELTA_BESSEL = (2.0, 6.0, 12.0, 20.0)  # k(k+1)


def test_params_shape():
    assert GAUSS_LIKE.p == 2
    assert GAUSS_LIKE.q == 1
    assert EXP.p == EXP.q == 0


def test_param_exclusions_rejected():
    with pytest.raises(DomainError):
        HypParams(a=(), b=(0.0,))
    with pytest.raises(DomainError):
        HypParams(a=(-2.0,), b=())
    with pytest.raises(DomainError):
        HypParams(a=(), b=(-1.0 + 1e-14,))
    # Negative non-integers are fine.
    HypParams(a=(-0.5,), b=(-1.5,))


def test_hyp_coeff_oracles():
    for k, want in enumerate(XI_CONFLUENT):
        assert hyp_coeff(CONFLUENT, k) == pytest.approx(want, rel=1e-15)
    for k, want in enumerate(XI_GAUSS):
        assert hyp_coeff(GAUSS_LIKE, k) == pytest.approx(want, rel=1e-15)
    for k, want in enumerate(XI_BESSEL):
        assert hyp_coeff(BESSEL_LIKE, k) == pytest.approx(want, rel=1e-15)
    assert hyp_coeff(EXP, 4) == pytest.approx(1 / 24, rel=1e-15)


def test_gn_direct_exponential():
    g2 = gn_direct(EXP, 2)
    assert g2.coeffs == (1 + 0j, 1 + 0j, 0.5 + 0j)


def test_gn_direct_degree_exactly_n():
    for params in (EXP, CONFLUENT, BESSEL_LIKE, GAUSS_LIKE):
        for n in (0, 1, 7, 25):
            assert gn_direct(params, n).degree == n


def test_delta_oracles():
    assert delta_k(EXP, 0) == 0
    for k in range(1, 5):
        assert delta_k(EXP, k) == pytest.approx(k, rel=1e-15)
        assert delta_k(CONFLUENT, k) == pytest.approx(
            DELTA_CONFLUENT[k - 1], rel=1e-15
        )
        assert delta_k(GAUSS_LIKE, k) == pytest.approx(DELTA_GAUSS[k - 1], rel=1e-15)
        assert delta_k(BESSEL_LIKE, k) == pytest.approx(
            DELTA_BESSEL[k - 1], rel=1e-15
        )


def test_delta_product_inverts_coefficient():
    # delta_1 ... delta_n = 1/xi_n
    for params in (EXP, CONFLUENT, BESSEL_LIKE, GAUSS_LIKE):
        prod = 1.0 + 0j
        for k in range(1, 13):
            prod *= delta_k(params, k)
            xi = hyp_coeff(params, k)
            assert abs(prod * xi - 1) <= 1e-12


def test_recurrence_matches_direct():
    for params in (EXP, CONFLUENT, BESSEL_LIKE, GAUSS_LIKE):
        gs = gn_by_recurrence(params, 12)
        assert len(gs) == 13
        for n, g in enumerate(gs):
            direct = gn_direct(params, n)
            assert g.degree == n
            for k in range(n + 1):
                assert g.coeff(k) == pytest.approx(direct.coeff(k), rel=1e-12)


def test_monic_oracles():
    G1 = Gn_monic(CONFLUENT, 1)
    assert G1.coeffs == (2 + 0j, 1 + 0j)
    G3 = Gn_monic(BESSEL_LIKE, 3)
    assert G3.coeffs == (144 + 0j, 72 + 0j, 12 + 0j, 1 + 0j)


def test_monic_leading_coefficient_exactly_one():
    for params in (EXP, CONFLUENT, GAUSS_LIKE):
        for n in (1, 5, 20):
            assert Gn_monic(params, n).coeff(n) == 1


def test_monic_recurrence_matches_closed_form():
    for params in (EXP, CONFLUENT, BESSEL_LIKE, GAUSS_LIKE):
        Gs = Gn_by_recurrence(params, 10)
        for n, G in enumerate(Gs):
            want = Gn_monic(params, n)
            for k in range(n + 1):
                assert G.coeff(k) == pytest.approx(want.coeff(k), rel=1e-11)


def test_generic_partial_sums():
    d = PowerSeriesCoeffs(d=(1.0, 3.0, 0.5))
    fs, Fs = generic_partial_sums(d, 2)
    assert fs[2].coeffs == (1 + 0j, 3 + 0j, 0.5 + 0j)
    assert Fs[2].coeff(2) == 1
    assert Fs[2].coeff(0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        generic_partial_sums(d, 3)


def test_power_series_coeffs_rejects_zero():
    with pytest.raises(DomainError):
        PowerSeriesCoeffs(d=(1.0, 0.0))


def test_degree_cap():
    with pytest.raises(DomainError):
        gn_direct(EXP, 171)
    with pytest.raises(DomainError):
        gn_direct(EXP, -1)


def _valid_param(rng: random.Random) -> float:
    while True:
        x = rng.uniform(-3.0, 4.0)
        if x > 0.05 or abs(x - round(x)) > 0.05:
            return x


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=1, max_value=20))
def test_product_identity_random_params(seed, n):
    rng = random.Random(seed)
    p = rng.randint(0, 3)
    q = rng.randint(0, 3)
    params = HypParams(
        a=tuple(_valid_param(rng) for _ in range(p)),
        b=tuple(_valid_param(rng) for _ in range(q)),
    )
    prod = 1.0 + 0j
    for k in range(1, n + 1):
        prod *= delta_k(params, k)
    xi = hyp_coeff(params, n)
    assert abs(prod * xi - 1) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_recurrence_random_params(seed):
    rng = random.Random(seed)
    p = rng.randint(0, 3)
    q = rng.randint(0, 3)
    params = HypParams(
        a=tuple(_valid_param(rng) for _ in range(p)),
        b=tuple(_valid_param(rng) for _ in range(q)),
    )
    n = rng.randint(1, 15)
    g = gn_by_recurrence(params, n)[n]
    direct = gn_direct(params, n)
    for k in range(n + 1):
        r, c = direct.coeff(k), g.coeff(k)
        assert abs(r - c) <= 1e-10 * max(abs(r), abs(c), 1e-300)
