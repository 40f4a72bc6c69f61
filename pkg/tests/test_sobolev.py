"""Circle quadrature and the rank-one derivative inner product."""

import cmath
import math
import random

import pytest

from hypersum.errors import DomainError
from hypersum.operators import kappa
from hypersum.partial_sums import HypParams, gn_direct
from hypersum.polycore import Poly
from hypersum.sobolev import (
    QuadratureRule,
    auto_node_count,
    build_sobolev_form,
    monomial_quadrature_defect,
    sobolev_gram,
    sobolev_inner,
    sobolev_inner_matrix,
)

EXP = HypParams(a=(), b=())
CONFLUENT = HypParams(a=(1.0,), b=(2.0,))
GAUSS_LIKE = HypParams(a=(1.0, 2.0), b=(3.0,))


def test_quadrature_integrates_monomials():
    rule = QuadratureRule(8)
    # mean of z^k over T is delta_{k0} for |k| < 8
    vals = [1.0 for _ in rule.points]
    assert rule.integrate(vals) == pytest.approx(1.0)
    for k in (1, 3, 7):
        vals = [z ** k for z in rule.points]
        assert abs(rule.integrate(vals)) <= 1e-15


def test_quadrature_aliasing_edge():
    # z^N aliases to z^0 on an N-node rule: exactness stops at |k - m| = N.
    rule = QuadratureRule(8)
    vals = [z ** 8 for z in rule.points]
    assert rule.integrate(vals) == pytest.approx(1.0)


def test_monomial_defect_within_exactness_window():
    rule = QuadratureRule(16)
    for k in range(6):
        for m in range(6):
            assert monomial_quadrature_defect(rule, k, m) <= 1e-14
    assert monomial_quadrature_defect(rule, 15, 0) <= 1e-14


def test_auto_node_count():
    n = auto_node_count(15, 1)
    assert n == 64  # next power of two above 2*(15+1)+8
    assert auto_node_count(15, 4) == 64
    assert auto_node_count(25, 4) == 128
    # Always a power of two and always sufficient.
    for n_max in (1, 10, 40):
        for rho in (1, 2, 4):
            N = auto_node_count(n_max, rho)
            assert N >= 2 * (n_max + rho) + 8
            assert N & (N - 1) == 0


def test_form_coefficients_match_R():
    from hypersum.operators import build_R

    form = build_sobolev_form(EXP)
    R = build_R(EXP)
    assert form.rho == R.order
    assert form.as_operator() == R


def test_inner_fast_path_matches_matrix_path():
    # Rank-one evaluation vs the materialized bilinear form, random polys.
    rng = random.Random(7)
    form = build_sobolev_form(GAUSS_LIKE)
    for _ in range(10):
        f = Poly([rng.uniform(-1, 1) for _ in range(rng.randint(1, 9))])
        h = Poly([rng.uniform(-1, 1) for _ in range(rng.randint(1, 9))])
        if f.is_zero or h.is_zero:
            continue
        N = auto_node_count(max(f.degree, h.degree), form.rho)
        fast = sobolev_inner(form, f, h, N)
        slow = sobolev_inner_matrix(form, f, h, N)
        assert fast == pytest.approx(slow, rel=1e-11, abs=1e-13)


def test_inner_requires_enough_nodes():
    form = build_sobolev_form(EXP)
    f = Poly((0,) * 10 + (1,))
    with pytest.raises(DomainError):
        sobolev_inner(form, f, f, 4)


def test_gram_diagonal_exponential():
    # diag = |kappa_n|^{-2} = 1/(n!)^2, frozen oracle.
    gram = sobolev_gram(EXP, 3)
    want = (1.0, 1.0, 0.25, 1 / 36)
    for i in range(4):
        assert gram[i][i].real == pytest.approx(want[i], rel=1e-12)
        assert abs(gram[i][i].imag) <= 1e-15


def test_gram_orthogonality():
    for params in (EXP, CONFLUENT, GAUSS_LIKE):
        gram = sobolev_gram(params, 8)
        maxdiag = max(abs(gram[i][i]) for i in range(9))
        for i in range(9):
            for j in range(9):
                if i != j:
                    assert abs(gram[i][j]) <= 1e-12 * maxdiag
                else:
                    want = 1.0 / abs(kappa(params, i)) ** 2
                    assert abs(gram[i][i]) == pytest.approx(want, rel=1e-10)


def test_gram_is_hermitian():
    gram = sobolev_gram(GAUSS_LIKE, 6)
    for i in range(7):
        for j in range(7):
            assert gram[i][j] == pytest.approx(
                gram[j][i].conjugate(), rel=1e-12, abs=1e-15
            )


def test_inner_of_partial_sums_matches_gram():
    form = build_sobolev_form(CONFLUENT)
    N = auto_node_count(5, form.rho)
    g2 = gn_direct(CONFLUENT, 2)
    g4 = gn_direct(CONFLUENT, 4)
    cross = sobolev_inner(form, g2, g4, N)
    assert abs(cross) <= 1e-12
    diag = sobolev_inner(form, g4, g4, N)
    assert diag.real == pytest.approx(1.0 / abs(kappa(CONFLUENT, 4)) ** 2, rel=1e-10)
