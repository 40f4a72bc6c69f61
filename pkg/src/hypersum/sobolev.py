"""Derivative-weighted inner products on the unit circle.

The bilinear form pairs two polynomials f, h through the rank-one matrix
M(z) = (c_0(z),...,c_rho(z))^T (conj c_0(z),...,conj c_rho(z)) built from the
expansion coefficients of the operator R, integrated against normalized arc
length on |z| = 1:

    <f, h> = integral of (f, f', ..., f^(rho)) M (conj of same for h) dmu_0.

Rank-one structure collapses this to (Rf)(z)·conj((Rh)(z)) pointwise, which
is how the fast path evaluates it; a debug path materializing M and the
derivative vectors is kept as a test oracle. Integration uses equispaced
nodes and uniform weights, which is exact for the trigonometric-polynomial
integrands arising here, never an estimate.

Under this form the partial sums g_0, g_1, ... are orthogonal, with squared
norms |kappa_n|^{-2} (the image identity -kappa_n·R g_n = z^n turns the Gram
matrix into the Gram matrix of monomials).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .operators import LinDiffOp, build_R, op_apply
from .partial_sums import HypParams, _check_cap, gn_direct
from .polycore import Poly


@dataclass(frozen=True)
class QuadratureRule:
    """Equispaced angles tau_j = 2·pi·j/N with uniform weights 1/N.

    Exact for trigonometric polynomials of degree < N by orthogonality of
    the N-th roots of unity.
    """

    n_nodes: int

    def __post_init__(self):
        if int(self.n_nodes) < 1:
            raise DomainError("node count must be >= 1")
        object.__setattr__(self, "n_nodes", int(self.n_nodes))

    @property
    def angles(self) -> tuple[float, ...]:
        N = self.n_nodes
        return tuple(2.0 * math.pi * j / N for j in range(N))

    @property
    def points(self) -> tuple[complex, ...]:
        return tuple(cmath.exp(1j * t) for t in self.angles)

    def integrate(self, values) -> complex:
        """Mean of the sampled values, accumulated with exact summation.

        math.fsum gives a correctly rounded sum, so the result is independent
        of summation order (deterministic under any parallel split).
        """
        vals = [complex(v) for v in values]
        if len(vals) != self.n_nodes:
            raise DomainError("one value per node required")
        re = math.fsum(v.real for v in vals)
        im = math.fsum(v.imag for v in vals)
        return complex(re / self.n_nodes, im / self.n_nodes)


def monomial_quadrature_defect(rule: QuadratureRule, k: int, m: int) -> float:
    """|rule applied to z^k·conj(z)^m  minus the exact value (1 if k == m)|.

    The exact value holds whenever N > k + m; this is the exactness
    sub-check used by tests and the verification suite.
    """
    vals = [z**k * (z.conjugate() ** m) for z in rule.points]
    exact = 1.0 if k == m else 0.0
    return abs(rule.integrate(vals) - exact)


@dataclass(frozen=True)
class SobolevForm:
    """Coefficient polynomials c_0..c_rho of R, defining the rank-one form."""

    c: tuple[Poly, ...]
    rho: int

    def as_operator(self) -> LinDiffOp:
        return LinDiffOp(self.c)


def build_sobolev_form(params: HypParams) -> SobolevForm:
    """Form built from the expansion coefficients of R; rho = max(p, q+1)."""
    R = build_R(params)
    rho = max(params.p, params.q + 1)
    # R has order exactly rho; pad defensively so len(c) == rho + 1 holds.
    c = tuple(R.coeff(l) for l in range(rho + 1))
    return SobolevForm(c=c, rho=rho)


def auto_node_count(n_max: int, rho: int) -> int:
    """2(n_max + rho) + 8 rounded up to a power of two.

    Covers the safe bound N >= deg f + deg h + 2·rho + 1 for f, h of degree
    up to n_max; the power of two fixes a predictable accumulation order.
    """
    raw = 2 * (int(n_max) + int(rho)) + 8
    return 1 << (raw - 1).bit_length()


def _require_enough_nodes(form: SobolevForm, f: Poly, h: Poly, N: int) -> None:
    need = max(f.degree, 0) + max(h.degree, 0) + 2 * form.rho + 1
    if N < need:
        raise DomainError(
            f"{N} nodes alias the integrand; need at least {need}"
        )


def sobolev_inner(form: SobolevForm, f: Poly, h: Poly, N: int) -> complex:
    """(1/N) Sum_j (Rf)(e^{i tau_j}) · conj((Rh)(e^{i tau_j})).

    Equals the arc-length integral of (Rf)·conj(Rh) exactly up to roundoff
    because the integrand is a trigonometric polynomial of degree < N; node
    counts below the safe bound are refused rather than silently aliased.
    """
    rule = QuadratureRule(N)
    _require_enough_nodes(form, f, h, N)
    op = form.as_operator()
    rf = op_apply(op, f)
    rh = op_apply(op, h)
    vals = [rf(z) * rh(z).conjugate() for z in rule.points]
    return rule.integrate(vals)


def sobolev_inner_matrix(form: SobolevForm, f: Poly, h: Poly, N: int) -> complex:
    """Debug path: materialize M(z) and the derivative vectors at each node.

    Algebraically identical to sobolev_inner by the rank-one structure; kept
    as an independent oracle (agreement to 1e-12 is a test contract).
    """
    rule = QuadratureRule(N)
    _require_enough_nodes(form, f, h, N)
    rho = form.rho

    def derivative_vector(poly: Poly, z: complex) -> list[complex]:
        out = []
        cur = poly
        for _ in range(rho + 1):
            out.append(cur(z))
            cur = cur.derivative()
        return out

    vals = []
    for z in rule.points:
        cvec = [form.c[l](z) for l in range(rho + 1)]
        vf = derivative_vector(f, z)
        vh = derivative_vector(h, z)
        total = 0j
        for i in range(rho + 1):
            for j in range(rho + 1):
                m_ij = cvec[i] * cvec[j].conjugate()
                total += vf[i] * m_ij * vh[j].conjugate()
        vals.append(total)
    return rule.integrate(vals)


def sobolev_gram(params: HypParams, n_max: int) -> list[list[complex]]:
    """Gram matrix [<g_n, g_m>] for n, m = 0..n_max, at the auto node count.

    Every entry is computed independently (no Hermitian mirroring), so the
    Hermitian-symmetry property stays a real check on the computation.
    """
    n_max = _check_cap(n_max)
    form = build_sobolev_form(params)
    N = auto_node_count(n_max, form.rho)
    rule = QuadratureRule(N)
    op = form.as_operator()
    points = rule.points
    images = []
    for n in range(n_max + 1):
        rg = op_apply(op, gn_direct(params, n))
        images.append([rg(z) for z in points])
    gram = []
    for n in range(n_max + 1):
        row = []
        for m in range(n_max + 1):
            vals = [images[n][j] * images[m][j].conjugate() for j in range(N)]
            row.append(rule.integrate(vals))
        gram.append(row)
    return gram
