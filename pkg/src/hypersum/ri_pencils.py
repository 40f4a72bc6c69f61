"""Three-term R_I recurrences, their T-fraction specialization, banded
matrix pencils with associated polynomials, and Chebyshev decompositions
of partial sums on the unit circle.

The R_I engine generates monic P_n from

    P_n = (z - c_n) P_{n-1} - lambda_n (z - a_n) P_{n-2},   P_-1 = 0, P_0 = 1,

and reports whether the classical validity conditions hold: lambda_{n+1}
nonzero (lambda_1 multiplies P_-1 and is exempt) and P_n(a_n) != 0. With
c_n = -delta_n, lambda_n = delta_{n-1}, a_n = 0 the P_n coincide with the
monic partial sums G_n.

The pencil engine solves the five-term scalar relation of a pentadiagonal/
tridiagonal symmetric pair forward for p_{n+2}; gamma_n > 0 makes the solve
unconditionally legal, so no matrix assembly is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .partial_sums import HypParams, PowerSeriesCoeffs, delta_k
from .polycore import Poly

RI_NODE_RTOL = 1e-12


@dataclass(frozen=True)
class RIRecurrence:
    """Coefficient sequences c_n, lambda_n, a_n, n = 1..len (index 0 is n=1)."""

    c: tuple[complex, ...]
    lam: tuple[complex, ...]
    a: tuple[complex, ...]

    def __post_init__(self):
        c = tuple(complex(x) for x in self.c)
        lam = tuple(complex(x) for x in self.lam)
        a = tuple(complex(x) for x in self.a)
        if not (len(c) == len(lam) == len(a)):
            raise DomainError("c, lambda, a must have equal lengths")
        for name, seq in (("c", c), ("lambda", lam), ("a", a)):
            for k, w in enumerate(seq):
                if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                    raise DomainError(f"non-finite {name}_{k + 1}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)

    def __len__(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class RIValidity:
    """Validity report for a generated P_0..P_N.

    lambda_failures lists n >= 2 with lambda_n = 0 exactly (lambda_1 is
    exempt: it multiplies P_-1 = 0). node_failures lists n >= 1 where
    |P_n(a_n)| fails to clear 1e-12 times the cancellable evaluation mass
    sum_{k>=1} |coeff_k| |a_n|^k; a value below that threshold is
    indistinguishable from a zero hit by cancellation. The constant term is
    excluded from the mass so that at a_n = 0, where evaluation performs no
    arithmetic, only an exact zero is flagged (the T-fraction route
    legitimately drives P_n(0) = 1/xi_n under double-precision tininess for
    p > q). Note P_n(a_n) = (a_n - c_n) P_{n-1}(a_n), so a zero of P_{n-1}
    at a_n always surfaces here one index later.
    """

    lambda_failures: tuple[int, ...]
    node_failures: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return not self.lambda_failures and not self.node_failures


def _cancellable_mass(f: Poly, z: complex) -> float:
    """Sum of |coeff_k| |z|^k over k >= 1: the evaluation mass that can
    cancel against the constant term when f is evaluated at z."""
    r = abs(z)
    s = 0.0
    rk = 1.0
    for k, coef in enumerate(f.coeffs):
        if k >= 1:
            s += abs(coef) * rk
        rk *= r
    return s


def ri_generate(rec: RIRecurrence, N: int) -> tuple[list[Poly], RIValidity]:
    """Monic P_0..P_N plus the validity report."""
    N = int(N)
    if N < 0:
        raise DomainError("N must be nonnegative")
    if N > len(rec):
        raise DomainError(
            f"recurrence holds {len(rec)} coefficient triples, needs {N}"
        )
    polys = [Poly([1 + 0j])]
    lambda_failures = []
    node_failures = []
    for n in range(1, N + 1):
        c_n = rec.c[n - 1]
        lam_n = rec.lam[n - 1]
        a_n = rec.a[n - 1]
        if n >= 2 and lam_n == 0:
            lambda_failures.append(n)
        cur = polys[-1]
        nxt = cur * Poly((-c_n, 1 + 0j))
        if n >= 2:
            nxt = nxt - (polys[-2] * Poly((-a_n, 1 + 0j))).scale(lam_n)
        polys.append(nxt)
        if abs(nxt(a_n)) <= RI_NODE_RTOL * _cancellable_mass(nxt, a_n):
            node_failures.append(n)
    return polys, RIValidity(
        lambda_failures=tuple(lambda_failures),
        node_failures=tuple(node_failures),
    )


def tfraction_from_hyp(params: HypParams, N: int) -> RIRecurrence:
    """c_n = -delta_n, lambda_n = delta_{n-1}, a_n = 0 for n = 1..N.

    ri_generate on the result reproduces the monic partial sums G_n.
    lambda_1 = delta_0 = 0 by convention; it multiplies P_-1 = 0.
    """
    N = int(N)
    if N < 0:
        raise DomainError("N must be nonnegative")
    c = tuple(-delta_k(params, n) for n in range(1, N + 1))
    lam = tuple(delta_k(params, n - 1) for n in range(1, N + 1))
    a = (0j,) * N
    return RIRecurrence(c=c, lam=lam, a=a)


@dataclass(frozen=True)
class JacobiPencil:
    """Symmetric tridiagonal/pentadiagonal pair plus the degree-one seed.

    j3_diag/j3_offdiag are the tridiagonal entries b_k and a_k > 0;
    j5_diag/j5_off1/j5_off2 are the pentadiagonal entries alpha_n, beta_n,
    and gamma_n > 0. The scalars alpha > 0 and beta seed p_1 = alpha*x + beta.
    """

    j3_diag: tuple[float, ...]
    j3_offdiag: tuple[float, ...]
    j5_diag: tuple[float, ...]
    j5_off1: tuple[float, ...]
    j5_off2: tuple[float, ...]
    alpha: float
    beta: float

    def __post_init__(self):
        def checked(name, seq, positive):
            out = []
            for k, x in enumerate(seq):
                v = float(x)
                if not math.isfinite(v):
                    raise DomainError(f"non-finite {name}[{k}]")
                if positive and not (v > 0):
                    raise DomainError(f"{name}[{k}] = {v} must be positive")
                out.append(v)
            return tuple(out)

        object.__setattr__(self, "j3_diag", checked("j3_diag", self.j3_diag, False))
        object.__setattr__(
            self, "j3_offdiag", checked("j3_offdiag", self.j3_offdiag, True)
        )
        object.__setattr__(self, "j5_diag", checked("j5_diag", self.j5_diag, False))
        object.__setattr__(self, "j5_off1", checked("j5_off1", self.j5_off1, False))
        object.__setattr__(
            self, "j5_off2", checked("j5_off2", self.j5_off2, True)
        )
        alpha = float(self.alpha)
        beta = float(self.beta)
        if not (math.isfinite(alpha) and alpha > 0):
            raise DomainError("alpha must be finite and positive")
        if not math.isfinite(beta):
            raise DomainError("beta must be finite")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


def _pencil_required_length(pencil: JacobiPencil, n: int) -> None:
    # Row n touches b_n, a_n, alpha_n, beta_n, gamma_n.
    for name, seq in (
        ("j3_diag", pencil.j3_diag),
        ("j3_offdiag", pencil.j3_offdiag),
        ("j5_diag", pencil.j5_diag),
        ("j5_off1", pencil.j5_off1),
        ("j5_off2", pencil.j5_off2),
    ):
        if len(seq) <= n:
            raise DomainError(f"{name} holds {len(seq)} entries, row {n} needs more")


def pencil_polynomials(pencil: JacobiPencil, N: int) -> list[Poly]:
    """p_0 = 1, p_1 = alpha*x + beta, then solve row n for p_{n+2}:

        gamma_n p_{n+2} = -[gamma_{n-2} p_{n-2} + (beta_{n-1} - x a_{n-1}) p_{n-1}
                           + (alpha_n - x b_n) p_n + (beta_n - x a_n) p_{n+1}]

    with p_{-2} = p_{-1} = 0 and gamma/a/beta at negative indices zero.
    deg p_n = n with positive leading coefficient (alpha, a_k, gamma_n > 0).
    """
    N = int(N)
    if N < 0:
        raise DomainError("N must be nonnegative")
    polys = [Poly([1.0 + 0j])]
    if N >= 1:
        polys.append(Poly([complex(pencil.beta), complex(pencil.alpha)]))
    zero = Poly([])
    for n in range(0, N - 1):
        _pencil_required_length(pencil, n)
        b_n = pencil.j3_diag[n]
        a_n = pencil.j3_offdiag[n]
        al_n = pencil.j5_diag[n]
        be_n = pencil.j5_off1[n]
        ga_n = pencil.j5_off2[n]
        p_nm2 = polys[n - 2] if n >= 2 else zero
        p_nm1 = polys[n - 1] if n >= 1 else zero
        p_n = polys[n]
        p_np1 = polys[n + 1]
        acc = Poly([])
        if n >= 2:
            acc = acc + p_nm2.scale(pencil.j5_off2[n - 2])
        if n >= 1:
            acc = acc + p_nm1 * Poly(
                (pencil.j5_off1[n - 1], -pencil.j3_offdiag[n - 1])
            )
        acc = acc + p_n * Poly((al_n, -b_n))
        acc = acc + p_np1 * Poly((be_n, -a_n))
        polys.append(acc.scale(-1.0 / ga_n))
    return polys


def pencil_row_terms(
    pencil: JacobiPencil, values: Sequence[complex], lam: complex, n: int
) -> tuple[complex, complex, complex, complex, complex]:
    """The five addends of scalar relation n at p_k(lam) = values[k]."""
    n = int(n)
    if n < 0:
        raise DomainError("row index must be nonnegative")
    if len(values) < n + 3:
        raise DomainError(f"row {n} needs p_0..p_{n + 2}")
    _pencil_required_length(pencil, n)
    lam = complex(lam)
    t0 = pencil.j5_off2[n - 2] * values[n - 2] if n >= 2 else 0j
    t1 = (
        (pencil.j5_off1[n - 1] - lam * pencil.j3_offdiag[n - 1]) * values[n - 1]
        if n >= 1
        else 0j
    )
    t2 = (pencil.j5_diag[n] - lam * pencil.j3_diag[n]) * values[n]
    t3 = (pencil.j5_off1[n] - lam * pencil.j3_offdiag[n]) * values[n + 1]
    t4 = pencil.j5_off2[n] * values[n + 2]
    return (t0, t1, t2, t3, t4)


def pencil_residual(
    pencil: JacobiPencil, polys: Sequence[Poly], lam: complex, rows: int
) -> float:
    """Max modulus of the first `rows` scalar relations at lambda = lam."""
    rows = int(rows)
    if rows < 0:
        raise DomainError("rows must be nonnegative")
    if len(polys) < rows + 2:
        raise DomainError(f"{rows} rows need {rows + 2} polynomials")
    lam = complex(lam)
    values = [f(lam) for f in polys]
    worst = 0.0
    for n in range(rows):
        resid = abs(sum(pencil_row_terms(pencil, values, lam, n)))
        worst = max(worst, resid)
    return worst


def chebyshev_eval(kind: str, k: int, x: float) -> float:
    """T_k(x) or U_k(x) by the shared three-term recurrence."""
    k = int(k)
    if k < 0:
        raise DomainError("index must be nonnegative")
    if kind == "first":
        w0, w1 = 1.0, float(x)
    elif kind == "second":
        w0, w1 = 1.0, 2.0 * float(x)
    else:
        raise DomainError(f"kind must be 'first' or 'second', got {kind!r}")
    if k == 0:
        return w0
    for _ in range(k - 1):
        w0, w1 = w1, 2.0 * float(x) * w1 - w0
    return w1


@dataclass(frozen=True)
class ChebDecomposition:
    """Coefficients against T_k (k = 0..n) and U_j (j = 0..n)."""

    t_coeffs: tuple[float, ...]
    u_coeffs: tuple[float, ...]


def kernel_decompose(d: PowerSeriesCoeffs, n: int) -> ChebDecomposition:
    """For positive d_k and x = cos(tau):

        Re f_n(e^{i tau})     = sum_{k=0}^{n}  d_k     T_k(x)
        Im f_{n+1}(e^{i tau}) = sin(tau) * sum_{j=0}^{n} d_{j+1} U_j(x)

    so t_coeffs = (d_0..d_n) and u_coeffs = (d_1..d_{n+1}). Requires
    n + 1 < len(d) and strictly positive real coefficients.
    """
    n = int(n)
    if n < 0:
        raise DomainError("order must be nonnegative")
    if n + 1 >= len(d):
        raise DomainError(f"need d_0..d_{n + 1}, have {len(d)} coefficients")
    reals = []
    for k, w in enumerate(d.d[: n + 2]):
        if w.imag != 0 or not (w.real > 0):
            raise DomainError(f"d_{k} = {w} must be real and positive")
        reals.append(w.real)
    return ChebDecomposition(
        t_coeffs=tuple(reals[: n + 1]),
        u_coeffs=tuple(reals[1 : n + 2]),
    )
