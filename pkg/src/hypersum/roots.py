"""Simultaneous root finding and zero localization for partial sums.

find_roots runs Aberth–Ehrlich iteration: all roots are refined together,
each correction being a Newton step deflated by the repulsion sum over the
other iterates. Initial guesses sit on circles whose radii come from the
Newton polygon (upper convex hull of (k, log|coeff_k|)); each hull segment
contributes one circle carrying as many iterates as the segment spans, with
a fixed 0.37-radian angular offset to break symmetry. A single circle at the
Cauchy bound wouldn't do: partial sums with steeply decaying coefficients
have root moduli graded over several orders of magnitude, and iterates
started that far out cannot travel down within any reasonable iteration cap.

Localization checks for the hypergeometric family (all parameters real and
positive with a_j <= b_j pairwise and remaining b_k >= 1, p <= q): all roots
simple, none inside the open unit disk, none on the ray (1, oo), and the
Eneström–Kakeya annulus from consecutive-coefficient ratios.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConvergenceError, DomainError
from .partial_sums import HypParams, _check_cap, gn_direct
from .polycore import Poly

ITERATION_CAP = 500
STALL_RTOL = 1e-9
STALL_SWEEPS = 10
CORRECTION_RTOL = 1e-14
ANGLE_OFFSET = 0.37


def _horner_pair(coeffs: Sequence[complex], z: complex) -> tuple[complex, complex]:
    """Value and derivative in one pass (coeffs low-to-high)."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _newton_polygon_radii(coeffs: Sequence[complex]) -> list[float]:
    """One initial radius per root from the upper hull of (k, log|c_k|).

    A hull segment from k1 to k2 contributes k2 - k1 roots of magnitude
    roughly (|c_{k1}|/|c_{k2}|)^{1/(k2-k1)}; zero coefficients simply do not
    appear as hull candidates.
    """
    pts = [(k, math.log(abs(c))) for k, c in enumerate(coeffs) if c != 0]
    # Upper convex hull, left to right (monotone chain).
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # Pop while the middle point sags on or below the chord
            # (left turn or collinear), keeping the hull from above.
            if (pt[1] - y2) * (x2 - x1) >= (y2 - y1) * (pt[0] - x2):
                hull.pop()
            else:
                break
        hull.append(pt)
    radii: list[float] = []
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        r = math.exp((y1 - y2) / (k2 - k1))
        radii.extend([r] * (k2 - k1))
    return radii


def find_roots(f: Poly, tol: float = 1e-10) -> tuple[complex, ...]:
    """All deg(f) roots by simultaneous Aberth–Ehrlich iteration.

    Iterates until every correction falls below 1e-14 times the iterate's
    modulus (cap 500 sweeps, else ConvergenceError), then polishes each root
    with a few damped Newton steps. The polynomial is taken exactly as
    given: legitimately tiny trailing coefficients (partial sums have
    rapidly decaying ones) carry the largest roots, so nothing is trimmed
    here. Callers holding polynomials with roundoff-level trailing noise
    should clean them with trim_tiny first.

    The residual |f(root)| is checked against tol times the evaluation scale
    Sum_k |c_k||root|^k (backward-stable form; an absolute bound in terms of
    max|c_k| alone is meaningless for roots far outside the unit disk).
    """
    n = f.degree
    if n < 1:
        raise DomainError("root finding needs degree >= 1")
    scale = f.max_coeff()
    coeffs = [c / scale for c in f.coeffs]

    if n == 1:
        roots = [-coeffs[0] / coeffs[1]]
    else:
        radii = _newton_polygon_radii(coeffs)
        # Group equal radii into circles so each gets evenly spread angles.
        roots = []
        start = 0
        while start < len(radii):
            stop = start
            while stop < len(radii) and radii[stop] == radii[start]:
                stop += 1
            m = stop - start
            for t in range(m):
                ang = 2.0 * math.pi * t / m + ANGLE_OFFSET + 0.5 * start / n
                roots.append(radii[start] * cmath.exp(1j * ang))
            start = stop

        converged = False
        best_rel = math.inf
        best_sweep = -1
        for sweep in range(ITERATION_CAP):
            max_rel = 0.0
            for i in range(n):
                zi = roots[i]
                pv, dpv = _horner_pair(coeffs, zi)
                if pv == 0:
                    continue
                repel = 0j
                for j in range(n):
                    if j != i:
                        dz = zi - roots[j]
                        if dz == 0:
                            dz = 1e-12 * (1.0 + abs(zi))
                        repel += 1.0 / dz
                denom = dpv - pv * repel
                if denom == 0:
                    # Degenerate configuration: nudge and let the next sweep fix it.
                    roots[i] = zi * (1.0 + 1e-8) + 1e-8
                    max_rel = math.inf
                    continue
                delta = pv / denom
                roots[i] = zi - delta
                zmag = abs(roots[i])
                rel = abs(delta) / zmag if zmag > 0 else math.inf
                max_rel = max(max_rel, rel)
            if max_rel < CORRECTION_RTOL:
                converged = True
                break
            if max_rel < best_rel:
                best_rel = max_rel
                best_sweep = sweep
            elif max_rel < STALL_RTOL and sweep - best_sweep >= STALL_SWEEPS:
                # Corrections are rounding-level noise and have stopped
                # improving (a floating-point limit cycle, common when the
                # root moduli span many orders of magnitude). The residual
                # gate below still decides whether the roots are good.
                converged = True
                break
        if not converged:
            raise ConvergenceError(
                f"Aberth iteration did not settle within {ITERATION_CAP} sweeps"
            )

    # Damped Newton polish.
    for i, z in enumerate(roots):
        for _ in range(3):
            pv, dpv = _horner_pair(coeffs, z)
            if pv == 0 or dpv == 0:
                break
            step = pv / dpv
            damping = 1.0
            for _ in range(4):
                trial = z - damping * step
                tv, _ = _horner_pair(coeffs, trial)
                if abs(tv) <= abs(pv):
                    z = trial
                    break
                damping *= 0.5
            else:
                break
        roots[i] = z

    for r in roots:
        pv, _ = _horner_pair(coeffs, r)
        eval_scale = math.fsum(abs(c) * abs(r) ** k for k, c in enumerate(coeffs))
        if abs(pv) > tol * max(1.0, eval_scale):
            raise ConvergenceError(
                f"residual {abs(pv):.3e} at root {r} exceeds tolerance"
            )
    return tuple(roots)


def check_simple(roots: Sequence[complex], tol: Optional[float] = None) -> bool:
    """True iff the minimum pairwise distance exceeds tol.

    Default tol: 1e-7 times the largest root modulus. Vacuously true for
    fewer than two roots.
    """
    rs = [complex(r) for r in roots]
    if len(rs) < 2:
        return True
    if tol is None:
        tol = 1e-7 * max(abs(r) for r in rs)
    return _min_pair_distance(rs) > tol


def _min_pair_distance(roots: Sequence[complex]) -> float:
    best = math.inf
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            best = min(best, abs(roots[i] - roots[j]))
    return best


def enestrom_kakeya_bounds(f: Poly) -> tuple[float, float]:
    """Annulus [min_k c_k/c_{k+1}, max_k c_k/c_{k+1}] containing all roots.

    Requires every coefficient real and strictly positive (the classical
    hypothesis); refuses otherwise.
    """
    if f.degree < 1:
        raise DomainError("bounds need degree >= 1")
    reals = []
    for k, c in enumerate(f.coeffs):
        if abs(c.imag) > 1e-14 * abs(c) or c.real <= 0:
            raise DomainError(
                f"coefficient of z^{k} is not strictly positive real"
            )
        reals.append(c.real)
    ratios = [reals[k] / reals[k + 1] for k in range(len(reals) - 1)]
    return min(ratios), max(ratios)


@dataclass(frozen=True)
class RootReport:
    """Zero-localization summary for one partial sum.

    boundary_root_count tallies roots with modulus within 1e-9 of 1: the
    localization statement is boundary-tight (g_1 for the exponential case
    has its root exactly on the circle), so these are recorded rather than
    treated as failures.
    """

    roots: tuple[complex, ...]
    min_pair_distance: float
    min_modulus: float
    positive_real_root_found: bool
    simple: bool
    boundary_root_count: int
    ek_annulus: Optional[tuple[float, float]]


def _require_positive_conditions(params: HypParams) -> None:
    if params.p > params.q:
        raise DomainError("localization requires p <= q")
    for name, vals in (("a", params.a), ("b", params.b)):
        for j, v in enumerate(vals):
            if v.imag != 0:
                raise DomainError(f"parameter {name}_{j + 1} must be real")
    for j, aj in enumerate(params.a):
        bj = params.b[j]
        if not (0 < aj.real <= bj.real):
            raise DomainError(
                f"need 0 < a_{j + 1} <= b_{j + 1}, got {aj.real} vs {bj.real}"
            )
    for k in range(params.p, params.q):
        if params.b[k].real < 1:
            raise DomainError(f"need b_{k + 1} >= 1, got {params.b[k].real}")


def location_report(params: HypParams, n: int) -> RootReport:
    """Find the roots of g_n and check the localization claims.

    Preconditions (refused otherwise): p <= q, all parameters real,
    0 < a_j <= b_j for j <= p, and b_k >= 1 for the unpaired b's. Under these
    the coefficients are positive, so g_n takes positive values on (0, oo)
    and the Eneström–Kakeya annulus applies.
    """
    n = _check_cap(n)
    _require_positive_conditions(params)
    g = gn_direct(params, n)
    if n == 0:
        return RootReport(
            roots=(),
            min_pair_distance=math.inf,
            min_modulus=math.inf,
            positive_real_root_found=False,
            simple=True,
            boundary_root_count=0,
            ek_annulus=None,
        )
    roots = find_roots(g, tol=1e-10)
    moduli = [abs(r) for r in roots]
    return RootReport(
        roots=roots,
        min_pair_distance=_min_pair_distance(roots) if len(roots) > 1 else math.inf,
        min_modulus=min(moduli),
        positive_real_root_found=any(
            (abs(r.imag) if r.real >= 1 else abs(r - 1)) < 1e-8 for r in roots
        ),
        simple=check_simple(roots),
        boundary_root_count=sum(1 for m in moduli if abs(m - 1.0) <= 1e-9),
        ek_annulus=enestrom_kakeya_bounds(g),
    )
