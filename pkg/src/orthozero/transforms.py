"""Zero-preserving linear maps from monomial coefficients into orthogonal
polynomial expansions.

All transforms return monomial-basis Poly values so downstream root finding
is uniform. An exact-rational route exists for the boundary-rooted test
family (x-1)^n (x+1)^m at integer parameters: its outputs carry roots at
exactly +-1 with high multiplicity, which double-precision coefficients
cannot represent faithfully (root scatter grows like eps^(1/multiplicity)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadParameterError, IncompleteSpecError
from .orthopoly import ortho_constant
from .polycore import (
    MONOMIAL,
    Basis,
    Monomial,
    Poly,
    Ultraspherical,
    basis_to_monomial,
    jacobi_coefficient_rows,
    jacobi_params,
)


# ---------------------------------------------------------------------------
# transform specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UltraScaled:
    """x^k -> (k! / Gamma(k+1+alpha)) * degree-k ultraspherical polynomial."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > -1.0:
            raise BadParameterError(f"alpha must exceed -1, got {self.alpha}")


@dataclass(frozen=True)
class LegendreExpansion:
    """x^k -> degree-k Legendre polynomial."""


@dataclass(frozen=True)
class JacobiExpansion:
    """x^k -> degree-k Jacobi polynomial with parameters (alpha, beta)."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise BadParameterError(
                f"parameters must exceed -1, got ({self.alpha}, {self.beta})"
            )


@dataclass(frozen=True)
class JacobiFactorial(JacobiExpansion):
    """x^k -> degree-k Jacobi polynomial divided by k!."""


@dataclass(frozen=True)
class OrthogonalSeriesMap:
    """q_k -> q_k / (delta_k h_k) times the degree-k family member.

    delta and h list the per-degree constants through the largest degree the
    map supports; family is an orthogonal basis tag.
    """

    delta: tuple[float, ...]
    h: tuple[float, ...]
    family: Basis

    def __post_init__(self):
        if isinstance(self.family, Monomial):
            raise BadParameterError("family must be an orthogonal basis tag")
        object.__setattr__(self, "delta", tuple(float(d) for d in self.delta))
        object.__setattr__(self, "h", tuple(float(v) for v in self.h))
        if any(d == 0.0 for d in self.delta):
            raise BadParameterError("delta entries must be nonzero")
        if any(v <= 0.0 for v in self.h):
            raise BadParameterError("h entries must be positive")

    @property
    def max_degree(self) -> int:
        return min(len(self.delta), len(self.h)) - 1


TransformSpec = (
    UltraScaled | LegendreExpansion | JacobiExpansion | JacobiFactorial | OrthogonalSeriesMap
)


# ---------------------------------------------------------------------------
# the transforms
# ---------------------------------------------------------------------------

def _expand(f: Poly, alpha: float, beta: float, scale) -> Poly:
    """sum_k a_k * scale(k) * P_k^(alpha,beta) as a monomial Poly."""
    f = basis_to_monomial(f)
    n = f.degree
    rows = jacobi_coefficient_rows(n, alpha, beta)
    out = np.zeros(n + 1)
    for k, ak in enumerate(f.coeffs):
        if ak != 0.0:
            out[: k + 1] += ak * scale(k) * rows[k, : k + 1]
    return Poly(tuple(out), MONOMIAL)


def ultra_transform(f: Poly, alpha: float) -> Poly:
    """Map sum a_k x^k to sum a_k (k!/Gamma(k+1+alpha)) P_k^(alpha,alpha)."""
    if not alpha > -1.0:
        raise BadParameterError(f"alpha must exceed -1, got {alpha}")
    return _expand(
        f, alpha, alpha,
        lambda k: math.exp(math.lgamma(k + 1.0) - math.lgamma(k + 1.0 + alpha)),
    )


def legendre_transform(f: Poly) -> Poly:
    """Map sum a_k x^k to sum a_k P_k (the alpha = 0 ultraspherical case)."""
    return ultra_transform(f, 0.0)


def jacobi_transform(f: Poly, alpha: float, beta: float) -> Poly:
    """Map sum a_k x^k to sum a_k P_k^(alpha,beta)."""
    if not (alpha > -1.0 and beta > -1.0):
        raise BadParameterError(f"parameters must exceed -1, got ({alpha}, {beta})")
    return _expand(f, alpha, beta, lambda k: 1.0)


def jacobi_factorial_transform(f: Poly, alpha: float, beta: float) -> Poly:
    """Map sum a_k x^k to sum a_k P_k^(alpha,beta) / k!."""
    if not (alpha > -1.0 and beta > -1.0):
        raise BadParameterError(f"parameters must exceed -1, got ({alpha}, {beta})")
    return _expand(f, alpha, beta, lambda k: 1.0 / math.factorial(k))


def orthogonal_series_transform(q, spec: OrthogonalSeriesMap) -> Poly:
    """Map monomial coefficients q_k to sum_k (q_k / (delta_k h_k)) Q_k."""
    q = [float(v) for v in q]
    n = len(q) - 1
    if n > spec.max_degree:
        raise IncompleteSpecError(
            f"spec provides constants through degree {spec.max_degree}, input has degree {n}"
        )
    alpha, beta = jacobi_params(spec.family)
    rows = jacobi_coefficient_rows(n, alpha, beta)
    out = np.zeros(n + 1)
    for k, qk in enumerate(q):
        if qk != 0.0:
            out[: k + 1] += qk / (spec.delta[k] * spec.h[k]) * rows[k, : k + 1]
    return Poly(tuple(out), MONOMIAL)


def apply_transform(spec: TransformSpec, f: Poly) -> Poly:
    """Dispatch a transform spec onto a polynomial."""
    if isinstance(spec, UltraScaled):
        return ultra_transform(f, spec.alpha)
    if isinstance(spec, LegendreExpansion):
        return legendre_transform(f)
    if isinstance(spec, JacobiFactorial):
        return jacobi_factorial_transform(f, spec.alpha, spec.beta)
    if isinstance(spec, JacobiExpansion):
        return jacobi_transform(f, spec.alpha, spec.beta)
    if isinstance(spec, OrthogonalSeriesMap):
        return orthogonal_series_transform(basis_to_monomial(f).coeffs, spec)
    raise BadParameterError(f"unknown transform spec {spec!r}")


# ---------------------------------------------------------------------------
# cross-consistency between the two scaling conventions
# ---------------------------------------------------------------------------

def ultra_series_spec(alpha: float, max_degree: int) -> OrthogonalSeriesMap:
    """Generic-map spec for the symmetric family with delta_k = 2k+2a+1 and
    h_k taken from the weighted orthogonality relation at beta = alpha."""
    delta = tuple(2.0 * k + 2.0 * alpha + 1.0 for k in range(max_degree + 1))
    h = tuple(ortho_constant(k, alpha, alpha).h for k in range(max_degree + 1))
    return OrthogonalSeriesMap(delta=delta, h=h, family=Ultraspherical(alpha))


def scale_ratio_sequence(alpha: float, max_degree: int) -> list[float]:
    """Per-degree ratio of the factorial-scaled map's factor to the generic
    map's 1/(delta_k h_k).

    Constant exactly when the two conventions produce proportional outputs
    (alpha = 0 gives the constant 2); otherwise the sequence itself is the
    interesting record.
    """
    spec = ultra_series_spec(alpha, max_degree)
    out = []
    for k in range(max_degree + 1):
        factorial_scale = math.exp(math.lgamma(k + 1.0) - math.lgamma(k + 1.0 + alpha))
        out.append(factorial_scale * spec.delta[k] * spec.h[k])
    return out


# ---------------------------------------------------------------------------
# exact-rational route for the boundary-rooted family
# ---------------------------------------------------------------------------

def jacobi_rows_exact(n: int, alpha: int, beta: int) -> list[list[Fraction]]:
    """Fraction-valued monomial coefficient rows, integer parameters only."""
    a, b = Fraction(alpha), Fraction(beta)
    if not (a > -1 and b > -1):
        raise BadParameterError(f"parameters must exceed -1, got ({alpha}, {beta})")
    rows = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    rows[0][0] = Fraction(1)
    if n >= 1:
        rows[1][0] = (a - b) / 2
        rows[1][1] = (a + b + 2) / 2
    for k in range(1, n):
        den = 2 * (k + 1) * (k + 1 + a + b) * (2 * k + a + b)
        ca = (2 * k + a + b + 1) * (2 * k + a + b + 2) * (2 * k + a + b) / den
        cb = (2 * k + a + b + 1) * (a * a - b * b) / den
        cc = 2 * (k + a) * (k + b) * (2 * k + a + b + 2) / den
        for j in range(k + 1):
            rows[k + 1][j + 1] += ca * rows[k][j]
            rows[k + 1][j] += cb * rows[k][j]
        for j in range(k):
            rows[k + 1][j] -= cc * rows[k - 1][j]
    return rows


def boundary_input_coeffs(n: int, m: int) -> list[Fraction]:
    """Ascending exact coefficients of (x-1)^n (x+1)^m."""
    c = [Fraction(1)]
    for root in [1] * n + [-1] * m:
        nxt = [Fraction(0)] * (len(c) + 1)
        for j, cj in enumerate(c):
            nxt[j + 1] += cj
            nxt[j] -= root * cj
        c = nxt
    return c


def boundary_transform_exact(
    n: int, m: int, alpha: int, beta: int, factorial: bool = False
) -> list[Fraction]:
    """Exact coefficients of the transform applied to (x-1)^n (x+1)^m.

    factorial=True divides the degree-k image by k! (the factorial variant).
    """
    f = boundary_input_coeffs(n, m)
    deg = n + m
    rows = jacobi_rows_exact(deg, alpha, beta)
    out = [Fraction(0)] * (deg + 1)
    for k, ak in enumerate(f):
        if ak == 0:
            continue
        if factorial:
            ak = ak / math.factorial(k)
        for j in range(k + 1):
            out[j] += ak * rows[k][j]
    return out


def deflate_exact_root(coeffs: list[Fraction], at: int) -> tuple[list[Fraction], int]:
    """Divide out (x - at) while the remainder is exactly zero.

    Returns the deflated coefficients and the multiplicity removed.
    """
    mult = 0
    c = list(coeffs)
    while len(c) > 1:
        q = [Fraction(0)] * (len(c) - 1)
        acc = c[-1]
        for j in range(len(c) - 2, -1, -1):
            q[j] = acc
            acc = c[j] + at * acc
        if acc != 0:
            break
        c = q
        mult += 1
    return c, mult
