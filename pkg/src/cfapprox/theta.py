"""Approximation coefficients and the triangle geometry that carries them.

Theta_n = q_n^2 |x - p_n/q_n| measures approximation quality.  Consecutive
pairs (Theta_{n-1}, Theta_n) are the image of the natural-extension point
(t_n, v_n) under Psi(t, v) = (v/(1+tv), t/(1+tv)), which maps the unit
square onto the triangle with vertices (0,0), (0,1), (1,0).  Everything
here is exact: square roots stay symbolic (QuadSurd) unless they simplify
to rationals.  Mixed Fraction/QuadSurd arithmetic relies on the operator
fallbacks of both types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log, sqrt

from .cf import (
    TVPoint,
    _as_spec,
    convergents,
    natural_extension_step,
    rcf_expand_rational,
)
from .exactnum import ExactReal, QuadSurd, exact_sign, exact_sqrt

LOG2 = log(2)


@dataclass(frozen=True)
class ThetaPair:
    """Consecutive approximation coefficients (Theta_{n-1}, Theta_n)."""

    prev: ExactReal
    curr: ExactReal


@dataclass(frozen=True)
class DeltaPoint:
    """Point of the closed triangle alpha, beta >= 0, alpha + beta <= 1."""

    alpha: ExactReal
    beta: ExactReal


def theta_direct(x, n: int) -> ExactReal:
    """Theta_n(x) = q_n^2 |x - p_n/q_n| straight from the definition.

    Theta_0 = x is admitted (q_0 = 1, p_0 = 0).  Zero exactly when x is
    the n-th convergent itself.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = _as_spec(x)
    if spec.kind == "stream":
        raise ValueError("digit streams have no exact theta; use enclosures")
    if spec.kind == "rational":
        data = rcf_expand_rational(spec.value)
        if n > len(data):
            raise ValueError("expansion exhausted")
        return data.q(n) ** 2 * abs(spec.value - data.convergent(n))
    data = convergents(spec, n)
    diff = spec.value - Fraction(data.p(n), data.q(n))
    if diff.sign() < 0:
        diff = -diff
    return diff * (data.q(n) ** 2)


def theta_from_tv(point: TVPoint) -> ThetaPair:
    """(Theta_{n-1}, Theta_n) = (v/(1+tv), t/(1+tv)) from orbit coordinates."""
    t, v = point.t, point.v
    if not isinstance(t, (Fraction, QuadSurd)):
        raise ValueError("digit streams have no exact theta; use enclosures")
    denom = 1 + t * v
    return ThetaPair(prev=_simplify(v / denom), curr=_simplify(t / denom))


def psi(t: ExactReal, v: ExactReal) -> DeltaPoint:
    """Psi(t, v) = (v/(1+tv), t/(1+tv)); sends the closed square onto the
    triangle, with alpha + beta = 1 exactly when t = 1 or v = 1."""
    for val in (t, v):
        if exact_sign(val) < 0 or exact_sign(1 - val) < 0:
            raise ValueError("psi expects coordinates in [0,1]")
    denom = 1 + t * v
    return DeltaPoint(alpha=_simplify(v / denom), beta=_simplify(t / denom))


def psi_inverse(p: DeltaPoint) -> tuple[ExactReal, ExactReal]:
    """Invert Psi on its image.

    Solves a*b*s^2 - s + 1 = 0 for s = 1 + tv, taking the root
    s = (1 - sqrt(1 - 4ab)) / (2ab) -- the branch with s -> 1 as ab -> 0,
    which is the one Psi actually produces on the unit square.  Then
    (t, v) = (beta*s, alpha*s).  Exact throughout: rational when 1 - 4ab
    is a rational square, a QuadSurd otherwise.
    """
    a, b = p.alpha, p.beta
    if exact_sign(a) < 0 or exact_sign(b) < 0 or exact_sign(1 - (a + b)) < 0:
        raise ValueError("outside the triangle")
    prod = a * b
    rad = 1 - 4 * prod
    if exact_sign(rad) < 0:
        raise ValueError("outside the invertible image")
    if exact_sign(prod) == 0:
        return (_simplify(b), _simplify(a))
    s = (1 - exact_sqrt(rad)) / (2 * prod)
    return (_simplify(b * s), _simplify(a * s))


def jp_forward(theta_prev: ExactReal, theta_curr: ExactReal, a: int) -> ExactReal:
    """Theta_{n+1} = Theta_{n-1} + a sqrt(1 - 4 Theta_{n-1} Theta_n) - a^2 Theta_n."""
    if a < 1:
        raise ValueError("digit must be >= 1")
    rad = 1 - 4 * (theta_prev * theta_curr)
    if exact_sign(rad) < 0:
        raise ValueError("not a realizable pair")
    return _simplify(theta_prev + a * exact_sqrt(rad) - a * a * theta_curr)


def jp_backward(theta_curr: ExactReal, theta_next: ExactReal, a: int) -> ExactReal:
    """Theta_{n-1} = Theta_{n+1} + a sqrt(1 - 4 Theta_n Theta_{n+1}) - a^2 Theta_n."""
    if a < 1:
        raise ValueError("digit must be >= 1")
    rad = 1 - 4 * (theta_curr * theta_next)
    if exact_sign(rad) < 0:
        raise ValueError("not a realizable pair")
    return _simplify(theta_next + a * exact_sqrt(rad) - a * a * theta_curr)


def f_map(p: DeltaPoint) -> DeltaPoint:
    """The conjugated shift on the triangle: F = Psi o step o Psi^{-1}.

    On orbit data, F(Theta_{n-1}, Theta_n) = (Theta_n, Theta_{n+1}) exactly.
    """
    t, v = psi_inverse(p)
    stepped = natural_extension_step(TVPoint(t, v))
    return psi(stepped.t, stepped.v)


def mu_density(p: DeltaPoint | tuple) -> float:
    """Invariant density (1/log 2) (1 - 4 alpha beta)^(-1/2), as a float.

    The radicand's sign is decided exactly; only the rendering floats.
    """
    alpha, beta = (p.alpha, p.beta) if isinstance(p, DeltaPoint) else p
    rad = 1 - 4 * (alpha * beta)
    if exact_sign(rad) <= 0:
        raise ValueError("density singularity")
    return 1.0 / (LOG2 * sqrt(float(rad)))


def _simplify(x: ExactReal) -> ExactReal:
    """Collapse rational-valued surds back to Fraction."""
    if isinstance(x, QuadSurd) and x.is_rational:
        return x.to_fraction()
    return x
