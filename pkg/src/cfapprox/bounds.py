"""Closed-form bound catalog and exact region geometry on the triangle.

Houses the denominator-dependent Vahlen sharpening H(q), the Borel/Tong
constants, the two-digit and four-digit case bounds, and the exact convex
regions cut out of the triangle by digit cells: the images of vertical
cells V_a, horizontal cells H_a, their intersections I_{M,m}, and the
refined two-digit cells used when a pair of partial quotients equals (1,1).
All vertices and supporting lines are exact rationals; containment and
incidence tests are exact sign evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Optional

from .exactnum import ExactReal, QuadSurd
from .theta import DeltaPoint


# -- exact lines and convex regions ------------------------------------------


@dataclass(frozen=True)
class Line:
    """Supporting line: beta = slope*alpha + intercept, or alpha = intercept
    when slope is None (vertical)."""

    slope: Optional[Fraction]
    intercept: Fraction

    def passes_through(self, p: DeltaPoint) -> bool:
        if self.slope is None:
            return p.alpha == self.intercept
        return p.beta == self.slope * p.alpha + self.intercept

    def to_json_dict(self) -> dict:
        if self.slope is None:
            return {"vertical": [self.intercept.numerator, self.intercept.denominator]}
        return {
            "slope": [self.slope.numerator, self.slope.denominator],
            "intercept": [self.intercept.numerator, self.intercept.denominator],
        }


def _cross(o: DeltaPoint, a: DeltaPoint, b: DeltaPoint) -> Fraction:
    return (a.alpha - o.alpha) * (b.beta - o.beta) - (a.beta - o.beta) * (b.alpha - o.alpha)


@dataclass(frozen=True)
class Region:
    """Convex polygon (3 or 4 vertices, counterclockwise) with exact
    rational vertices and its supporting lines."""

    vertices: tuple[DeltaPoint, ...]
    edges: tuple[Line, ...]
    label: str = ""

    def __post_init__(self):
        n = len(self.vertices)
        if n not in (3, 4):
            raise ValueError("region must have 3 or 4 vertices")
        if len({(v.alpha, v.beta) for v in self.vertices}) != n:
            raise ValueError("region vertices must be pairwise distinct")
        for i in range(n):
            turn = _cross(self.vertices[i], self.vertices[(i + 1) % n],
                          self.vertices[(i + 2) % n])
            if turn <= 0:
                raise ValueError("vertices must be in convex counterclockwise position")
        for v in self.vertices:
            if sum(e.passes_through(v) for e in self.edges) < 2:
                raise ValueError("every vertex must lie on two supporting lines")

    def contains(self, p: DeltaPoint) -> bool:
        """Exact closed-region membership."""
        n = len(self.vertices)
        return all(_cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0
                   for i in range(n))

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "vertices": [
                [[v.alpha.numerator, v.alpha.denominator],
                 [v.beta.numerator, v.beta.denominator]]
                for v in self.vertices
            ],
            "edges": [e.to_json_dict() for e in self.edges],
        }


def _pt(alpha: Fraction, beta: Fraction) -> DeltaPoint:
    return DeltaPoint(Fraction(alpha), Fraction(beta))


def _dedupe(lines: list[Line]) -> tuple[Line, ...]:
    out: list[Line] = []
    for ln in lines:
        if ln not in out:
            out.append(ln)
    return tuple(out)


def _drop_collinear(pts: list[DeltaPoint]) -> tuple[DeltaPoint, ...]:
    """Remove vertices that sit on the segment between their neighbours
    (degenerate quadrangles collapse to triangles)."""
    keep = list(pts)
    changed = True
    while changed and len(keep) > 3:
        changed = False
        for i in range(len(keep)):
            if _cross(keep[i - 1], keep[i], keep[(i + 1) % len(keep)]) == 0:
                del keep[i]
                changed = True
                break
    return tuple(keep)


# -- scalar bounds -------------------------------------------------------------


def hancl_H(q: int) -> Fraction:
    """H(q) = (2 + 2(q-1)/(q^2(q+1)))^(-1): the denominator-dependent
    sharpening of the constant 1/2.  Increases to 1/2; H(1) = 1/2."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return Fraction(q * q * (q + 1), 2 * (q**3 + q * q + q - 1))


def hancl_nair_constant(q: int) -> float:
    """sqrt(5) + (4 - 5 sqrt(5) + sqrt(61)) / (2 q^2); exceeds sqrt(5) for
    every q since 4 + sqrt(61) > 5 sqrt(5).  Float: display/report only."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return sqrt(5) + (4 - 5 * sqrt(5) + sqrt(61)) / (2 * q * q)


def borel_improved_bound(a: int) -> QuadSurd:
    """1/sqrt(a^2+4) exactly; a = 1 gives the classical 1/sqrt(5).  Serves
    both the three-convergent minimum bound and the matching maximum bound."""
    if a < 1:
        raise ValueError("digit must be >= 1")
    return QuadSurd(0, 1, a * a + 4, a * a + 4)


INV_SQRT5 = borel_improved_bound(1)


@dataclass(frozen=True)
class BoundReport:
    """One theorem case: upper bound for min{..} and/or lower bound for
    max{..} of two consecutive approximation coefficients, with the
    strictness each claim carries."""

    case_tag: str
    min_bound: Optional[ExactReal]
    min_strict: bool
    max_bound: Optional[ExactReal]
    max_strict: bool
    no_improvement: bool = False


def easy_case_bounds(m: int, M: int) -> BoundReport:
    """Bounds when the digit pair (a_n, a_{n+1}) has min m and max M.

    Case m = M: min <= m/(m^2+1), max >= (m+1)/((m+1)^2+1).
    Case m < M: min <= (m+1)/((m+1)M+1), max >= M/((m+1)M+1).
    m = M = 1 is allowed but flagged: the 1/2 bound is not improved.
    """
    if m < 1 or M < m:
        raise ValueError("need 1 <= m <= M")
    if m == M:
        return BoundReport(
            case_tag="easy-i",
            min_bound=Fraction(m, m * m + 1), min_strict=False,
            max_bound=Fraction(m + 1, (m + 1) ** 2 + 1), max_strict=False,
            no_improvement=(M == 1),
        )
    den = (m + 1) * M + 1
    return BoundReport(
        case_tag="easy-ii",
        min_bound=Fraction(m + 1, den), min_strict=False,
        max_bound=Fraction(M, den), max_strict=False,
    )


def difficult_case_bounds(m: int, M: int) -> BoundReport:
    """Bounds when (a_n, a_{n+1}) = (1, 1), from the neighbours
    m = min{a_{n-1}, a_{n+2}}, M = max{a_{n-1}, a_{n+2}}.

    Case m = M: min <= (m+1)(m+2)/((m+1)^2+(m+2)^2), max > m(m+1)/(m^2+(m+1)^2).
    Case m < M: min < (m+1)(M+1)/D, max > (m+2)M/D with
    D = (m+1)M + (m+2)(M+1).  Strictness follows the theorem statement;
    boundary attainment by finite expansions is the verifier's business.
    """
    if m < 1 or M < m:
        raise ValueError("need 1 <= m <= M")
    if m == M:
        return BoundReport(
            case_tag="difficult-i",
            min_bound=Fraction((m + 1) * (m + 2), (m + 1) ** 2 + (m + 2) ** 2),
            min_strict=False,
            max_bound=Fraction(m * (m + 1), m * m + (m + 1) ** 2),
            max_strict=True,
        )
    den = (m + 1) * M + (m + 2) * (M + 1)
    return BoundReport(
        case_tag="difficult-ii",
        min_bound=Fraction((m + 1) * (M + 1), den), min_strict=True,
        max_bound=Fraction((m + 2) * M, den), max_strict=True,
    )


def k_only_bounds(k: int) -> BoundReport:
    """Bounds using only a_{n+2} = k (besides a_n = a_{n+1} = 1):
    min < (k+1)(k+2)/((k+1)^2+(k+2)^2) increasing to 1/2, and
    max > k(k+1)/(k^2+(k+1)^2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return BoundReport(
        case_tag="k-only",
        min_bound=Fraction((k + 1) * (k + 2), (k + 1) ** 2 + (k + 2) ** 2),
        min_strict=True,
        max_bound=Fraction(k * (k + 1), k * k + (k + 1) ** 2),
        max_strict=True,
    )


def vahlen_report() -> BoundReport:
    return BoundReport("vahlen", Fraction(1, 2), True, None, False)


def borel_report() -> BoundReport:
    return BoundReport("borel", INV_SQRT5, True, None, False)


def borel_improved_report(a: int) -> BoundReport:
    return BoundReport("borel-improved", borel_improved_bound(a), False, None, False)


def tong_report(a: int) -> BoundReport:
    return BoundReport("tong", None, False, borel_improved_bound(a), False)


# -- regions --------------------------------------------------------------------


def full_delta() -> Region:
    """The whole triangle: alpha, beta >= 0, alpha + beta <= 1."""
    return Region(
        vertices=(_pt(0, 0), _pt(1, 0), _pt(0, 1)),
        edges=(
            Line(Fraction(0), Fraction(0)),          # beta = 0
            Line(Fraction(-1), Fraction(1)),         # alpha + beta = 1
            Line(None, Fraction(0)),                 # alpha = 0
        ),
        label="delta",
    )


def _v_cell_lines(a: int) -> tuple[Line, Line]:
    """Top and bottom supporting lines of the image of the vertical cell
    t in (1/(a+1), 1/a]: images of t = 1/a and t = 1/(a+1)."""
    top = Line(Fraction(-1, a * a), Fraction(1, a))
    bottom = Line(Fraction(-1, (a + 1) ** 2), Fraction(1, a + 1))
    return top, bottom


def region_psi_V(a: int) -> Region:
    """Image of the vertical digit cell V_a under Psi.

    A quadrangle for a >= 2; for a = 1 the two right-hand vertices merge
    into the edge alpha + beta = 1 and the image is a triangle."""
    if a < 1:
        raise ValueError("digit must be >= 1")
    top, bottom = _v_cell_lines(a)
    diag = Line(Fraction(-1), Fraction(1))
    left = Line(None, Fraction(0))
    if a == 1:
        return Region(
            vertices=(_pt(Fraction(0), Fraction(1, 2)),
                      _pt(Fraction(2, 3), Fraction(1, 3)),
                      _pt(Fraction(0), Fraction(1))),
            edges=_dedupe([left, bottom, diag, top]),
            label=f"psi-V({a})",
        )
    verts = [
        _pt(Fraction(0), Fraction(1, a)),
        _pt(Fraction(0), Fraction(1, a + 1)),
        _pt(Fraction(a + 1, a + 2), Fraction(1, a + 2)),
        _pt(Fraction(a, a + 1), Fraction(1, a + 1)),
    ]
    return Region(tuple(verts), _dedupe([left, bottom, diag, top]),
                  label=f"psi-V({a})")


def _swap(p: DeltaPoint) -> DeltaPoint:
    return DeltaPoint(p.beta, p.alpha)


def _reflect_line(ln: Line) -> Line:
    """Mirror a line in beta = alpha."""
    if ln.slope is None:  # alpha = c -> beta = c
        return Line(Fraction(0), ln.intercept)
    if ln.slope == 0:  # beta = c -> alpha = c
        return Line(None, ln.intercept)
    return Line(1 / ln.slope, -ln.intercept / ln.slope)


def region_psi_H(a: int) -> Region:
    """Image of the horizontal digit cell H_a: the reflection of
    region_psi_V(a) in the diagonal beta = alpha.  Its slanted sides are
    beta = -a^2 alpha + a (right-hand) and beta = -(a+1)^2 alpha + (a+1)
    (left-hand)."""
    base = region_psi_V(a)
    verts = tuple(reversed([_swap(v) for v in base.vertices]))
    edges = tuple(_reflect_line(e) for e in base.edges)
    return Region(verts, edges, label=f"psi-H({a})")


def region_I(M: int, m: int) -> Region:
    """I_{M,m}: intersection of region_psi_V(M) and region_psi_H(m).

    Vertices are the Psi-images of the four corners of the cell rectangle
    (1/(M+1), 1/M] x (1/(m+1), 1/m], in the closed forms from the
    two-digit theorem; I_{1,1} degenerates to a triangle.
    """
    if M < 1 or m < 1:
        raise ValueError("digits must be >= 1")
    top_left = _pt(Fraction(M, (m + 1) * M + 1), Fraction(m + 1, (m + 1) * M + 1))
    top_right = _pt(Fraction(M, m * M + 1), Fraction(m, m * M + 1))
    bot_left = _pt(Fraction(M + 1, (m + 1) * (M + 1) + 1),
                   Fraction(m + 1, (m + 1) * (M + 1) + 1))
    bot_right = _pt(Fraction(M + 1, m * (M + 1) + 1), Fraction(m, m * (M + 1) + 1))
    verts = _drop_collinear([top_left, bot_left, bot_right, top_right])
    topV, bottomV = _v_cell_lines(M)
    rightH = Line(Fraction(-m * m), Fraction(m))
    leftH = Line(Fraction(-((m + 1) ** 2)), Fraction(m + 1))
    return Region(verts, _dedupe([topV, bottomV, rightH, leftH]),
                  label=f"I({M},{m})")


def _v1k_cell_lines(k: int) -> tuple[Line, Line]:
    """Bottom and top lines of the image of t in [k/(k+1), (k+1)/(k+2))."""
    bottom = Line(Fraction(-k * k, (k + 1) ** 2), Fraction(k, k + 1))
    top = Line(Fraction(-((k + 1) ** 2), (k + 2) ** 2), Fraction(k + 1, k + 2))
    return bottom, top


def region_psi_V1k(k: int) -> Region:
    """Image of the refined vertical cell where the two leading tail digits
    are (1, k): a quadrangle hugging the upper left of the triangle.

    Note: its right-hand vertices lie exactly on alpha + beta = 1 (the
    image of the edge v = 1), which is the fourth supporting line.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    verts = (
        _pt(Fraction(0), Fraction(k, k + 1)),
        _pt(Fraction(k + 1, 2 * k + 1), Fraction(k, 2 * k + 1)),
        _pt(Fraction(k + 2, 2 * k + 3), Fraction(k + 1, 2 * k + 3)),
        _pt(Fraction(0), Fraction(k + 1, k + 2)),
    )
    bottom, top = _v1k_cell_lines(k)
    edges = (Line(None, Fraction(0)), bottom, Line(Fraction(-1), Fraction(1)), top)
    return Region(verts, edges, label=f"psi-V1k({k})")


def region_I1(M: int, m: int) -> Region:
    """Intersection of the refined cells: Psi(V_{1,M}) with Psi(H_{1,m}).

    The four vertices are the Psi-images of the corners of
    [M/(M+1), (M+1)/(M+2)) x [m/(m+1), (m+1)/(m+2)), in the closed forms
    from the four-digit theorem's proof.
    """
    if M < 1 or m < 1:
        raise ValueError("digits must be >= 1")
    d_outer = (m + 1) * (M + 1) + (m + 2) * (M + 2)
    d_right = m * (M + 1) + (m + 1) * (M + 2)
    d_inner = m * M + (m + 1) * (M + 1)
    d_left = (m + 1) * M + (m + 2) * (M + 1)
    outer = _pt(Fraction((m + 1) * (M + 2), d_outer), Fraction((m + 2) * (M + 1), d_outer))
    right = _pt(Fraction(m * (M + 2), d_right), Fraction((m + 1) * (M + 1), d_right))
    inner = _pt(Fraction(m * (M + 1), d_inner), Fraction((m + 1) * M, d_inner))
    left = _pt(Fraction((m + 1) * (M + 1), d_left), Fraction((m + 2) * M, d_left))
    bottomV, topV = _v1k_cell_lines(M)
    leftH = Line(Fraction(-((m + 1) ** 2), m * m), Fraction(m + 1, m))
    rightH = Line(Fraction(-((m + 2) ** 2), (m + 1) ** 2), Fraction(m + 2, m + 1))
    verts = _drop_collinear([outer, right, inner, left])
    return Region(verts, _dedupe([bottomV, topV, leftH, rightH]),
                  label=f"I1({M},{m})")


def region_by_name(kind: str, *params: int) -> Region:
    """CLI-facing constructor: V a | H a | I M m | V1k k | I1 M m | delta."""
    kind = kind.lower()
    if kind in ("delta", "full-delta"):
        return full_delta()
    if kind == "v":
        return region_psi_V(*params)
    if kind == "h":
        return region_psi_H(*params)
    if kind == "i":
        return region_I(*params)
    if kind == "v1k":
        return region_psi_V1k(*params)
    if kind == "i1":
        return region_I1(*params)
    raise ValueError(f"unknown region kind {kind!r}")


# -- digit intervals -------------------------------------------------------------


@dataclass(frozen=True)
class HalfOpenInterval:
    """Interval with per-endpoint closure flags."""

    lo: Fraction
    hi: Fraction
    closed_lo: bool
    closed_hi: bool

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo:
            return self.closed_lo
        if x == self.hi:
            return self.closed_hi
        return True

    def __str__(self) -> str:
        lo_b = "[" if self.closed_lo else "("
        hi_b = "]" if self.closed_hi else ")"
        return f"{lo_b}{self.lo}, {self.hi}{hi_b}"


def delta_1k_interval(k: int) -> HalfOpenInterval:
    """The cell of x in (1/2, 1) with leading digits (1, k):
    open (1/2, 2/3) for k = 1, half-open [k/(k+1), (k+1)/(k+2)) for k >= 2.
    The family partitions (1/2, 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return HalfOpenInterval(Fraction(1, 2), Fraction(2, 3), False, False)
    return HalfOpenInterval(Fraction(k, k + 1), Fraction(k + 1, k + 2), True, False)
