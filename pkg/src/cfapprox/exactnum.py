"""Exact arithmetic: arbitrary-precision rationals, real quadratic surds, intervals.

Rationals are plain ``fractions.Fraction`` (always canonical: positive
denominator, reduced).  ``QuadSurd`` represents (p + r*sqrt(d)) / q exactly
with integer coefficients; it is closed under field arithmetic, supports
exact floor/sign/comparison without any floating point, and collapses to a
rational whenever the radical cancels.  These are the building blocks for
every equality test downstream, so nothing here is allowed to approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import Union

Rational = Fraction

# Primes used to pull square factors out of the radicand; enough for every d
# this package ever constructs directly, and harmless (just non-minimal d)
# for larger composite radicands coming out of psi_inverse.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def rat_canonical(num: int, den: int) -> Fraction:
    """Unique canonical fraction num/den (sign on the numerator, gcd 1)."""
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    s = isqrt(n)
    return s * s == n


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of x, or None when x is not a rational square."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    sn, sd = isqrt(n), isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


def _floor_sqrt_scaled(n: int, scale: int) -> int:
    """floor(sqrt(n) * scale) for n >= 0, scale >= 1, exactly."""
    return isqrt(n * scale * scale)


ExactReal = Union[Fraction, "QuadSurd"]


@total_ordering
class QuadSurd:
    """Exact real number (p + r*sqrt(d)) / q with integer p, r, d, q.

    Canonical form: q > 0, gcd(p, r, q) = 1, square factors pulled out of d,
    and r = 0 implies d = 1 (the rational case).  Two surds over the same d
    compare consistently with their real values; comparison against a
    Fraction or int is exact as well.  Instances are immutable and hashable,
    which is what the periodicity detector keys on.
    """

    __slots__ = ("p", "r", "d", "q")

    def __init__(self, p: int, r: int, d: int, q: int):
        if q == 0:
            raise ZeroDivisionError("division by zero")
        if d <= 0:
            raise ValueError("radicand must be positive")
        if r != 0:
            # pull out square factors so equal values share one representation
            for pr in _SMALL_PRIMES:
                sq = pr * pr
                if sq > d:
                    break
                while d % sq == 0:
                    d //= sq
                    r *= pr
            s = isqrt(d)
            if s * s == d:
                p += r * s
                r, d = 0, 1
        if r == 0:
            d = 1
        if q < 0:
            p, r, q = -p, -r, -q
        g = gcd(gcd(abs(p), abs(r)), q)
        if g > 1:
            p, r, q = p // g, r // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):  # immutability
        raise AttributeError("QuadSurd is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, x: Fraction | int) -> "QuadSurd":
        x = Fraction(x)
        return cls(x.numerator, 0, 1, x.denominator)

    @classmethod
    def sqrt_rational(cls, x: Fraction | int) -> ExactReal:
        """Exact sqrt of a nonnegative rational: Fraction if a perfect
        square, otherwise a QuadSurd (sqrt(n/d) = sqrt(n*d)/d)."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        rs = rational_sqrt(x)
        if rs is not None:
            return rs
        return cls(0, 1, x.numerator * x.denominator, x.denominator)

    # -- basic predicates --------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.r == 0

    def to_fraction(self) -> Fraction:
        if self.r != 0:
            raise ValueError("irrational surd has no exact fraction form")
        return Fraction(self.p, self.q)

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.p, -self.r, self.d, self.q)

    # -- exact sign / order ------------------------------------------------

    def sign(self) -> int:
        """Sign of the real value, by isolating the radical and squaring
        once (no precision parameter anywhere)."""
        p, r, d = self.p, self.r, self.d
        if r == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (r > 0) - (r < 0)
        if p > 0 and r > 0:
            return 1
        if p < 0 and r < 0:
            return -1
        # opposite signs: compare p^2 against r^2 d
        lhs, rhs = p * p, r * r * d
        if lhs == rhs:
            return 0
        bigger_rational = lhs > rhs
        if p > 0:
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1

    def _coerce(self, other) -> "QuadSurd | None":
        if isinstance(other, QuadSurd):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadSurd.from_rational(other)
        return None

    def _same_field(self, other: "QuadSurd") -> int:
        """Common radicand for arithmetic; rejects genuinely mixed fields."""
        if self.r == 0:
            return other.d
        if other.r == 0:
            return self.d
        if self.d != other.d:
            raise ValueError("incompatible surd fields")
        return self.d

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.r == 0 and o.r == 0:
            return self.p * o.q == o.p * self.q
        if self.r == 0 or o.r == 0:
            return False  # a rational never equals a genuine surd
        return (self.p, self.r, self.d, self.q) == (o.p, o.r, o.d, o.q)

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self.r == 0:
            return hash(Fraction(self.p, self.q))
        return hash((self.p, self.r, self.d, self.q))

    # -- field arithmetic ---------------------------------------------------

    def __add__(self, other) -> "QuadSurd":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._same_field(o)
        return QuadSurd(
            self.p * o.q + o.p * self.q,
            self.r * o.q + o.r * self.q,
            d,
            self.q * o.q,
        )

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.p, -self.r, self.d, self.q)

    def __sub__(self, other) -> "QuadSurd":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "QuadSurd":
        return (-self) + other

    def __mul__(self, other) -> "QuadSurd":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._same_field(o)
        return QuadSurd(
            self.p * o.p + self.r * o.r * d,
            self.p * o.r + self.r * o.p,
            d,
            self.q * o.q,
        )

    __rmul__ = __mul__

    def recip(self) -> "QuadSurd":
        """Exact reciprocal: q (p - r sqrt(d)) / (p^2 - r^2 d)."""
        norm = self.p * self.p - self.r * self.r * self.d
        if norm == 0:
            if self.p == 0 and self.r == 0:
                raise ZeroDivisionError("division by zero")
            # p^2 = r^2 d with d non-square is impossible unless both are 0
            raise ZeroDivisionError("division by zero")
        return QuadSurd(self.q * self.p, -self.q * self.r, self.d, norm)

    def __truediv__(self, other) -> "QuadSurd":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.recip()

    def __rtruediv__(self, other) -> "QuadSurd":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.recip()

    # -- floor / intervals ---------------------------------------------------

    def floor(self) -> int:
        """Exact floor via integer-sqrt bracketing of r*sqrt(d)."""
        p, r, d, q = self.p, self.r, self.d, self.q
        if r == 0:
            return p // q
        if r > 0:
            n = isqrt(r * r * d)  # n <= r sqrt(d) < n+1
        else:
            m = r * r * d
            s = isqrt(m)
            n = -s - (0 if s * s == m else 1)
        f = (p + n) // q
        # bracket is one wide, so correct by at most one exact comparison
        if (self - (f + 1)).sign() >= 0:
            f += 1
        elif (self - f).sign() < 0:
            f -= 1
        return f

    def to_interval(self, width: Fraction) -> "RatInterval":
        """Rational enclosure of the value, at most `width` wide."""
        if width <= 0:
            raise ValueError("width must be positive")
        if self.r == 0:
            v = Fraction(self.p, self.q)
            return RatInterval(v, v)
        # scale so that |r| / (q * 2^k) <= width
        k = 0
        need = Fraction(abs(self.r), self.q)
        while need > width * (1 << k):
            k += 1
        scale = 1 << k
        rr = self.r
        if rr > 0:
            lo_n = _floor_sqrt_scaled(rr * rr * self.d, scale)
            lo = Fraction(self.p * scale + lo_n, self.q * scale)
            hi = Fraction(self.p * scale + lo_n + 1, self.q * scale)
        else:
            m = rr * rr * self.d
            s = _floor_sqrt_scaled(m, scale)
            # -sqrt(m) in [-(s+1)/scale, -s/scale]
            lo = Fraction(self.p * scale - s - 1, self.q * scale)
            hi = Fraction(self.p * scale - s, self.q * scale)
        return RatInterval(lo, hi)

    # -- square roots inside the field ---------------------------------------

    def sqrt(self) -> ExactReal:
        """Exact square root when it exists in Q or in Q(sqrt(d)).

        Rational values delegate to `sqrt_rational`.  A genuine surd
        A + B sqrt(d) is a square in its own field iff the norm A^2 - B^2 d
        is a rational square and the resulting candidate (u + w sqrt(d))^2
        reproduces the value; otherwise the root lives in a biquadratic
        extension and a ValueError is raised.
        """
        if self.sign() < 0:
            raise ValueError("square root of a negative value")
        if self.r == 0:
            return QuadSurd.sqrt_rational(Fraction(self.p, self.q))
        a = Fraction(self.p, self.q)
        b = Fraction(self.r, self.q)
        norm = a * a - b * b * self.d
        c = rational_sqrt(norm) if norm >= 0 else None
        if c is not None:
            for cc in (c, -c):
                u2 = (a + cc) / 2
                u = rational_sqrt(u2) if u2 >= 0 else None
                if u is not None and u != 0:
                    w = b / (2 * u)
                    cand = QuadSurd(
                        u.numerator * w.denominator,
                        w.numerator * u.denominator,
                        self.d,
                        u.denominator * w.denominator,
                    )
                    if cand.sign() < 0:
                        cand = -cand
                    if cand * cand == self:
                        return cand
        raise ValueError("square root leaves the working field")

    # -- conversion / display --------------------------------------------------

    def __float__(self) -> float:
        iv = self.to_interval(Fraction(1, 10**30))
        return float((iv.lo + iv.hi) / 2)

    def __repr__(self) -> str:
        return f"QuadSurd({self.p}, {self.r}, {self.d}, {self.q})"

    def __str__(self) -> str:
        if self.r == 0:
            return str(Fraction(self.p, self.q))
        return f"({self.p}{self.r:+}*sqrt({self.d}))/{self.q}"


def surd_arith(op: str, a: QuadSurd, b: QuadSurd) -> QuadSurd:
    """Named-operation front end over QuadSurd arithmetic."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "recip":
        return a.recip()
    raise ValueError(f"unknown operation {op!r}")


def surd_floor(x: QuadSurd) -> int:
    return x.floor()


def surd_to_interval(x: QuadSurd, width: Fraction) -> "RatInterval":
    return x.to_interval(width)


def exact_sign(x: ExactReal) -> int:
    if isinstance(x, QuadSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def exact_sqrt(x: ExactReal) -> ExactReal:
    """Square root of an exact value, staying exact (see QuadSurd.sqrt)."""
    if isinstance(x, QuadSurd):
        return x.sqrt()
    return QuadSurd.sqrt_rational(x)


def compare_with_root(x: ExactReal, coeff: Fraction, n: int) -> int:
    """Exact sign of x - coeff*sqrt(n), for coeff > 0 and n >= 1.

    Used to compare approximation coefficients against constants of the
    shape 1/sqrt(a^2+4) without leaving exact arithmetic: at most one
    squaring reduces the question to a sign test inside x's own field.
    """
    if coeff <= 0:
        raise ValueError("coeff must be positive")
    if n < 1:
        raise ValueError("n must be >= 1")
    sx = exact_sign(x)
    if sx <= 0:
        return -1  # right side is strictly positive
    # both sides positive: compare squares
    rhs = coeff * coeff * n
    if isinstance(x, Fraction):
        lhs = x * x
        return (lhs > rhs) - (lhs < rhs)
    sq = x * x
    diff = sq - QuadSurd.from_rational(rhs)
    return diff.sign()


@dataclass(frozen=True)
class RatInterval:
    """Closed rational interval [lo, hi], lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: ExactReal) -> bool:
        if isinstance(x, QuadSurd):
            return (x - self.lo).sign() >= 0 and (x - self.hi).sign() <= 0
        return self.lo <= x <= self.hi


def to_decimal(x: Fraction, sig: int = 10) -> str:
    """Round-half-even decimal rendering with `sig` significant digits.

    Display only; all comparisons in this package are exact.
    """
    if sig < 1:
        raise ValueError("need at least one significant digit")
    if x == 0:
        return "0." + "0" * (sig - 1)
    sign = "-" if x < 0 else ""
    v = abs(x)
    # exponent e with 10^e <= v < 10^(e+1)
    e = 0
    while v >= 10:
        v /= 10
        e += 1
    while v < 1:
        v *= 10
        e -= 1
    scaled = abs(x) * Fraction(10) ** (sig - 1 - e)
    n, d = scaled.numerator, scaled.denominator
    q, r = divmod(n, d)
    if 2 * r > d or (2 * r == d and q % 2 == 1):
        q += 1
    digits = str(q)
    if len(digits) > sig:  # rounding carried into a new leading digit
        e += 1
        digits = digits[:sig]
    if e >= sig - 1:
        out = digits + "0" * (e - sig + 1)
    elif e >= 0:
        out = digits[: e + 1] + "." + digits[e + 1 :]
    else:
        out = "0." + "0" * (-e - 1) + digits
    return sign + out
