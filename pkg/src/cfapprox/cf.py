"""Regular continued fractions: digits, convergents, Gauss map, natural extension.

All inputs live in [0,1).  An input is one of three kinds: an exact rational
(finite expansion), an exact quadratic surd (eventually periodic expansion),
or a digit stream (a finite known prefix of an infinite expansion).  Orbits
track the "future" t_n = T^n(x) and the "past" v_n = q_{n-1}/q_n exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .exactnum import ExactReal, QuadSurd, RatInterval


@dataclass(frozen=True)
class DigitStream:
    """Known prefix a_1, a_2, ... of an infinite RCF expansion."""

    digits: tuple[int, ...]

    def __post_init__(self):
        if any(a < 1 for a in self.digits):
            raise ValueError("stream digits must be >= 1")

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def first(self) -> int:
        if not self.digits:
            raise ValueError("stream prefix exhausted")
        return self.digits[0]

    def shift(self) -> "DigitStream":
        if not self.digits:
            raise ValueError("stream prefix exhausted")
        return DigitStream(self.digits[1:])

    def cylinder(self) -> RatInterval:
        """Rational interval guaranteed to contain every real with this
        digit prefix (endpoints: deepest convergent and its mediant)."""
        if not self.digits:
            return RatInterval(Fraction(0), Fraction(1))
        pm1, p = 1, 0
        qm1, q = 0, 1
        for a in self.digits:
            pm1, p = p, a * p + pm1
            qm1, q = q, a * q + qm1
        lo = Fraction(p, q)
        hi = Fraction(p + pm1, q + qm1)
        if lo > hi:
            lo, hi = hi, lo
        return RatInterval(lo, hi)


RealLike = Union[Fraction, QuadSurd, DigitStream]


class RealSpec:
    """Tagged input value in [0,1): rational, quadratic surd, or digit stream."""

    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value: RealLike):
        if kind == "rational":
            if not isinstance(value, Fraction) or not 0 <= value < 1:
                raise ValueError("rational input must lie in [0,1)")
        elif kind == "surd":
            if not isinstance(value, QuadSurd) or value.is_rational:
                raise ValueError("surd input must be irrational")
            if value.sign() <= 0 or (value - 1).sign() >= 0:
                raise ValueError("surd input must lie in (0,1)")
        elif kind == "stream":
            if not isinstance(value, DigitStream):
                raise ValueError("stream input must be a DigitStream")
        else:
            raise ValueError(f"unknown kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("RealSpec is immutable")

    @classmethod
    def rational(cls, x: Fraction | int) -> "RealSpec":
        return cls("rational", Fraction(x))

    @classmethod
    def surd(cls, x: QuadSurd) -> "RealSpec":
        if x.is_rational:
            return cls("rational", x.to_fraction())
        return cls("surd", x)

    @classmethod
    def stream(cls, digits: Iterable[int]) -> "RealSpec":
        return cls("stream", DigitStream(tuple(digits)))

    def __repr__(self) -> str:
        return f"RealSpec({self.kind}, {self.value!r})"


class CFData:
    """Digit sequence with its convergent table.

    Convergents follow p_k = a_k p_{k-1} + p_{k-2}, q_k likewise, seeded by
    p_{-1} = 1, p_0 = 0, q_{-1} = 0, q_0 = 1.  `digits[i]` is a_{i+1}.
    """

    __slots__ = ("digits", "_p", "_q", "exhausted")

    def __init__(self, digits: Iterable[int], exhausted: bool = False):
        self.digits = list(digits)
        self._p = [1, 0]  # index k+1 holds p_k
        self._q = [0, 1]
        for a in self.digits:
            if a < 1:
                raise ValueError("partial quotients must be >= 1")
            self._p.append(a * self._p[-1] + self._p[-2])
            self._q.append(a * self._q[-1] + self._q[-2])
        self.exhausted = exhausted

    def __len__(self) -> int:
        return len(self.digits)

    def digit(self, k: int) -> int:
        """a_k for 1 <= k <= len."""
        if not 1 <= k <= len(self.digits):
            raise IndexError(f"digit index {k} out of range")
        return self.digits[k - 1]

    def p(self, k: int) -> int:
        if not -1 <= k <= len(self.digits):
            raise IndexError(f"convergent index {k} out of range")
        return self._p[k + 1]

    def q(self, k: int) -> int:
        if not -1 <= k <= len(self.digits):
            raise IndexError(f"convergent index {k} out of range")
        return self._q[k + 1]

    def convergent(self, k: int) -> Fraction:
        return Fraction(self.p(k), self.q(k))

    def convergent_pairs(self) -> list[tuple[int, int]]:
        return [(self._p[i], self._q[i]) for i in range(1, len(self._p))]

    def value(self) -> Fraction:
        """Exact value of a finite expansion (the last convergent)."""
        if not self.exhausted:
            raise ValueError("expansion is not known to be finite")
        return self.convergent(len(self))

    def __repr__(self) -> str:
        tail = ", exhausted" if self.exhausted else ""
        return f"CFData({self.digits}{tail})"


def rcf_expand_rational(x: Fraction) -> CFData:
    """Finite canonical RCF expansion of x in [0,1) (last digit >= 2).

    The greedy Euclidean algorithm is canonical by construction: a final
    digit of 1 would require a remainder equal to its predecessor.
    """
    if not 0 <= x < 1:
        raise ValueError("input must lie in [0,1)")
    digits = []
    num, den = x.numerator, x.denominator
    while num:
        a, rem = divmod(den, num)
        digits.append(a)
        num, den = rem, num
    data = CFData(digits, exhausted=True)
    assert data.convergent(len(data)) == x if digits else x == 0
    return data


def twin_digits(digits: list[int]) -> list[int]:
    """The other RCF representation of the same rational value.

    [...; a_m] with a_m >= 2 pairs with [...; a_m - 1, 1]; a trailing 1
    folds back into its predecessor.
    """
    if not digits:
        raise ValueError("empty expansion has no twin")
    if digits[-1] >= 2:
        return digits[:-1] + [digits[-1] - 1, 1]
    if len(digits) == 1:  # [1] represents 1, which is outside [0,1)
        raise ValueError("[0;1] has no twin inside [0,1)")
    return digits[:-2] + [digits[-2] + 1]


def cf_value(digits: Iterable[int]) -> Fraction:
    """Value of the finite continued fraction [0; a_1, ..., a_n]."""
    v = Fraction(0)
    for a in reversed(list(digits)):
        if a < 1:
            raise ValueError("partial quotients must be >= 1")
        v = Fraction(1, a + v)
    return v


def convergents(x: "RealSpec | Fraction | QuadSurd", n: int) -> CFData:
    """First n digits and convergents of x; finite expansions must cover n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = x if isinstance(x, RealSpec) else _as_spec(x)
    if spec.kind == "rational":
        full = rcf_expand_rational(spec.value)
        if n > len(full):
            raise ValueError("expansion exhausted")
        return CFData(full.digits[:n], exhausted=(n == len(full)))
    if spec.kind == "surd":
        digits = []
        t = spec.value
        for _ in range(n):
            inv = t.recip()
            a = inv.floor()
            digits.append(a)
            t = inv - a
        return CFData(digits)
    stream: DigitStream = spec.value
    if n > len(stream):
        raise ValueError("expansion exhausted")
    return CFData(stream.digits[:n])


def _as_spec(x) -> RealSpec:
    if isinstance(x, RealSpec):
        return x
    if isinstance(x, Fraction):
        return RealSpec.rational(x)
    if isinstance(x, int):
        return RealSpec.rational(Fraction(x))
    if isinstance(x, QuadSurd):
        return RealSpec.surd(x)
    if isinstance(x, DigitStream):
        return RealSpec("stream", x)
    raise TypeError(f"cannot interpret {x!r} as a real in [0,1)")


def gauss_map(x):
    """T(x) = 1/x - floor(1/x) on (0,1), T(0) = 0; kind-preserving.

    Streams are shifted by one digit; rationals and surds stay exact.
    """
    if isinstance(x, RealSpec):
        return RealSpec(x.kind, gauss_map(x.value))
    if isinstance(x, Fraction):
        if not 0 <= x < 1:
            raise ValueError("input must lie in [0,1)")
        if x == 0:
            return Fraction(0)
        num, den = x.numerator, x.denominator
        return Fraction(den % num, num)
    if isinstance(x, QuadSurd):
        inv = x.recip()
        return inv - inv.floor()
    if isinstance(x, DigitStream):
        return x.shift()
    raise TypeError(f"cannot apply the Gauss map to {x!r}")


@dataclass(frozen=True)
class TVPoint:
    """Natural-extension coordinates: future t in [0,1), past v in [0,1]."""

    t: RealLike
    v: ExactReal


def _floor_recip(t: RealLike) -> int:
    if isinstance(t, Fraction):
        return t.denominator // t.numerator
    if isinstance(t, QuadSurd):
        return t.recip().floor()
    return t.first


def natural_extension_step(point: TVPoint) -> TVPoint:
    """One step of the two-dimensional extension of the Gauss map:
    (t, v) -> (T(t), 1/(floor(1/t) + v)); fixes (0, v) pointwise."""
    t, v = point.t, point.v
    if isinstance(t, Fraction) and t == 0:
        return point
    a = _floor_recip(t)
    new_v = _recip_exact(a + v)
    return TVPoint(gauss_map(t), new_v)


def _recip_exact(x: ExactReal) -> ExactReal:
    if isinstance(x, QuadSurd):
        return x.recip()
    return Fraction(1) / x


@dataclass(frozen=True)
class OrbitPoint:
    k: int
    digit: Optional[int]  # a_k, None at k = 0
    point: TVPoint


@dataclass
class OrbitResult:
    points: list[OrbitPoint]
    exhausted: bool = False

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def orbit(x, n: int) -> OrbitResult:
    """Natural-extension orbit of (x, 0) up to time n.

    Produces (k, a_k, (t_k, v_k)) with t_k = T^k(x) and v_k = q_{k-1}/q_k,
    both exact.  Finite expansions truncate with the exhausted flag set.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    spec = _as_spec(x)
    points = [OrbitPoint(0, None, TVPoint(spec.value, Fraction(0)))]
    exhausted = False

    if spec.kind == "rational":
        data = rcf_expand_rational(spec.value)
        depth = min(n, len(data))
        num, den = spec.value.numerator, spec.value.denominator
        for k in range(1, depth + 1):
            a, rem = divmod(den, num)
            num, den = rem, num
            t = Fraction(num, den)
            v = Fraction(data.q(k - 1), data.q(k))
            points.append(OrbitPoint(k, a, TVPoint(t, v)))
        return OrbitResult(points, exhausted=depth == len(data))

    if spec.kind == "surd":
        t = spec.value
        qm1, q = 0, 1
        for k in range(1, n + 1):
            inv = t.recip()
            a = inv.floor()
            t = inv - a
            qm1, q = q, a * q + qm1
            points.append(OrbitPoint(k, a, TVPoint(t, Fraction(qm1, q))))
        return OrbitResult(points)

    stream: DigitStream = spec.value
    depth = min(n, len(stream))
    qm1, q = 0, 1
    t = stream
    for k in range(1, depth + 1):
        a = t.first
        t = t.shift()
        qm1, q = q, a * q + qm1
        points.append(OrbitPoint(k, a, TVPoint(t, Fraction(qm1, q))))
    return OrbitResult(points, exhausted=n > len(stream))


def past_v(digits: list[int]) -> Fraction:
    """v_n = [0; a_n, ..., a_1], cross-checked against q_{n-1}/q_n.

    The reversed-digit fold and the denominator ratio are two independent
    routes to the same value; they must agree exactly.
    """
    if not digits:
        raise ValueError("empty digit list")
    v = Fraction(0)
    for a in digits:
        if a < 1:
            raise ValueError("partial quotients must be >= 1")
        v = Fraction(1, a + v)
    data = CFData(digits)
    ratio = Fraction(data.q(len(digits) - 1), data.q(len(digits)))
    if v != ratio:
        raise AssertionError("reversed fold disagrees with q-ratio")
    return v


@dataclass(frozen=True)
class PeriodReport:
    preperiod: int
    period: int
    digits: tuple[int, ...]  # digits covering preperiod + one full period

    def digit_at(self, k: int) -> int:
        """a_k (1-based) of the eventually periodic expansion."""
        if k < 1:
            raise IndexError("digit index must be >= 1")
        if k <= len(self.digits):
            return self.digits[k - 1]
        offset = (k - self.preperiod - 1) % self.period
        return self.digits[self.preperiod + offset]


def surd_period(x: QuadSurd) -> PeriodReport:
    """Detect the eventually periodic structure of a surd's expansion.

    Iterates the Gauss map on canonical (p, r, d, q) states; the first
    repeated state marks the period.  Termination is guaranteed for real
    quadratic irrationals.
    """
    if x.is_rational:
        raise ValueError("rational inputs have finite, aperiodic expansions")
    seen: dict[QuadSurd, int] = {}
    digits: list[int] = []
    t = x
    while t not in seen:
        seen[t] = len(digits)
        inv = t.recip()
        a = inv.floor()
        digits.append(a)
        t = inv - a
    start = seen[t]
    period = len(digits) - start
    return PeriodReport(start, period, tuple(digits))


def digit_cell(a: int) -> tuple[Fraction, Fraction]:
    """Half-open cell (1/(a+1), 1/a] on which the first digit equals a."""
    if a < 1:
        raise ValueError("digit must be >= 1")
    return Fraction(1, a + 1), Fraction(1, a)
