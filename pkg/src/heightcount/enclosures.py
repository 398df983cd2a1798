"""Certified real arithmetic.

Three layers, from most to least exact:

* ``QuadVal`` -- numbers of the form q + r*sqrt(d) with rational q, r and a
  squarefree integer d > 1.  All comparisons are decided in exact rational
  arithmetic by isolating the root terms and squaring, so predicates built on
  them carry no floating error at all.
* ``Interval`` -- a closed interval with exact rational endpoints.  Ring
  operations round nothing.
* ``Real`` -- a lazily evaluated certified real: a DAG of operations that can
  produce an ``Interval`` of width <= 2**-prec for any requested prec.
  Transcendental leaves (pi, log) are evaluated through mpmath's interval
  context and converted back to exact rational endpoints, so the enclosures
  stay certified.  Refinement builds new intervals; nodes only cache.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable, Optional

import mpmath
from mpmath import iv, mp

from . import arith

Rat = Fraction

# ---------------------------------------------------------------------------
# Interval


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def exact(cls, q) -> "Interval":
        q = Fraction(q)
        return cls(q, q)

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def contains(self, q) -> bool:
        q = Fraction(q)
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        other = _as_interval(other)
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(cands), max(cands))

    __rmul__ = __mul__

    def inverse(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles 0")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _as_interval(other).inverse()

    def __rtruediv__(self, other):
        return _as_interval(other) * self.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return Interval.exact(1)
        if n < 0:
            return (self ** (-n)).inverse()
        if n % 2 == 0 and self.lo < 0 < self.hi:
            m = max(-self.lo, self.hi)
            return Interval(0, m**n)
        a, b = self.lo**n, self.hi**n
        return Interval(min(a, b), max(a, b))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def strictly_below(self, q) -> bool:
        return self.hi < Fraction(q)

    def strictly_above(self, q) -> bool:
        return self.lo > Fraction(q)


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.exact(x)


def sqrt_interval(x: Fraction, prec: int) -> Interval:
    """Enclosure of sqrt(x) for rational x >= 0, width <= 2**-prec."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative rational")
    if x == 0:
        return Interval.exact(0)
    k = prec + 1 + max(0, -(x.numerator.bit_length() - x.denominator.bit_length()) // 2)
    while True:
        scaled = (x.numerator << (2 * k)) // x.denominator
        m = isqrt(scaled)
        lo = Fraction(m, 1 << k)
        hi = Fraction(m + 1, 1 << k)
        if hi - lo <= Fraction(1, 1 << prec):
            return Interval(lo, hi)
        k += 8


def root_interval(x: Fraction, r: int, prec: int) -> Interval:
    """Enclosure of x**(1/r) for rational x >= 0 and integer r >= 1."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("root of negative rational")
    if r == 1:
        return Interval.exact(x)
    if x == 0:
        return Interval.exact(0)
    k = prec + 2
    while True:
        scaled = (x.numerator << (r * k)) // x.denominator
        m, _ = gmpy2_iroot(scaled, r)
        lo = Fraction(m, 1 << k)
        hi = Fraction(m + 1, 1 << k)
        if hi - lo <= Fraction(1, 1 << prec):
            return Interval(lo, hi)
        k += 8


def gmpy2_iroot(n: int, r: int) -> tuple[int, bool]:
    import gmpy2

    root, exact = gmpy2.iroot(n, r)
    return int(root), bool(exact)


# ---------------------------------------------------------------------------
# mpmath bridge


def _mpf_from_dyadic(num: int, k: int):
    with mp.workprec(max(8, abs(num).bit_length() + 8)):
        return mpmath.ldexp(mpmath.mpf(num), -k)


def _frac_to_ivmpf(x: Fraction, bits: int):
    k = bits
    lo_num = (x.numerator << k) // x.denominator
    hi_num = -(((-x.numerator) << k) // x.denominator)
    return iv.mpf([_mpf_from_dyadic(lo_num, k), _mpf_from_dyadic(hi_num, k)])


def _interval_to_ivmpf(x: Interval, bits: int):
    lo = (x.lo.numerator << bits) // x.lo.denominator
    hi = -(((-x.hi.numerator) << bits) // x.hi.denominator)
    return iv.mpf([_mpf_from_dyadic(lo, bits), _mpf_from_dyadic(hi, bits)])


def _frac_from_raw_mpf(t) -> Fraction:
    sign, man, exp, bc = t
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("nonfinite interval endpoint")
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def _ivmpf_to_interval(x) -> Interval:
    lo, hi = x._mpi_
    return Interval(_frac_from_raw_mpf(lo), _frac_from_raw_mpf(hi))


class _IvPrec:
    def __init__(self, bits):
        self.bits = bits

    def __enter__(self):
        self.old = iv.prec
        iv.prec = self.bits

    def __exit__(self, *exc):
        iv.prec = self.old


def pi_interval(prec: int) -> Interval:
    with _IvPrec(prec + 10):
        out = _ivmpf_to_interval(iv.pi)
    if out.width > Fraction(1, 1 << prec):
        return pi_interval(prec + 10)
    return out


def log_interval(x: Interval, prec: int) -> Interval:
    """Enclosure of log over a positive interval."""
    if x.lo <= 0:
        raise ValueError("log needs a positive interval")
    bits = max(prec + 10, 32)
    while True:
        with _IvPrec(bits):
            out = _ivmpf_to_interval(iv.log(_interval_to_ivmpf(x, bits)))
        if out.width <= Fraction(1, 1 << prec) or out.width <= 2 * x.width / x.lo:
            return out
        bits *= 2


# ---------------------------------------------------------------------------
# Refinable certified reals


class Real:
    """A certified real number, refinable to any precision.

    ``interval(prec)`` returns an Interval containing the value with width
    <= 2**-prec.  Results are cached; refinement never mutates previously
    returned intervals.
    """

    __slots__ = ("_best_prec", "_best")

    def __init__(self):
        self._best_prec = -1
        self._best: Optional[Interval] = None

    def _compute(self, prec: int) -> Interval:
        raise NotImplementedError

    def interval(self, prec: int = 53) -> Interval:
        if self._best is not None and self._best_prec >= prec:
            return self._best
        out = self._compute(prec)
        target = Fraction(1, 1 << prec)
        bump = prec
        while out.width > target:
            bump += max(8, bump // 2)
            out = self._compute(bump)
        if self._best is not None:
            # keep the tightest information from both
            lo = max(out.lo, self._best.lo)
            hi = min(out.hi, self._best.hi)
            out = Interval(lo, hi)
        self._best = out
        self._best_prec = prec
        return out

    def within(self, tol: Fraction) -> Interval:
        tol = Fraction(tol)
        if tol <= 0:
            raise ValueError("tol must be positive")
        prec = 1
        while Fraction(1, 1 << prec) > tol:
            prec += 1
        return self.interval(prec + 1)

    def __float__(self):
        return float(self.interval(60).mid)

    # operator sugar -------------------------------------------------------
    def __add__(self, other):
        return RSum([self, as_real(other)])

    __radd__ = __add__

    def __neg__(self):
        return RNeg(self)

    def __sub__(self, other):
        return RSum([self, RNeg(as_real(other))])

    def __rsub__(self, other):
        return RSum([as_real(other), RNeg(self)])

    def __mul__(self, other):
        return RProd(self, as_real(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RProd(self, RInv(as_real(other)))

    def __rtruediv__(self, other):
        return RProd(as_real(other), RInv(self))

    def __pow__(self, n: int):
        return RPowInt(self, n)

    # exact-aware comparisons ----------------------------------------------
    def compare(self, other, max_prec: int = 4096) -> int:
        """Sign of self - other, for values known to be unequal (refines until
        the enclosures separate)."""
        other = as_real(other)
        prec = 32
        while prec <= max_prec:
            a = self.interval(prec)
            b = other.interval(prec)
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            prec *= 2
        raise RuntimeError("could not separate enclosures; values may be equal")


class RExact(Real):
    __slots__ = ("q",)

    def __init__(self, q):
        super().__init__()
        self.q = Fraction(q)

    def _compute(self, prec):
        return Interval.exact(self.q)


class RFromFn(Real):
    """Leaf defined by prec -> Interval (e.g. a zeta partial sum with tail)."""

    __slots__ = ("fn",)

    def __init__(self, fn: Callable[[int], Interval]):
        super().__init__()
        self.fn = fn

    def _compute(self, prec):
        return self.fn(prec)


class RSqrt(Real):
    __slots__ = ("x",)

    def __init__(self, x):
        super().__init__()
        self.x = as_real(x)

    def _compute(self, prec):
        xi = self.x.interval(2 * prec + 4)
        if xi.lo < 0:
            raise ValueError("sqrt of a negative real")
        lo = sqrt_interval(xi.lo, prec + 2).lo
        hi = sqrt_interval(xi.hi, prec + 2).hi
        return Interval(lo, hi)


class RRoot(Real):
    __slots__ = ("q", "r")

    def __init__(self, q, r: int):
        super().__init__()
        self.q = Fraction(q)
        self.r = int(r)

    def _compute(self, prec):
        return root_interval(self.q, self.r, prec)


class RPi(Real):
    __slots__ = ()

    def _compute(self, prec):
        return pi_interval(prec)


class RLog(Real):
    __slots__ = ("x",)

    def __init__(self, x):
        super().__init__()
        self.x = as_real(x)

    def _compute(self, prec):
        q = prec + 4
        while True:
            xi = self.x.interval(q)
            if xi.lo > 0:
                out = log_interval(xi, prec + 2)
                if out.width <= Fraction(1, 1 << prec):
                    return out
            q = 2 * q + 8


class RSum(Real):
    __slots__ = ("xs",)

    def __init__(self, xs):
        super().__init__()
        flat = []
        for x in xs:
            if isinstance(x, RSum):
                flat.extend(x.xs)
            else:
                flat.append(as_real(x))
        self.xs = flat

    def _compute(self, prec):
        q = prec + 2 + max(1, len(self.xs)).bit_length()
        out = Interval.exact(0)
        for x in self.xs:
            out = out + x.interval(q)
        return out


class RNeg(Real):
    __slots__ = ("x",)

    def __init__(self, x):
        super().__init__()
        self.x = as_real(x)

    def _compute(self, prec):
        return -self.x.interval(prec)


class RProd(Real):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        super().__init__()
        self.a = as_real(a)
        self.b = as_real(b)

    def _compute(self, prec):
        q = prec + 4
        while True:
            out = self.a.interval(q) * self.b.interval(q)
            if out.width <= Fraction(1, 1 << prec):
                return out
            q *= 2


class RInv(Real):
    __slots__ = ("x",)

    def __init__(self, x):
        super().__init__()
        self.x = as_real(x)

    def _compute(self, prec):
        q = prec + 4
        while True:
            xi = self.x.interval(q)
            if not (xi.lo <= 0 <= xi.hi):
                out = xi.inverse()
                if out.width <= Fraction(1, 1 << prec):
                    return out
            q *= 2


class RPowInt(Real):
    __slots__ = ("x", "n")

    def __init__(self, x, n: int):
        super().__init__()
        self.x = as_real(x)
        self.n = int(n)

    def _compute(self, prec):
        q = prec + 4
        while True:
            out = self.x.interval(q) ** self.n
            if out.width <= Fraction(1, 1 << prec):
                return out
            q *= 2


def as_real(x) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, Interval):
        # constant-width leaf: usable as long as requested precision is coarser
        return RFromFn(lambda prec, _iv=x: _iv)
    return RExact(Fraction(x))


def real_pi() -> Real:
    return RPi()


def real_sqrt(x) -> Real:
    return RSqrt(as_real(x))


def real_log(x) -> Real:
    return RLog(as_real(x))


def real_root(q, r: int) -> Real:
    return RRoot(q, r)


def real_rational_power(base: Fraction, num: int, den: int) -> Real:
    """base**(num/den) for rational base > 0."""
    base = Fraction(base)
    if base <= 0:
        raise ValueError("base must be positive")
    if num == 0:
        return RExact(1)
    p = base**num if num > 0 else (1 / base) ** (-num)
    return RRoot(p, den)


# ---------------------------------------------------------------------------
# Exact values q + r*sqrt(d)


class QuadVal:
    """q + r*sqrt(d), d squarefree > 1 (or r == 0 for plain rationals).

    Supports exact sign determination and exact comparison against any other
    QuadVal, including ones over a different d: the root terms are isolated
    and squared away, so no numerics are involved.
    """

    __slots__ = ("q", "r", "d")

    def __init__(self, q, r=0, d=1):
        q = Fraction(q)
        r = Fraction(r)
        d = int(d)
        if r == 0:
            d = 1
        if d == 1:
            q, r = q + r, Fraction(0)
        elif d <= 1:
            raise ValueError("d must be squarefree > 1 (or 1 for rationals)")
        self.q = q
        self.r = r
        self.d = d

    def __repr__(self):
        if self.r == 0:
            return f"QuadVal({self.q})"
        return f"QuadVal({self.q} + {self.r}*sqrt({self.d}))"

    @property
    def is_rational(self) -> bool:
        return self.r == 0

    def __eq__(self, other):
        other = as_quadval(other)
        return (self.q, self.r, self.d) == (other.q, other.r, other.d)

    def __hash__(self):
        return hash((self.q, self.r, self.d))

    def sign(self) -> int:
        """Exact sign of q + r*sqrt(d)."""
        q, r, d = self.q, self.r, self.d
        if r == 0:
            return (q > 0) - (q < 0)
        if q == 0:
            return 1 if r > 0 else -1
        if q > 0 and r > 0:
            return 1
        if q < 0 and r < 0:
            return -1
        # opposite signs: |q| vs |r|sqrt(d); equality impossible (d squarefree > 1)
        lhs = q * q
        rhs = r * r * d
        if q > 0:  # r < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __neg__(self):
        return QuadVal(-self.q, -self.r, self.d)

    def __add__(self, other):
        other = as_quadval(other)
        if other.r == 0:
            return QuadVal(self.q + other.q, self.r, self.d)
        if self.r == 0:
            return QuadVal(self.q + other.q, other.r, other.d)
        if self.d != other.d:
            raise ValueError("cannot add roots of different d exactly")
        return QuadVal(self.q + other.q, self.r + other.r, self.d)

    def __sub__(self, other):
        return self + (-as_quadval(other))

    def __mul__(self, other):
        other = as_quadval(other)
        if self.d == other.d:
            return QuadVal(
                self.q * other.q + self.r * other.r * self.d,
                self.q * other.r + self.r * other.q,
                self.d,
            )
        if self.r == 0:
            return QuadVal(self.q * other.q, self.q * other.r, other.d)
        if other.r == 0:
            return QuadVal(self.q * other.q, self.r * other.q, self.d)
        raise ValueError("cannot multiply roots of different d exactly")

    __rmul__ = __mul__

    def cmp(self, other) -> int:
        """Exact sign of self - other, any mixture of root fields."""
        other = as_quadval(other)
        if self.d == other.d or self.r == 0 or other.r == 0:
            try:
                return (self - other).sign()
            except ValueError:
                pass
        # q + r sqrt(d) - r' sqrt(d') with q = q1-q2, both roots present
        q = self.q - other.q
        r, d = self.r, self.d
        rp, dp = other.r, other.d
        # sign of (q + r sqrt d) - rp sqrt(dp)
        lhs = QuadVal(q, r, d)
        s_l = lhs.sign()
        s_r = (rp > 0) - (rp < 0)
        if s_l != s_r:
            if s_l > s_r:
                return 1
            if s_l < s_r:
                return -1
        if s_l == 0 and s_r == 0:
            return 0
        # same nonzero sign: compare squares, which reduces to a single root
        # (q + r sqrt d)^2 = q^2 + r^2 d + 2qr sqrt(d) vs rp^2 dp
        sq = QuadVal(q * q + r * r * d - rp * rp * dp, 2 * q * r, d)
        s = sq.sign()
        return s if s_l > 0 else -s

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            raise ValueError("negative powers not supported")
        out = QuadVal(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def to_real(self) -> Real:
        if self.r == 0:
            return RExact(self.q)
        return RSum([RExact(self.q), RProd(RExact(self.r), RSqrt(RExact(self.d)))])

    def interval(self, prec: int = 53) -> Interval:
        return self.to_real().interval(prec)

    def __float__(self):
        return float(self.q) + float(self.r) * float(self.d) ** 0.5


def as_quadval(x) -> QuadVal:
    if isinstance(x, QuadVal):
        return x
    return QuadVal(Fraction(x))


# ---------------------------------------------------------------------------
# Symbolic positive constants c * pi**a * sqrt(k)


class ExactConst:
    """Exact positive constant of the form coef * pi**pi_pow * sqrt(root).

    coef is a positive rational, pi_pow any integer, root a squarefree
    integer >= 1 (root == 1 means no radical).  Closed under multiplication,
    integer powers and inversion, which covers every volume and determinant
    produced by the built-in norm systems.
    """

    __slots__ = ("coef", "pi_pow", "root")

    def __init__(self, coef, pi_pow: int = 0, root: int = 1):
        coef = Fraction(coef)
        if coef <= 0:
            raise ValueError("ExactConst is positive by convention")
        root = int(root)
        if root < 1:
            raise ValueError("root must be >= 1")
        k, s = arith.squarefree_kernel(root)
        coef *= s
        self.coef = coef
        self.pi_pow = int(pi_pow)
        self.root = k

    def __repr__(self):
        parts = [str(self.coef)]
        if self.pi_pow:
            parts.append(f"pi^{self.pi_pow}")
        if self.root != 1:
            parts.append(f"sqrt({self.root})")
        return "*".join(parts)

    def __eq__(self, other):
        if not isinstance(other, ExactConst):
            return NotImplemented
        return (self.coef, self.pi_pow, self.root) == (
            other.coef,
            other.pi_pow,
            other.root,
        )

    def __hash__(self):
        return hash((self.coef, self.pi_pow, self.root))

    def __mul__(self, other):
        if not isinstance(other, ExactConst):
            other = ExactConst(other)
        root = self.root * other.root
        k, s = arith.squarefree_kernel(root)
        return ExactConst(self.coef * other.coef * s, self.pi_pow + other.pi_pow, k)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        n = int(n)
        if n == 0:
            return ExactConst(1)
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactConst(self.coef**n, self.pi_pow * n, 1)
        if n % 2:
            out = out * ExactConst(self.root ** (n // 2), 0, self.root)
        else:
            out = out * ExactConst(self.root ** (n // 2), 0, 1)
        return out

    def inverse(self) -> "ExactConst":
        # 1/sqrt(k) = sqrt(k)/k
        return ExactConst(1 / (self.coef * self.root), -self.pi_pow, self.root)

    def __truediv__(self, other):
        if not isinstance(other, ExactConst):
            other = ExactConst(other)
        return self * other.inverse()

    @property
    def is_rational(self) -> bool:
        return self.pi_pow == 0 and self.root == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return self.coef

    def to_real(self) -> Real:
        out: Real = RExact(self.coef)
        if self.pi_pow:
            out = RProd(out, RPowInt(RPi(), self.pi_pow))
        if self.root != 1:
            out = RProd(out, RSqrt(RExact(self.root)))
        return out

    def interval(self, prec: int = 53) -> Interval:
        return self.to_real().interval(prec)

    def __float__(self):
        return float(self.interval(60).mid)
