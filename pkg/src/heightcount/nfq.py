"""Exact arithmetic in Q and in real/imaginary quadratic fields.

Elements are stored on the integral basis {1, w} where w = sqrt(d) for
d = 2, 3 mod 4 and w = (1 + sqrt(d))/2 for d = 1 mod 4.  Fractional ideals
are kept in two-element normal form: a rational denominator together with a
lower-triangular integer basis [(a, 0), (b, c)] on {1, w}.  Class numbers
come from reduced binary quadratic forms (cycle counting in the indefinite
case), fundamental units from the continued fraction of w, so everything
stays in exact integer arithmetic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

from . import arith
from .enclosures import Interval, QuadVal, RExact, Real, real_log
from .errors import (
    InvalidD,
    InvariantsFileError,
    NotSquarefree,
    UnsupportedDegree,
    ZeroVector,
)

# ---------------------------------------------------------------------------
# Fields


class RationalField:
    """Q, presented with the same surface as the quadratic fields."""

    degree = 1
    disc = 1
    signature = (1, 0)
    w = 2
    d = 1
    is_real = True

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "QQ"

    # basis data used uniformly by Element arithmetic
    omega_trace = Fraction(0)
    omega_norm = Fraction(0)

    def element(self, a, b=0) -> "Element":
        if Fraction(b) != 0:
            raise ValueError("rational field has no irrational elements")
        return Element(self, Fraction(a), Fraction(0))

    def one(self):
        return self.element(1)

    def zero(self):
        return self.element(0)


QQ = RationalField()


class QuadraticField:
    """Q(sqrt(d)) for squarefree d not in {0, 1}."""

    degree = 2

    _cache: dict[int, "QuadraticField"] = {}

    def __new__(cls, d: int):
        d = int(d)
        if d in cls._cache:
            return cls._cache[d]
        if d in (0, 1):
            raise InvalidD(f"d={d} does not define a quadratic field")
        if not arith.is_squarefree(d):
            raise NotSquarefree(f"d={d} has a square factor; pass its kernel explicitly")
        self = super().__new__(cls)
        self.d = d
        self.disc = d if d % 4 == 1 else 4 * d
        self.signature = (2, 0) if d > 0 else (0, 1)
        if self.disc == -3:
            self.w = 6
        elif self.disc == -4:
            self.w = 4
        else:
            self.w = 2
        self.omega_is_half = d % 4 == 1
        # trace and norm of w
        if self.omega_is_half:
            self.omega_trace = Fraction(1)
            self.omega_norm = Fraction(1 - d, 4)
        else:
            self.omega_trace = Fraction(0)
            self.omega_norm = Fraction(-d)
        cls._cache[d] = self
        return self

    @property
    def is_real(self) -> bool:
        return self.d > 0

    @property
    def is_imaginary(self) -> bool:
        return self.d < 0

    def __repr__(self):
        return f"Q(sqrt({self.d}))"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("QuadraticField", self.d))

    def element(self, a, b=0) -> "Element":
        return Element(self, Fraction(a), Fraction(b))

    def one(self):
        return self.element(1)

    def zero(self):
        return self.element(0)

    def omega(self) -> "Element":
        return self.element(0, 1)

    def sqrt_d(self) -> "Element":
        """The element sqrt(d) expressed on the integral basis."""
        if self.omega_is_half:
            return self.element(-1, 2)
        return self.element(0, 1)

    def omega_description(self) -> str:
        return "(1+sqrt(d))/2" if self.omega_is_half else "sqrt(d)"


def make_quadratic_field(d: int) -> QuadraticField:
    return QuadraticField(d)


Field = Union[RationalField, QuadraticField]

# ---------------------------------------------------------------------------
# Elements


class Element:
    """a + b*w with rational a, b; immutable."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: Field, a: Fraction, b: Fraction = Fraction(0)):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        if field.degree == 1 and self.b != 0:
            raise ValueError("rational element with b != 0")

    def __setattr__(self, *a):
        raise AttributeError("Element is immutable")

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*w[{getattr(self.field, 'd', 1)}])"

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.field is self.field or other.field == self.field:
                return other
            if other.field.degree == 1:
                return Element(self.field, other.a)
            if self.field.degree == 1:
                raise ValueError("cannot coerce quadratic element into Q")
            raise ValueError("elements of different quadratic fields")
        return Element(self.field, Fraction(other))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((getattr(self.field, "d", 1), self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        o = self._coerce(other)
        return Element(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        t, n = self.field.omega_trace, self.field.omega_norm
        # w^2 = t*w - n
        a = self.a * o.a - n * self.b * o.b
        b = self.a * o.b + self.b * o.a + t * self.b * o.b
        return Element(self.field, a, b)

    __rmul__ = __mul__

    def conj(self) -> "Element":
        t = self.field.omega_trace
        return Element(self.field, self.a + self.b * t, -self.b)

    def norm(self) -> Fraction:
        t, n = self.field.omega_trace, self.field.omega_norm
        return self.a * self.a + t * self.a * self.b + n * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a + self.field.omega_trace * self.b

    def inverse(self) -> "Element":
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return Element(self.field, c.a / nm, c.b / nm)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        out = Element(self.field, Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # embeddings -------------------------------------------------------------

    def sigma_quadval(self, index: int = 0) -> QuadVal:
        """Value of the element under the index-th real embedding (real fields
        and Q only); index 0 maps sqrt(d) to +sqrt(d)."""
        if self.field.degree == 1:
            return QuadVal(self.a)
        if not self.field.is_real:
            raise ValueError("complex embedding has no QuadVal")
        d = self.field.d
        if self.field.omega_is_half:
            q = self.a + self.b / 2
            r = self.b / 2
        else:
            q, r = self.a, self.b
        if index == 1:
            r = -r
        elif index != 0:
            raise ValueError("real quadratic fields have embeddings 0 and 1")
        return QuadVal(q, r, d)

    def complex_parts(self) -> tuple[Fraction, QuadVal]:
        """(re, im) of the chosen complex embedding; im is rational * sqrt(|d|)."""
        if self.field.degree == 1 or self.field.is_real:
            raise ValueError("not an imaginary quadratic element")
        d = self.field.d
        if self.field.omega_is_half:
            re = self.a + self.b / 2
            im = QuadVal(0, self.b / 2, -d)
        else:
            re = self.a
            im = QuadVal(0, self.b, -d)
        return Fraction(re), im

    def abs_squared(self) -> Fraction:
        """|sigma(x)|^2 at the complex place (imaginary quadratic only)."""
        if self.field.degree == 2 and self.field.is_imaginary:
            return self.norm()
        raise ValueError("abs_squared is for imaginary quadratic elements")

    def denominator(self) -> int:
        return self.a.denominator * self.b.denominator // gcd(
            self.a.denominator, self.b.denominator
        )


def element_from_string(field: Field, text: str) -> Element:
    """Parse 'a', 'a+b*w', '-1/2w' style element literals."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty element literal")
    # split into terms at +/- that are not inside a fraction
    terms = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    a = Fraction(0)
    b = Fraction(0)
    for t in terms:
        if t.endswith("w"):
            coef = t[:-1]
            if coef in ("", "+"):
                coef = "1"
            elif coef == "-":
                coef = "-1"
            b += Fraction(coef)
        else:
            a += Fraction(t)
    return field.element(a, b) if field.degree == 2 else field.element(a)


# ---------------------------------------------------------------------------
# Fractional ideals


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


class FractionalIdeal:
    """Nonzero fractional ideal of a quadratic field (or of Q).

    Quadratic case: the Z-module (Z*a + Z*(b + c*w)) / den with a, c > 0,
    0 <= b < a.  Rational case: the ideal q*Z for a positive rational q.
    """

    __slots__ = ("field", "num", "den", "gen")

    def __init__(self, field: Field, num: tuple[int, int, int], den: int, gen=None):
        self.field = field
        self.num = num
        self.den = den
        self.gen = gen  # rational generator, Q only

    # construction -----------------------------------------------------------

    @classmethod
    def from_generators(cls, field: Field, gens) -> "FractionalIdeal":
        gens = [g if isinstance(g, Element) else field.element(g) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ZeroVector("ideal needs a nonzero generator")
        if field.degree == 1:
            q = Fraction(0)
            for g in gens:
                q = _frac_gcd(q, abs(g.a))
            return cls(field, (0, 0, 0), 1, gen=q)
        rows = []
        den = 1
        for g in gens:
            den = den * g.denominator() // gcd(den, g.denominator())
        for g in gens:
            for h in (g, g * field.omega()):
                rows.append((int(h.a * den), int(h.b * den)))
        a, b, c = _hnf_2col(rows)
        return cls._normalized(field, a, b, c, den)

    @classmethod
    def principal(cls, field: Field, x) -> "FractionalIdeal":
        return cls.from_generators(field, [x])

    @classmethod
    def _normalized(cls, field, a, b, c, den) -> "FractionalIdeal":
        g = gcd(gcd(a, gcd(b, c)), den)
        a, b, c, den = a // g, b // g, c // g, den // g
        b %= a
        return cls(field, (a, b, c), den)

    @classmethod
    def unit_ideal(cls, field: Field) -> "FractionalIdeal":
        return cls.principal(field, field.one())

    # basic data --------------------------------------------------------------

    def basis_elements(self) -> tuple[Element, Element]:
        if self.field.degree == 1:
            raise ValueError("rank-1 ideal")
        a, b, c = self.num
        e1 = self.field.element(Fraction(a, self.den))
        e2 = self.field.element(Fraction(b, self.den), Fraction(c, self.den))
        return e1, e2

    def norm(self) -> Fraction:
        if self.field.degree == 1:
            return self.gen
        a, b, c = self.num
        return Fraction(a * c, self.den * self.den)

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        if self.field.degree == 1:
            return other.field.degree == 1 and self.gen == other.gen
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.field.degree == 1:
            return hash(("QIdeal", self.gen))
        return hash((getattr(self.field, "d", 1), self.num, self.den))

    def __repr__(self):
        if self.field.degree == 1:
            return f"({self.gen})"
        a, b, c = self.num
        return f"Ideal[{self.field!r}]([{a}, {b}+{c}w]/{self.den})"

    # arithmetic ---------------------------------------------------------------

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        if self.field.degree == 1:
            return FractionalIdeal(self.field, (0, 0, 0), 1, gen=self.gen * other.gen)
        e1, e2 = self.basis_elements()
        f1, f2 = other.basis_elements()
        return FractionalIdeal.from_generators(
            self.field, [e1 * f1, e1 * f2, e2 * f1, e2 * f2]
        )

    def scale(self, x) -> "FractionalIdeal":
        """(x) * I for a nonzero element or rational x."""
        if self.field.degree == 1:
            x = self.field.element(x) if not isinstance(x, Element) else x
            return FractionalIdeal(self.field, (0, 0, 0), 1, gen=self.gen * abs(x.a))
        e1, e2 = self.basis_elements()
        return FractionalIdeal.from_generators(self.field, [e1 * x, e2 * x])

    def conj(self) -> "FractionalIdeal":
        if self.field.degree == 1:
            return self
        e1, e2 = self.basis_elements()
        return FractionalIdeal.from_generators(self.field, [e1.conj(), e2.conj()])

    def inverse(self) -> "FractionalIdeal":
        if self.field.degree == 1:
            return FractionalIdeal(self.field, (0, 0, 0), 1, gen=1 / self.gen)
        nm = self.norm()
        conj = self.conj()
        e1, e2 = conj.basis_elements()
        return FractionalIdeal.from_generators(self.field, [e1 / nm, e2 / nm])

    def contains(self, x: Element) -> bool:
        if self.field.degree == 1:
            return (x.a / self.gen).denominator == 1
        a, b, c = self.num
        xa = x.a * self.den
        xb = x.b * self.den
        if xa.denominator != 1 or xb.denominator != 1:
            return False
        xa, xb = int(xa), int(xb)
        if xb % c:
            return False
        beta = xb // c
        rem = xa - beta * b
        return rem % a == 0

    def is_integral(self) -> bool:
        if self.field.degree == 1:
            return self.gen.denominator == 1
        return self.den == 1

    def ord_at(self, place) -> int:
        e1, e2 = (
            (None, None) if self.field.degree == 1 else self.basis_elements()
        )
        if self.field.degree == 1:
            return _vp_fraction(self.gen, place.p)
        return min(ord_element(e1, place), ord_element(e2, place))

    def principal_generator(self) -> Optional[Element]:
        """A generator, when one can be found by short-vector search.

        Works for Q always, and for imaginary quadratic fields (the norm form
        is positive definite, so elements of norm N(I) are a finite search).
        Returns None when no generator exists or the field is real quadratic.
        """
        if self.field.degree == 1:
            return self.field.element(self.gen)
        if self.field.is_real:
            return None
        target = self.norm()
        e1, e2 = self.basis_elements()
        # positive definite quadratic form N(x*e1 + y*e2)
        A = e1.norm()
        B = (e1 * e2.conj()).trace()
        C = e2.norm()
        # bound |x|, |y| from N = A x^2 + B x y + C y^2 = target
        det4 = 4 * A * C - B * B
        ybound = arith.floor_sqrt_frac(4 * A * target / det4)
        xbound = arith.floor_sqrt_frac(4 * C * target / det4)
        for y in range(-ybound, ybound + 1):
            for x in range(-xbound, xbound + 1):
                if x == 0 and y == 0:
                    continue
                cand = e1 * x + e2 * y
                if cand.norm() == target:
                    return cand
        return None


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def _hnf_2col(rows) -> tuple[int, int, int]:
    """Lower-triangular basis (a,0),(b,c) of the Z-module spanned by rows."""
    rows = [r for r in rows if r != (0, 0)]
    b, c = 0, 0
    for x, y in rows:
        if y:
            g, u, v = _ext_gcd(c, y)
            b, c = u * b + v * x, g
    a = 0
    for x, y in rows:
        if c:
            x = x - (y // c) * b
        a = gcd(a, abs(x))
    if a == 0 or c == 0:
        raise ZeroVector("generators span a module of rank < 2")
    b %= a
    return a, b, c


def content_ideal(coords) -> FractionalIdeal:
    """Ideal gcd of the coordinates of a nonzero tuple."""
    coords = list(coords)
    if not coords:
        raise ZeroVector("empty tuple")
    field = coords[0].field
    nz = [c for c in coords if not c.is_zero()]
    if not nz:
        raise ZeroVector("all coordinates vanish")
    return FractionalIdeal.from_generators(field, nz)


# ---------------------------------------------------------------------------
# Places


@dataclass(frozen=True)
class FinitePlace:
    field_d: int
    p: int
    kind: str  # "rational" | "split" | "inert" | "ramified"
    index: int
    np: int
    d_v: int
    residue: Optional[int] = None  # root of the minimal polynomial of w mod p

    @property
    def is_finite(self):
        return True


@dataclass(frozen=True)
class InfinitePlace:
    field_d: int
    index: int
    d_v: int

    @property
    def is_finite(self):
        return False


def places_above(field: Field, p: int) -> list[FinitePlace]:
    """Finite places over the rational prime p, with local degrees summing to
    the field degree.  Splitting is decided by the Kronecker symbol of the
    discriminant."""
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if field.degree == 1:
        return [FinitePlace(1, p, "rational", 0, p, 1)]
    disc = field.disc
    sym = arith.kronecker(disc, p)
    t = field.omega_trace
    n = field.omega_norm
    roots = [
        r for r in range(p) if (r * r - int(t) * r + _int_mod(n, p)) % p == 0
    ]
    if sym == 1:
        assert len(roots) == 2
        return [
            FinitePlace(field.d, p, "split", i, p, 1, residue=r)
            for i, r in enumerate(sorted(roots))
        ]
    if sym == -1:
        return [FinitePlace(field.d, p, "inert", 0, p * p, 2)]
    assert len(roots) == 1
    return [FinitePlace(field.d, p, "ramified", 0, p, 2, residue=roots[0])]


def _int_mod(q: Fraction, p: int) -> int:
    """q mod p for a rational with denominator coprime to p."""
    den = q.denominator
    if den % p == 0:
        raise ValueError("denominator not invertible")
    return (q.numerator * pow(den, -1, p)) % p


def infinite_places(field: Field) -> list[InfinitePlace]:
    if field.degree == 1:
        return [InfinitePlace(1, 0, 1)]
    if field.is_real:
        return [InfinitePlace(field.d, 0, 1), InfinitePlace(field.d, 1, 1)]
    return [InfinitePlace(field.d, 0, 2)]


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_fraction(q: Fraction, p: int) -> int:
    if q == 0:
        raise ValueError("valuation of 0")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _hensel_root(field: QuadraticField, p: int, r0: int, k: int) -> int:
    """Lift a simple root of x^2 - t x + n mod p to mod p**k (split case)."""
    t = field.omega_trace
    n = field.omega_norm
    mod = p
    r = r0 % p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        tt = _int_mod(t, mod)
        nn = _int_mod(n, mod)
        f = (r * r - tt * r + nn) % mod
        fp = (2 * r - tt) % mod
        r = (r - f * pow(fp, -1, mod)) % mod
    return r


def ord_element(x: Element, place: FinitePlace) -> int:
    """Valuation of x at a finite place (in uniformizer units)."""
    if x.is_zero():
        raise ZeroVector("ord of 0")
    field = x.field
    p = place.p
    if field.degree == 1:
        return _vp_fraction(x.a, p)
    # clear denominators: x = y / m with y integral
    m = x.denominator()
    y_a, y_b = int(x.a * m), int(x.b * m)
    vm = _vp_int(m, p) if m % p == 0 else 0
    ny = y_a * y_a + int(field.omega_trace * y_a * y_b + field.omega_norm * y_b * y_b)
    # ny = N(y) as integer
    vN = _vp_int(ny, p) if ny % p == 0 else 0
    if place.kind == "inert":
        assert vN % 2 == 0
        return vN // 2 - vm
    if place.kind == "ramified":
        return vN - 2 * vm
    # split: p-adic valuation of a + b * (lifted root)
    bound = vN
    if bound == 0:
        return -vm
    r = _hensel_root(field, p, place.residue, bound + 1)
    mod = p ** (bound + 1)
    val_target = (y_a + y_b * r) % mod
    if val_target == 0:
        v = bound
    else:
        v = _vp_int(val_target, p)
        v = min(v, bound)
    return v - vm


@dataclass(frozen=True)
class FiniteAbsValue:
    """Exact |x|_v = base**exponent at a finite place."""

    base: int
    exponent: Fraction

    def as_fraction(self) -> Fraction:
        if self.exponent.denominator != 1:
            raise ValueError("fractional exponent; take powers first")
        e = int(self.exponent)
        return Fraction(self.base) ** e

    def power(self, k: int) -> Fraction:
        e = self.exponent * k
        if e.denominator != 1:
            raise ValueError("power does not clear the exponent denominator")
        return Fraction(self.base) ** int(e)

    def __float__(self):
        return float(self.base) ** float(self.exponent)


def absolute_value(x: Element, place) -> Union[FiniteAbsValue, Real]:
    """Normalized absolute value: Np**(-ord/d_v) at finite places, |sigma(x)|
    as a certified enclosure at infinite places.  |0|_v = 0 by convention
    (finite places reject zero since ord is undefined)."""
    if isinstance(place, FinitePlace):
        if x.is_zero():
            raise ZeroVector("|0|_v is 0 by convention; ord undefined")
        o = ord_element(x, place)
        return FiniteAbsValue(place.np, Fraction(-o, place.d_v))
    if x.is_zero():
        return RExact(0)
    field = x.field
    if field.degree == 1 or field.is_real:
        qv = abs(x.sigma_quadval(place.index))
        return qv.to_real()
    # complex place: |sigma(x)| = sqrt(N(x))
    from .enclosures import real_sqrt

    return real_sqrt(RExact(x.abs_squared()))


def embeddings(x: Element):
    """All archimedean embedding values, one entry per infinite place.

    Real embeddings give refinable Real enclosures; the complex embedding
    gives an (re, im) pair of Reals (C identified with R^2), conjugates
    omitted per the one-per-pair convention.
    """
    field = x.field
    if field.degree == 1:
        return (RExact(x.a),)
    if field.degree > 2:
        raise UnsupportedDegree("embeddings need element arithmetic (degree <= 2)")
    if field.is_real:
        return (x.sigma_quadval(0).to_real(), x.sigma_quadval(1).to_real())
    re, im = x.complex_parts()
    return ((RExact(re), im.to_real()),)


# ---------------------------------------------------------------------------
# Reduced binary quadratic forms, class numbers, units


def _reduced_forms_imaginary(disc: int) -> list[tuple[int, int, int]]:
    """All reduced primitive forms (a, b, c) of discriminant disc < 0:
    |b| <= a <= c, b >= 0 when |b| = a or a = c."""
    assert disc < 0 and disc % 4 in (0, 1)
    forms = []
    b = disc & 1
    while 3 * b * b <= -disc:
        m4 = b * b - disc
        assert m4 % 4 == 0
        m = m4 // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if gcd(gcd(a, b), c) == 1:
                    forms.append((a, b, c))
                    if b and b != a and a != c:
                        forms.append((a, -b, c))
            a += 1
        b += 2
    return forms


def _reduced_forms_real(disc: int) -> list[tuple[int, int, int]]:
    """All reduced primitive indefinite forms of discriminant disc > 0:
    0 < b < sqrt(disc) and sqrt(disc) - b < 2|a| < sqrt(disc) + b."""
    assert disc > 0 and not arith.is_square(disc)
    s = isqrt(disc)
    forms = []
    b = 2 - (disc & 1)  # smallest positive b with b = disc (mod 2)
    while b <= s:
        m4 = disc - b * b
        m = m4 // 4
        u = 1
        while u * u <= m:
            if m % u == 0:
                for aa in {u, m // u}:
                    if (2 * aa + b) ** 2 > disc and (2 * aa <= b or (2 * aa - b) ** 2 < disc):
                        cc = -(m // aa)
                        if gcd(gcd(aa, b), cc) == 1:
                            forms.append((aa, b, cc))
                            forms.append((-aa, b, -cc))
            u += 1
        b += 2
    return forms


def _rho_real(form: tuple[int, int, int], disc: int, s: int) -> tuple[int, int, int]:
    """Reduction step on indefinite forms; permutes the reduced ones."""
    _, b, c = form
    ac = abs(c)
    r = s - ((s + b) % (2 * ac))
    return (c, r, (r * r - disc) // (4 * c))


def _real_cycle_count(disc: int) -> int:
    """Number of cycles of reduced forms = narrow class number."""
    forms = _reduced_forms_real(disc)
    s = isqrt(disc)
    left = set(forms)
    cycles = 0
    while left:
        start = left.pop()
        cur = _rho_real(start, disc, s)
        guard = 0
        while cur != start:
            left.discard(cur)
            cur = _rho_real(cur, disc, s)
            guard += 1
            if guard > 10_000_000:
                raise RuntimeError("reduction cycle failed to close")
        cycles += 1
    return cycles


def continued_fraction_unit(disc: int) -> tuple[int, int, int, int]:
    """Fundamental unit of the order of discriminant disc > 0.

    Returns (x, y, den, norm) with eps = (x + y*sqrt(d))/den > 1, d the
    squarefree kernel of disc, norm = N(eps) = +-1.  Expands
    w = (disc mod 2 + sqrt(disc))/2 by the integer (P, Q) recurrence; once a
    (P, Q) pair repeats, the product of the partial-quotient matrices over
    one period fixes xi and its second row evaluates the unit.
    """
    D = disc
    s = isqrt(D)
    assert s * s != D
    P, Q = D % 2, 2
    seen: dict[tuple[int, int], int] = {}
    quots: list[int] = []
    k = 0
    while (P, Q) not in seen:
        seen[(P, Q)] = k
        a = (P + s) // Q
        quots.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
        k += 1
    j = seen[(P, Q)]
    # matrix over the cycle quots[j:k]
    A, B, C, E = 1, 0, 0, 1
    for a in quots[j:k]:
        A, B, C, E = A * a + B, A, C * a + E, C
    # replay to (P_j, Q_j)
    P, Q = D % 2, 2
    for a in quots[:j]:
        P = a * Q - P
        Q = (D - P * P) // Q
    # eps = C*(P + sqrt(D))/Q + E
    d, t = arith.squarefree_kernel(D)
    # sqrt(D) = t*sqrt(d)
    x = Fraction(C * P, Q) + E
    y = Fraction(C * t, Q)
    norm_sign = (-1) ** (k - j)
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    return int(x * den), int(y * den), den, norm_sign


def fundamental_unit(field: QuadraticField) -> Element:
    """Fundamental unit > 1 of a real quadratic field, on the integral basis."""
    if field.degree != 2 or not field.is_real:
        raise ValueError("fundamental unit needs a real quadratic field")
    x, y, den, _ = continued_fraction_unit(field.disc)
    # (x + y*sqrt(d))/den -> a + b*w
    if field.omega_is_half:
        b = Fraction(2 * y, den)
        a = Fraction(x, den) - b / 2
    else:
        a = Fraction(x, den)
        b = Fraction(y, den)
    eps = field.element(a, b)
    assert abs(eps.norm()) == 1
    assert eps.sigma_quadval(0).cmp(QuadVal(1)) > 0
    return eps


def unit_norm(field: QuadraticField) -> int:
    _, _, _, nrm = continued_fraction_unit(field.disc)
    return nrm


def class_number(field: Field) -> int:
    """h by reduced-form counting; indefinite cycles give the narrow number,
    converted to the wide one through the norm of the fundamental unit."""
    if field.degree == 1:
        return 1
    if field.is_imaginary:
        return len(_reduced_forms_imaginary(field.disc))
    narrow = _real_cycle_count(field.disc)
    if unit_norm(field) == -1:
        return narrow
    assert narrow % 2 == 0
    return narrow // 2


def regulator(field: Field) -> Real:
    """log of the fundamental unit; exactly 1 for unit rank 0 (Q and imaginary
    quadratic), keeping downstream constant formulas case-free."""
    if field.degree == 1 or field.is_imaginary:
        return RExact(1)
    eps = fundamental_unit(field)
    return real_log(eps.sigma_quadval(0).to_real())


def class_group_representatives(field: Field) -> list[FractionalIdeal]:
    """Integral ideal representatives, one per ideal class.

    Imaginary quadratic: reduced forms (a, b, c) map to [a, (-b + sqrt(disc))/2].
    Q: the unit ideal.  Real quadratic fields are not supported here (cycles
    give narrow classes); callers relying on class-independence should not
    need representatives.
    """
    if field.degree == 1:
        return [FractionalIdeal.unit_ideal(field)]
    if field.is_real:
        raise UnsupportedDegree("representatives implemented for imaginary fields")
    reps = []
    for a, b, c in _reduced_forms_imaginary(field.disc):
        # (-b + sqrt(disc))/2 on the integral basis
        if field.omega_is_half:
            elt = field.element(Fraction(-b - 1, 2), 1)
        else:
            assert b % 2 == 0
            elt = field.element(Fraction(-b, 2), 1)
        reps.append(FractionalIdeal.from_generators(field, [field.element(a), elt]))
    return reps


def prime_ideals_up_to(field: QuadraticField, bound: int) -> list[tuple[FractionalIdeal, int]]:
    """All prime ideals with norm <= bound, as (ideal, norm) pairs."""
    out = []
    for p in arith.primes_up_to(bound):
        for place in places_above(field, p):
            if place.kind == "inert":
                if p * p <= bound:
                    out.append((FractionalIdeal.principal(field, field.element(p)), p * p))
            else:
                if field.omega_is_half:
                    # root r of x^2 - x + (1-d)/4; w - r generates with p
                    elt = field.element(-place.residue, 1)
                else:
                    elt = field.element(-place.residue, 1)
                ideal = FractionalIdeal.from_generators(field, [field.element(p), elt])
                assert ideal.norm() == p, (p, place, ideal.norm())
                out.append((ideal, p))
    out.sort(key=lambda t: (t[1], t[0].num))
    return out


# ---------------------------------------------------------------------------
# Batch class-number scans (shared by diagnostics and the certification script)


def class_numbers_imaginary_up_to(T: int) -> dict[int, int]:
    """h for every fundamental discriminant -T <= disc < 0, by one sweep over
    all reduced forms with |disc| <= T."""
    fund = _fundamental_flags(T)
    h: dict[int, int] = defaultdict(int)
    b = 0
    while 3 * b * b <= T:
        a = max(b, 1)
        while 4 * a * a - b * b <= T:
            c = max(a, b * b // (4 * a) + 1)  # 4ac > b^2 keeps disc < 0
            while 4 * a * c - b * b <= T:
                disc = b * b - 4 * a * c
                if fund[-disc] and gcd(gcd(a, b), c) == 1:
                    mult = 1 if (b == 0 or b == a or a == c) else 2
                    h[disc] += mult
                c += 1
            a += 1
        b += 1
    return dict(h)


def _fundamental_flags(T: int) -> bytearray:
    flags = bytearray(T + 1)
    for disc in arith.fundamental_discriminants_up_to(T):
        if disc < 0:
            flags[-disc] = 1
    return flags


def class_numbers_real_up_to(T: int) -> dict[int, int]:
    """h for every fundamental discriminant 0 < disc <= T."""
    out = {}
    for disc in arith.fundamental_discriminants_up_to(T):
        if disc > 0:
            narrow = _real_cycle_count(disc)
            if continued_fraction_unit(disc)[3] == -1:
                out[disc] = narrow
            else:
                out[disc] = narrow // 2
    return out


# ---------------------------------------------------------------------------
# Field invariants (computed or supplied)


@dataclass(frozen=True)
class FieldInvariants:
    label: str
    degree: int
    disc: int
    r: int
    s: int
    h: int
    reg: Interval
    w: int
    provenance: str  # "computed" | "supplied"

    def __post_init__(self):
        if self.degree != self.r + 2 * self.s:
            raise InvariantsFileError(f"{self.label}: degree != r + 2s")
        if self.h < 1 or self.w < 2 or self.w % 2:
            raise InvariantsFileError(f"{self.label}: bad h or w")
        if self.reg.lo <= 0:
            raise InvariantsFileError(f"{self.label}: regulator must be positive")
        if self.provenance == "computed" and self.degree > 2:
            raise InvariantsFileError("computed invariants exist only for degree <= 2")

    @property
    def unit_rank(self) -> int:
        return self.r + self.s - 1


def invariants_of(field: Field, reg_prec: int = 80) -> FieldInvariants:
    if field.degree == 1:
        return FieldInvariants("Q", 1, 1, 1, 0, 1, Interval.exact(1), 2, "computed")
    r, s = field.signature
    reg = regulator(field).interval(reg_prec)
    return FieldInvariants(
        f"Q(sqrt({field.d}))",
        2,
        field.disc,
        r,
        s,
        class_number(field),
        reg,
        field.w,
        "computed",
    )


def parse_invariants_file(path) -> dict[str, FieldInvariants]:
    """One record per line: label, degree, disc, r, s, h, R, w.

    R is parsed as an exact decimal and widened to an enclosure of radius
    1e-15, so file round-trips are bit-exact.
    """
    out: dict[str, FieldInvariants] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 8:
                raise InvariantsFileError(f"line {lineno}: expected 8 fields")
            label, degree, disc, r, s, h, reg_text, w = parts
            try:
                reg_exact = Fraction(reg_text)
            except ValueError as exc:
                raise InvariantsFileError(f"line {lineno}: bad regulator") from exc
            radius = Fraction(1, 10**15)
            inv = FieldInvariants(
                label,
                int(degree),
                int(disc),
                int(r),
                int(s),
                int(h),
                Interval(reg_exact - radius, reg_exact + radius),
                int(w),
                "supplied",
            )
            if label in out:
                raise InvariantsFileError(f"line {lineno}: duplicate label {label!r}")
            out[label] = inv
    return out
