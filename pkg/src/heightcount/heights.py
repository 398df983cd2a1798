"""Projective Weil heights and norm-system heights, evaluated exactly.

Every height here is carried as an exact root: H**m is a value in the
coordinate field (a rational, or q + r*sqrt(d)), with m in {1, 2, 4}.
Threshold predicates compare H**m against X**m in that exact algebra, so
enumeration never sees a rounding boundary; certified enclosures are derived
from the exact form on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import arith, nfq
from .enclosures import QuadVal, Real, RExact, RSqrt
from .errors import (
    DimensionMismatch,
    NotPrimitive,
    Reducible,
    UnsupportedInfiniteNorm,
    ZeroVector,
)


class HomogeneousTuple:
    """Nonzero coordinate vector over Q or a quadratic field."""

    __slots__ = ("field", "coords", "n")

    def __init__(self, field, coords):
        coords = tuple(
            c if isinstance(c, nfq.Element) else field.element(c) for c in coords
        )
        if not coords or all(c.is_zero() for c in coords):
            raise ZeroVector("homogeneous tuple needs a nonzero coordinate")
        self.field = field
        self.coords = coords
        self.n = len(coords) - 1

    def scale(self, lam) -> "HomogeneousTuple":
        lam = lam if isinstance(lam, nfq.Element) else self.field.element(lam)
        if lam.is_zero():
            raise ZeroVector("scaling by zero")
        return HomogeneousTuple(self.field, [c * lam for c in self.coords])

    def __repr__(self):
        return f"({' : '.join(map(str, self.coords))})"


@dataclass(frozen=True)
class HeightValue:
    """H with H**power == exact (a QuadVal)."""

    power: int
    exact: QuadVal

    def __post_init__(self):
        if self.exact.cmp(QuadVal(0)) < 0:
            raise ValueError("height power must be nonnegative")

    def enclosure(self) -> Real:
        out: Real = self.exact.to_real()
        m = self.power
        while m > 1:
            out = RSqrt(out)
            if m % 2:
                raise ValueError("power must be a power of two")
            m //= 2
        return out

    def interval(self, prec: int = 53):
        return self.enclosure().interval(prec)

    def leq(self, x: Fraction) -> bool:
        """Exact H <= x (ties inclusive)."""
        x = Fraction(x)
        if x < 0:
            return False
        return self.exact.cmp(QuadVal(x**self.power)) <= 0

    def geq_one(self) -> bool:
        return self.exact.cmp(QuadVal(1)) >= 0

    def cmp(self, other: "HeightValue") -> int:
        """Exact comparison of two heights (cross-raising to a common power)."""
        m = self.power * other.power // gcd(self.power, other.power)
        a = self.exact ** (m // self.power)
        b = other.exact ** (m // other.power)
        return a.cmp(b)

    def eq_exact(self, other: "HeightValue") -> bool:
        return self.cmp(other) == 0

    def __float__(self):
        return float(self.interval(60).mid)


def weil_height(t: HomogeneousTuple) -> HeightValue:
    """Projective height: finite part through the content ideal, archimedean
    part through exact embedding maxima.  Scaling-invariant by construction."""
    field = t.field
    content = nfq.content_ideal(t.coords)
    fin = 1 / content.norm()
    if field.degree == 1:
        m = max(abs(c.a) for c in t.coords)
        return HeightValue(1, QuadVal(fin * m))
    if field.is_imaginary:
        m = max(c.norm() for c in t.coords)
        return HeightValue(2, QuadVal(fin * m))
    # real quadratic: product of per-embedding maxima; the product of the two
    # maxima lands back in the field
    p0 = _max_abs_embedding(t.coords, 0)
    p1 = _max_abs_embedding(t.coords, 1)
    return HeightValue(2, QuadVal(fin) * p0 * p1)


def _max_abs_embedding(coords, index: int) -> QuadVal:
    best = None
    for c in coords:
        v = abs(c.sigma_quadval(index))
        if best is None or v.cmp(best) > 0:
            best = v
    return best


def height_leq(t: HomogeneousTuple, x: Fraction) -> bool:
    """Exact decision of H(t) <= x; ties count as inside."""
    return weil_height(t).leq(x)


def root_height_from_minpoly(a: int, b: int, c: int) -> HeightValue:
    """Common height of the two roots of a primitive irreducible integer
    quadratic: H = M(f)**(1/2) with M the Mahler measure."""
    M = mahler_measure(a, b, c)
    return HeightValue(2, M)


def mahler_measure(a: int, b: int, c: int) -> QuadVal:
    """Exact Mahler measure |a| * max(1,|r1|) * max(1,|r2|) of ax^2+bx+c.

    Requires gcd(a,b,c) = 1, a != 0 and an irreducible polynomial (the
    discriminant must not be a perfect square)."""
    a, b, c = int(a), int(b), int(c)
    if a == 0:
        raise Reducible("not a quadratic")
    if gcd(gcd(a, b), c) != 1:
        raise NotPrimitive(f"content {gcd(gcd(a, b), c)}")
    if a < 0:
        a, b, c = -a, -b, -c
    disc = b * b - 4 * a * c
    if arith.is_square(disc):
        raise Reducible("rational roots")
    if disc < 0:
        # conjugate pair of modulus sqrt(c/a)
        return QuadVal(max(a, c))
    dk, tt = arith.squarefree_kernel(disc)
    # roots (-b +- t*sqrt(dk)) / (2a)
    r_plus = QuadVal(Fraction(-b, 2 * a), Fraction(tt, 2 * a), dk)
    r_minus = QuadVal(Fraction(-b, 2 * a), Fraction(-tt, 2 * a), dk)
    one = QuadVal(1)
    out_plus = abs(r_plus).cmp(one) > 0
    out_minus = abs(r_minus).cmp(one) > 0
    if not out_plus and not out_minus:
        return QuadVal(a)
    if out_plus and out_minus:
        return QuadVal(abs(c))
    r_out = r_plus if out_plus else r_minus
    return abs(QuadVal(a) * r_out)


def als_height(system, t: HomogeneousTuple) -> HeightValue:
    """Height attached to a norm system: the product over places of
    N_v(coordinates)**(d_v/d).

    Exact for max and l2 archimedean norms; the finite part is the norm of
    the twisted content ideal sum_j (alpha_j) * A_j**-1.
    """
    field = t.field
    if system.field != field:
        raise DimensionMismatch("system and tuple live over different fields")
    if system.n != t.n:
        raise DimensionMismatch(f"system dimension {system.n} != tuple dimension {t.n}")
    fin = 1 / _twisted_content_norm(system, t)
    # each infinite place contributes N_v**d_v to H**d
    plain: list[QuadVal] = []   # contributions known exactly
    rooted: list[QuadVal] = []  # contributions known as sqrt(value)
    for place, norm in zip(nfq.infinite_places(field), system.infinite):
        if norm.kind == "max":
            if field.degree == 1:
                plain.append(QuadVal(max(abs(c.a) for c in t.coords)))
            elif field.is_imaginary:
                # N_v**2 = max_j |sigma(alpha_j)|**2 = max_j N(alpha_j)
                plain.append(QuadVal(max(c.norm() for c in t.coords)))
            else:
                plain.append(_max_abs_embedding(t.coords, place.index))
        elif norm.kind == "l2":
            if field.degree == 1:
                rooted.append(QuadVal(sum((c.a * c.a for c in t.coords), Fraction(0))))
            elif field.is_imaginary:
                # N_v**2 = sum_j |sigma(alpha_j)|**2 = sum_j N(alpha_j)
                plain.append(QuadVal(sum((c.norm() for c in t.coords), Fraction(0))))
            else:
                s = QuadVal(0)
                for c in t.coords:
                    v = c.sigma_quadval(place.index)
                    s = s + v * v
                rooted.append(s)
        else:
            raise UnsupportedInfiniteNorm(
                f"exact heights need max or l2 norms, got {norm.kind!r}"
            )
    d = field.degree
    # H**d = fin * prod(plain) * prod(sqrt(rooted))
    base = QuadVal(fin)
    for q in plain:
        base = base * q
    if not rooted:
        return HeightValue(d, base)
    doubled = base * base
    for q in rooted:
        doubled = doubled * q
    return HeightValue(2 * d, doubled)


def _twisted_content_norm(system, t: HomogeneousTuple) -> Fraction:
    field = t.field
    twist = system.twist_ideals
    if twist is None:
        return nfq.content_ideal(t.coords).norm()
    gens = []
    for alpha, a_ideal in zip(t.coords, twist):
        if alpha.is_zero():
            continue
        scaled = a_ideal.inverse().scale(alpha)
        if field.degree == 1:
            gens.append(field.element(scaled.gen))
        else:
            gens.extend(scaled.basis_elements())
    if not gens:
        raise ZeroVector("all coordinates vanish")
    return nfq.FractionalIdeal.from_generators(field, gens).norm()
