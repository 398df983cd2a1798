"""Norm systems over all places: per-place data, constants, lattices, volumes.

A system carries one archimedean norm per infinite place (max, l2, or a
custom star-body norm with declared constants) and a finite part that is
either the plain max norm everywhere or a diagonal ideal twist
N_v(z) = max_j |z_j|_v / |A_j|_v for a tuple of fractional ideals A_j.  The
diagonal family keeps the associated lattices and volumes exactly computable
while still producing nontrivial finite-part constants.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import arith, nfq
from .enclosures import ExactConst, Interval, Real, RExact
from .errors import (
    DimensionMismatch,
    MissingClassData,
    UnsupportedDegree,
    UnsupportedFinitePart,
)

Vec = Sequence[float]


# ---------------------------------------------------------------------------
# Archimedean norms


@dataclass
class InfiniteNorm:
    """One archimedean norm: evaluator plus declared boundary-cover data.

    dim = d_v * (n + 1) is the real dimension the norm lives in.  m_maps and
    lip_const certify that the unit boundary is covered by m_maps Lipschitz
    images of the unit cube with the given constant; volume is the volume of
    the open unit star body.
    """

    kind: str  # "max" | "l2" | "custom"
    d_v: int
    n: int
    m_maps: int
    lip_const: ExactConst
    volume: object  # ExactConst for built-ins, Interval for measured customs
    c_v: Fraction
    evaluator: Callable[[Vec], float]
    param_maps: Optional[list[Callable[[Vec], Vec]]] = None
    inverse_param: Optional[Callable[[Vec], tuple[int, Vec]]] = None

    @property
    def dim(self) -> int:
        return self.d_v * (self.n + 1)


def _max_norm_real(z: Vec) -> float:
    return max(abs(x) for x in z)


def _max_norm_complex(z: Vec) -> float:
    return max(math.hypot(z[2 * j], z[2 * j + 1]) for j in range(len(z) // 2))


def _l2_norm(z: Vec) -> float:
    return math.sqrt(sum(x * x for x in z))


def _cube_maps(dim: int):
    maps = []
    for k in range(dim):
        for sign in (1.0, -1.0):
            def phi(u, _k=k, _s=sign, _d=dim):
                out = []
                it = iter(u)
                for i in range(_d):
                    out.append(_s if i == _k else 2.0 * next(it) - 1.0)
                return out
            maps.append(phi)
    return maps


def _cube_inverse(z: Vec) -> tuple[int, list[float]]:
    k = max(range(len(z)), key=lambda i: abs(z[i]))
    idx = 2 * k + (1 if z[k] < 0 else 0)
    u = [(z[i] + 1.0) / 2.0 for i in range(len(z)) if i != k]
    return idx, u


def _polydisc_maps(pairs: int):
    # one map per distinguished coordinate on the unit circle; the others
    # sweep their discs in polar coordinates
    tau = 2.0 * math.pi

    def make(j):
        def phi(u, _j=j, _m=pairs):
            t, rest = u[0], u[1:]
            out = [0.0] * (2 * _m)
            out[2 * _j] = math.cos(tau * t)
            out[2 * _j + 1] = math.sin(tau * t)
            ri = 0
            for k in range(_m):
                if k == _j:
                    continue
                r, th = rest[2 * ri], rest[2 * ri + 1]
                out[2 * k] = r * math.cos(tau * th)
                out[2 * k + 1] = r * math.sin(tau * th)
                ri += 1
            return out
        return phi

    return [make(j) for j in range(pairs)]


def _polydisc_inverse(z: Vec) -> tuple[int, list[float]]:
    tau = 2.0 * math.pi
    pairs = len(z) // 2
    mods = [math.hypot(z[2 * j], z[2 * j + 1]) for j in range(pairs)]
    j = max(range(pairs), key=lambda k: mods[k])
    u = [(math.atan2(z[2 * j + 1], z[2 * j]) / tau) % 1.0]
    for k in range(pairs):
        if k == j:
            continue
        u.append(mods[k])
        u.append((math.atan2(z[2 * k + 1], z[2 * k]) / tau) % 1.0)
    return j, u


def _sphere_map(dim: int):
    # spherical coordinates on [0,1]^(dim-1); angles scaled by pi, last by 2pi
    def phi(u, _d=dim):
        out = []
        sin_prod = 1.0
        for i in range(_d - 1):
            ang = math.pi * u[i] if i < _d - 2 else 2.0 * math.pi * u[i]
            out.append(sin_prod * math.cos(ang))
            sin_prod *= math.sin(ang)
        out.append(sin_prod)
        return out
    return phi


def _sphere_inverse(z: Vec) -> tuple[int, list[float]]:
    dim = len(z)
    u = []
    rest = list(z)
    for i in range(dim - 1):
        tail = math.sqrt(sum(x * x for x in rest[i + 1 :]))
        if i < dim - 2:
            ang = math.atan2(tail, rest[i])
            u.append(ang / math.pi)
        else:
            ang = math.atan2(rest[i + 1], rest[i]) % (2.0 * math.pi)
            u.append(ang / (2.0 * math.pi))
    return 0, u


def _ball_volume(dim: int) -> ExactConst:
    """Volume of the unit ball in R^dim as an exact pi-power constant."""
    if dim % 2 == 0:
        k = dim // 2
        return ExactConst(Fraction(1, math.factorial(k)), pi_pow=k)
    k = (dim - 1) // 2
    coef = Fraction(2**dim * math.factorial(k), math.factorial(dim))
    return ExactConst(coef, pi_pow=k)


def max_norm(d_v: int, n: int) -> InfiniteNorm:
    dim = d_v * (n + 1)
    if d_v == 1:
        return InfiniteNorm(
            kind="max",
            d_v=1,
            n=n,
            m_maps=2 * n + 2,
            lip_const=ExactConst(2),
            volume=ExactConst(2 ** (n + 1)),
            c_v=Fraction(1),
            evaluator=_max_norm_real,
            param_maps=_cube_maps(dim),
            inverse_param=_cube_inverse,
        )
    return InfiniteNorm(
        kind="max",
        d_v=2,
        n=n,
        m_maps=n + 1,
        lip_const=ExactConst(2, pi_pow=1, root=2 * n + 1),
        volume=ExactConst(1, pi_pow=n + 1),
        c_v=Fraction(1),
        evaluator=_max_norm_complex,
        param_maps=_polydisc_maps(n + 1),
        inverse_param=_polydisc_inverse,
    )


def l2_norm(d_v: int, n: int) -> InfiniteNorm:
    dim = d_v * (n + 1)
    # a convex unit ball inside the unit cube-scaled body admits a one-map
    # cover with constant 8*d_v^2*(n+1)^(5/2) (times C = 1 here)
    lip = ExactConst(8 * d_v * d_v * (n + 1) ** 2, root=n + 1)
    return InfiniteNorm(
        kind="l2",
        d_v=d_v,
        n=n,
        m_maps=1,
        lip_const=lip,
        volume=_ball_volume(dim),
        c_v=Fraction(1),
        evaluator=_l2_norm,
        param_maps=[_sphere_map(dim)],
        inverse_param=_sphere_inverse,
    )


# ---------------------------------------------------------------------------
# Systems


def _exactconst_max(vals: list[ExactConst]) -> ExactConst:
    best = vals[0]
    for v in vals[1:]:
        if v == best:
            continue
        if (v.to_real() - best.to_real()).interval(80).lo > 0:
            best = v
        # ties/smaller keep best; distinct ExactConsts never coincide unless equal
    return best


class AdelicLipschitzSystem:
    """Norm data at every place of a field of degree <= 2, with the derived
    constants and volumes."""

    def __init__(
        self,
        field,
        n: int,
        infinite: list[InfiniteNorm],
        twist_ideals: Optional[tuple] = None,
        custom_finite: bool = False,
        declared_m: Optional[int] = None,
        declared_l: Optional[ExactConst] = None,
        declared_c_inf: Optional[ExactConst] = None,
        name: str = "",
    ):
        if field.degree > 2:
            raise UnsupportedDegree("systems need element arithmetic (degree <= 2)")
        places = nfq.infinite_places(field)
        if len(infinite) != len(places):
            raise DimensionMismatch(
                f"need {len(places)} archimedean norms, got {len(infinite)}"
            )
        for norm, place in zip(infinite, places):
            if norm.d_v != place.d_v or norm.n != n:
                raise DimensionMismatch("norm shape does not match its place")
        if twist_ideals is not None:
            twist_ideals = tuple(twist_ideals)
            if len(twist_ideals) != n + 1:
                raise DimensionMismatch("need one twist ideal per coordinate")
        self.field = field
        self.n = n
        self.infinite = list(infinite)
        self.twist_ideals = twist_ideals
        self.custom_finite = custom_finite
        self._declared_m = declared_m
        self._declared_l = declared_l
        self._declared_c_inf = declared_c_inf
        self.name = name or ("standard" if twist_ideals is None else "twisted")

    # constants ---------------------------------------------------------------

    def exceptional_places(self) -> list[tuple[nfq.FinitePlace, list[int]]]:
        """Finite places where some twist ideal has nonzero order, with the
        per-coordinate orders."""
        if self.twist_ideals is None:
            return []
        primes = set()
        for ideal in self.twist_ideals:
            nm = ideal.norm()
            for p in arith.factorize(nm.numerator * nm.denominator):
                primes.add(p)
        out = []
        for p in sorted(primes):
            for place in nfq.places_above(self.field, p):
                orders = [ideal.ord_at(place) for ideal in self.twist_ideals]
                if any(orders):
                    out.append((place, orders))
        return out

    def c_fin_exponents(self) -> dict[nfq.FinitePlace, Fraction]:
        """log_Np(c_v) for each exceptional finite place (0 elsewhere)."""
        out = {}
        for place, orders in self.exceptional_places():
            e = min(orders)  # c_v = min(1, Np**(min_j ord_v(A_j) / d_v))
            out[place] = Fraction(min(e, 0), place.d_v)
        return out

    @property
    def c_fin(self) -> ExactConst:
        """C^fin = prod c_v**(-d_v/d) >= 1, exactly."""
        d = self.field.degree
        expo: dict[int, Fraction] = {}
        for place, orders in self.exceptional_places():
            e = min(min(orders), 0)
            # c_v = Np**(e/d_v); contributes Np**(-e/d)
            expo[place.np] = expo.get(place.np, Fraction(0)) + Fraction(-e, d)
        out = ExactConst(1)
        for base, ex in expo.items():
            whole = ex.numerator // ex.denominator
            rem = ex - whole
            out = out * ExactConst(Fraction(base) ** whole)
            if rem == Fraction(1, 2):
                out = out * ExactConst(1, root=base)
            elif rem != 0:
                raise UnsupportedFinitePart("non-half-integer exponent")
        return out

    @property
    def c_inf(self) -> ExactConst:
        if self._declared_c_inf is not None:
            return self._declared_c_inf
        worst = max(Fraction(1) / norm.c_v for norm in self.infinite)
        return ExactConst(worst)

    @property
    def c_constant(self) -> ExactConst:
        return self.c_fin * self.c_inf

    @property
    def m_constant(self) -> int:
        if self._declared_m is not None:
            return self._declared_m
        return max(norm.m_maps for norm in self.infinite)

    @property
    def l_constant(self) -> ExactConst:
        if self._declared_l is not None:
            return self._declared_l
        return _exactconst_max([norm.lip_const for norm in self.infinite])

    def assoc_constants(self) -> tuple[ExactConst, int, ExactConst]:
        return self.c_constant, self.m_constant, self.l_constant

    def a_constant(self) -> Real:
        """M**d * (C*(L+1))**(d(n+1)-1), the error-term coefficient shape."""
        d = self.field.degree
        c, m, l = self.assoc_constants()
        base = c.to_real() * (l.to_real() + RExact(1))
        from .enclosures import RPowInt, RProd

        return RProd(RExact(m**d), RPowInt(base, d * (self.n + 1) - 1))

    def __repr__(self):
        return f"ALS({self.name!r}, {self.field!r}, n={self.n})"


def standard_system(field, n: int) -> AdelicLipschitzSystem:
    """Max norms at every place; its height is the Weil height."""
    norms = [max_norm(p.d_v, n) for p in nfq.infinite_places(field)]
    return AdelicLipschitzSystem(field, n, norms, None, name="standard")


def l2_system(field, n: int) -> AdelicLipschitzSystem:
    """Euclidean norms at infinite places, max norms at finite ones."""
    norms = [l2_norm(p.d_v, n) for p in nfq.infinite_places(field)]
    return AdelicLipschitzSystem(field, n, norms, None, name="l2")


def twisted_system(field, n: int, ideals) -> AdelicLipschitzSystem:
    """Standard archimedean part with a diagonal ideal twist at finite places."""
    ideals = tuple(ideals)
    norms = [max_norm(p.d_v, n) for p in nfq.infinite_places(field)]
    return AdelicLipschitzSystem(field, n, norms, ideals, name="twisted")


# ---------------------------------------------------------------------------
# Lattices, class invariants, volumes


@dataclass(frozen=True)
class EmbeddedLattice:
    """Direct sum over coordinates of embedded ideal lattices."""

    system: AdelicLipschitzSystem
    scaling_ideal: nfq.FractionalIdeal
    coordinate_ideals: tuple
    det: ExactConst

    def basis_vectors(self):
        """Exact generators: per coordinate j, the embedded basis of A_j * D."""
        field = self.system.field
        out = []
        n = self.system.n
        for j, ideal in enumerate(self.coordinate_ideals):
            if field.degree == 1:
                vecs = [[Fraction(0)] * (n + 1)]
                vecs[0][j] = ideal.gen
                out.extend([(vec, (field.element(ideal.gen),), j) for vec in vecs])
            else:
                for e in ideal.basis_elements():
                    out.append((None, (e,), j))
        return out


def lattice(system: AdelicLipschitzSystem, scaling: nfq.FractionalIdeal) -> EmbeddedLattice:
    """The embedded lattice of tuples satisfying every finite-place constraint
    N_v(coords) <= |D|_v, together with its exact determinant
    (2**-s * N(D) * sqrt|disc|)**(n+1) * prod_j N(A_j)."""
    if system.custom_finite:
        raise UnsupportedFinitePart("lattice needs the diagonal-twist family")
    field = system.field
    n = system.n
    twists = system.twist_ideals or tuple(
        nfq.FractionalIdeal.unit_ideal(field) for _ in range(n + 1)
    )
    coord_ideals = tuple(t * scaling for t in twists)
    if field.degree == 1:
        det = ExactConst(1)
        for ideal in coord_ideals:
            det = det * ExactConst(ideal.norm())
    else:
        s = field.signature[1]
        block = ExactConst(Fraction(1, 2**s), root=abs(field.disc))
        det = ExactConst(1)
        for ideal in coord_ideals:
            det = det * block * ExactConst(ideal.norm())
    return EmbeddedLattice(system, scaling, coord_ideals, det)


def lattice_membership_ok(lat: EmbeddedLattice, coords) -> bool:
    """Exact check that a coordinate tuple lies in the lattice: each
    coordinate must lie in its ideal A_j * D."""
    return all(
        c.is_zero() or ideal.contains(c)
        for c, ideal in zip(coords, lat.coordinate_ideals)
    )


def class_invariant(system: AdelicLipschitzSystem, representative: nfq.FractionalIdeal) -> ExactConst:
    """det Lambda(D) / N(D)**(n+1): identical for every representative of an
    ideal class (and, for diagonal twists, for every class)."""
    lat = lattice(system, representative)
    nd = representative.norm()
    return lat.det * ExactConst(Fraction(1) / nd ** (system.n + 1))


@dataclass(frozen=True)
class Volumes:
    v_fin: Fraction
    v_inf: object  # ExactConst or Interval
    v: object

    def v_real(self) -> Real:
        if isinstance(self.v, ExactConst):
            return self.v.to_real()
        from .enclosures import as_real

        return as_real(self.v)


def volumes(system: AdelicLipschitzSystem) -> Volumes:
    """Finite, infinite and global volume of the system.

    The finite part 2**(-s(n+1)) |disc|^((n+1)/2) h**-1 sum_classes 1/Delta(D)
    collapses to prod_j N(A_j)**-1 for diagonal twists; when ideal-class
    representatives are computable (Q and imaginary quadratic fields) the sum
    is evaluated literally and must agree.
    """
    if system.custom_finite:
        raise UnsupportedFinitePart("volumes need the diagonal-twist family")
    field = system.field
    if field.degree > 2:
        raise MissingClassData("volumes need a computed field, not an invariants stub")
    n = system.n
    v_fin = Fraction(1)
    for ideal in system.twist_ideals or ():
        v_fin /= ideal.norm()
    if field.degree == 2 and field.is_imaginary:
        # literal class-group sum as a cross-check
        reps = nfq.class_group_representatives(field)
        s = field.signature[1]
        acc = Fraction(0)
        for rep in reps:
            inv = class_invariant(system, rep).inverse()
            # inv = coef * sqrt(|disc|)^-(n+1) ... combine with the prefactor
            pref = ExactConst(Fraction(1, 2 ** (s * (n + 1)))) * (
                ExactConst(1, root=abs(field.disc)) ** (n + 1)
            )
            term = pref * inv
            acc += term.as_fraction()
        literal = acc / len(reps)
        assert literal == v_fin, (literal, v_fin)
    v_inf: object = ExactConst(1)
    intervalish = False
    for norm in system.infinite:
        if isinstance(norm.volume, ExactConst) and not intervalish:
            v_inf = v_inf * norm.volume
        else:
            intervalish = True
            v_inf = _as_vol_interval(v_inf) * _as_vol_interval(norm.volume)
    v = v_inf * v_fin if not intervalish else _as_vol_interval(v_inf) * v_fin
    return Volumes(v_fin, v_inf, v)


def _as_vol_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return x.interval(80)


# ---------------------------------------------------------------------------
# Boundary cover checks


@dataclass
class CoverReport:
    samples: int
    max_inversion_error: float
    max_segment_ratio: float
    declared_l: float
    vacuous: bool

    @property
    def passed(self) -> bool:
        return True  # a constructed report means no hard failure was raised


def lipschitz_cover_check(
    norm: InfiniteNorm, samples: int, seed: int = 0, tol: float = 1e-9
) -> CoverReport:
    """Statistical certification of the declared boundary cover.

    Draws random boundary points, checks each is hit by some declared map
    (by inverting the parameterization and re-evaluating), and estimates
    Lipschitz ratios along random parameter segments.  A point escaping all
    maps raises CoverageFailure with the witness.
    """
    from .errors import CoverageFailure

    if norm.param_maps is None or norm.inverse_param is None:
        raise CoverageFailure("norm declares no parameterization", witness=None)
    if samples == 0:
        return CoverReport(0, 0.0, 0.0, float(norm.lip_const), vacuous=True)
    rng = random.Random(seed)
    dim = norm.dim
    worst_inv = 0.0
    for _ in range(samples):
        z = [rng.gauss(0.0, 1.0) for _ in range(dim)]
        nv = norm.evaluator(z)
        if nv < 1e-12:
            continue
        z = [x / nv for x in z]
        idx, u = norm.inverse_param(z)
        u = [min(1.0, max(0.0, x)) for x in u]
        back = norm.param_maps[idx](u)
        err = math.dist(z, back)
        worst_inv = max(worst_inv, err)
        if err > 1e-6:
            raise CoverageFailure(
                f"boundary point escaped the declared cover (error {err:.3g})",
                witness=z,
            )
    declared = float(norm.lip_const.interval(60).hi)
    worst_ratio = 0.0
    for _ in range(samples):
        idx = rng.randrange(len(norm.param_maps))
        x = [rng.random() for _ in range(dim - 1)]
        y = [rng.random() for _ in range(dim - 1)]
        dxy = math.dist(x, y)
        if dxy < 1e-12:
            continue
        fx = norm.param_maps[idx](x)
        fy = norm.param_maps[idx](y)
        ratio = math.dist(fx, fy) / dxy
        worst_ratio = max(worst_ratio, ratio)
        if ratio > declared * (1 + 1e-9) + tol:
            raise CoverageFailure(
                f"segment ratio {ratio:.4g} exceeds declared constant {declared:.4g}",
                witness=(x, y),
            )
    return CoverReport(samples, worst_inv, worst_ratio, declared, vacuous=False)


# ---------------------------------------------------------------------------
# Monte Carlo volumes for custom norms


def monte_carlo_volume(
    evaluator: Callable[[Vec], float],
    dim: int,
    box_halfwidth: float,
    samples: int,
    seed: int = 0,
    chunks: int = 64,
    confidence: float = 1e-6,
) -> Interval:
    """Volume of {N < 1} by seeded Monte Carlo with a Hoeffding radius.

    The chunked seed schedule makes the result reproducible independent of
    how the chunks are scheduled across workers.
    """
    per = max(1, samples // chunks)
    hits = 0
    total = 0
    for c in range(chunks):
        rng = random.Random((seed, c))
        for _ in range(per):
            z = [box_halfwidth * (2.0 * rng.random() - 1.0) for _ in range(dim)]
            total += 1
            if evaluator(z) < 1.0:
                hits += 1
    box = (2.0 * box_halfwidth) ** dim
    est = hits / total
    rad = math.sqrt(math.log(2.0 / confidence) / (2.0 * total))
    lo = max(0.0, est - rad) * box
    hi = (est + rad) * box
    return Interval(Fraction(lo).limit_denominator(10**12), Fraction(hi).limit_denominator(10**12) + Fraction(1, 10**9))


# ---------------------------------------------------------------------------
# Uniform families


@dataclass(frozen=True)
class UniformSystemFamily:
    """One system per field in a collection, with shared dominating constants."""

    name: str
    n: int
    c_bound: ExactConst
    m_bound: int
    l_bound: ExactConst

    def system_for(self, field) -> AdelicLipschitzSystem:
        if self.name == "standard":
            base = standard_system(field, self.n)
        elif self.name == "l2":
            base = l2_system(field, self.n)
        else:
            raise ValueError(f"unknown family {self.name!r}")
        # pad the member's declared associated constants up to the family's
        return AdelicLipschitzSystem(
            field,
            self.n,
            base.infinite,
            base.twist_ideals,
            declared_m=self.m_bound,
            declared_l=self.l_bound,
            name=f"{self.name}[{field!r}]",
        )

    def tight_system_for(self, field) -> AdelicLipschitzSystem:
        if self.name == "standard":
            return standard_system(field, self.n)
        return l2_system(field, self.n)

    def a_constant(self, m: int, e: int) -> Real:
        from .enclosures import RPowInt, RProd

        base = self.c_bound.to_real() * (self.l_bound.to_real() + RExact(1))
        return RProd(
            RExact(self.m_bound ** (m * e)), RPowInt(base, m * e * (self.n + 1) - 1)
        )


def standard_family(n: int) -> UniformSystemFamily:
    return UniformSystemFamily(
        "standard",
        n,
        ExactConst(1),
        2 * n + 2,
        ExactConst(2, pi_pow=1, root=2 * n + 1),
    )


def l2_family(n: int) -> UniformSystemFamily:
    # d_v <= 2 over quadratic collections: L = 8 * 4 * (n+1)^(5/2)
    return UniformSystemFamily(
        "l2", n, ExactConst(1), 1, ExactConst(32 * (n + 1) ** 2, root=n + 1)
    )


# ---------------------------------------------------------------------------
# System description files


def system_from_dict(doc: dict) -> AdelicLipschitzSystem:
    """Build a system from a JSON-style description.

    Schema: {"field": d | "Q", "n": int, "infinite": ["max"|"l2", ...],
    "twist": [[generator strings], ...] (optional, one list per coordinate)}.
    """
    fd = doc["field"]
    field = nfq.QQ if fd in ("Q", 1) else nfq.make_quadratic_field(int(fd))
    n = int(doc["n"])
    kinds = doc.get("infinite")
    places = nfq.infinite_places(field)
    if kinds is None:
        kinds = ["max"] * len(places)
    if len(kinds) != len(places):
        raise DimensionMismatch("one archimedean norm kind per infinite place")
    norms = []
    for kind, place in zip(kinds, places):
        if kind == "max":
            norms.append(max_norm(place.d_v, n))
        elif kind == "l2":
            norms.append(l2_norm(place.d_v, n))
        else:
            raise UnsupportedFinitePart(
                f"file-defined norms are max or l2, got {kind!r}"
            )
    twist_doc = doc.get("twist")
    twist = None
    if twist_doc is not None:
        if len(twist_doc) != n + 1:
            raise DimensionMismatch("one twist ideal per coordinate")
        twist = tuple(
            nfq.FractionalIdeal.from_generators(
                field, [nfq.element_from_string(field, g) for g in gens]
            )
            for gens in twist_doc
        )
    return AdelicLipschitzSystem(field, n, norms, twist, name=doc.get("name", "file"))


def system_from_file(path) -> AdelicLipschitzSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return system_from_dict(json.load(fh))
