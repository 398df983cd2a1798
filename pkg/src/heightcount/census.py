"""Exact enumeration: point counts, minimal generator heights, field counts.

Counting functions return exact integers.  The quadratic-point enumerator
decides the Mahler-measure threshold M(f) <= X**2 purely in integer
arithmetic (the root casework reduces to sign tests and squarings), so the
vectorized kernel and the scalar reference path count the same set; numpy is
used only as wide integer arithmetic, with every intermediate bounded well
inside int64.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt, log
from typing import Optional

import numpy as np

from . import arith, nfq
from .enclosures import Interval, QuadVal
from .errors import (
    CapTooSmall,
    DegenerateGrid,
    ScanTooSmall,
    UnsupportedClassNumber,
    ZeroVector,
)
from .heights import HeightValue, HomogeneousTuple, mahler_measure, weil_height

# ---------------------------------------------------------------------------
# Worker plumbing: associative integer reductions over deterministic chunks


def _partition(items: list, pieces: int, strategy: str) -> list[list]:
    pieces = max(1, min(pieces, len(items))) if items else 1
    if strategy == "contiguous":
        size = (len(items) + pieces - 1) // pieces
        return [items[i : i + size] for i in range(0, len(items), size)]
    if strategy == "strided":
        return [items[i::pieces] for i in range(pieces)]
    raise ValueError(f"unknown partition strategy {strategy!r}")


def _map_chunks(fn, chunks: list, workers: int) -> list:
    if workers <= 1 or len(chunks) <= 1:
        return [fn(ch) for ch in chunks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, chunks))


# ---------------------------------------------------------------------------
# Rational points


def _rational_chunk(args) -> int:
    n, m, pairs = args
    acc = 0
    for k, mu_k in pairs:
        t = 2 * (m // k) + 1
        acc += mu_k * (t ** (n + 1) - 1)
    return acc


def count_rational(n: int, x: Fraction, workers: int = 1, partition: str = "contiguous") -> int:
    """Points of the rational projective n-space with height <= x: primitive
    integer tuples with max |a_i| <= floor(x), one per +-1 pair, via the
    exact gcd sieve sum_k mu(k) ((2 floor(m/k) + 1)^(n+1) - 1) / 2."""
    x = Fraction(x)
    if x < 1:
        return 0
    m = arith.frac_floor(x)
    mu = arith.mobius_sieve(m)
    pairs = [(k, mu[k]) for k in range(1, m + 1) if mu[k]]
    chunks = _partition(pairs, max(workers * 4, 1), partition)
    total = sum(_map_chunks(_rational_chunk, [(n, m, ch) for ch in chunks], workers))
    assert total % 2 == 0
    return total // 2


# ---------------------------------------------------------------------------
# Imaginary quadratic points (any class number)


def _lattice_form(ideal: nfq.FractionalIdeal) -> tuple[int, int, int, int]:
    """Integer (A, B, C, S) with N(x e1 + y e2) = (A x^2 + B xy + C y^2)/S."""
    e1, e2 = ideal.basis_elements()
    A = e1.norm()
    B = (e1 * e2.conj()).trace()
    C = e2.norm()
    lcd = A.denominator
    for q in (B, C):
        lcd = lcd * q.denominator // gcd(lcd, q.denominator)
    return int(A * lcd), int(B * lcd), int(C * lcd), lcd


def _form_count(A: int, B: int, C: int, tnum: int, tden: int) -> int:
    """#{(x, y): A x^2 + B x y + C y^2 <= tnum/tden}, positive definite form,
    zero included.  Exact integer arithmetic throughout."""
    if tnum < 0:
        return 0
    # scale the inequality by tden: A' = A*tden etc., threshold tnum
    A2, B2, C2, T = A * tden, B * tden, C * tden, tnum
    det = 4 * A2 * C2 - B2 * B2
    assert det > 0
    ymax = isqrt(4 * A2 * T // det) + 2
    count = 0
    for y in range(-ymax, ymax + 1):
        disc_y = (B2 * B2 - 4 * A2 * C2) * y * y + 4 * A2 * T
        if disc_y < 0:
            continue
        s = isqrt(disc_y)
        xmax = (-B2 * y + s) // (2 * A2)
        xmin = -((B2 * y + s) // (2 * A2))
        if xmax >= xmin:
            count += xmax - xmin + 1
    return count


def _squarefree_ideal_data(field: nfq.QuadraticField, bound: int):
    """(norm, mu, ideal) for every squarefree integral ideal of norm <= bound."""
    primes = nfq.prime_ideals_up_to(field, bound)
    out = []

    def recurse(idx: int, ideal, norm: int, mu: int):
        out.append((norm, mu, ideal))
        for i in range(idx, len(primes)):
            pid, pn = primes[i]
            if norm * pn > bound:
                continue
            nxt = pid if ideal is None else ideal * pid
            recurse(i + 1, nxt, norm * pn, -mu)

    recurse(0, None, 1, 1)
    return out


def count_imaginary_quadratic(field, n: int, x: Fraction) -> int:
    """Points of the projective n-space over an imaginary quadratic field with
    height <= x.

    Per ideal class with representative b: tuples in b^(n+1) of content
    exactly b and coordinates of norm <= x^2 N(b), counted by an ideal-level
    gcd sieve; unit orbits have size w, so the total divides exactly.
    """
    if field.degree != 2 or not field.is_imaginary:
        raise UnsupportedClassNumber(
            "exact point counts need an imaginary quadratic field"
        )
    x = Fraction(x)
    if x < 1:
        return 0
    x2 = x * x
    jbound = arith.frac_floor(x2)
    jdata = _squarefree_ideal_data(field, jbound)
    total = 0
    for rep in nfq.class_group_representatives(field):
        nb = rep.norm()
        t = x2 * nb
        acc = 0
        for norm_j, mu, jideal in jdata:
            ideal = rep if jideal is None else rep * jideal
            A, B, C, S = _lattice_form(ideal)
            cnt = _form_count(A, B, C, (t * S).numerator, (t * S).denominator)
            if cnt > 1:
                acc += mu * (cnt ** (n + 1) - 1)
        total += acc
    assert total % field.w == 0, (total, field.w)
    return total // field.w


def count_primitive(field, n: int, x: Fraction) -> int:
    """Points generating the quadratic field (the rational locus removed):
    the only proper subfield is Q, so the count is the plain difference."""
    x = Fraction(x)
    ct = count_imaginary_quadratic(field, n, x)
    return ct - count_rational(n, x)


# ---------------------------------------------------------------------------
# Quadratic points of the projective line: Mahler-measure enumeration
#
# Canonical minimal polynomials: a > 0, gcd(a, b, c) = 1, b^2 - 4ac not a
# perfect square.  Each contributes exactly 2 points (its two roots).  The
# search box is complete because M >= |a|, M >= |c| and M >= |b|/2:
# |b| = |a||r1 + r2| <= |a|(max(1,|r1|) max(1,|r2|) + 1) = M + |a| <= 2M.
# The b -> -b symmetry (roots negated) halves the scan.


def _p1_block(args):
    """Vectorized scan of one a-slice; exact int64 casework.

    Returns (polynomial count weighted by the b-symmetry, {disc: count}).
    """
    bn, bd, a_list, bmax, cmax, want_hist = args
    out_count = 0
    hist: dict[int, int] = {}
    b = np.arange(0, bmax + 1, dtype=np.int64)[:, None]
    c = np.arange(-cmax, cmax + 1, dtype=np.int64)[None, :]
    weight = np.where(b > 0, 2, 1)
    for a in a_list:
        disc = b * b - 4 * a * c
        g = np.gcd(np.gcd(a, b), c)
        prim = g == 1
        neg = disc < 0
        pos = ~neg
        # perfect-square test (disc fits comfortably in float64 here)
        dpos = np.where(pos, disc, 0)
        s = np.floor(np.sqrt(dpos.astype(np.float64))).astype(np.int64)
        s = np.where((s + 1) * (s + 1) <= dpos, s + 1, s)
        s = np.where(s * s > dpos, s - 1, s)
        issq = pos & (s * s == dpos)
        ok_neg = neg & (np.maximum(a, c) * bd <= bn)
        strict = pos & ~issq
        # root location: r+- = (-b +- sqrt(disc)) / (2a), outside iff |r| > 1
        t1 = 2 * a + b   # r+ > 1  <=> sqrt(disc) > t1;  r- > 1 <=> -sqrt > t1
        t2 = b - 2 * a   # r+ < -1 <=> sqrt(disc) < t2
        t3 = 2 * a - b   # r- < -1 <=> sqrt(disc) > t3
        rp_gt1 = (t1 < 0) | (disc > t1 * t1)
        rp_ltm1 = (t2 > 0) & (disc < t2 * t2)
        rm_gt1 = (t1 < 0) & (disc < t1 * t1)
        rm_ltm1 = (t3 < 0) | (disc > t3 * t3)
        out_p = rp_gt1 | rp_ltm1
        out_m = rm_gt1 | rm_ltm1
        n_out0 = strict & ~out_p & ~out_m
        n_out2 = strict & out_p & out_m
        n_out1p = strict & out_p & ~out_m
        n_out1m = strict & out_m & ~out_p
        ok_pos = np.zeros_like(strict)
        ok_pos |= n_out0 & (a * bd <= bn)
        ok_pos |= n_out2 & (np.abs(c) * bd <= bn)
        # one root outside: M = |-b + eps sqrt(disc)| / 2 <= B
        #   <=>  -2B <= -b + eps sqrt(disc) <= 2B, cross-multiplied by bd
        for eps, mask in ((1, n_out1p), (-1, n_out1m)):
            u = 2 * bn + bd * b   # eps*bd*sqrt(disc) <= u
            v = bd * b - 2 * bn   # eps*bd*sqrt(disc) >= v
            d2 = bd * bd * disc
            if eps == 1:
                upper = (u >= 0) & (d2 <= u * u)
                lower = (v <= 0) | (d2 >= v * v)
            else:
                upper = (u >= 0) | (d2 >= u * u)
                lower = (v <= 0) & (d2 <= v * v)
            ok_pos |= mask & upper & lower
        ok = prim & (ok_neg | ok_pos)
        out_count += int((weight * ok).sum())
        if want_hist:
            dvals = disc[ok]
            wvals = np.broadcast_to(weight, disc.shape)[ok]
            for dv, wv in zip(dvals.tolist(), wvals.tolist()):
                hist[dv] = hist.get(dv, 0) + wv
    return out_count, hist


@dataclass
class P1Count:
    x: Fraction
    polynomials: int
    points: int
    by_field: dict  # fundamental discriminant -> point count


def count_quadratic_points_p1(
    x: Fraction,
    workers: int = 1,
    partition: str = "contiguous",
    with_histogram: bool = True,
) -> P1Count:
    """Points of the projective line of degree 2 over Q with height <= x:
    2 points per canonical irreducible quadratic with M(f) <= x**2, plus the
    per-field histogram keyed by fundamental discriminant."""
    x = Fraction(x)
    if x < 1:
        return P1Count(x, 0, 0, {})
    B = x * x
    bn, bd = B.numerator, B.denominator
    amax = arith.frac_floor(B)
    bmax = arith.frac_floor(2 * B)
    cmax = amax
    guard = (bd * bd) * (bmax * bmax + 4 * amax * cmax)
    assert guard < 2**62, "threshold denominators too large for the int64 kernel"
    a_items = list(range(1, amax + 1))
    chunks = _partition(a_items, max(workers * 4, 1), partition)
    args = [(bn, bd, ch, bmax, cmax, with_histogram) for ch in chunks]
    results = _map_chunks(_p1_block, args, workers)
    polys = sum(r[0] for r in results)
    hist: dict[int, int] = {}
    for _, h in results:
        for dv, cnt in h.items():
            hist[dv] = hist.get(dv, 0) + cnt
    by_field: dict[int, int] = {}
    for dv, cnt in sorted(hist.items()):
        k, _ = arith.squarefree_kernel(dv)
        fd = arith.fundamental_discriminant_for_kernel(k)
        by_field[fd] = by_field.get(fd, 0) + 2 * cnt
    return P1Count(x, polys, 2 * polys, dict(sorted(by_field.items())))


def count_quadratic_points_p1_reference(x: Fraction) -> tuple[int, dict]:
    """Scalar reference enumerator (exact QuadVal threshold tests), with a
    deliberately widened box; cross-checks the vectorized kernel."""
    x = Fraction(x)
    if x < 1:
        return 0, {}
    B = x * x
    amax = arith.frac_floor(B) + 2
    bmax = arith.frac_floor(2 * B) + 2
    polys = 0
    by_field: dict[int, int] = {}
    target = QuadVal(B)
    for a in range(1, amax + 1):
        for b in range(-bmax, bmax + 1):
            for c in range(-amax, amax + 1):
                if gcd(gcd(a, b), c) != 1:
                    continue
                disc = b * b - 4 * a * c
                if arith.is_square(disc):
                    continue
                if mahler_measure(a, b, c).cmp(target) <= 0:
                    polys += 1
                    k, _ = arith.squarefree_kernel(disc)
                    fd = arith.fundamental_discriminant_for_kernel(k)
                    by_field[fd] = by_field.get(fd, 0) + 2
    return 2 * polys, dict(sorted(by_field.items()))


# ---------------------------------------------------------------------------
# Minimal generator heights per field


@dataclass
class FieldCensusEntry:
    field: nfq.QuadraticField
    delta: HeightValue
    absdisc: int
    witness: nfq.Element
    cap: HeightValue


def _survivor_forms(bn: int, bd: int, amax: int, bmax: int, cmax: int):
    """(a, b, c, disc) arrays of all canonical forms with M <= bn/bd."""
    outs = []
    for a in range(1, amax + 1):
        b = np.arange(-bmax, bmax + 1, dtype=np.int64)[:, None]
        c = np.arange(-cmax, cmax + 1, dtype=np.int64)[None, :]
        # reuse the block kernel logic on the full (signed-b) grid
        disc = b * b - 4 * a * c
        g = np.gcd(np.gcd(a, b), c)
        prim = g == 1
        neg = disc < 0
        pos = ~neg
        dpos = np.where(pos, disc, 0)
        s = np.floor(np.sqrt(dpos.astype(np.float64))).astype(np.int64)
        s = np.where((s + 1) * (s + 1) <= dpos, s + 1, s)
        s = np.where(s * s > dpos, s - 1, s)
        issq = pos & (s * s == dpos)
        ok_neg = neg & (np.maximum(a, c) * bd <= bn)
        strict = pos & ~issq
        t1 = 2 * a + b
        t2 = b - 2 * a
        t3 = 2 * a - b
        rp_gt1 = (t1 < 0) | (disc > t1 * t1)
        rp_ltm1 = (t2 > 0) & (disc < t2 * t2)
        rm_gt1 = (t1 < 0) & (disc < t1 * t1)
        rm_ltm1 = (t3 < 0) | (disc > t3 * t3)
        out_p = rp_gt1 | rp_ltm1
        out_m = rm_gt1 | rm_ltm1
        n_out0 = strict & ~out_p & ~out_m
        n_out2 = strict & out_p & out_m
        ok_pos = np.zeros_like(strict)
        ok_pos |= n_out0 & (a * bd <= bn)
        ok_pos |= n_out2 & (np.abs(c) * bd <= bn)
        for eps, mask in ((1, strict & out_p & ~out_m), (-1, strict & out_m & ~out_p)):
            u = 2 * bn + bd * b
            v = bd * b - 2 * bn
            d2 = bd * bd * disc
            if eps == 1:
                upper = (u >= 0) & (d2 <= u * u)
                lower = (v <= 0) | (d2 >= v * v)
            else:
                upper = (u >= 0) | (d2 >= u * u)
                lower = (v <= 0) & (d2 <= v * v)
            ok_pos |= mask & upper & lower
        ok = prim & (ok_neg | ok_pos)
        bs, cs = np.nonzero(ok)
        outs.append(
            (
                np.full(len(bs), a, dtype=np.int64),
                (bs - bmax).astype(np.int64),
                (cs - cmax).astype(np.int64),
                disc[ok],
            )
        )
    if not outs:
        return (np.array([], dtype=np.int64),) * 4
    return tuple(np.concatenate([o[i] for o in outs]) for i in range(4))


def delta_of_field(field, cap: Optional[HeightValue] = None) -> FieldCensusEntry:
    """Exact minimal height of a generator of a quadratic field, by Mahler
    enumeration filtered to the field's discriminant class.

    The module generator w gives the constructive upper bound H(1, w); the
    default cap.  A smaller cap is refused since the minimum could escape it.
    """
    if field.degree != 2:
        raise UnsupportedClassNumber("generator census is quadratic-only")
    upper = weil_height(HomogeneousTuple(field, [field.one(), field.omega()]))
    if cap is None:
        cap = upper
    elif cap.cmp(upper) < 0:
        raise CapTooSmall("cap below the constructive bound H(1, w)")
    cap_sq = _height_squared(cap)
    # integer prefilter box: any integer >= cap^2 keeps the box a superset,
    # and keeps the vectorized kernel inside int64
    bhat = arith.frac_ceil(cap_sq.interval(20).hi)
    bn, bd = bhat, 1
    amax = bhat
    bmax = 2 * bhat + 2
    a_arr, b_arr, c_arr, disc_arr = _survivor_forms(bn, bd, amax, bmax, amax)
    best: Optional[QuadVal] = None
    best_form: Optional[tuple[int, int, int]] = None
    order = np.lexsort((c_arr, b_arr, a_arr))
    for idx in order:
        a, b, c, disc = int(a_arr[idx]), int(b_arr[idx]), int(c_arr[idx]), int(disc_arr[idx])
        k, _ = arith.squarefree_kernel(disc)
        if k != field.d:
            continue
        m = mahler_measure(a, b, c)
        if m.cmp(cap_sq) > 0:
            continue
        if best is None or m.cmp(best) < 0:
            best = m
            best_form = (a, b, c)
    if best is None:
        raise CapTooSmall("no generator found below the cap")
    a, b, c = best_form
    disc = b * b - 4 * a * c
    k, t = arith.squarefree_kernel(disc)
    # witness root (-b + t*sqrt(k)) / (2a) expressed on the integral basis
    q = Fraction(-b, 2 * a)
    r = Fraction(t, 2 * a)
    if field.omega_is_half:
        witness = field.element(q - r, 2 * r)
    else:
        witness = field.element(q, r)
    return FieldCensusEntry(field, HeightValue(2, best), abs(field.disc), witness, cap)


def _height_squared(h: HeightValue) -> QuadVal:
    if h.power == 2:
        return h.exact
    if h.power == 1:
        return h.exact * h.exact
    raise ValueError("cap must carry an exact square")


# ---------------------------------------------------------------------------
# Field-counting functions


@dataclass
class NDeltaCertificate:
    threshold: Fraction
    scan_bound: int
    required_bound: int
    rationale: str


@dataclass
class NDeltaResult:
    count: int
    fields: list  # FieldCensusEntry, delta <= threshold only
    certificate: NDeltaCertificate


def n_delta(T: Fraction, delta_scan: Optional[int] = None) -> NDeltaResult:
    """Number of quadratic fields with minimal generator height <= T, exact.

    Completeness: every generator height obeys H >= 2**(-1/2) |disc|**(1/4)
    (explicit archimedean lower bound over Q), so delta <= T forces
    |disc| <= 4 T**4; the scan bound must dominate that inversion.
    """
    T = Fraction(T)
    required = arith.frac_ceil(4 * T**4)
    if delta_scan is None:
        delta_scan = required
    if delta_scan < required:
        raise ScanTooSmall(f"scan bound {delta_scan} < certified bound {required}")
    cert = NDeltaCertificate(
        T,
        delta_scan,
        required,
        "delta >= 2^(-1/2) |disc|^(1/4) inverted at delta = T",
    )
    hits = []
    t_sq = QuadVal(T * T)
    for disc in arith.fundamental_discriminants_up_to(delta_scan):
        k, _ = arith.squarefree_kernel(disc)
        field = nfq.make_quadratic_field(k)
        entry = delta_of_field(field)
        if entry.delta.exact.cmp(t_sq) <= 0:
            hits.append(entry)
    return NDeltaResult(len(hits), hits, cert)


def fields_with_delta_leq(T: Fraction, workers: int = 1, partition: str = "contiguous") -> set[int]:
    """Set of fundamental discriminants of fields admitting a generator of
    height <= T: the distinct discriminant kernels over the M <= T**2
    enumeration.  Vectorized; intended for trend checks at larger T."""
    T = Fraction(T)
    if T < 1:
        return set()
    B = T * T
    bn, bd = B.numerator, B.denominator
    amax = arith.frac_floor(B)
    bmax = arith.frac_floor(2 * B)
    cmax = amax
    maxdisc = bmax * bmax + 4 * amax * cmax
    kern_tbl = _kernel_table(maxdisc)
    a_items = list(range(1, amax + 1))
    chunks = _partition(a_items, max(workers * 4, 1), partition)
    args = [(bn, bd, ch, bmax, cmax, maxdisc) for ch in chunks]

    seen_pos = np.zeros(maxdisc + 1, dtype=bool)
    seen_neg = np.zeros(maxdisc + 1, dtype=bool)
    for ch_args in args:
        pos, neg = _kernel_block(ch_args, kern_tbl)
        seen_pos |= pos
        seen_neg |= neg
    out = set()
    for k in np.nonzero(seen_pos)[0].tolist():
        out.add(arith.fundamental_discriminant_for_kernel(k))
    for k in np.nonzero(seen_neg)[0].tolist():
        out.add(arith.fundamental_discriminant_for_kernel(-k))
    return out


def _kernel_table(limit: int) -> np.ndarray:
    kern = np.arange(limit + 1, dtype=np.int64)
    for p in arith.primes_up_to(isqrt(limit)):
        q = p * p
        while q <= limit:
            kern[q::q] //= p * p
            q *= p * p
    return kern


def _kernel_block(args, kern_tbl: np.ndarray):
    bn, bd, a_list, bmax, cmax, maxdisc = args
    seen_pos = np.zeros(maxdisc + 1, dtype=bool)
    seen_neg = np.zeros(maxdisc + 1, dtype=bool)
    b = np.arange(0, bmax + 1, dtype=np.int64)[:, None]
    c = np.arange(-cmax, cmax + 1, dtype=np.int64)[None, :]
    for a in a_list:
        disc = b * b - 4 * a * c
        g = np.gcd(np.gcd(a, b), c)
        prim = g == 1
        neg = disc < 0
        pos = ~neg
        dpos = np.where(pos, disc, 0)
        s = np.floor(np.sqrt(dpos.astype(np.float64))).astype(np.int64)
        s = np.where((s + 1) * (s + 1) <= dpos, s + 1, s)
        s = np.where(s * s > dpos, s - 1, s)
        issq = pos & (s * s == dpos)
        ok_neg = neg & (np.maximum(a, c) * bd <= bn)
        strict = pos & ~issq
        t1 = 2 * a + b
        t2 = b - 2 * a
        t3 = 2 * a - b
        out_p = ((t1 < 0) | (disc > t1 * t1)) | ((t2 > 0) & (disc < t2 * t2))
        out_m = ((t1 < 0) & (disc < t1 * t1)) | ((t3 < 0) | (disc > t3 * t3))
        n_out0 = strict & ~out_p & ~out_m
        n_out2 = strict & out_p & out_m
        ok_pos = np.zeros_like(strict)
        ok_pos |= n_out0 & (a * bd <= bn)
        ok_pos |= n_out2 & (np.abs(c) * bd <= bn)
        for eps, mask in ((1, strict & out_p & ~out_m), (-1, strict & out_m & ~out_p)):
            u = 2 * bn + bd * b
            v = bd * b - 2 * bn
            d2 = bd * bd * disc
            if eps == 1:
                upper = (u >= 0) & (d2 <= u * u)
                lower = (v <= 0) | (d2 >= v * v)
            else:
                upper = (u >= 0) | (d2 >= u * u)
                lower = (v <= 0) & (d2 <= v * v)
            ok_pos |= mask & upper & lower
        ok = prim & ok_neg
        dv = disc[ok]
        seen_neg[kern_tbl[-dv]] = True
        ok = prim & ok_pos
        dv = disc[ok]
        seen_pos[kern_tbl[dv]] = True
    return seen_pos, seen_neg


def n_disc(T: int) -> int:
    """Number of quadratic fields with |disc| <= T, by the squarefree sieve."""
    if T < 3:
        raise ValueError("T >= 3 (the smallest |disc| is 3)")
    return len(arith.fundamental_discriminants_up_to(T))


def n_disc_moebius(T: int) -> int:
    """Independent count via Moebius inclusion-exclusion on squarefree
    integers in residue classes mod 4."""
    if T < 3:
        raise ValueError("T >= 3")

    def sf_in_class(x: int, a: int) -> int:
        # squarefree 1 <= k <= x with k = a (mod 4); only odd d contribute
        total = 0
        d = 1
        mu = arith.mobius_sieve(isqrt(x))
        while d * d <= x:
            if d % 2 == 1 and mu[d]:
                y = x // (d * d)
                # count k <= y, k*d^2 = a mod 4 <=> k = a * inv(d^2) = a (mod 4)
                cnt = (y - a) // 4 + 1 if y >= a else 0
                total += mu[d] * cnt
            d += 1
        return total

    total = sf_in_class(T, 1) - 1  # drop m = 1 (disc 1 is no field)
    total += sf_in_class(T, 3)
    q = T // 4
    if q >= 1:
        total += sf_in_class(q, 2)  # disc = +4m, m = 2 mod 4
        total += sf_in_class(q, 3)  # disc = +4m, m = 3 mod 4
        total += sf_in_class(q, 1)  # disc = -4m, m = 1 mod 4
        total += sf_in_class(q, 2)  # disc = -4m, m = 2 mod 4
    return total


# ---------------------------------------------------------------------------
# Count reports and residual fits


@dataclass
class CountReport:
    description: str
    grid: list  # Fractions
    counts: list  # ints
    predictions: list  # Interval per grid point
    metadata: dict = dc_field(default_factory=dict)

    @property
    def residuals(self) -> list[float]:
        return [
            float(Fraction(c) - p.mid) for c, p in zip(self.counts, self.predictions)
        ]


@dataclass
class ResidualFit:
    slope: Optional[float]  # None when every residual vanishes
    intercept: Optional[float]
    declared_exponent: float
    flagged: bool


def residual_analysis(report: CountReport) -> ResidualFit:
    """Least-squares slope of log|count - predicted| against log X; flags a
    slope exceeding the declared error exponent by more than 0.15."""
    grid = [Fraction(x) for x in report.grid]
    if len(grid) < 4 or max(grid) < 4 * min(grid):
        raise DegenerateGrid("need >= 4 grid points spanning a factor >= 4")
    expo = float(report.metadata.get("error_exponent", 0.0))
    pts = []
    for x, c, p in zip(grid, report.counts, report.predictions):
        r = abs(Fraction(c) - p.mid)
        if r != 0:
            pts.append((log(float(x)), log(float(r))))
    if not pts:
        return ResidualFit(None, None, expo, False)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((u - mx) ** 2 for u in xs)
    if sxx == 0:
        return ResidualFit(None, None, expo, False)
    slope = sum((u - mx) * (v - my) for u, v in zip(xs, ys)) / sxx
    intercept = my - slope * mx
    return ResidualFit(slope, intercept, expo, slope > expo + 0.15)
