"""Integer utilities: symbols, sieves, squarefree kernels, fundamental discriminants."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import gmpy2


def kronecker(a: int, n: int) -> int:
    return int(gmpy2.kronecker(a, n))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def is_prime(n: int) -> bool:
    return bool(gmpy2.is_prime(n))


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(range(p * p, limit + 1, p))
    return [i for i in range(limit + 1) if sieve[i]]


def mobius_sieve(limit: int) -> list[int]:
    """mu(0..limit) by the standard linear-ish sieve."""
    mu = [0] * (limit + 1)
    if limit >= 1:
        mu[1] = 1
    primes: list[int] = []
    is_comp = bytearray(limit + 1)
    for i in range(2, limit + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > limit:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def squarefree_sieve(limit: int) -> bytearray:
    """flags[n] = 1 iff n squarefree, for 0 <= n <= limit."""
    flags = bytearray([1]) * (limit + 1)
    flags[0] = 0
    p = 2
    while p * p <= limit:
        step = p * p
        flags[step::step] = b"\x00" * len(range(step, limit + 1, step))
        p += 1
    return flags


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; intended for |n| up to ~10^12."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # wheel mod 6
    f = 7
    step = 4
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Write n = k * s**2 with k squarefree (sign carried by k). Returns (k, s)."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    k, s = 1, 1
    for p, e in factorize(n).items():
        if e % 2:
            k *= p
        s *= p ** (e // 2)
    return sign * k, s


def is_squarefree(n: int) -> bool:
    k, s = squarefree_kernel(n)
    return s == 1 and n != 0


def fundamental_discriminant_for_kernel(k: int) -> int:
    """Discriminant of Q(sqrt(k)) for squarefree k != 0, 1."""
    if k % 4 == 1:
        return k
    return 4 * k


def is_fundamental_discriminant(disc: int) -> bool:
    if disc in (0, 1):
        return False
    r = disc % 4
    if r == 1:
        return is_squarefree(disc)
    if r == 0:
        m = disc // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants_up_to(bound: int) -> list[int]:
    """All fundamental discriminants with |disc| <= bound, sorted by (|disc|, sign)."""
    sf = squarefree_sieve(bound)
    out: list[int] = []
    for m in range(1, bound + 1):
        if not sf[m]:
            continue
        r = m % 4
        if r == 1 and m > 1:
            out.append(m)
        elif r == 3:
            out.append(-m)
        if 4 * m <= bound:
            if r in (2, 3):
                out.append(4 * m)
            if r in (1, 2):
                out.append(-4 * m)
    out.sort(key=lambda d: (abs(d), d))
    return out


def frac_floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_sqrt_frac(x: Fraction) -> int:
    """Largest integer m with m*m <= x (x >= 0)."""
    if x < 0:
        raise ValueError("negative")
    m = isqrt(frac_floor(x))
    while (m + 1) * (m + 1) <= x:
        m += 1
    while m * m > x:
        m -= 1
    return m


def sqrt_residues(a: int, p: int) -> list[int]:
    """Solutions of t^2 = a (mod p) for prime p, by direct scan (p small)."""
    a %= p
    return [t for t in range(p) if (t * t - a) % p == 0]
