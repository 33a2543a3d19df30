"""Integer helpers: primality, factorization, totients, polynomial formatting."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import compress
from typing import Sequence

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin bases; exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=None)
def small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    """Primes up to ``limit`` by the sieve of Eratosthenes."""
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for n in range(2, math.isqrt(limit) + 1):
        if sieve[n]:
            sieve[n * n :: n] = bytearray(len(range(n * n, limit + 1, n)))
    return tuple(compress(range(limit + 1), sieve))


def _miller_rabin(n: int) -> bool:
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in small_primes(1000):
        if n == p:
            return True
        if n % p == 0:
            return False
    return _miller_rabin(n)


def pollard_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``.

    Brent's cycle variant with the fixed sequence of increments c = 1, 2, ...
    so that results are reproducible.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # Batched gcd overshot; step one at a time from the saved point.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard_rho failed on {n}")


def factorize(n: int) -> list[int]:
    """Prime factorization of ``n >= 1`` as a sorted list with multiplicity.

    Trial division by primes up to 10**6 (stopping early once p*p > n), then
    Pollard rho on whatever cofactor remains.
    """
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out: list[int] = []
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out.append(p)
            n //= p
    if n > 1:
        out.extend(_split(n))
    return sorted(out)


def _split(n: int) -> list[int]:
    if is_prime(n):
        return [n]
    r = math.isqrt(n)
    if r * r == n:
        return _split(r) * 2
    d = pollard_rho(n)
    return _split(d) + _split(n // d)


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|``, ascending; empty for 0 and ±1."""
    n = abs(n)
    if n <= 1:
        return []
    return sorted(set(factorize(n)))


@lru_cache(maxsize=None)
def totient(k: int) -> int:
    result = k
    for p in prime_factors(k):
        result -= result // p
    return result


def units(k: int) -> tuple[int, ...]:
    """Residues d in 1..k coprime to k (for k = 1 this is (1,))."""
    if k == 1:
        return (1,)
    return tuple(d for d in range(1, k) if math.gcd(d, k) == 1)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def is_prime_power(q: int) -> bool:
    return q > 1 and len(prime_factors(q)) == 1


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    """Render a constant-first coefficient list, e.g. [1, 3, 1] -> 'x^2 + 3x + 1'."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def parse_int_list(text: str) -> list[int]:
    """Parse '1,3,1' (whitespace tolerant) into [1, 3, 1]."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"expected comma-separated integers, got {text!r}")
    return [int(p) for p in parts]
