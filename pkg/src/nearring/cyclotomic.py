"""Exact arithmetic in the cyclotomic field Q(phi), phi a primitive k-th root of unity.

Integer polynomials (``PolyZ``) are plain tuples of Python ints, constant
term first, with no trailing zeros; the zero polynomial is ``()``.
Elements of Q(phi) are :class:`CycNum`: an integer residue vector modulo
the k-th cyclotomic polynomial over a single positive denominator.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce as _fold
from typing import Iterable, Sequence

import numpy as np

from .arith import divisors, totient, units
from .errors import NonRationalProduct, NotCoprime, ZeroPolynomial

PolyZ = tuple  # tuple[int, ...], constant term first


# --- integer polynomials ----------------------------------------------------

def poly(coeffs: Iterable[int]) -> PolyZ:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: PolyZ) -> int:
    return len(f) - 1


def poly_add(f: PolyZ, g: PolyZ) -> PolyZ:
    n = max(len(f), len(g))
    return poly((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def poly_neg(f: PolyZ) -> PolyZ:
    return tuple(-c for c in f)


def poly_sub(f: PolyZ, g: PolyZ) -> PolyZ:
    return poly_add(f, poly_neg(g))


def poly_mul(f: PolyZ, g: PolyZ) -> PolyZ:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly(out)


def monomial(n: int, c: int = 1) -> PolyZ:
    return poly([0] * n + [c])


def poly_divmod_monic(f: PolyZ, g: PolyZ) -> tuple[PolyZ, PolyZ]:
    """Division by a monic integer polynomial; quotient and remainder are integral."""
    if not g or g[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(f)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for shift in range(len(f) - 1 - dg, -1, -1):
        c = r[shift + dg]
        if c:
            q[shift] = c
            for i, gc in enumerate(g):
                r[shift + i] -= c * gc
    return poly(q), poly(r[:dg])


def poly_eval(f: PolyZ, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def content(f: PolyZ) -> int:
    return _fold(math.gcd, f, 0)


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> PolyZ:
    """Phi_k, by exact division of x^k - 1 by Phi_d over the proper divisors d of k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = poly_sub(monomial(k), (1,))
    for d in divisors(k):
        if d < k:
            f, r = poly_divmod_monic(f, cyclotomic_poly(d))
            assert not r
    return f


@lru_cache(maxsize=None)
def _residues(k: int) -> tuple[tuple[int, ...], ...]:
    """x^n mod Phi_k for n = 0..k-1, each of length totient(k)."""
    phi = cyclotomic_poly(k)
    e = len(phi) - 1
    rows = []
    cur = [0] * e
    cur[0] = 1
    for _ in range(k):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(e):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce_terms(terms: Iterable[tuple[int, int]], k: int) -> list[int]:
    """Sum of c * phi^n over (n, c) pairs, as a residue vector."""
    table = _residues(k)
    e = len(table[0])
    out = [0] * e
    for n, c in terms:
        if not c:
            continue
        n %= k
        if n < e:
            out[n] += c
        else:
            for i, r in enumerate(table[n]):
                if r:
                    out[i] += c * r
    return out


# --- Q(phi) -----------------------------------------------------------------

@dataclass(frozen=True)
class CycNum:
    k: int
    num: tuple[int, ...]
    den: int = 1

    @classmethod
    def make(cls, k: int, num: Sequence[int], den: int = 1) -> "CycNum":
        """Normalizing constructor: positive denominator, lowest terms."""
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = [int(c) for c in num]
        if den < 0:
            den, num = -den, [-c for c in num]
        g = math.gcd(den, _fold(math.gcd, num, 0))
        if g > 1:
            den //= g
            num = [c // g for c in num]
        return cls(k, tuple(num), den)

    @classmethod
    def zero(cls, k: int) -> "CycNum":
        return cls(k, (0,) * totient(k), 1)

    @classmethod
    def one(cls, k: int) -> "CycNum":
        return cls.phi_power(k, 0)

    @classmethod
    def phi_power(cls, k: int, w: int) -> "CycNum":
        return cls(k, _residues(k)[w % k], 1)

    @classmethod
    def from_int(cls, k: int, n: int) -> "CycNum":
        v = [0] * totient(k)
        v[0] = n
        return cls(k, tuple(v), 1)

    def is_zero(self) -> bool:
        return not any(self.num)

    def _same(self, other: "CycNum") -> None:
        if not isinstance(other, CycNum) or other.k != self.k:
            raise TypeError("operands must be CycNum with the same k")

    def __add__(self, other: "CycNum") -> "CycNum":
        self._same(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CycNum.make(self.k, [a + b for a, b in zip(self.num, other.num)], d1)
        return CycNum.make(self.k, [a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2)

    def __neg__(self) -> "CycNum":
        return CycNum(self.k, tuple(-a for a in self.num), self.den)

    def __sub__(self, other: "CycNum") -> "CycNum":
        return self + (-other)

    def __mul__(self, other: "CycNum | int") -> "CycNum":
        if isinstance(other, int):
            return CycNum.make(self.k, [a * other for a in self.num], self.den)
        self._same(other)
        prod = poly_mul(self.num, other.num)
        return CycNum.make(self.k, _reduce_terms(enumerate(prod), self.k), self.den * other.den)

    __rmul__ = __mul__

    def times_phi(self) -> "CycNum":
        """Multiplication by phi, done as a shift plus one reduction step."""
        phi = cyclotomic_poly(self.k)
        top = self.num[-1]
        shifted = (0,) + self.num[:-1]
        if top:
            shifted = tuple(c - top * phi[i] for i, c in enumerate(shifted))
        return CycNum(self.k, shifted, self.den)

    def conjugate(self, d: int) -> "CycNum":
        return conjugate(self, d)

    def norm(self):
        return norm(self)

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("zero is not invertible")
        alpha = CycNum(self.k, self.num, 1)
        others = [conjugate(alpha, d) for d in units(self.k) if d != 1]
        cofactor = _fold(CycNum.__mul__, others, CycNum.one(self.k))
        n = _rational_constant(alpha * cofactor)
        return CycNum.make(self.k, [c * self.den for c in cofactor.num], n)

    def __truediv__(self, other: "CycNum") -> "CycNum":
        return self * other.inverse()

    def __pow__(self, n: int) -> "CycNum":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = CycNum.one(self.k), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sort_key(self) -> tuple:
        return (self.den, self.num)

    def to_dict(self) -> dict:
        return {"k": self.k, "num": list(self.num), "den": self.den}

    @classmethod
    def from_dict(cls, d: dict) -> "CycNum":
        k = int(d["k"])
        num = [int(c) for c in d["num"]]
        if len(num) != totient(k):
            raise ValueError(f"expected {totient(k)} coefficients for k={k}")
        return cls.make(k, num, int(d.get("den", 1)))


def reduce(f: PolyZ, k: int) -> CycNum:
    """The value f(phi) as a residue modulo Phi_k; zero exactly when f(phi) = 0."""
    return CycNum(k, tuple(_reduce_terms(enumerate(f), k)), 1)


def reduce_sparse(terms: Iterable[tuple[int, int]], k: int) -> CycNum:
    """``reduce`` for a polynomial given as (exponent, coefficient) pairs."""
    return CycNum(k, tuple(_reduce_terms(terms, k)), 1)


def conjugate(a: CycNum, d: int) -> CycNum:
    """Image of ``a`` under the automorphism phi -> phi^d."""
    if math.gcd(d, a.k) != 1:
        raise NotCoprime(f"gcd({d}, {a.k}) != 1")
    k = a.k
    return CycNum(k, tuple(_reduce_terms(((n * d, c) for n, c in enumerate(a.num)), k)), a.den)


def _rational_constant(a: CycNum):
    if any(a.num[1:]):
        raise NonRationalProduct(f"non-rational conjugate product in Q(phi_{a.k}): {a.num}")
    if a.den == 1:
        return a.num[0]
    return Fraction(a.num[0], a.den)


def norm(a: CycNum):
    """Galois norm: the product of all conjugates (an int when den = 1)."""
    k = a.k
    alpha = CycNum(k, a.num, 1)
    prod = _fold(CycNum.__mul__, (conjugate(alpha, d) for d in units(k)), CycNum.one(k))
    value = _rational_constant(prod)
    if a.den == 1:
        return value
    return Fraction(value, a.den ** len(a.num))


# --- resultants -------------------------------------------------------------

def _prem(a: list[int], b: PolyZ) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    a = list(a)
    while a and len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [lb * x for x in a]
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        while a and a[-1] == 0:
            a.pop()
        e -= 1
    f = lb ** e
    return [f * x for x in a]


def resultant(f: PolyZ, g: PolyZ) -> int:
    """Res(f, g) by the subresultant PRS; equals lc(f)^deg(g) * prod g(roots of f)."""
    A, B = poly(f), poly(g)
    if not A or not B:
        raise ZeroPolynomial("resultant of a zero polynomial")
    s = 1
    if len(A) < len(B):
        if degree(A) % 2 and degree(B) % 2:
            s = -1
        A, B = B, A
    if degree(B) == 0:
        return s * B[0] ** degree(A)
    ca, cb = content(A), content(B)
    t = ca ** degree(B) * cb ** degree(A)
    A = tuple(c // ca for c in A)
    B = tuple(c // cb for c in B)
    g_, h = 1, 1
    while True:
        da, db = degree(A), degree(B)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(list(A), B)
        A = B
        div = g_ * h ** delta
        B = tuple(c // div for c in R)
        g_ = A[-1]
        if delta:
            h = g_ ** delta // h ** (delta - 1)
        if not B:
            return 0
        if degree(B) == 0:
            da = degree(A)
            h = B[0] ** da // h ** (da - 1)
            return s * t * h


# --- batched norms of sums of roots of unity -------------------------------

_INT64_SAFE = 2**62


def _residue_matrix(k: int) -> np.ndarray:
    return np.array(_residues(k), dtype=object)


def norm_batch(k: int, exps, signs, *, threads: int = 1, chunk: int = 50_000) -> list[int]:
    """Norms of many elements sum_t signs[r, t] * phi^exps[r, t].

    Works in the group ring Z[x]/(x^k - 1), where phi -> phi^d acts by
    permuting exponents, multiplies all conjugates there, and only then
    reduces modulo Phi_k.  int64 is used when an a-priori coefficient
    bound allows; otherwise Python integers.
    """
    exps = np.asarray(exps, dtype=np.int64) % k
    signs = np.asarray(signs, dtype=np.int64)
    if exps.ndim != 2 or exps.shape != signs.shape:
        raise ValueError("exps and signs must be equal-shape 2-d arrays")
    nrows = exps.shape[0]
    if nrows == 0:
        return []
    l1 = int(np.abs(signs).sum(axis=1).max())
    e = totient(k)
    R = _residue_matrix(k)
    rmax = max(abs(int(v)) for v in R.flat)
    bound = max(l1, 1) ** e * max(rmax, 1) * k
    dtype = np.int64 if bound < _INT64_SAFE else object
    Rm = R.astype(np.int64) if dtype is np.int64 else R
    us = units(k)

    def run(lo: int, hi: int) -> list[int]:
        n = hi - lo
        base = np.zeros((n, k), dtype=dtype)
        rows = np.repeat(np.arange(n), exps.shape[1])
        np.add.at(base, (rows, exps[lo:hi].ravel()), signs[lo:hi].ravel().astype(dtype))
        prod = None
        for d in us:
            conj = np.zeros_like(base)
            conj[:, (np.arange(k) * d) % k] = base
            if prod is None:
                prod = conj
                continue
            new = np.zeros_like(base)
            for a in range(k):
                col = prod[:, a : a + 1]
                if dtype is np.int64 and not col.any():
                    continue
                new += col * np.roll(conj, a, axis=1)
            prod = new
        red = prod.dot(Rm)
        if np.any(red[:, 1:] != 0):
            raise NonRationalProduct(f"non-rational group-ring norm for k={k}")
        return [int(v) for v in red[:, 0]]

    bounds = [(lo, min(lo + chunk, nrows)) for lo in range(0, nrows, chunk)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: run(*b), bounds))
    else:
        parts = [run(*b) for b in bounds]
    return [v for part in parts for v in part]
