"""Finite fields GF(p^m) over a fixed irreducible modulus.

Elements are coefficient vectors in the power basis of the modulus,
constant term first; polynomials over GF(p) use the same convention, so
x^2 + 3x + 1 is ``(1, 3, 1)``.  Enumeration order on elements is
lexicographic on the coefficient vector, constant term first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .arith import format_poly, is_prime, prime_factors, totient
from .errors import (
    InvalidInput,
    NearringError,
    NoSuchOrder,
    NotPrime,
    ReducibleModulus,
    ZeroElement,
)

# Extension degrees above this need an explicit ``max_degree`` override.
MAX_DEGREE = 2


# --- polynomials over GF(p), lists constant-first --------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the nonzero polynomial ``b`` over GF(p)."""
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lead % p
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Exhaustive test: no monic factor of degree 1..deg(f)//2 divides f."""
    f = _trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if any(poly_eval(f, r, p) == 0 for r in range(p)):
        return False
    for d in range(2, m // 2 + 1):
        for g in _monic_polys(p, d):
            if not poly_mod(f, g, p):
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree ``m``.

    Candidates are ordered by their coefficient sequence from the constant
    term up, so for m = 1 the answer is always ``x``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise InvalidInput(f"degree must be >= 1, got {m}")
    for f in _monic_polys(p, m):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("an irreducible polynomial of every degree exists")


# --- the field -------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.m

    @property
    def characteristic(self) -> int:
        return self.p

    @cached_property
    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.m)

    @cached_property
    def one(self) -> "FieldElem":
        return FieldElem(self, (1,) + (0,) * (self.m - 1))

    @cached_property
    def x(self) -> "FieldElem":
        """Residue class of the indeterminate (equals 0 when m = 1)."""
        if self.m == 1:
            return self(-self.modulus[0])
        return FieldElem(self, (0, 1) + (0,) * (self.m - 2))

    def __call__(self, value: "int | Sequence[int] | FieldElem") -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise InvalidInput("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = [value]
        else:
            coeffs = list(value)
        if len(coeffs) > self.m:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        coeffs = [c % self.p for c in coeffs]
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def elements(self) -> Iterator["FieldElem"]:
        """All q elements in the fixed enumeration order (zero first)."""
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield FieldElem(self, coeffs)

    def nonzero(self) -> Iterator["FieldElem"]:
        it = self.elements()
        next(it)
        return it

    # raw coefficient arithmetic; FieldElem delegates here
    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, m = self.p, self.m
        if m == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d] % p
            if c:
                base = d - m
                for i in range(m):
                    prod[base + i] -= c * mod[i]
        return tuple(c % p for c in prod[:m])

    def __str__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}) mod {format_poly(self.modulus)}"

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


@dataclass(frozen=True)
class FieldElem:
    field: Field = field(repr=False)
    coeffs: tuple[int, ...]

    def _coerce(self, other) -> tuple[int, ...]:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise InvalidInput("elements of different fields")
            return other.coeffs
        if isinstance(other, int):
            return self.field(other).coeffs
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        p = self.field.p
        return FieldElem(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, b)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple(-x % p for x in self.coeffs))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        p = self.field.p
        return FieldElem(self.field, tuple((x - y) % p for x, y in zip(self.coeffs, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field._mul(self.coeffs, b))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one.coeffs
        base = self.coeffs
        mul = self.field._mul
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return FieldElem(self.field, result)

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroElement("zero has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __lt__(self, other: "FieldElem") -> bool:
        return self.coeffs < other.coeffs

    def order(self) -> int:
        """Multiplicative order."""
        if self.is_zero():
            raise ZeroElement("zero has no multiplicative order")
        n = self.field.order - 1
        for r in prime_factors(n):
            while n % r == 0 and (self ** (n // r)).coeffs == self.field.one.coeffs:
                n //= r
        return n

    def __int__(self) -> int:
        if any(self.coeffs[1:]):
            raise InvalidInput(f"{self} is not in the prime subfield")
        return self.coeffs[0]

    def __str__(self) -> str:
        if self.field.m == 1:
            return str(self.coeffs[0])
        return format_poly(self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElem({list(self.coeffs)})"


def build_field(
    p: int,
    m: int = 1,
    modulus: Sequence[int] | None = None,
    *,
    max_degree: int | None = MAX_DEGREE,
) -> Field:
    """Construct GF(p^m).

    Without ``modulus`` the lexicographically least monic irreducible of
    degree m is used.  A supplied modulus is checked for irreducibility.
    ``max_degree=None`` lifts the default cap on m.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise InvalidInput(f"degree must be >= 1, got {m}")
    if max_degree is not None and m > max_degree:
        raise InvalidInput(f"degree {m} exceeds max_degree={max_degree}")
    if modulus is None:
        mod = find_irreducible(p, m)
    else:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise InvalidInput(f"modulus must be monic of degree {m}: {list(mod)}")
        if any(not 0 <= c < p for c in mod):
            raise InvalidInput(f"modulus coefficients must lie in 0..{p - 1}")
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"{format_poly(mod)} is reducible over GF({p})")
    return Field(p, m, mod)


@dataclass(frozen=True)
class SubgroupK:
    generator: FieldElem
    k: int
    elements: tuple[FieldElem, ...]

    def __contains__(self, e: FieldElem) -> bool:
        return e in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def power(self, w: int) -> FieldElem:
        return self.elements[w % self.k]


def _check_order_exists(f: Field, k: int) -> None:
    if k < 1 or (f.order - 1) % k:
        raise NoSuchOrder(f"{k} does not divide |{f}*| = {f.order - 1}")


def _has_order(e: FieldElem, k: int) -> bool:
    one = e.field.one
    if e ** k != one:
        return False
    return all(e ** (k // r) != one for r in prime_factors(k))


def element_of_order(f: Field, k: int, *, all: bool = False):
    """First element of multiplicative order exactly ``k``.

    With ``all=True`` returns the list of all totient(k) such elements, in
    enumeration order.
    """
    _check_order_exists(f, k)
    found = []
    want = totient(k)
    for e in f.nonzero():
        if _has_order(e, k):
            if not all:
                return e
            found.append(e)
            if len(found) == want:
                break
    if all:
        return found
    raise AssertionError("unreachable: k | q-1 guarantees an element of order k")


def subgroup(f: Field, k: int, generator: FieldElem | None = None) -> SubgroupK:
    """The multiplicative subgroup of order k, listed as powers of a generator."""
    if generator is None:
        generator = element_of_order(f, k)
    elif not _has_order(generator, k):
        raise InvalidInput(f"{generator} does not have order {k}")
    powers = [f.one]
    for _ in range(k - 1):
        powers.append(powers[-1] * generator)
    return SubgroupK(generator, k, tuple(powers))


def minimal_polynomial(f: Field, e: FieldElem) -> tuple[int, ...]:
    """Monic minimal polynomial of ``e`` over GF(p), constant term first."""
    if e.is_zero():
        raise ZeroElement("minimal polynomial of zero is not defined here")
    conjugates = [e]
    while True:
        nxt = conjugates[-1] ** f.p
        if nxt == e:
            break
        conjugates.append(nxt)
    # multiply out prod (x - c)
    poly = [f.one]
    for c in conjugates:
        shifted = [f.zero] + poly
        for i in range(len(poly)):
            shifted[i] = shifted[i] - c * poly[i]
        poly = shifted
    try:
        return tuple(int(c) for c in poly)
    except InvalidInput as exc:
        raise NearringError("conjugate product left the prime subfield") from exc
