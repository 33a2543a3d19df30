"""Circles, edge sequences and basic graphs over a finite field.

For a subgroup Phi of order k, the circle of radius r centred at c is
Phi*r + c.  The k circles Phi*r + phi^n c (n = 0..k-1) form the orbit
E_c^r; circle n meets circle n+j in eps_j points, and the vector
e(r,c) = (eps_1, ..., eps_{k-1}) determines the whole intersection graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    KNotDividingQMinus1,
    NonPalindromic,
    NotCircular,
    ZeroInput,
    ZeroRadius,
)
from .fields import Field, FieldElem, SubgroupK, subgroup


def _check_k(field: Field, k: int) -> None:
    if k < 1 or (field.order - 1) % k:
        raise KNotDividingQMinus1(f"{k} does not divide {field.order} - 1")


@lru_cache(maxsize=256)
def circularity_check(field: Field, k: int, generator: FieldElem | None = None) -> bool:
    """True iff no f_{i,j,s,t,0} with (i,j) != (s,t), (i,s) != (j,t) vanishes at phi.

    That condition says the products (phi^a - 1)(phi^b - 1) are distinct
    for distinct multisets {a, b}, which is checked directly in O(k^2).
    """
    _check_k(field, k)
    powers = subgroup(field, k, generator).elements
    one = field.one
    u = [p - one for p in powers]
    seen = set()
    for a in range(1, k):
        for b in range(a, k):
            v = (u[a] * u[b]).coeffs
            if v in seen:
                return False
            seen.add(v)
    return True


def circularity_check_bruteforce(field: Field, k: int) -> bool:
    """Reference version scanning every quadruple of the index set."""
    _check_k(field, k)
    powers = subgroup(field, k).elements
    one = field.one
    u = [p - one for p in powers]
    for i, j, s, t in itertools.product(range(1, k), repeat=4):
        if (i, j) == (s, t) or (i, s) == (j, t):
            continue
        if u[j] * u[s] == u[i] * u[t]:
            return False
    return True


def _require_circular(field: Field, k: int) -> None:
    if not circularity_check(field, k):
        raise NotCircular(f"({field.order}, {k}) is not circular")


@dataclass(frozen=True)
class Circle:
    points: frozenset
    r: FieldElem
    c: FieldElem

    def __len__(self) -> int:
        return len(self.points)


def circle(field: Field, phi: SubgroupK, r: FieldElem, c: FieldElem) -> Circle:
    if r.is_zero():
        raise ZeroRadius("radius must be nonzero")
    return Circle(frozenset(lam * r + c for lam in phi.elements), r, c)


@dataclass(frozen=True)
class EdgeSequence:
    eps: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.eps) + 1

    def is_palindromic(self) -> bool:
        return self.eps == self.eps[::-1]

    def __getitem__(self, j: int) -> int:
        # 1-based, as eps_j
        return self.eps[j - 1]


def edge_sequence(field: Field, phi: SubgroupK, r: FieldElem, c: FieldElem) -> EdgeSequence:
    if r.is_zero() or c.is_zero():
        raise ZeroInput("r and c must be nonzero")
    _require_circular(field, phi.k)
    base = circle(field, phi, r, c).points
    eps = []
    for j in range(1, phi.k):
        other = circle(field, phi, r, phi.power(j) * c).points
        eps.append(len(base & other))
    return EdgeSequence(tuple(eps))


@dataclass(frozen=True)
class BasicGraph:
    j: int
    parity: str  # "odd" (one common point, Gamma) or "even" (two, Pi)
    k: int

    @property
    def name(self) -> str:
        return ("Gamma" if self.parity == "odd" else "Pi") + f"_{self.j}^{self.k}"

    @property
    def edges(self) -> frozenset:
        k = self.k
        return frozenset(tuple(sorted((n, (n + self.j) % k))) for n in range(k))

    def to_dict(self) -> dict:
        return {"j": self.j, "parity": self.parity, "k": self.k}


def decompose(e: EdgeSequence) -> list[BasicGraph]:
    if not e.is_palindromic():
        raise NonPalindromic(f"edge sequence {list(e.eps)} is not palindromic")
    k = e.k
    out = []
    for j in range(1, k // 2 + 1):
        if e[j] == 1:
            out.append(BasicGraph(j, "odd", k))
        elif e[j] == 2:
            out.append(BasicGraph(j, "even", k))
    return out


def c_ij(field: Field, phi: FieldElem, i: int, j: int) -> FieldElem:
    """(phi^i - 1)^(-1) (phi^j - 1)."""
    one = field.one
    return (phi ** j - one) * (phi ** i - one).inverse()


def coset_rep(phi: SubgroupK, c: FieldElem) -> FieldElem:
    """Least element of Phi*c in the enumeration order."""
    return min((lam * c for lam in phi.elements), key=lambda e: e.coeffs)


def orbit_family(field: Field, phi: SubgroupK, r: FieldElem) -> list[FieldElem]:
    """Coset representatives c of the distinct orbits E_c^r in M_r."""
    k = phi.k
    reps = {
        coset_rep(phi, r * c_ij(field, phi.generator, i, j))
        for i in range(1, k)
        for j in range(1, k)
    }
    return sorted(reps, key=lambda e: e.coeffs)


def orbit_family_scan(field: Field, phi: SubgroupK, r: FieldElem) -> list[FieldElem]:
    """Reference: every c != 0 whose intersection graph is not null, up to Phi."""
    reps = {
        coset_rep(phi, c)
        for c in field.nonzero()
        if any(edge_sequence(field, phi, r, c).eps)
    }
    return sorted(reps, key=lambda e: e.coeffs)


def gamma_pi(field: Field, phi: SubgroupK, r: FieldElem) -> tuple[list[int], list[int]]:
    """Counts of orbits in M_r whose graph contains Gamma_i / Pi_i, for i = 1..k/2."""
    if r.is_zero():
        raise ZeroRadius("radius must be nonzero")
    _require_circular(field, phi.k)
    half = phi.k // 2
    gamma, pi = [0] * half, [0] * half
    for c in orbit_family(field, phi, r):
        for g in decompose(edge_sequence(field, phi, r, c)):
            (gamma if g.parity == "odd" else pi)[g.j - 1] += 1
    return gamma, pi


def to_dot(e: EdgeSequence, name: str = "G") -> str:
    """Graphviz rendering of the intersection graph; Pi edges drawn doubled."""
    k = e.k
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    lines += [f"  v{n};" for n in range(k)]
    for g in decompose(e):
        style = "" if g.parity == "odd" else ' [color="black:black"]'
        for a, b in sorted(g.edges):
            lines.append(f"  v{a} -- v{b}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
