"""Quadruples (i,j|s,t), their triviality, group actions, and overlap enumeration.

A quadruple (i,j|s,t) is an overlap when phi^w c_{i,j} = c_{s,t} for some
w, with c_{i,j} = (phi^j - 1)/(phi^i - 1).  Equivalently the polynomial

    f_{i,j,s,t,w}(x) = x^w (x^j - 1)(x^s - 1) - (x^i - 1)(x^t - 1)

vanishes at phi.  Overlaps are enumerated by bucketing all pairs (i,j)
by a canonical representative of the coset Phi * c_{i,j}.
"""

from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from . import cyclotomic as cyc
from .errors import (
    InvalidInput,
    KNotDividingQMinus1,
    NotCircular,
    NotNormalizable,
    OddK,
    TrivialInput,
)
from .fields import Field, FieldElem, element_of_order, subgroup


class Quad(NamedTuple):
    i: int
    j: int
    s: int
    t: int
    k: int

    @classmethod
    def of(cls, i: int, j: int, s: int, t: int, k: int) -> "Quad":
        if k < 3:
            raise InvalidInput(f"k must be >= 3, got {k}")
        for v in (i, j, s, t):
            if not 1 <= v <= k - 1:
                raise InvalidInput(f"entries must lie in 1..{k - 1}: ({i},{j}|{s},{t})")
        return cls(i, j, s, t, k)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.i, self.j, self.s, self.t)

    def swap_sides(self) -> "Quad":
        return Quad(self.s, self.t, self.i, self.j, self.k)

    def scaled(self, m: int, k: int) -> "Quad":
        return Quad(self.i * m, self.j * m, self.s * m, self.t * m, k)

    def __str__(self) -> str:
        return f"({self.i},{self.j}|{self.s},{self.t})"

    def to_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "s": self.s, "t": self.t, "k": self.k}


def parse_quad(text: str, k: int) -> Quad:
    """Parse 'i,j,s,t' or '(i,j|s,t)'."""
    cleaned = text.strip().strip("()").replace("|", ",")
    parts = [p for p in cleaned.split(",") if p.strip()]
    if len(parts) != 4:
        raise InvalidInput(f"expected four entries, got {text!r}")
    return Quad.of(*(int(p) for p in parts), k)


# --- polynomials ------------------------------------------------------------

def overlap_terms(q: Quad, w: int) -> list[tuple[int, int]]:
    """Sparse (exponent, coefficient) form of f_{i,j,s,t,w}."""
    i, j, s, t = q.entries
    return [
        (w + j + s, 1), (w + j, -1), (w + s, -1), (w, 1),
        (i + t, -1), (i, 1), (t, 1), (0, -1),
    ]


def overlap_poly(q: Quad, w: int) -> cyc.PolyZ:
    if w < 0:
        raise InvalidInput(f"omega must be >= 0, got {w}")
    n = max(w + q.j + q.s, q.i + q.t) + 1
    c = [0] * n
    for e, v in overlap_terms(q, w):
        c[e] += v
    return cyc.poly(c)


def omega_of(q: Quad) -> Fraction:
    """((t + i) - (s + j)) / 2, the exponent predicted for normalized complex overlaps."""
    return Fraction((q.t + q.i) - (q.s + q.j), 2)


# --- triviality -------------------------------------------------------------

class Kind(str, enum.Enum):
    JEqualsI = "JEqualsI"
    JEqualsT = "JEqualsT"  # part of the vocabulary; no table row produces it
    SEqualsKMinusI = "SEqualsKMinusI"
    IEqualsS = "IEqualsS"
    Nontrivial = "Nontrivial"


class Condition(str, enum.Enum):
    Always = "Always"
    EvenKOrChar2 = "EvenKOrChar2"
    EvenKOrChar2AndJNotHalfK = "EvenKOrChar2AndJNotHalfK"
    INotHalfK = "INotHalfK"


@dataclass(frozen=True)
class TrivialityVerdict:
    kind: Kind
    condition: Condition | None = None

    @property
    def trivial(self) -> bool:
        return self.kind is not Kind.Nontrivial


_NONTRIVIAL = TrivialityVerdict(Kind.Nontrivial)


def _match_rows(i, j, s, t, k, even_k, char2):
    either = even_k or char2
    if j == i and t == s:
        return TrivialityVerdict(Kind.JEqualsI, Condition.Always)
    if j == i and t == k - s and either:
        return TrivialityVerdict(Kind.JEqualsI, Condition.EvenKOrChar2)
    if s == k - i and t == j and either and 2 * j != k:
        return TrivialityVerdict(Kind.SEqualsKMinusI, Condition.EvenKOrChar2AndJNotHalfK)
    if s == k - i and t == k - j and 2 * i != k:
        return TrivialityVerdict(Kind.SEqualsKMinusI, Condition.INotHalfK)
    return None


def triviality(q: Quad, even_k: bool | None = None, char2: bool = False) -> TrivialityVerdict:
    """Classify q against the table of trivial overlaps.

    Rows are matched with the two sides in either order.  A row whose
    side condition fails does not make q trivial.
    """
    if even_k is None:
        even_k = q.k % 2 == 0
    i, j, s, t, k = q
    v = _match_rows(i, j, s, t, k, even_k, char2) or _match_rows(s, t, i, j, k, even_k, char2)
    if v is not None:
        return v
    if i == s:
        return TrivialityVerdict(Kind.IEqualsS, Condition.Always)
    return _NONTRIVIAL


def in_index_set(q: Quad) -> bool:
    """Membership in the nontrivial index set: i!=s, s!=t, j!=i, j!=t, s!=k-i."""
    i, j, s, t, k = q
    return i != s and s != t and j != i and j != t and s != k - i


# --- group action -----------------------------------------------------------

def _d4() -> tuple[tuple[int, int, int, int], ...]:
    # positions 0..3 hold i, j, s, t; the sides of the relation are {i,t} and {j,s}
    blocks = {frozenset((0, 3)), frozenset((1, 2))}
    perms = []
    for p in itertools.permutations(range(4)):
        if {frozenset((p[0], p[3])), frozenset((p[1], p[2]))} == blocks:
            perms.append(p)
    return tuple(perms)


D4 = _d4()


@lru_cache(maxsize=None)
def flip_sets(odd: bool) -> tuple[tuple[bool, bool, bool, bool], ...]:
    """Sign-flip patterns: all 16 for even k, the even-weight 8 for odd k."""
    out = []
    for bits in itertools.product((False, True), repeat=4):
        if not odd or sum(bits) % 2 == 0:
            out.append(bits)
    return tuple(out)


def group_elements(k: int):
    """(perm, flips) pairs; the image of u is u' with u'[n] = flipped(u)[perm[n]]."""
    return [(p, f) for f in flip_sets(k % 2 == 1) for p in D4]


def act(q: Quad, perm, flips) -> Quad:
    k = q.k
    u = [k - v if f else v for v, f in zip(q.entries, flips)]
    return Quad(u[perm[0]], u[perm[1]], u[perm[2]], u[perm[3]], k)


def _orbit_raw(q: Quad) -> frozenset:
    return frozenset(act(q, p, f) for p, f in group_elements(q.k))


def _require_nontrivial(q: Quad) -> None:
    v = triviality(q)
    if v.trivial:
        raise TrivialInput(f"{q} is trivial ({v.kind.value})")


def orbit(q: Quad) -> frozenset:
    """Orbit of q under the sign-flip and D4 group for the parity of k."""
    _require_nontrivial(q)
    return _orbit_raw(q)


@lru_cache(maxsize=1 << 16)
def _canonical(q: Quad) -> Quad:
    return min(_orbit_raw(q))


def canonicalize(q: Quad) -> Quad:
    """Lexicographically least member of the orbit of q."""
    _require_nontrivial(q)
    return _canonical(Quad(*q))


def is_reduced(q: Quad) -> bool:
    i, j, s, t, k = q
    big = sum(2 * v > k for v in q.entries)
    return i < j <= s and 2 * j <= k and big <= 1


def is_normalized(q: Quad) -> bool:
    i, j, s, t, k = q
    return 0 < i < j <= s < t and 2 * t <= k


def reduce_form(q: Quad) -> Quad:
    """Lex-least reduced member of the orbit of q."""
    _require_nontrivial(q)
    cands = sorted(m for m in _orbit_raw(q) if is_reduced(m))
    if not cands:
        raise NotNormalizable(f"no reduced member in the orbit of {q}")
    return cands[0]


def normalize(q: Quad) -> Quad:
    """The lex-least orbit member with 0 < i < j <= s < t <= k/2 (k even)."""
    if q.k % 2:
        raise OddK(f"normalized form needs even k, got {q.k}")
    _require_nontrivial(q)
    cands = sorted(m for m in _orbit_raw(q) if is_normalized(m))
    if not cands:
        raise NotNormalizable(f"no normalized member in the orbit of {q}")
    return cands[0]


# --- contexts ---------------------------------------------------------------

class ComplexContext:
    """phi = exp(2 pi i / k) in the cyclotomic field."""

    even_k: bool
    char2 = False

    def __init__(self, k: int):
        if k < 3:
            raise InvalidInput(f"k must be >= 3, got {k}")
        self.k = k
        self.even_k = k % 2 == 0

    def __repr__(self) -> str:
        return f"ComplexContext({self.k})"

    @cached_property
    def _inv_den(self) -> list:
        k = self.k
        return [None] + [
            (cyc.CycNum.phi_power(k, i) - cyc.CycNum.one(k)).inverse() for i in range(1, k)
        ]

    def c(self, i: int, j: int) -> cyc.CycNum:
        k = self.k
        return (cyc.CycNum.phi_power(k, j) - cyc.CycNum.one(k)) * self._inv_den[i]

    def key(self, i: int, j: int):
        v = self.c(i, j)
        best = v.num
        for _ in range(self.k - 1):
            v = v.times_phi()
            if v.num < best:
                best = v.num
        return (v.den, best)

    def vanishes(self, q: Quad, w: int) -> bool:
        return cyc.reduce_sparse(overlap_terms(q, w), self.k).is_zero()


class FieldContext:
    """phi a fixed element of order k in a finite field."""

    def __init__(self, field: Field, k: int, generator: FieldElem | None = None, *, check_circular: bool = True):
        if k < 3:
            raise InvalidInput(f"k must be >= 3, got {k}")
        if (field.order - 1) % k:
            raise KNotDividingQMinus1(f"{k} does not divide {field.order} - 1")
        self.field = field
        self.k = k
        self.group = subgroup(field, k, generator)
        self.generator = self.group.generator
        self.even_k = k % 2 == 0
        self.char2 = field.p == 2
        if check_circular:
            from .designs import circularity_check

            if not circularity_check(field, k):
                raise NotCircular(f"({field.order}, {k}) is not circular")

    def __repr__(self) -> str:
        return f"FieldContext({self.field}, k={self.k}, generator={self.generator})"

    @cached_property
    def _powers(self) -> tuple:
        return self.group.elements

    @cached_property
    def _inv_den(self) -> list:
        one = self.field.one
        return [None] + [(self._powers[i] - one).inverse() for i in range(1, self.k)]

    def c(self, i: int, j: int) -> FieldElem:
        return (self._powers[j] - self.field.one) * self._inv_den[i]

    def key(self, i: int, j: int):
        v = self.c(i, j)
        return min((v * g).coeffs for g in self._powers)

    def vanishes(self, q: Quad, w: int) -> bool:
        P, one = self._powers, self.field.one
        i, j, s, t, k = q
        lhs = P[w % k] * (P[j] - one) * (P[s] - one)
        return lhs == (P[i] - one) * (P[t] - one)


Context = "ComplexContext | FieldContext"


def coset_key(ctx, i: int, j: int):
    """Canonical representative of the coset Phi * c_{i,j}; equal keys iff equal cosets."""
    if not (1 <= i < ctx.k and 1 <= j < ctx.k):
        raise InvalidInput(f"indices must lie in 1..{ctx.k - 1}")
    return ctx.key(i, j)


def witnesses(ctx, q: Quad) -> tuple[int, ...]:
    return tuple(w for w in range(ctx.k) if ctx.vanishes(q, w))


def class_is_nontrivial(q: Quad, even_k: bool, char2: bool) -> bool:
    """True when every orbit member lies in the index set and is not a table row."""
    for m in _orbit_raw(q):
        if not in_index_set(m) or triviality(m, even_k, char2).trivial:
            return False
    return True


# --- overlap classes --------------------------------------------------------

FAMILIES = ("O1", "O30", "O42", "O60", "Exceptional", "Unclassified")


@dataclass(frozen=True)
class OverlapClass:
    canonical: Quad
    witnesses: tuple[int, ...]
    families: tuple[str, ...] = ("Unclassified",)
    generators: tuple[tuple[int, ...], ...] = ()

    @property
    def family(self) -> str:
        return "+".join(self.families)

    def to_dict(self) -> dict:
        d = self.canonical.to_dict()
        d["witnesses"] = list(self.witnesses)
        d["family"] = self.family
        if self.generators:
            d["generators"] = [list(g) for g in self.generators]
        return d


def _nontrivial_classes(ctx, pairs_by_key: dict) -> dict:
    """canonical quad -> a representative member found in the buckets."""
    done: set[Quad] = set()  # every member of every class already decided
    reps: dict[Quad, Quad] = {}
    k, even_k, char2 = ctx.k, ctx.even_k, ctx.char2
    for members in pairs_by_key.values():
        if len(members) < 2:
            continue
        for (i, j), (s, t) in itertools.permutations(members, 2):
            q = Quad(i, j, s, t, k)
            # a member outside the index set already makes the class trivial
            if q in done or not in_index_set(q) or triviality(q, even_k, char2).trivial:
                continue
            orb = _orbit_raw(q)
            done |= orb
            if class_is_nontrivial(q, even_k, char2):
                reps[min(orb)] = q
    return reps


def bucket_pairs(ctx) -> dict:
    k = ctx.k
    buckets: dict = defaultdict(list)
    for i in range(1, k):
        for j in range(1, k):
            buckets[ctx.key(i, j)].append((i, j))
    return buckets


def _family_tags(ctx, canonicals: Iterable[Quad]) -> dict:
    from .classification import predicted_families

    k = ctx.k
    predicted = predicted_families(k) if k % 2 == 0 else {}
    if isinstance(ctx, ComplexContext):
        complex_set = None
    else:
        complex_set = {c.canonical for c in enumerate_overlaps(ComplexContext(k))}
    out = {}
    for can in canonicals:
        if complex_set is not None and can not in complex_set:
            out[can] = ("Exceptional",)
        else:
            out[can] = predicted.get(can, ("Unclassified",))
    return out


def enumerate_overlaps(ctx) -> list[OverlapClass]:
    """All nontrivial overlap classes of the context, sorted by canonical quad."""
    if isinstance(ctx, ComplexContext):
        return list(_complex_overlaps(ctx.k))
    return _enumerate(ctx)


@lru_cache(maxsize=None)
def _complex_overlaps(k: int) -> tuple:
    return tuple(_enumerate(ComplexContext(k)))


def _enumerate(ctx) -> list[OverlapClass]:
    reps = _nontrivial_classes(ctx, bucket_pairs(ctx))
    tags = _family_tags(ctx, reps)
    out = []
    for can in sorted(reps):
        ws = witnesses(ctx, can)
        assert ws, f"bucketed quad {can} has no witness"
        out.append(OverlapClass(can, ws, tags[can]))
    return out


def enumerate_overlaps_all_generators(field: Field, k: int) -> list[OverlapClass]:
    """Union over every generator of the order-k subgroup.

    Witness sets are united across generators; ``generators`` lists the
    coefficient vectors of the generators realizing each class.
    """
    gens = element_of_order(field, k, all=True)
    merged: dict[Quad, tuple[set, list, tuple]] = {}
    first = True
    for g in gens:
        ctx = FieldContext(field, k, g, check_circular=first)
        first = False
        for oc in enumerate_overlaps(ctx):
            ws, gl, fam = merged.setdefault(oc.canonical, (set(), [], oc.families))
            ws.update(oc.witnesses)
            gl.append(g.coeffs)
    return [
        OverlapClass(can, tuple(sorted(ws)), fam, tuple(gl))
        for can, (ws, gl, fam) in sorted(merged.items())
    ]


# --- independent oracle -----------------------------------------------------

def _vanishing_rows_complex(k: int, quads: np.ndarray, w: int) -> np.ndarray:
    """Boolean mask of rows whose f_{.,w} vanishes at phi, via the group ring."""
    i, j, s, t = quads.T
    exps = np.stack([w + j + s, w + j, w + s, np.full_like(i, w), i + t, i, t, np.zeros_like(i)], axis=1) % k
    signs = np.array([1, -1, -1, 1, -1, 1, 1, -1], dtype=np.int64)
    base = np.zeros((len(quads), k), dtype=np.int64)
    rows = np.repeat(np.arange(len(quads)), 8)
    np.add.at(base, (rows, exps.ravel()), np.tile(signs, len(quads)))
    R = np.array(cyc._residues(k), dtype=np.int64)
    return ~(base.dot(R)).any(axis=1)


def direct_scan_overlaps(ctx) -> dict[Quad, tuple[int, ...]]:
    """Scan every quadruple and every w; returns canonical class -> witnesses.

    Shares no code with the bucketing path beyond the group action.
    """
    k = ctx.k
    found: dict[Quad, set] = defaultdict(set)
    if isinstance(ctx, ComplexContext):
        r = np.arange(1, k)
        grid = np.array(np.meshgrid(r, r, r, r, indexing="ij")).reshape(4, -1).T
        grid = grid[grid[:, 0] != grid[:, 2]]
        for w in range(k):
            for row in grid[_vanishing_rows_complex(k, grid, w)]:
                found[Quad(*map(int, row), k)].add(w)
    else:
        for i, j, s, t in itertools.product(range(1, k), repeat=4):
            if i == s:
                continue
            q = Quad(i, j, s, t, k)
            for w in range(k):
                if ctx.vanishes(q, w):
                    found[q].add(w)
    classes: dict[Quad, tuple[int, ...]] = {}
    for q in found:
        can = _canonical(q)
        if can in classes:
            continue
        if class_is_nontrivial(can, ctx.even_k, ctx.char2):
            classes[can] = tuple(sorted(found.get(can, ())))
    return dict(sorted(classes.items()))
