"""The four families of complex overlaps, triple overlaps, and a verification harness."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidInput, OddK
from .overlaps import (
    ComplexContext,
    OverlapClass,
    Quad,
    _canonical,
    bucket_pairs,
    enumerate_overlaps,
    in_index_set,
    triviality,
    witnesses,
)

# Normalized generators of the sporadic families, in units of l = k/N.
O30 = ((1, 3, 3, 11), (3, 5, 5, 9), (7, 9, 9, 13), (1, 2, 4, 9), (2, 3, 5, 8),
       (8, 9, 11, 14), (2, 3, 7, 14), (3, 4, 8, 13), (4, 5, 9, 14))
O42 = ((2, 3, 9, 16), (3, 4, 10, 15), (8, 9, 15, 20))
O60 = ((3, 4, 16, 27), (5, 6, 18, 25), (8, 9, 21, 28))
SPORADIC = {"O30": (30, O30), "O42": (42, O42), "O60": (60, O60)}

# Normalized triple overlaps, in units of l = k/30.
TRIPLES = {
    "T1": ((3, 5), (5, 9), (6, 12)),
    "T2": ((1, 2), (4, 9), (5, 14)),
    "T3": ((2, 3), (5, 8), (7, 14)),
    "T4": ((2, 5), (3, 8), (4, 13)),
    "T5": ((4, 5), (8, 11), (9, 14)),
}


def family_generators(k: int) -> dict[str, list[Quad]]:
    """Uncanonicalized generator quadruples of each family present at k."""
    if k % 2:
        raise OddK(f"the families are defined for even k, got {k}")
    if k < 4:
        raise InvalidInput(f"k must be >= 4, got {k}")
    out: dict[str, list[Quad]] = {}
    if k % 6 == 0:
        l = k // 6
        out["O1"] = [Quad(u, l, 2 * u, 3 * l - u, k) for u in range(1, k // 4 + 1) if u != l]
    for name, (n, gens) in SPORADIC.items():
        if k % n == 0:
            m = k // n
            out[name] = [Quad(i * m, j * m, s * m, t * m, k) for i, j, s, t in gens]
    return out


@lru_cache(maxsize=None)
def predicted_families(k: int) -> dict[Quad, tuple[str, ...]]:
    tags: dict[Quad, list[str]] = defaultdict(list)
    for name, quads in family_generators(k).items():
        for q in quads:
            can = _canonical(q)
            if name not in tags[can]:
                tags[can].append(name)
    return {q: tuple(v) for q, v in sorted(tags.items())}


@dataclass(frozen=True)
class PredictedSet:
    k: int
    classes: tuple[OverlapClass, ...]

    @property
    def canonicals(self) -> frozenset:
        return frozenset(c.canonical for c in self.classes)

    def to_dict(self) -> dict:
        return {"k": self.k, "classes": [c.to_dict() for c in self.classes]}


def predicted_set(k: int) -> PredictedSet:
    """Union of the families O1, O30, O42, O60 at k, deduplicated by canonical form."""
    ctx = ComplexContext(k)
    classes = tuple(
        OverlapClass(can, witnesses(ctx, can), fams) for can, fams in predicted_families(k).items()
    )
    return PredictedSet(k, classes)


@dataclass
class VerificationReport:
    k: int
    predicted: list[Quad]
    found: list[Quad]
    missing: list[Quad] = field(default_factory=list)
    extra: list[Quad] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if not self.missing and not self.extra else "fail"

    def to_dict(self) -> dict:
        def enc(qs):
            return [[q.i, q.j, q.s, q.t] for q in qs]

        return {
            "k": self.k,
            "verdict": self.verdict,
            "predicted": enc(self.predicted),
            "found": enc(self.found),
            "missing": enc(self.missing),
            "extra": enc(self.extra),
        }


def verify_classification(k: int) -> VerificationReport:
    """Compare brute-force complex overlaps with the predicted families (empty for odd k)."""
    if k < 3:
        raise InvalidInput(f"k must be >= 3, got {k}")
    found = {c.canonical for c in enumerate_overlaps(ComplexContext(k))}
    predicted = set(predicted_families(k)) if k % 2 == 0 and k >= 4 else set()
    return VerificationReport(
        k,
        sorted(predicted),
        sorted(found),
        sorted(predicted - found),
        sorted(found - predicted),
    )


# --- triples and beyond -----------------------------------------------------

Pair = tuple[int, int]


@dataclass(frozen=True)
class TripleOverlap:
    q1: Pair
    q2: Pair
    q3: Pair
    label: str | None = None

    @property
    def pairs(self) -> tuple[Pair, Pair, Pair]:
        return (self.q1, self.q2, self.q3)

    def __str__(self) -> str:
        body = " | ".join(f"{a},{b}" for a, b in self.pairs)
        return f"({body})" + (f" {self.label}" if self.label else "")

    def to_dict(self) -> dict:
        return {"q1": list(self.q1), "q2": list(self.q2), "q3": list(self.q3), "label": self.label}


class OverlapRelation:
    """Symmetric relation on pairs (s,t): (s,t|s',t') is a nontrivial overlap.

    For even k every entry may be replaced by k minus itself without
    leaving the relation, so pairs are folded into 1..k/2.
    """

    def __init__(self, ctx, classes: list[OverlapClass] | None = None):
        self.ctx = ctx
        self.k = ctx.k
        if classes is None:
            classes = enumerate_overlaps(ctx)
        self.canonicals = frozenset(c.canonical for c in classes)
        self.adj: dict[Pair, set[Pair]] = defaultdict(set)
        k = self.k
        for members in bucket_pairs(ctx).values():
            for (a, b), (c, d) in itertools.permutations(members, 2):
                q = Quad(a, b, c, d, k)
                if not in_index_set(q) or triviality(q, ctx.even_k, ctx.char2).trivial:
                    continue
                if _canonical(q) in self.canonicals:
                    u, v = self.fold((a, b)), self.fold((c, d))
                    if u != v:
                        self.adj[u].add(v)

    def fold(self, p: Pair) -> Pair:
        if self.k % 2:
            return p
        k = self.k
        return (min(p[0], k - p[0]), min(p[1], k - p[1]))

    def related(self, u: Pair, v: Pair) -> bool:
        return self.fold(v) in self.adj.get(self.fold(u), ())

    @property
    def nodes(self) -> list[Pair]:
        return sorted(self.adj)


def _normalize_triple(pairs) -> tuple[Pair, Pair, Pair]:
    """Least arrangement with s1 < s2 < s3 and s1 < t1 under reordering and swapping."""
    best = None
    for swap in (False, True):
        ps = [(b, a) if swap else (a, b) for a, b in pairs]
        for perm in itertools.permutations(ps):
            (s1, t1), (s2, t2), (s3, t3) = perm
            if s1 < s2 < s3 and s1 < t1:
                if best is None or perm < best:
                    best = perm
    if best is None:
        # repeated first components; fall back to the sorted arrangement
        best = tuple(sorted(min(pairs, tuple((b, a) for a, b in pairs))))
    return tuple(best)


def _label(triple, k: int) -> str | None:
    if k % 30:
        return None
    l = k // 30
    for name, ps in TRIPLES.items():
        if tuple((a * l, b * l) for a, b in ps) == triple:
            return name
    return None


def _chain_search(rel: OverlapRelation, normalized: list[Quad]) -> set:
    """Extend normalized overlaps (s1,t1|s2,t2) by normalized (s2,v|s,t)."""
    by_first: dict[int, list[Quad]] = defaultdict(list)
    for q in normalized:
        by_first[q.i].append(q)
    out = set()
    for q in normalized:
        s1, t1, s2, t2 = q.entries
        for r in by_first.get(s2, ()):
            _, v, s, t = r.entries
            if t2 == v:
                cand = ((s1, t1), (s2, t2), (s, t))
            elif t2 == s:
                cand = ((s1, t1), (s2, t2), (v, t))
            else:
                continue
            if rel.related(cand[0], cand[2]) and rel.related(cand[0], cand[1]) and rel.related(cand[1], cand[2]):
                out.add(tuple(rel.fold(p) for p in cand))
    return out


def _cliques(rel: OverlapRelation, size: int) -> set:
    out = set()
    adj = rel.adj

    def grow(clique, cands):
        if len(clique) == size:
            out.add(tuple(clique))
            return
        for v in sorted(cands):
            if v > clique[-1]:
                grow(clique + [v], cands & adj[v])

    for u in rel.nodes:
        grow([u], {v for v in adj[u] if v > u})
    return out


def find_triples(ctx, classes: list[OverlapClass] | None = None) -> list[TripleOverlap]:
    """All normalized triple overlaps.

    The search from normalized overlaps misses some triples, so a full
    3-clique pass over the relation follows and the two are merged.
    """
    rel = OverlapRelation(ctx, classes)
    normalized = []
    k = ctx.k
    for (a, b) in rel.nodes:
        for (c, d) in rel.adj[(a, b)]:
            q = Quad(a, b, c, d, k)
            if 0 < a < b <= c < d and (k % 2 or 2 * d <= k):
                normalized.append(q)
    found = _chain_search(rel, normalized) | _cliques(rel, 3)
    triples = {_normalize_triple(t) for t in found}
    return [TripleOverlap(*t, label=_label(t, k)) for t in sorted(triples)]


def find_quadruple_overlaps(ctx, classes: list[OverlapClass] | None = None) -> list[tuple[Pair, ...]]:
    """All sets of four pairwise-overlapping pairs."""
    rel = OverlapRelation(ctx, classes)
    return sorted(_cliques(rel, 4))
