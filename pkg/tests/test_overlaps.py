import pytest

from nearring.arith import prime_factors
from nearring.designs import circularity_check
from nearring.errors import InvalidInput, KNotDividingQMinus1, NotCircular, NotNormalizable, OddK, TrivialInput
from nearring.fields import build_field
from nearring.overlaps import (
    ComplexContext,
    Condition,
    FieldContext,
    Kind,
    Quad,
    canonicalize,
    coset_key,
    direct_scan_overlaps,
    enumerate_overlaps,
    in_index_set,
    is_normalized,
    is_reduced,
    normalize,
    omega_of,
    orbit,
    overlap_poly,
    reduce_form,
    triviality,
    witnesses,
)


def Q(i, j, s, t, k):
    return Quad.of(i, j, s, t, k)


def bfs_orbit(q):
    """Oracle: closure of q under the generating flips and transpositions."""
    k = q.k

    def flip(u, positions):
        return tuple(k - v if n in positions else v for n, v in enumerate(u))

    if k % 2 == 0:
        flips = [{0}, {1}, {2}, {3}]
    else:
        flips = [{0, 3}, {1, 3}, {2, 3}]
    perms = [(3, 1, 2, 0), (0, 2, 1, 3), (1, 0, 3, 2)]  # (i,t), (j,s), (i,j)(s,t)
    seen = {q.entries}
    todo = [q.entries]
    while todo:
        u = todo.pop()
        nxt = [flip(u, f) for f in flips] + [tuple(u[p] for p in perm) for perm in perms]
        for v in nxt:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return {Quad(*u, k) for u in seen}


def test_quad_validation():
    with pytest.raises(InvalidInput):
        Quad.of(0, 1, 2, 3, 12)
    with pytest.raises(InvalidInput):
        Quad.of(1, 2, 3, 12, 12)


def test_overlap_poly_examples():
    assert overlap_poly(Q(1, 2, 2, 5, 12), 1) == (-1, 2, 0, -2, 0, 2, -1)
    for q in (Q(1, 1, 2, 2, 6), Q(3, 5, 5, 9, 30)):
        for w in range(q.k):
            assert sum(overlap_poly(q, w)) == 0  # vanishes at x = 1
    f = overlap_poly(Q(2, 3, 4, 5, 9), 0)
    assert len(f) - 1 <= 2 + 3 + 4


def test_triviality_table():
    assert triviality(Q(1, 1, 2, 2, 6)) == triviality(Q(1, 1, 2, 2, 7))
    v = triviality(Q(1, 1, 2, 2, 6))
    assert v.kind is Kind.JEqualsI and v.condition is Condition.Always
    v = triviality(Q(1, 2, 11, 2, 12), even_k=True)
    assert v.kind is Kind.SEqualsKMinusI and v.trivial
    assert not triviality(Q(1, 2, 2, 5, 12)).trivial
    # row 2 needs even k or characteristic 2
    assert triviality(Q(1, 1, 2, 5, 7), even_k=False).kind is Kind.Nontrivial
    assert triviality(Q(1, 1, 2, 5, 7), even_k=False, char2=True).condition is Condition.EvenKOrChar2
    # row 3 excludes j = k/2; such quads fall under row 4 instead
    assert triviality(Q(1, 6, 11, 6, 12)).condition is Condition.INotHalfK
    assert triviality(Q(1, 5, 11, 5, 12)).condition is Condition.EvenKOrChar2AndJNotHalfK
    # row 4 excludes i = k/2
    assert triviality(Q(2, 3, 10, 9, 12)).condition is Condition.INotHalfK
    assert triviality(Q(6, 3, 6, 9, 12)).kind is Kind.IEqualsS
    # matched with the sides swapped
    assert triviality(Q(2, 2, 1, 1, 6)).kind is Kind.JEqualsI
    assert triviality(Q(11, 2, 1, 2, 12)).kind is Kind.SEqualsKMinusI


def test_orbit_examples_and_oracle():
    o = orbit(Q(1, 2, 2, 5, 12))
    assert Q(1, 2, 2, 7, 12) in o and Q(1, 2, 10, 5, 12) in o
    assert Q(1, 2, 2, 5, 12) in o
    assert len(o) <= 128
    for q in (Q(1, 2, 2, 5, 12), Q(2, 3, 5, 8, 30), Q(1, 2, 4, 3, 7), Q(1, 3, 8, 5, 9)):
        assert orbit(q) == bfs_orbit(q)
    assert len(orbit(Q(1, 2, 4, 3, 7))) <= 64
    with pytest.raises(TrivialInput):
        orbit(Q(1, 1, 2, 2, 12))


def test_canonical_forms():
    assert canonicalize(Q(1, 2, 2, 7, 12)) == Q(1, 2, 2, 5, 12)
    assert canonicalize(Q(3, 2, 6, 3, 12)) == canonicalize(Q(2, 3, 3, 6, 12))
    c = canonicalize(Q(4, 7, 9, 2, 13))
    assert canonicalize(c) == c
    assert reduce_form(Q(1, 2, 2, 5, 12)) == Q(1, 2, 2, 5, 12)
    assert reduce_form(Q(5, 2, 2, 1, 12)) == Q(1, 2, 2, 5, 12)
    assert is_reduced(Q(1, 2, 2, 7, 12)) and is_reduced(Q(1, 2, 10, 5, 12))
    r = reduce_form(Q(8, 9, 3, 11, 17))
    assert r.i < r.j <= r.s


def test_normalize():
    assert normalize(Q(3, 2, 6, 3, 12)) == Q(2, 3, 3, 6, 12)
    n = normalize(Q(1, 2, 3, 4, 12))
    assert n == Q(1, 2, 3, 4, 12) and is_normalized(n)
    assert n not in {c.canonical for c in enumerate_overlaps(ComplexContext(12))}
    with pytest.raises(NotNormalizable):
        normalize(Q(2, 4, 5, 3, 12))
    with pytest.raises(OddK):
        normalize(Q(1, 2, 3, 4, 13))


def test_omega_of():
    assert omega_of(Q(1, 2, 2, 5, 12)) == 1
    assert omega_of(Q(3, 5, 5, 9, 30)) == 1
    assert omega_of(Q(3, 4, 16, 27, 60)) == 5
    assert omega_of(Q(1, 2, 2, 4, 12)).denominator == 2


def test_coset_keys():
    c = ComplexContext(12)
    assert len({coset_key(c, i, i) for i in range(1, 12)}) == 1
    assert coset_key(c, 1, 2) == coset_key(c, 2, 5)
    assert coset_key(c, 1, 2) != coset_key(c, 1, 3)
    f = FieldContext(build_field(13), 4)
    assert int(f.generator) == 5 and int(f.c(1, 2)) == 6
    assert coset_key(f, 1, 2) == min((6 * 5**w % 13,) for w in range(4))


def test_enumerate_complex_examples():
    assert enumerate_overlaps(ComplexContext(6)) == []
    got = enumerate_overlaps(ComplexContext(12))
    assert [c.canonical for c in got] == [canonicalize(Q(1, 2, 2, 5, 12)), canonicalize(Q(2, 3, 3, 6, 12))]
    assert all(c.family == "O1" for c in got)
    d = got[0].to_dict()
    assert d == {"i": 1, "j": 2, "s": 2, "t": 5, "k": 12, "witnesses": [1], "family": "O1"}


def test_enumerate_field_example():
    f = build_field(13, 2, (1, 3, 1))
    ctx = FieldContext(f, 7, f.x)
    classes = {c.canonical: c for c in enumerate_overlaps(ctx)}
    can = canonicalize(Q(1, 2, 2, 6, 7))
    assert can in classes and classes[can].family == "Exceptional"
    assert 5 in witnesses(ctx, Q(1, 2, 2, 6, 7))


def test_field_context_errors():
    with pytest.raises(KNotDividingQMinus1):
        FieldContext(build_field(13), 5)
    with pytest.raises(NotCircular):
        FieldContext(build_field(11), 5)


@pytest.mark.parametrize("k", [12, 18, 24, 30, 36, 42, 60])
def test_complex_class_invariants(k):
    ctx = ComplexContext(k)
    for oc in enumerate_overlaps(ctx):
        assert oc.witnesses
        for m in orbit(oc.canonical):
            assert in_index_set(m) and not triviality(m).trivial
            assert witnesses(ctx, m)
        n = normalize(oc.canonical)
        i, j, s, t, _ = n
        assert 0 < i < j <= s < t <= k // 2
        assert j - i < t - s and j + s < i + t < k
        assert (i < j) == (s < t) and (i < s) == (j < t)
        w = omega_of(n)
        assert w.denominator == 1 and int(w) in witnesses(ctx, n)


def test_odd_k_complex_empty():
    for k in range(3, 22, 2):
        assert enumerate_overlaps(ComplexContext(k)) == []


@pytest.mark.parametrize("k", [6, 10, 12, 14])
def test_bucketing_matches_direct_scan(k):
    ctx = ComplexContext(k)
    direct = direct_scan_overlaps(ctx)
    bucket = {c.canonical: c.witnesses for c in enumerate_overlaps(ctx)}
    assert direct == bucket


def test_bucketing_matches_direct_scan_field():
    f = build_field(13, 2, (1, 3, 1))
    ctx = FieldContext(f, 7, f.x)
    assert direct_scan_overlaps(ctx) == {c.canonical: c.witnesses for c in enumerate_overlaps(ctx)}


def _circular_fields(k, count):
    out = []
    q = k + 1
    while len(out) < count:
        ps = prime_factors(q)
        if len(ps) == 1:
            p = ps[0]
            m = 1
            while p ** m < q:
                m += 1
            f = build_field(p, m, max_degree=None)
            if circularity_check(f, k):
                out.append(f)
        q += k
    return out


@pytest.mark.parametrize("k", range(3, 13))
def test_complex_overlaps_contained_in_field_overlaps(k):
    complex_set = {c.canonical for c in enumerate_overlaps(ComplexContext(k))}
    for f in _circular_fields(k, 3):
        found = {c.canonical for c in enumerate_overlaps(FieldContext(f, k))}
        assert complex_set <= found, (k, f)
