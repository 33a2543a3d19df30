import itertools

import pytest

from nearring.classification import (
    TRIPLES,
    OverlapRelation,
    find_quadruple_overlaps,
    find_triples,
    predicted_set,
    verify_classification,
)
from nearring.errors import OddK
from nearring.overlaps import ComplexContext, Quad, canonicalize, enumerate_overlaps, witnesses


def test_predicted_set_examples():
    assert predicted_set(6).classes == ()
    got = predicted_set(12).canonicals
    assert got == {canonicalize(Quad(1, 2, 2, 5, 12)), canonicalize(Quad(2, 3, 3, 6, 12))}
    with pytest.raises(OddK):
        predicted_set(9)


def test_predicted_set_k30_counts():
    ps = predicted_set(30)
    fams = [c.families for c in ps.classes]
    assert sum("O1" in f for f in fams) == 6
    assert sum("O30" in f for f in fams) == 9
    assert len(ps.classes) == 15  # no O1/O30 coincidences at k = 30


def test_predicted_multi_tags_at_60():
    ps = predicted_set(60)
    assert {"O1", "O30", "O60"} <= {t for c in ps.classes for t in c.families}
    assert all(c.family for c in ps.classes)


@pytest.mark.parametrize("k", [6, 12, 18, 24, 30, 36, 42, 48, 54, 60])
def test_predicted_identities_hold(k):
    ctx = ComplexContext(k)
    for c in predicted_set(k).classes:
        assert witnesses(ctx, c.canonical)


@pytest.mark.parametrize("k", [4, 8, 9, 12, 20, 30, 60])
def test_verify_classification(k):
    rep = verify_classification(k)
    assert rep.verdict == "pass"
    if k == 9:
        assert rep.found == [] and rep.predicted == []
    if k == 60:
        fams = {t for c in enumerate_overlaps(ComplexContext(60)) for t in c.families}
        assert {"O1", "O30", "O60"} <= fams
    d = rep.to_dict()
    assert set(d) == {"k", "verdict", "predicted", "found", "missing", "extra"}


def _scaled(l):
    return {name: tuple((a * l, b * l) for a, b in ps) for name, ps in TRIPLES.items()}


@pytest.mark.parametrize("k", [30, 60])
def test_triples_are_the_five(k):
    ctx = ComplexContext(k)
    got = find_triples(ctx)
    assert {t.label: t.pairs for t in got} == _scaled(k // 30)
    rel = OverlapRelation(ctx)
    for t in got:
        (s1, t1), (s2, t2), (s3, t3) = t.pairs
        assert s1 < s2 < s3 and t1 < t2 < t3 and s1 < t1 and s2 < t2 and s3 < t3
        for perm in itertools.permutations(t.pairs):
            for swap in (False, True):
                ps = [(b, a) if swap else (a, b) for a, b in perm]
                assert all(rel.related(u, v) for u, v in itertools.combinations(ps, 2))
    assert find_quadruple_overlaps(ctx) == []


@pytest.mark.parametrize("k", [12, 42])
def test_no_triples_without_30(k):
    assert find_triples(ComplexContext(k)) == []
    assert find_quadruple_overlaps(ComplexContext(k)) == []


def test_non_normalized_triple_is_recovered():
    # appears only in a non-normalized arrangement during direct search
    rel = OverlapRelation(ComplexContext(30))
    ps = [(4, 5), (9, 14), (8, 11)]
    assert all(rel.related(u, v) for u, v in itertools.combinations(ps, 2))


def test_triple_serialization():
    t = find_triples(ComplexContext(30))[0]
    assert t.to_dict() == {"q1": list(t.q1), "q2": list(t.q2), "q3": list(t.q3), "label": t.label}
