import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearring import cyclotomic as cyc
from nearring.arith import divisors, totient
from nearring.cyclotomic import CycNum, conjugate, cyclotomic_poly, norm, reduce, resultant
from nearring.errors import NotCoprime, ZeroPolynomial
from nearring.overlaps import Quad, overlap_poly


def sylvester_resultant(f, g):
    """Oracle: determinant of the Sylvester matrix with exact fractions."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for r in range(n):
        row = [0] * size
        for i, c in enumerate(reversed(f)):
            row[r + i] = c
        rows.append(row)
    for r in range(m):
        row = [0] * size
        for i, c in enumerate(reversed(g)):
            row[r + i] = c
        rows.append(row)
    a = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, size):
            factor = a[r][col] / a[col][col]
            for c in range(col, size):
                a[r][c] -= factor * a[col][c]
    return int(det)


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_degree_and_product():
    for k in range(1, 201):
        assert len(cyclotomic_poly(k)) - 1 == totient(k)
    for k in (12, 30, 60, 97, 120):
        prod = (1,)
        for d in divisors(k):
            prod = cyc.poly_mul(prod, cyclotomic_poly(d))
        assert prod == cyc.poly_sub(cyc.monomial(k), (1,))


def test_reduce_examples():
    assert reduce((1, 0, 0, 0, 0, 0, 1), 12).is_zero()
    assert reduce((0, 0, 1), 6).num == (-1, 1)
    assert reduce(overlap_poly(Quad(1, 2, 2, 5, 12), 1), 12).is_zero()


def test_conjugate_examples():
    x = reduce((0, 1), 12)
    assert conjugate(x, 5).num == (0, -1, 0, 1)  # x^3 - x
    assert conjugate(x, 1) == x
    assert conjugate(conjugate(x, 11), 11) == x
    with pytest.raises(NotCoprime):
        conjugate(x, 4)


def test_norm_examples():
    assert norm(reduce((-1, 1), 5)) == 5
    assert norm(CycNum.zero(7)) == 0
    n = norm(reduce(overlap_poly(Quad(1, 2, 2, 6, 7), 5), 7))
    assert n != 0 and n % 13 == 0


def test_resultant_examples():
    assert resultant((-2, 1), (-3, 1)) == -1
    assert resultant(cyclotomic_poly(6), (-2, 1)) == 3
    with pytest.raises(ZeroPolynomial):
        resultant((), (1, 1))


def test_resultant_against_sylvester():
    rng = random.Random(11)
    for _ in range(150):
        f = cyc.poly(rng.randint(-4, 4) for _ in range(rng.randint(1, 7)))
        g = cyc.poly(rng.randint(-4, 4) for _ in range(rng.randint(1, 7)))
        if not f or not g:
            continue
        if len(f) == 1 or len(g) == 1:
            continue
        assert resultant(f, g) == sylvester_resultant(f, g), (f, g)


@pytest.mark.parametrize("k", [5, 7, 12])
def test_norm_equals_resultant(k):
    rng = random.Random(k)
    phi = cyclotomic_poly(k)
    count = 0
    while count < 200:
        f = cyc.poly(rng.randint(-3, 3) for _ in range(rng.randint(1, 2 * k)))
        if not f:
            continue
        assert norm(reduce(f, k)) == resultant(phi, f)
        count += 1


def _cyc(k):
    e = totient(k)
    return st.lists(st.integers(-5, 5), min_size=e, max_size=e).map(lambda v: CycNum(k, tuple(v)))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_norm_multiplicative_and_conjugation_homomorphism(data):
    k = data.draw(st.sampled_from([5, 7, 8, 12]))
    a, b = data.draw(_cyc(k)), data.draw(_cyc(k))
    assert norm(a * b) == norm(a) * norm(b)
    d = data.draw(st.sampled_from([u for u in range(1, k) if np.gcd(u, k) == 1]))
    assert conjugate(a + b, d) == conjugate(a, d) + conjugate(b, d)
    assert conjugate(a * b, d) == conjugate(a, d) * conjugate(b, d)


def test_inverse_and_denominators():
    rng = random.Random(3)
    for k in (5, 12, 30):
        for _ in range(10):
            a = CycNum.make(k, [rng.randint(-3, 3) for _ in range(totient(k))], rng.randint(1, 5))
            if a.is_zero():
                continue
            assert a * a.inverse() == CycNum.one(k)
            assert a / a == CycNum.one(k)
    half = CycNum.make(6, [1, 0], 2)
    assert half.den == 2 and norm(half) == Fraction(1, 4)
    assert CycNum.make(6, [2, 4], 6) == CycNum(6, (1, 2), 3)


def test_serialization_round_trip():
    a = CycNum.make(12, [1, -2, 3, 0], 7)
    assert CycNum.from_dict(a.to_dict()) == a
    assert a.to_dict() == {"k": 12, "num": [1, -2, 3, 0], "den": 7}


def test_times_phi_and_powers():
    k = 9
    v = CycNum.one(k)
    for w in range(2 * k):
        assert v == CycNum.phi_power(k, w)
        v = v.times_phi()
    assert CycNum.phi_power(k, 4) ** 3 == CycNum.phi_power(k, 3)
    assert CycNum.phi_power(k, 2) ** -1 == CycNum.phi_power(k, 7)


def test_norm_batch_matches_scalar_norms():
    rng = np.random.default_rng(5)
    for k in (7, 12, 15):
        exps = rng.integers(0, 3 * k, size=(60, 5))
        signs = rng.integers(-2, 3, size=(60, 5))
        batch = cyc.norm_batch(k, exps, signs)
        for row, n in zip(zip(exps, signs), batch):
            terms = [(int(e), int(c)) for e, c in zip(*row)]
            assert n == norm(cyc.reduce_sparse(terms, k))


def test_norm_batch_object_fallback():
    # a large coefficient bound forces Python integers
    k = 23
    exps = np.array([[0, 1, 5, 9]])
    signs = np.array([[40, -30, 20, 7]])
    terms = list(zip(exps[0].tolist(), signs[0].tolist()))
    assert cyc.norm_batch(k, exps, signs) == [norm(cyc.reduce_sparse(terms, k))]
