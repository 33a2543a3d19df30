"""Circularity primes P_k and exceptional primes Q_k from Galois norms.

P_k: primes dividing k or dividing a nonzero norm of f_{i,j,s,t,0}(phi)
over the index set (i,j) != (s,t), (i,s) != (j,t).
Q_k: primes dividing k or dividing a nonzero norm of f_{i,j,s,t,w}(phi)
over all nontrivial quadruples and all w in 0..k-1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import cyclotomic as cyc
from .arith import factorize, prime_factors, totient, units
from .errors import InvalidInput, WorkLimitExceeded
from .overlaps import D4, Quad, flip_sets, overlap_poly

__all__ = [
    "PrimeSetReport",
    "circularity_primes",
    "exceptional_primes",
    "exceptional_prime_set",
    "factorize",
    "index_set_quads",
    "nontrivial_quads",
]

DEFAULT_MAX_WORK = 10**8
WITNESS_CAP = 3
DIVIDES_K = "divides k"

_SIGNS = np.array([1, -1, -1, 1, -1, 1, 1, -1], dtype=np.int64)


def max_work(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("NEARRING_MAX_WORK")
    return int(float(env)) if env else DEFAULT_MAX_WORK


@dataclass
class PrimeSetReport:
    k: int
    primes: list[int]
    provenance: dict[int, list] = field(default_factory=dict)
    norms_computed: int = 0
    zero_norms: int = 0
    max_abs_norm: int = 0

    def to_dict(self, provenance: bool = False) -> dict:
        d = {"k": self.k, "primes": list(self.primes)}
        if provenance:
            d["provenance"] = {
                str(p): [w if isinstance(w, str) else dict(w) for w in ws]
                for p, ws in sorted(self.provenance.items())
            }
        return d


def index_set_quads(k: int) -> np.ndarray:
    """All (i,j,s,t) in 1..k-1 with (i,j) != (s,t) and (i,s) != (j,t)."""
    r = np.arange(1, k)
    g = np.array(np.meshgrid(r, r, r, r, indexing="ij")).reshape(4, -1).T
    i, j, s, t = g.T
    keep = ~((i == s) & (j == t)) & ~((i == j) & (s == t))
    return g[keep]


def nontrivial_quads(k: int) -> np.ndarray:
    """Quadruples with i!=s, s!=t, j!=i, j!=t, s!=k-i."""
    r = np.arange(1, k)
    g = np.array(np.meshgrid(r, r, r, r, indexing="ij")).reshape(4, -1).T
    i, j, s, t = g.T
    keep = (i != s) & (s != t) & (j != i) & (j != t) & (s != k - i)
    return g[keep]


def orbit_representatives(k: int, quads: np.ndarray) -> np.ndarray:
    """One quadruple per orbit under sign flips, D4 and the Galois scalings d in units(k).

    The multiset of norms over all w is preserved up to sign along such
    orbits, so the representatives carry the same prime divisors.
    """
    if len(quads) == 0:
        return quads
    w = np.array([k**3, k**2, k, 1], dtype=np.int64)
    ds = np.array(units(k), dtype=np.int64)
    flips = np.array(flip_sets(k % 2 == 1), dtype=bool)
    perms = np.array(D4, dtype=np.int64)
    codes = np.sort(quads.astype(np.int64).dot(w))
    visited = np.zeros(k**4, dtype=bool)
    reps = []
    for code in codes:
        if visited[code]:
            continue
        u = np.array([code // k**3, code // k**2 % k, code // k % k, code % k])
        scaled = (ds[:, None] * u) % k
        flipped = np.where(flips[None, :, :], k - scaled[:, None, :], scaled[:, None, :])
        images = flipped[:, :, perms].reshape(-1, 4).dot(w)
        visited[images] = True
        reps.append(images.min())
    out = np.array(reps, dtype=np.int64)
    return np.stack([out // k**3, out // k**2 % k, out // k % k, out % k], axis=1)


def _rows(quads: np.ndarray, omegas) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exponent rows of f_{i,j,s,t,w} for every quad and w; also (quad index, w)."""
    n = len(quads)
    omegas = np.asarray(list(omegas), dtype=np.int64)
    qi = np.repeat(np.arange(n), len(omegas))
    ws = np.tile(omegas, n)
    i, j, s, t = quads[qi].T
    exps = np.stack([ws + j + s, ws + j, ws + s, ws, i + t, i, t, np.zeros_like(i)], axis=1)
    return exps, qi, ws


def _collect(k, quads, omegas, *, threads, work_cap, with_k=True) -> PrimeSetReport:
    e = totient(k)
    nrows = len(quads) * len(omegas)
    work = nrows * e
    if work > work_cap:
        raise WorkLimitExceeded(
            f"{nrows} norms of degree {e} ({work} units) exceed the work guard {work_cap}; "
            "use dedupe or raise the limit"
        )
    exps, qi, ws = _rows(quads, omegas)
    signs = np.broadcast_to(_SIGNS, exps.shape)
    norms = cyc.norm_batch(k, exps, signs, threads=threads)
    prov: dict[int, list] = {}
    if with_k:
        for p in prime_factors(k):
            prov[p] = [DIVIDES_K]
    factor_cache: dict[int, list[int]] = {}
    zeros = 0
    biggest = 0
    for idx, n in enumerate(norms):
        if n == 0:
            zeros += 1
            continue
        a = abs(n)
        biggest = max(biggest, a)
        ps = factor_cache.get(a)
        if ps is None:
            ps = factor_cache[a] = prime_factors(a)
        for p in ps:
            lst = prov.setdefault(p, [])
            if sum(not isinstance(w, str) for w in lst) < WITNESS_CAP:
                q = quads[qi[idx]]
                lst.append({"quad": [int(v) for v in q], "omega": int(ws[idx]), "norm": int(n)})
    return PrimeSetReport(k, sorted(prov), prov, len(norms), zeros, biggest)


def _check_k(k: int) -> None:
    if k < 3:
        raise InvalidInput(f"k must be >= 3, got {k}")


def circularity_primes(
    k: int,
    *,
    check_resultants: bool = False,
    threads: int = 1,
    work_limit: int | None = None,
) -> PrimeSetReport:
    """P_k.  With ``check_resultants`` the norm primes are recomputed from
    Res(Phi_k, f) by an independent code path and compared."""
    _check_k(k)
    quads = index_set_quads(k)
    report = _collect(k, quads, [0], threads=threads, work_cap=max_work(work_limit))
    if check_resultants:
        res_primes = resultant_primes(k, quads)
        norm_primes = {p for p, ws in report.provenance.items() if any(not isinstance(w, str) for w in ws)}
        if res_primes != norm_primes:
            raise ArithmeticError(f"norm and resultant primes disagree for k={k}")
    return report


def resultant_primes(k: int, quads) -> set[int]:
    """Prime divisors of the nonzero Res(Phi_k, f_{i,j,s,t,0})."""
    phi = cyc.cyclotomic_poly(k)
    seen: dict[cyc.PolyZ, int] = {}
    out: set[int] = set()
    for row in quads:
        f = overlap_poly(Quad(*map(int, row), k), 0)
        key = f if f and f[-1] > 0 else cyc.poly_neg(f)
        if key in seen:
            continue
        r = seen[key] = cyc.resultant(phi, f)
        if r:
            out.update(prime_factors(r))
    return out


def exceptional_primes(
    k: int,
    *,
    dedupe: bool = False,
    threads: int = 1,
    work_limit: int | None = None,
) -> PrimeSetReport:
    """Q_k over the nontrivial index set and every w in 0..k-1."""
    _check_k(k)
    quads = nontrivial_quads(k)
    if dedupe:
        quads = orbit_representatives(k, quads)
    return _collect(k, quads, range(k), threads=threads, work_cap=max_work(work_limit))


@lru_cache(maxsize=None)
def exceptional_prime_set(k: int) -> frozenset:
    """Q_k as a set, with orbit deduplication (cached)."""
    return frozenset(exceptional_primes(k, dedupe=True, work_limit=10**12).primes)
