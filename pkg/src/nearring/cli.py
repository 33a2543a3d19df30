"""Command-line frontend.

    nearring qk --k 7 --json
    nearring pk --k 7
    nearring overlaps --k 7 --p 13 --m 2 --modulus 1,3,1
    nearring classify --k 12
    nearring triples --k 30
    nearring design --p 13 --k 4 --r 1 --c 1

Exit status: 0 on success, 1 when ``classify`` finds a mismatch, 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from typing import Sequence

from . import cyclotomic as cyc
from .arith import factorize, format_poly, parse_int_list, totient
from .classification import find_quadruple_overlaps, find_triples, verify_classification
from .designs import decompose, edge_sequence, gamma_pi, to_dot
from .errors import NearringError
from .fields import build_field, element_of_order, subgroup
from .overlaps import (
    ComplexContext,
    FieldContext,
    enumerate_overlaps,
    enumerate_overlaps_all_generators,
    overlap_poly,
    parse_quad,
)
from .primes import circularity_primes, exceptional_primes

COMMANDS = ("qk", "pk", "overlaps", "classify", "triples", "quads", "design", "norms")


@dataclass
class RunConfig:
    command: str
    k: int
    p: int | None = None
    m: int = 1
    modulus: list[int] | None = None
    generator: int = 0
    all_generators: bool = False
    fmt: str = "text"
    provenance: bool = False
    dedupe: bool = False
    check_resultants: bool = False
    threads: int = 1
    max_work: int | None = None
    max_degree: int | None = 2
    r: list[int] | None = None
    c: list[int] | None = None
    dot: bool = False
    quad: str | None = None
    omega: int = 0
    random: int = 0
    seed: int = 0

    @property
    def has_field(self) -> bool:
        return self.p is not None


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _field(cfg: RunConfig):
    return build_field(cfg.p, cfg.m, cfg.modulus, max_degree=cfg.max_degree)


def _context(cfg: RunConfig):
    if not cfg.has_field:
        return ComplexContext(cfg.k)
    f = _field(cfg)
    gens = element_of_order(f, cfg.k, all=True)
    if not 0 <= cfg.generator < len(gens):
        raise NearringError(f"generator index must lie in 0..{len(gens) - 1}")
    return FieldContext(f, cfg.k, gens[cfg.generator])


def _context_label(ctx) -> dict:
    if isinstance(ctx, ComplexContext):
        return {"k": ctx.k, "context": "complex"}
    return {"k": ctx.k, "context": "field", "field": ctx.field.to_dict(), "generator": list(ctx.generator.coeffs)}


# --- commands ---------------------------------------------------------------

def _cmd_primes(cfg: RunConfig, out) -> int:
    if cfg.command == "qk":
        rep = exceptional_primes(cfg.k, dedupe=cfg.dedupe, threads=cfg.threads, work_limit=cfg.max_work)
    else:
        rep = circularity_primes(
            cfg.k, check_resultants=cfg.check_resultants, threads=cfg.threads, work_limit=cfg.max_work
        )
    if cfg.fmt == "json":
        print(dumps(rep.to_dict(provenance=cfg.provenance)), file=out)
    elif cfg.fmt == "csv":
        print(_csv(["k", "prime"], [(cfg.k, p) for p in rep.primes]), file=out)
    else:
        name = "Q" if cfg.command == "qk" else "P"
        print(f"{name}_{cfg.k} = {{{', '.join(map(str, rep.primes))}}}", file=out)
        if cfg.provenance:
            for p in rep.primes:
                for w in rep.provenance[p]:
                    if isinstance(w, str):
                        print(f"  {p}: {w}", file=out)
                    else:
                        i, j, s, t = w["quad"]
                        print(f"  {p}: ({i},{j}|{s},{t}) w={w['omega']} norm={w['norm']}", file=out)
    return 0


def _cmd_overlaps(cfg: RunConfig, out) -> int:
    if cfg.all_generators:
        if not cfg.has_field:
            raise NearringError("--all-generators needs a field (--p)")
        f = _field(cfg)
        classes = enumerate_overlaps_all_generators(f, cfg.k)
        head = {"k": cfg.k, "context": "field", "field": f.to_dict(), "generator": "all"}
    else:
        ctx = _context(cfg)
        classes = enumerate_overlaps(ctx)
        head = _context_label(ctx)
    if cfg.fmt == "json":
        print(dumps({**head, "classes": [c.to_dict() for c in classes]}), file=out)
    elif cfg.fmt == "csv":
        rows = [(*c.canonical, " ".join(map(str, c.witnesses)), c.family) for c in classes]
        print(_csv(["i", "j", "s", "t", "k", "witnesses", "family"], rows), file=out)
    else:
        print(f"{len(classes)} nontrivial overlap classes for k={cfg.k}", file=out)
        for c in classes:
            ws = ",".join(map(str, c.witnesses))
            print(f"  {c.canonical}  w={ws}  {c.family}", file=out)
    return 0


def _cmd_classify(cfg: RunConfig, out) -> int:
    rep = verify_classification(cfg.k)
    if cfg.fmt == "json":
        print(dumps(rep.to_dict()), file=out)
    elif cfg.fmt == "csv":
        d = rep.to_dict()
        rows = [(cfg.k, part, *q) for part in ("predicted", "found", "missing", "extra") for q in d[part]]
        print(_csv(["k", "set", "i", "j", "s", "t"], rows), file=out)
    else:
        print(f"k={cfg.k}: {rep.verdict} ({len(rep.found)} found, {len(rep.predicted)} predicted)", file=out)
        for q in rep.missing:
            print(f"  missing {q}", file=out)
        for q in rep.extra:
            print(f"  extra   {q}", file=out)
    return 0 if rep.verdict == "pass" else 1


def _cmd_triples(cfg: RunConfig, out) -> int:
    ctx = _context(cfg)
    if cfg.command == "triples":
        items = find_triples(ctx)
        if cfg.fmt == "json":
            print(dumps({"k": cfg.k, "triples": [t.to_dict() for t in items]}), file=out)
        elif cfg.fmt == "csv":
            rows = [(cfg.k, *t.q1, *t.q2, *t.q3, t.label or "") for t in items]
            print(_csv(["k", "s1", "t1", "s2", "t2", "s3", "t3", "label"], rows), file=out)
        else:
            print(f"{len(items)} normalized triple overlaps for k={cfg.k}", file=out)
            for t in items:
                print(f"  {t}", file=out)
        return 0
    cliques = find_quadruple_overlaps(ctx)
    if cfg.fmt == "json":
        print(dumps({"k": cfg.k, "quadruples": [[list(p) for p in c] for c in cliques]}), file=out)
    elif cfg.fmt == "csv":
        rows = [(cfg.k, *[v for p in c for v in p]) for c in cliques]
        print(_csv(["k", "s1", "t1", "s2", "t2", "s3", "t3", "s4", "t4"], rows), file=out)
    else:
        print(f"{len(cliques)} quadruple overlaps for k={cfg.k}", file=out)
        for c in cliques:
            print("  " + " | ".join(f"{a},{b}" for a, b in c), file=out)
    return 0


def _cmd_design(cfg: RunConfig, out) -> int:
    if not cfg.has_field:
        raise NearringError("design needs a field (--p)")
    if cfg.r is None or cfg.c is None:
        raise NearringError("design needs --r and --c")
    f = _field(cfg)
    gens = element_of_order(f, cfg.k, all=True)
    if not 0 <= cfg.generator < len(gens):
        raise NearringError(f"generator index must lie in 0..{len(gens) - 1}")
    phi = subgroup(f, cfg.k, gens[cfg.generator])
    r, c = f(cfg.r), f(cfg.c)
    e = edge_sequence(f, phi, r, c)
    graphs = decompose(e)
    gamma, pi = gamma_pi(f, phi, r)
    if cfg.dot:
        print(to_dot(e), end="", file=out)
        return 0
    if cfg.fmt == "json":
        print(dumps({
            "k": cfg.k,
            "field": f.to_dict(),
            "edge_sequence": list(e.eps),
            "basic_graphs": [g.to_dict() for g in graphs],
            "gamma": gamma,
            "pi": pi,
        }), file=out)
    elif cfg.fmt == "csv":
        rows = [(i + 1, e[i + 1], gamma[i], pi[i]) for i in range(cfg.k // 2)]
        print(_csv(["i", "eps", "gamma", "pi"], rows), file=out)
    else:
        print(f"{f}, k={cfg.k}, generator {phi.generator}", file=out)
        print(f"  e(r,c) = {tuple(e.eps)}", file=out)
        print(f"  basic graphs: {', '.join(g.name for g in graphs) or 'none'}", file=out)
        print(f"  gamma = {gamma}", file=out)
        print(f"  pi    = {pi}", file=out)
    return 0


def _cmd_norms(cfg: RunConfig, out) -> int:
    k = cfg.k
    phi_k = cyc.cyclotomic_poly(k)
    if cfg.random:
        rng = random.Random(cfg.seed)
        agree = 0
        for _ in range(cfg.random):
            f = cyc.poly(rng.randint(-3, 3) for _ in range(rng.randint(1, 2 * k)))
            if not f:
                f = (1,)
            agree += cyc.norm(cyc.reduce(f, k)) == cyc.resultant(phi_k, f)
        res = {"k": k, "seed": cfg.seed, "count": cfg.random, "agree": agree}
        if cfg.fmt == "json":
            print(dumps(res), file=out)
        else:
            print(f"norm = resultant on {agree}/{cfg.random} random polynomials (k={k}, seed={cfg.seed})", file=out)
        return 0 if agree == cfg.random else 1
    if cfg.quad is None:
        raise NearringError("norms needs --quad or --random")
    q = parse_quad(cfg.quad, k)
    f = overlap_poly(q, cfg.omega)
    n = cyc.norm(cyc.reduce(f, k))
    factors = factorize(abs(n)) if n else []
    res = {"k": k, "quad": list(q.entries), "omega": cfg.omega, "norm": n, "factors": factors,
           "bound": 8 ** totient(k)}
    if cfg.fmt == "json":
        print(dumps(res), file=out)
    elif cfg.fmt == "csv":
        print(_csv(["k", "i", "j", "s", "t", "omega", "norm"], [(k, *q.entries, cfg.omega, n)]), file=out)
    else:
        print(f"f = {format_poly(f)}", file=out)
        print(f"N(f(phi)) = {n}" + (f" = {' * '.join(map(str, factors))}" if len(factors) > 1 else ""), file=out)
    return 0


_DISPATCH = {
    "qk": _cmd_primes,
    "pk": _cmd_primes,
    "overlaps": _cmd_overlaps,
    "classify": _cmd_classify,
    "triples": _cmd_triples,
    "quads": _cmd_triples,
    "design": _cmd_design,
    "norms": _cmd_norms,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _DISPATCH[cfg.command](cfg, out)
    except (NearringError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2


# --- argument parsing ---------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nearring", description="Overlaps of basic graphs in circular planar nearrings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, field=False):
        sp.add_argument("--k", type=int, required=True, help="order of the subgroup Phi")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="fmt", action="store_const", const="json")
        g.add_argument("--csv", dest="fmt", action="store_const", const="csv")
        sp.set_defaults(fmt="text")
        sp.add_argument("--threads", type=int, default=1)
        if field:
            sp.add_argument("--p", type=int, help="field characteristic; omit for the complex case")
            sp.add_argument("--m", type=int, default=1, help="extension degree")
            sp.add_argument("--modulus", type=_int_list, help="irreducible modulus, constant first, e.g. 1,3,1")
            sp.add_argument("--generator", type=int, default=0,
                            help="index into the order-k elements in enumeration order")
            sp.add_argument("--max-degree", type=int, default=2, help="cap on m (0 lifts it)")

    for name in ("qk", "pk"):
        sp = sub.add_parser(name, help=f"{'exceptional' if name == 'qk' else 'circularity'} primes")
        common(sp)
        sp.add_argument("--provenance", action="store_true", help="show witnesses for each prime")
        sp.add_argument("--max-work", type=float, default=None, help="work guard (norms x degree)")
        if name == "qk":
            sp.add_argument("--dedupe", action="store_true", help="one quadruple per symmetry orbit")
        else:
            sp.add_argument("--check-resultants", action="store_true")

    sp = sub.add_parser("overlaps", help="nontrivial overlap classes")
    common(sp, field=True)
    sp.add_argument("--all-generators", action="store_true")

    sp = sub.add_parser("classify", help="compare complex overlaps with the predicted families")
    common(sp)

    for name in ("triples", "quads"):
        sp = sub.add_parser(name, help=f"{'triple' if name == 'triples' else 'quadruple'} overlaps")
        common(sp, field=True)

    sp = sub.add_parser("design", help="edge sequence, basic graphs and gamma/pi counts")
    common(sp, field=True)
    sp.add_argument("--r", type=_int_list, required=True, help="radius (coefficients, constant first)")
    sp.add_argument("--c", type=_int_list, required=True, help="centre (coefficients, constant first)")
    sp.add_argument("--dot", action="store_true", help="emit Graphviz instead")

    sp = sub.add_parser("norms", help="norm of f_{i,j,s,t,w}(phi), or a random norm/resultant check")
    common(sp)
    sp.add_argument("--quad", help="i,j,s,t")
    sp.add_argument("--omega", type=int, default=0)
    sp.add_argument("--random", type=int, default=0, metavar="N")
    sp.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, k=ns.k, fmt=ns.fmt, threads=ns.threads)
    for name in ("p", "m", "modulus", "generator", "all_generators", "provenance", "dedupe",
                 "check_resultants", "r", "c", "dot", "quad", "omega", "random", "seed"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "max_work", None) is not None:
        cfg.max_work = int(ns.max_work)
    if hasattr(ns, "max_degree"):
        cfg.max_degree = ns.max_degree or None
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
