"""Verification suites run by ``cyclic-census verify`` over a generated catalog.

Every check yields a :class:`BoundReport`; a run fails iff any report fails.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, prod

import numpy as np

from .catalog import abelian_c_bruteforce, generate_catalog, is_in_B, witness_cyclic_orders, witness_family
from .coverings import is_covering, is_irredundant, max_irredundant_covering_size, maximal_cyclic_family
from .decomposition import decompose
from .groups import ORDER_CAP, Group, audit, build, direct_product, perturbed
from .invariants import (
    c_count,
    c_of_subset,
    cyclic_subgroups,
    is_cyclic,
    lambda_count,
    power_image,
    primitive_elements,
    primitive_mask,
)
from .numtheory import is_prime, prime_power
from .specs import Cyclic, GroupSpec, Product
from .structure import (
    Bound,
    BoundReport,
    check_kernel,
    check_noncommuting,
    check_pgroup_bound,
    check_solbound,
    check_subquo,
)

SUITES = ("eq1", "coprime", "lambda-abelian", "subquo", "kernel", "solbound", "pgroup", "noncomm", "decomp", "cover", "setB")

# per-suite order limits (the catalog bound applies on top)
SUBQUO_LIMIT = 128
KERNEL_LIMIT = 128
NONCOMM_LIMIT = 128
LAMBDA_ABELIAN_LIMIT = 256
COVER_LIMIT = 24  # subgroup count
SETB_MEMBER_LIMIT = 10**6
SETB_RANGE = (10, 40)
SETB_COUNT = 5


@dataclass
class VerifyOptions:
    bound: int = 64
    suites: tuple[str, ...] = SUITES
    cap: int = ORDER_CAP
    seed: int = 0
    perturb: bool = False
    # set by run_verify: the single catalog entry corrupted under --perturb
    perturb_target: GroupSpec | None = None


def worker_count() -> int:
    raw = os.environ.get("CYCLIC_CENSUS_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def suite_eq1(g: Group) -> list[BoundReport]:
    spec = str(g.spec)
    total = c_of_subset(g, g.full())
    n_cyc = len(cyclic_subgroups(g))
    reports = [
        BoundReport(spec, Bound.EQ1, total.numerator, n_cyc * total.denominator, kind="eq", detail="Euler sum vs enumeration")
    ]
    prim = c_of_subset(g, primitive_elements(g))
    reports.append(BoundReport(spec, Bound.LAMBDA_PRIMITIVE, prim.numerator, lambda_count(g) * prim.denominator, kind="eq"))
    pp = prime_power(g.order)
    if pp:
        p = pp[0]
        rhs = c_count(g) - c_of_subset(g, power_image(g, p))
        reports.append(BoundReport(spec, Bound.PGROUP_POWER, lambda_count(g), int(rhs), kind="eq", detail=f"p={p}"))
    return reports


def coprime_reports(a: Group, b: Group, ab: Group) -> list[BoundReport]:
    spec = str(ab.spec)
    out = [
        BoundReport(spec, Bound.COPRIME_MULT, c_count(ab), c_count(a) * c_count(b), kind="eq", detail="c"),
        BoundReport(spec, Bound.COPRIME_MULT, lambda_count(ab), lambda_count(a) * lambda_count(b), kind="eq", detail="lambda"),
    ]
    expected = np.outer(primitive_mask(a), primitive_mask(b)).ravel()
    bad = np.flatnonzero(expected != primitive_mask(ab))
    r = BoundReport(spec, Bound.COPRIME_PRIMITIVE, int(bad.size), 0, kind="eq", detail="(a,b) primitive iff a and b are")
    if bad.size:
        r.witness = bad[:10].tolist()
    out.append(r)
    return out


def suite_coprime(g: Group, cap: int) -> list[BoundReport]:
    spec = g.spec
    if not isinstance(spec, Product) or gcd(spec.left.order(), spec.right.order()) != 1:
        return []
    return coprime_reports(build(spec.left, cap), build(spec.right, cap), g)


def lambda_abelian_reports(pg: Group, p: int, cap: int = ORDER_CAP) -> list[BoundReport]:
    g = direct_product(pg, build(Cyclic(p)), cap=cap)
    c, lam = c_count(pg), lambda_count(pg)
    spec = str(g.spec)
    return [
        BoundReport(spec, Bound.LAMBDA_ABELIAN, c_count(g), p * (c - 1) + 2, kind="eq", detail="c(P x C_p) = p(c-1)+2"),
        BoundReport(
            spec, Bound.LAMBDA_ABELIAN, lambda_count(g), (p - 1) * (c - 1) + lam + 1, kind="eq", detail="lambda(P x C_p)"
        ),
    ]


def suite_lambda_abelian(g: Group, cap: int) -> list[BoundReport]:
    pp = prime_power(g.order)
    if not pp or g.order > LAMBDA_ABELIAN_LIMIT or g.order * pp[0] > cap:
        return []
    return lambda_abelian_reports(g, pp[0], cap)


def suite_decomp(g: Group) -> list[BoundReport]:
    spec = str(g.spec)
    d = decompose(g)
    a = d.cyclic_order
    out = [
        BoundReport(spec, Bound.DECOMP, gcd(a, d.core.order), 1, kind="eq", detail="gcd(A, |B|)"),
        BoundReport(
            spec, Bound.DECOMP, c_count(g), prod(k + 1 for _, k in d.cyclic_part) * c_count(d.core), kind="eq", detail="c(G) = c(C_A) c(B)"
        ),
        BoundReport(spec, Bound.DECOMP, lambda_count(g), lambda_count(d.core), kind="eq", detail="lambda(G) = lambda(B)"),
        BoundReport(spec, Bound.DECOMP, decompose(d.core).cyclic_order, 1, kind="eq", detail="idempotent on core"),
    ]
    if isinstance(g.spec, Product) and isinstance(g.spec.left, Cyclic):
        m = g.spec.left.n
        if gcd(m, g.spec.right.order()) == 1:
            out.append(BoundReport(spec, Bound.DECOMP, a % m, 0, kind="eq", detail=f"cyclic part divisible by {m}"))
    return out


def suite_cover(g: Group) -> list[BoundReport]:
    spec = str(g.spec)
    out = []
    if not is_cyclic(g):
        fam = maximal_cyclic_family(g)
        ok = is_covering(g, fam) and is_irredundant(g, fam)
        out.append(BoundReport(spec, Bound.IRREDUNDANT_COVER, int(not ok), 0, kind="eq", detail="maximal cyclic family"))
    size = max_irredundant_covering_size(g, COVER_LIMIT)
    if size is not None:
        out.append(BoundReport(spec, Bound.IRREDUNDANT_COVER, size, lambda_count(g), kind="eq", detail="max irredundant covering"))
    return out


def group_reports(spec: GroupSpec, opts: VerifyOptions) -> list[tuple[str, BoundReport]]:
    """All per-group checks for one catalog entry, tagged with their suite."""
    g = build(spec, opts.cap)
    if opts.perturb and spec == opts.perturb_target:
        g = perturbed(g, opts.seed)
    res = audit(g, seed=opts.seed)
    head = BoundReport(str(spec), Bound.AUDIT, int(not res.ok), 0, kind="eq", detail=res.reason or f"{res.triples_checked} triples")
    if not res.ok:
        head.witness = list(res.witness or ())
        return [("audit", head)]
    out: list[tuple[str, BoundReport]] = [("audit", head)]
    n = g.order
    s = set(opts.suites)

    def add(name, reports):
        out.extend((name, r) for r in reports)

    if "eq1" in s:
        add("eq1", suite_eq1(g))
    if "coprime" in s:
        add("coprime", suite_coprime(g, opts.cap))
    if "lambda-abelian" in s:
        add("lambda-abelian", suite_lambda_abelian(g, opts.cap))
    if "subquo" in s and n <= SUBQUO_LIMIT:
        add("subquo", check_subquo(g))
    if "kernel" in s and n <= KERNEL_LIMIT:
        add("kernel", check_kernel(g))
    if "solbound" in s:
        r = check_solbound(g)
        add("solbound", [r] if r else [])
    if "pgroup" in s and prime_power(n) and not is_cyclic(g):
        add("pgroup", [check_pgroup_bound(g)])
    if "noncomm" in s and n <= NONCOMM_LIMIT:
        add("noncomm", [check_noncommuting(g)])
    if "decomp" in s:
        add("decomp", suite_decomp(g))
    if "cover" in s and n <= 256:
        add("cover", suite_cover(g))
    return out


def _group_job(args):
    spec, opts = args
    return group_reports(spec, opts)


def setb_reports(cap: int = ORDER_CAP) -> list[BoundReport]:
    out = []
    mismatches = [
        n for n in range(1, SETB_MEMBER_LIMIT + 1) if is_in_B(n) != (n in (1, 4, 6, 9) or is_prime(n))
    ]
    r = BoundReport("is_in_B", Bound.SETB_MEMBER, len(mismatches), 0, kind="eq", detail=f"n <= {SETB_MEMBER_LIMIT}")
    if mismatches:
        r.witness = mismatches[:10]
    out.append(r)
    lo, hi = SETB_RANGE
    for n in range(lo, hi + 1):
        if is_prime(n):
            continue
        fam = witness_family(n, SETB_COUNT)
        orders = {s.order() for s in fam}
        out.append(BoundReport(f"witness({n})", Bound.SETB_WITNESS, len(orders), SETB_COUNT, kind="eq", detail="distinct orders"))
        for s in fam:
            brute = abelian_c_bruteforce(witness_cyclic_orders(s))
            out.append(BoundReport(str(s), Bound.SETB_WITNESS, brute, n, kind="eq", detail="element enumeration"))
            if s.order() <= cap:
                g = build(s, cap)
                out.append(BoundReport(str(s), Bound.SETB_WITNESS, c_count(g), n, kind="eq", detail="engine"))
                out.append(BoundReport(str(s), Bound.SETB_WITNESS, int(is_cyclic(g)), 0, kind="eq", detail="noncyclic"))
    return out


def run_verify(opts: VerifyOptions) -> list[tuple[str, BoundReport]]:
    """Run the selected suites; results are ordered by suite, then spec text."""
    catalog = generate_catalog(opts.bound, cap=opts.cap)
    if opts.perturb:
        opts.perturb_target = next(s for s in catalog if s.order() >= 3)
    per_group = [s for s in opts.suites if s != "setB"]
    results: list[tuple[str, BoundReport]] = []
    if per_group or opts.perturb:
        jobs = [(spec, opts) for spec in catalog]
        workers = worker_count()
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                chunks = list(pool.map(_group_job, jobs, chunksize=8))
        else:
            chunks = [_group_job(j) for j in jobs]
        for chunk in chunks:
            results.extend(chunk)
    if "setB" in opts.suites:
        results.extend(("setB", r) for r in setb_reports(opts.cap))
    rank = {name: i for i, name in enumerate(("audit",) + SUITES)}
    results.sort(key=lambda item: (rank[item[0]], item[1].spec))
    return results
