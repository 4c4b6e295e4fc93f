"""Verification catalog of constructible groups, and membership in the set B.

B is the set of n such that only finitely many noncyclic groups have exactly
n cyclic subgroups; it equals {1, 4, 6, 9} together with the primes.  For
composite n >= 10 infinitely many witnesses exist, built as
``C_{r^(a-1)} x C_{q^k} x C_q`` for varying primes r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod

import numpy as np

from .errors import NotComposite, TooSmall
from .groups import ORDER_CAP, build
from .invariants import c_count, is_cyclic, lambda_count
from .numtheory import euler_phi, factorize, is_prime, prime_power, primes_excluding
from .specs import Abelian, Cyclic, Dicyclic, Dihedral, GroupSpec, Product, SemidirectCyclic

MAX_ABELIAN_RANK = 4
B_EXCEPTIONS = frozenset({1, 4, 6, 9})


@dataclass
class Catalog:
    order_bound: int
    specs: list[GroupSpec] = field(default_factory=list)

    def __iter__(self):
        return iter(self.specs)

    def __len__(self):
        return len(self.specs)

    def by_family(self, family: str) -> list[GroupSpec]:
        return [s for s in self.specs if s.family() == family]

    def up_to(self, bound: int) -> list[GroupSpec]:
        return [s for s in self.specs if s.order() <= bound]

    def export(self) -> str:
        return "".join(f"{s}\n" for s in self.specs)


def abelian_chains(bound: int, max_rank: int = MAX_ABELIAN_RANK) -> list[tuple[int, ...]]:
    """Invariant-factor lists ``d1 | d2 | ... | dk`` with ``k >= 2``, ``d1 >= 2``, product <= bound."""
    out = []

    def extend(chain: tuple[int, ...], total: int) -> None:
        if len(chain) >= 2:
            out.append(chain)
        if len(chain) == max_rank:
            return
        last = chain[-1]
        mult = last
        while total * mult <= bound:
            extend(chain + (mult,), total * mult)
            mult += last

    for d in range(2, bound + 1):
        extend((d,), d)
    return sorted(out, key=lambda c: (prod(c), c))


def semidirect_params(bound: int) -> list[tuple[int, int, int]]:
    """Nontrivial ``C_m x| C_n`` actions, one canonical k per equivalence class.

    ``C_m x|_k C_n`` and ``C_m x|_{k^j} C_n`` coincide when gcd(j, n) = 1
    (replace the C_n generator by its j-th power); the least such k is kept.
    """
    out = []
    for m in range(3, bound // 2 + 1):
        for n in range(2, bound // m + 1):
            for k in range(2, m):
                if gcd(k, m) != 1 or pow(k, n, m) != 1:
                    continue
                if k == min(pow(k, j, m) for j in range(1, n + 1) if gcd(j, n) == 1):
                    out.append((m, n, k))
    return out


def _base_specs(bound: int, max_rank: int) -> list[GroupSpec]:
    specs: list[GroupSpec] = [Cyclic(n) for n in range(1, bound + 1)]
    specs += [Dihedral(n) for n in range(2, bound // 2 + 1)]
    specs += [Dicyclic(n) for n in range(2, bound // 4 + 1)]
    specs += [Abelian(c) for c in abelian_chains(bound, max_rank)]
    specs += [SemidirectCyclic(m, n, k) for m, n, k in semidirect_params(bound)]
    return specs


def generate_catalog(order_bound: int, max_rank: int = MAX_ABELIAN_RANK, cap: int = ORDER_CAP) -> Catalog:
    """Deterministic catalog of group specs with order <= ``order_bound``.

    Families: cyclic, dihedral, dicyclic, abelian invariant-factor chains of
    rank 2..max_rank, nontrivial cyclic-by-cyclic semidirect products, and
    coprime direct products of two base members at least one of which is
    noncyclic.  Sorted by (order, family, text).
    """
    if order_bound > cap:
        raise ValueError(f"catalog bound {order_bound} exceeds engine cap {cap}")
    base = _base_specs(order_bound, max_rank)
    noncyclic = [s for s in base if not isinstance(s, Cyclic) and s.order() > 1]
    products: list[GroupSpec] = []
    for a in base:
        na = a.order()
        if na < 2:
            continue
        for b in noncyclic:
            nb = b.order()
            if na * nb > order_bound or gcd(na, nb) != 1:
                continue
            # Each unordered pair once: cyclic factor first, else smaller order first.
            if isinstance(a, Cyclic) or (na, str(a)) < (nb, str(b)):
                products.append(Product(a, b))
    seen = set()
    specs = []
    for s in base + products:
        if s not in seen:
            seen.add(s)
            specs.append(s)
    specs.sort(key=lambda s: (s.order(), s.family(), str(s)))
    return Catalog(order_bound, specs)


def is_p_group_spec(spec: GroupSpec) -> bool:
    return prime_power(spec.order()) is not None


# --------------------------------------------------------------------------
# the set B


def is_in_B(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return n in B_EXCEPTIONS or is_prime(n)


def witness_parameters(n: int) -> tuple[int, int, int, int]:
    """``(a, b, q, k)`` with ``n = a*b``, ``b >= 4``, ``b - 2 = k*q``.

    b is the largest proper divisor of n (so a is the least prime factor)
    and q the largest prime factor of b - 2.
    """
    if n < 10:
        raise TooSmall(f"witness families need n >= 10, got {n}")
    if is_prime(n):
        raise NotComposite(f"{n} is prime")
    a = factorize(n)[0][0]
    b = n // a
    assert b >= 4
    q = factorize(b - 2)[-1][0]
    return a, b, q, (b - 2) // q


def witness_family(n: int, count: int) -> list[GroupSpec]:
    """``count`` pairwise non-isomorphic noncyclic groups with exactly n cyclic subgroups."""
    a, b, q, k = witness_parameters(n)
    tail = Abelian((q, q**k))
    return [Product(Cyclic(r ** (a - 1)), tail) for r in primes_excluding(q, count)]


def abelian_c_bruteforce(cyclic_orders: list[int]) -> int:
    """c of ``C_{d1} x ... x C_{dk}`` by enumerating every element.

    Element orders are lcms of component orders; no Cayley table needed,
    so this reaches far past the engine cap.
    """
    orders = np.ones(1, dtype=np.int64)
    for d in cyclic_orders:
        comp = d // np.gcd(np.arange(d, dtype=np.int64), d)
        orders = np.lcm(orders[:, None], comp[None, :]).ravel()
    vals, counts = np.unique(orders, return_counts=True)
    total = sum((Fraction(int(k), euler_phi(int(o))) for o, k in zip(vals, counts)), Fraction(0))
    assert total.denominator == 1
    return int(total)


def witness_cyclic_orders(spec: Product) -> list[int]:
    """Cyclic factor orders of a witness spec ``C_x x Ab[q, q^k]``."""
    left, right = spec.left, spec.right
    assert isinstance(left, Cyclic) and isinstance(right, Abelian)
    return [left.n, *right.factors]


def search_c_equals(n: int, catalog: Catalog, cap: int = ORDER_CAP) -> list[tuple[GroupSpec, int]]:
    """Noncyclic catalog members with exactly n cyclic subgroups, with their lambda."""
    hits = []
    for spec in catalog:
        if spec.order() > cap:
            continue
        g = build(spec, cap)
        if is_cyclic(g):
            continue
        if c_count(g) == n:
            hits.append((spec, lambda_count(g)))
    return hits


__all__ = [
    "Catalog",
    "abelian_c_bruteforce",
    "abelian_chains",
    "generate_catalog",
    "is_in_B",
    "search_c_equals",
    "semidirect_params",
    "witness_family",
    "witness_parameters",
]
