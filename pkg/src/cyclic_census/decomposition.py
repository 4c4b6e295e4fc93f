"""Peel central cyclic Sylow subgroups off a group: G = C_A x B with gcd(A, |B|) = 1.

A central cyclic Sylow p-subgroup S is a coprime direct factor, with the
p'-elements as complement.  Conversely a cyclic coprime direct factor is
central and made of full Sylow subgroups.  So peeling until no prime
qualifies leaves a core B with no cyclic coprime direct factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from .errors import SplitFailed
from .groups import ElementSet, Group, center, induced_group
from .invariants import c_count, lambda_count
from .numtheory import p_part, prime_divisors
from .specs import GroupSpec


@dataclass
class Decomposition:
    original: GroupSpec | None
    cyclic_part: list[tuple[int, int]]
    core: Group
    certificate: list[tuple[int, int]] = field(default_factory=list)

    @property
    def cyclic_order(self) -> int:
        return prod(p**k for p, k in self.cyclic_part)

    def to_json(self) -> dict:
        return {
            "spec": str(self.original) if self.original is not None else None,
            "cyclic_part": [[p, k] for p, k in self.cyclic_part],
            "core_order": self.core.order,
            "core_c": c_count(self.core),
            "core_lambda": lambda_count(self.core),
        }


def p_part_elements(g: Group, p: int) -> ElementSet:
    """Elements whose order is a power of ``p`` (identity included)."""
    return ElementSet.from_mask(g, _is_p_power(g.elem_order, p))


def _is_p_power(orders: np.ndarray, p: int) -> np.ndarray:
    o = orders.copy()
    while True:
        div = (o % p == 0) & (o > 1)
        if not div.any():
            break
        o[div] //= p
    return o == 1


def find_central_cyclic_sylow(g: Group) -> tuple[int, int] | None:
    """Smallest prime p whose Sylow subgroup is central and cyclic.

    Returns ``(p, generator index)`` with the minimal-index generator, or None.
    """
    if g.order == 1:
        return None
    z = center(g).mask()
    orders = g.elem_order
    for p in prime_divisors(g.order):
        full = p_part(g.order, p)
        sp = _is_p_power(orders, p)
        if int(sp.sum()) != full or not z[sp].all():
            continue
        # Central p-elements of full Sylow order form a subgroup automatically;
        # assert it anyway.
        assert ElementSet.from_mask(g, sp).is_subgroup()
        gens = np.flatnonzero(sp & (orders == full))
        if gens.size:
            return p, int(gens[0])
    return None


def split_off(g: Group, p: int) -> tuple[int, Group]:
    """Split ``G = S_p x K`` at a central cyclic Sylow p-subgroup.

    Returns ``(|S_p|, K)`` with K the p'-elements re-indexed as a group.
    """
    orders = g.elem_order
    sp = _is_p_power(orders, p)
    k_mask = orders % p != 0
    k = ElementSet.from_mask(g, k_mask)
    size = int(sp.sum())
    central_cyclic = not (sp & ~center(g).mask()).any() and bool((orders[sp] == size).any())
    if not central_cyclic:
        raise SplitFailed(f"Sylow {p}-subgroup of {g!r} is not central and cyclic")
    if not k.is_subgroup() or len(k) * size != g.order or (sp & k_mask).sum() != 1:
        raise SplitFailed(f"p'-elements for p={p} do not form a complement in {g!r}")
    return size, induced_group(g, k, label=f"{g.spec} minus Sylow {p}")


def decompose(g: Group) -> Decomposition:
    """Repeatedly split off central cyclic Sylow subgroups, smallest prime first."""
    parts: list[tuple[int, int]] = []
    cert: list[tuple[int, int]] = []
    cur = g
    while True:
        found = find_central_cyclic_sylow(cur)
        if found is None:
            break
        p, gen = found
        size, cur = split_off(cur, p)
        parts.append((p, _log(size, p)))
        cert.append((p, gen))
    parts.sort()
    dec = Decomposition(g.spec, parts, cur, cert)
    a = dec.cyclic_order
    assert gcd(a, cur.order) == 1 and a * cur.order == g.order
    assert c_count(g) == prod(k + 1 for _, k in parts) * c_count(cur)
    assert lambda_count(g) == lambda_count(cur)
    return dec


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k
