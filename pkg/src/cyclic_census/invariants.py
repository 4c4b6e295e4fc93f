"""Cyclic subgroups, primitive elements, c(G) and lambda(G).

Two routes are kept side by side on purpose: c(G) as the number of distinct
cyclic subgroups and as the exact totient sum ``sum 1/phi(o(x))``;
lambda(G) as the number of inclusion-maximal cyclic subgroups and as the
totient sum over primitive elements.  The public counters assert that the
routes agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import ElementSet, Group, cyclic_classes, power_map
from .numtheory import euler_phi

__all__ = [
    "CyclicSubgroup",
    "RationalCount",
    "c_count",
    "c_of_subset",
    "c_within",
    "cyclic_subgroups",
    "euler_phi",
    "is_cyclic",
    "is_primitive",
    "lambda_count",
    "lambda_within",
    "maximal_cyclic_order_counts",
    "maximal_cyclic_subgroups",
    "power_image",
    "primitive_elements",
    "primitive_mask",
]

# Exact rational; Fraction keeps numerator/denominator reduced with denominator >= 1.
RationalCount = Fraction


@dataclass(frozen=True)
class CyclicSubgroup:
    parent: Group
    canonical_generator: int
    elements: ElementSet
    order: int

    def __repr__(self):
        return f"CyclicSubgroup(gen={self.canonical_generator}, order={self.order})"


def c_of_subset(g: Group, x: ElementSet) -> Fraction:
    """``sum over i in x of 1/phi(o(i))``, exactly."""
    orders = g.elem_order[x.indices()]
    vals, counts = np.unique(orders, return_counts=True)
    return sum((Fraction(int(k), euler_phi(int(o))) for o, k in zip(vals, counts)), Fraction(0))


def _class_arrays(g: Group):
    """Concatenated class members with the size of their class, cached."""
    if "class_arrays" not in g.cache:
        classes = cyclic_classes(g)
        gens = np.array([x for x, _ in classes], dtype=np.intp)
        sizes = np.array([pw.size for _, pw in classes], dtype=np.int64)
        members = np.concatenate([pw for _, pw in classes])
        owner = np.repeat(np.arange(len(classes)), sizes)
        g.cache["class_arrays"] = (gens, sizes, members, owner)
    return g.cache["class_arrays"]


def cyclic_subgroups(g: Group) -> list[CyclicSubgroup]:
    """All distinct cyclic subgroups, ordered by canonical generator."""
    if "cyclic_subgroups" not in g.cache:
        out = []
        for x, pw in cyclic_classes(g):
            out.append(CyclicSubgroup(g, x, ElementSet.from_indices(g, pw), pw.size))
        total = c_of_subset(g, g.full())
        assert total.denominator == 1 and total == len(out), (g, total, len(out))
        g.cache["cyclic_subgroups"] = out
    return list(g.cache["cyclic_subgroups"])


def _nonprimitive_within(g: Group, h_mask: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Mark elements lying in a strictly larger cyclic subgroup.

    Restricted to classes contained in ``h_mask`` when given.  Returns the
    element mask and the boolean selection of classes inside H.
    """
    gens, sizes, members, owner = _class_arrays(g)
    orders = g.elem_order
    if h_mask is None:
        inside = np.ones(len(gens), dtype=bool)
    else:
        outside_members = ~h_mask[members]
        inside = np.ones(len(gens), dtype=bool)
        inside[owner[outside_members]] = False
    keep = inside[owner]
    mem, sz = members[keep], sizes[owner[keep]]
    nonprim = np.zeros(g.order, dtype=bool)
    nonprim[mem[orders[mem] < sz]] = True
    return nonprim, inside


def primitive_mask(g: Group) -> np.ndarray:
    """Boolean mask of primitive elements (``<x>`` is maximal cyclic)."""
    if "primitive_mask" not in g.cache:
        nonprim, _ = _nonprimitive_within(g)
        g.cache["primitive_mask"] = ~nonprim
    return g.cache["primitive_mask"]


def primitive_elements(g: Group) -> ElementSet:
    return ElementSet.from_mask(g, primitive_mask(g))


def is_primitive(g: Group, x: int) -> bool:
    """Direct scan: every y having x as a power must itself be a power of x."""
    px = set(g.powers(x).tolist())
    for y in range(g.order):
        if y in px:
            continue
        if x in set(g.powers(y).tolist()):
            return False
    return True


def maximal_cyclic_subgroups(g: Group) -> list[CyclicSubgroup]:
    """Cyclic subgroups not properly contained in another cyclic subgroup."""
    if "maximal_cyclic" not in g.cache:
        subs = cyclic_subgroups(g)
        by_size = sorted(subs, key=lambda s: -s.order)
        maximal = []
        for s in by_size:
            bigger = (t for t in by_size if t.order > s.order and t.order % s.order == 0)
            if not any(s.elements <= t.elements for t in bigger):
                maximal.append(s)
        maximal.sort(key=lambda s: s.canonical_generator)
        prim = primitive_mask(g)
        assert {s.canonical_generator for s in maximal} == {s.canonical_generator for s in subs if prim[s.canonical_generator]}
        g.cache["maximal_cyclic"] = maximal
    return list(g.cache["maximal_cyclic"])


def c_count(g: Group) -> int:
    """Number of cyclic subgroups."""
    return len(cyclic_subgroups(g))


def is_cyclic(g: Group) -> bool:
    return bool((g.elem_order == g.order).any())


def lambda_count(g: Group) -> int:
    """Number of maximal cyclic subgroups (1 exactly when g is cyclic)."""
    if "lambda" not in g.cache:
        lam = len(maximal_cyclic_subgroups(g))
        assert c_of_subset(g, primitive_elements(g)) == lam
        assert (lam == 1) == is_cyclic(g)
        g.cache["lambda"] = lam
    return g.cache["lambda"]


def c_within(g: Group, h: ElementSet) -> int:
    """c(H) for a subgroup H, computed from the cyclic subgroups of g inside H."""
    _, inside = _nonprimitive_within(g, h.mask())
    return int(inside.sum())


def lambda_within(g: Group, h: ElementSet) -> int:
    """lambda(H) for a subgroup H without re-indexing it as a group."""
    gens = _class_arrays(g)[0]
    nonprim, inside = _nonprimitive_within(g, h.mask())
    return int((inside & ~nonprim[gens]).sum())


def power_image(g: Group, p: int) -> ElementSet:
    """``{x**p : x in G}``."""
    mask = np.zeros(g.order, dtype=bool)
    mask[power_map(g, p)] = True
    return ElementSet.from_mask(g, mask)


def maximal_cyclic_order_counts(g: Group) -> dict[int, int]:
    counts: dict[int, int] = {}
    for s in maximal_cyclic_subgroups(g):
        counts[s.order] = counts.get(s.order, 0) + 1
    return dict(sorted(counts.items()))

