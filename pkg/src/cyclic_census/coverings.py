"""Coverings by proper subgroups and the kernel of the action on maximal cyclic subgroups."""

from __future__ import annotations

import numpy as np

from .errors import NotCovering, NotProperSubgroup
from .groups import (
    LATTICE_CAP,
    ElementSet,
    Group,
    _conj_closed,
    all_subgroups,
    subgroup_generators,
)
from .invariants import is_cyclic, maximal_cyclic_subgroups

COVER_SUBGROUP_CAP = 24


def _check_proper(g: Group, family) -> None:
    full = g.full().bits
    for h in family:
        if h.bits == full or not h.is_subgroup():
            raise NotProperSubgroup(f"{h!r} is not a proper subgroup")


def is_covering(g: Group, family: list[ElementSet]) -> bool:
    _check_proper(g, family)
    union = 0
    for h in family:
        union |= h.bits
    return union == g.full().bits


def is_irredundant(g: Group, family: list[ElementSet]) -> bool:
    """True iff dropping any single member leaves a non-covering."""
    if not is_covering(g, family):
        raise NotCovering("family does not cover the group")
    full = g.full().bits
    for i in range(len(family)):
        rest = 0
        for j, h in enumerate(family):
            if j != i:
                rest |= h.bits
        if rest == full:
            return False
    return True


def maximal_cyclic_family(g: Group) -> list[ElementSet]:
    return [s.elements for s in maximal_cyclic_subgroups(g)]


def _normalizes_each(g: Group, gen_lists) -> np.ndarray:
    """Mask of elements normalizing every subgroup given by (mask, generators)."""
    ok = np.ones(g.order, dtype=bool)
    everyone = np.arange(g.order)
    for mask, gens in gen_lists:
        live = everyone[ok]
        if not live.size:
            break
        ok[live] = _conj_closed(g, mask, np.asarray(gens, dtype=np.intp), live)
    return ok


def normalizes_all_subgroups(g: Group, cap: int = LATTICE_CAP) -> ElementSet:
    """Elements normalizing every subgroup of g (needs the full lattice)."""
    subs = all_subgroups(g, cap)
    return ElementSet.from_mask(g, _normalizes_each(g, ((s.mask(), subgroup_generators(g, s)) for s in subs)))


def covering_kernel(g: Group, cross_check: bool = True) -> ElementSet:
    """Intersection of the normalizers of all maximal cyclic subgroups.

    When the lattice is within the cap, asserts equality with the set of
    elements normalizing every subgroup.
    """
    if "covering_kernel" not in g.cache:
        family = maximal_cyclic_subgroups(g)
        kernel = ElementSet.from_mask(
            g, _normalizes_each(g, ((s.elements.mask(), [s.canonical_generator]) for s in family))
        )
        if cross_check and g.order <= LATTICE_CAP:
            assert kernel == normalizes_all_subgroups(g)
        g.cache["covering_kernel"] = kernel
    return g.cache["covering_kernel"]


def max_irredundant_covering_size(g: Group, search_cap: int = COVER_SUBGROUP_CAP) -> int | None:
    """Largest irredundant covering by proper subgroups, by exhaustive search.

    Cyclic groups have no covering; the convention value 1 is returned.
    Returns None (unknown) when g has more than ``search_cap`` subgroups.
    """
    if is_cyclic(g):
        return 1
    if g.order > LATTICE_CAP:
        return None
    subs = all_subgroups(g)
    if len(subs) > search_cap:
        return None
    full = g.full().bits
    # Trivial subgroup can never hold a private element next to anything else.
    cands = [s.bits for s in subs if 1 < len(s) < g.order]
    # Larger subgroups first: coverings are found early, which sharpens the bound.
    cands.sort(key=lambda b: -b.bit_count())
    best = 0

    def search(start: int, chosen: list[int], privates: list[int], union: int) -> None:
        nonlocal best
        if union == full:
            best = max(best, len(chosen))
            return
        for i in range(start, len(cands)):
            if len(chosen) + (len(cands) - i) <= best:
                return
            h = cands[i]
            own = h & ~union
            if not own:
                continue
            new_privates = [p & ~h for p in privates]
            if not all(new_privates):
                continue
            search(i + 1, chosen + [h], new_privates + [own], union | h)

    search(0, [], [], 1)
    # a noncyclic group is always covered by its maximal cyclic subgroups
    assert best > 0
    return best
