"""Bound checkers: non-commuting sets, center index, derived length, p-group orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import IsCyclic, NotPGroup, OrderCap
from .groups import (
    LATTICE_CAP,
    Group,
    all_subgroups,
    center,
    commutator_subgroup,
    derived_length,
    normal_subgroups,
    quotient,
    upper_central_Z2,
)
from .invariants import c_count, is_cyclic, lambda_count, lambda_within
from .numtheory import prime_power

CLIQUE_CAP = 128


class Bound(str, Enum):
    SOLBOUND = "SOLBOUND"
    PGROUP_TT = "PGROUP_TT"
    NONCOMMUTING_LE_LAMBDA = "NONCOMMUTING_LE_LAMBDA"
    SUBQUO = "SUBQUO"
    KERNEL_Z2 = "KERNEL_Z2"
    LAMBDA_ABELIAN = "LAMBDA_ABELIAN"
    COPRIME_MULT = "COPRIME_MULT"
    # checks driven by the verify suites beyond the bound inequalities
    AUDIT = "AUDIT"
    EQ1 = "EQ1"
    LAMBDA_PRIMITIVE = "LAMBDA_PRIMITIVE"
    PGROUP_POWER = "PGROUP_POWER"
    KERNEL_NORMALIZES_ALL = "KERNEL_NORMALIZES_ALL"
    KERNEL_METABELIAN = "KERNEL_METABELIAN"
    COPRIME_PRIMITIVE = "COPRIME_PRIMITIVE"
    IRREDUNDANT_COVER = "IRREDUNDANT_COVER"
    DECOMP = "DECOMP"
    SETB_MEMBER = "SETB_MEMBER"
    SETB_WITNESS = "SETB_WITNESS"


@dataclass
class BoundReport:
    """One checked inequality (``kind='le'``) or identity (``kind='eq'``)."""

    spec: str
    bound: Bound
    lhs: int
    rhs: int
    kind: str = "le"
    witness: list[int] | None = None
    detail: str = ""
    verdict: bool = field(init=False)

    def __post_init__(self):
        self.verdict = self.lhs <= self.rhs if self.kind == "le" else self.lhs == self.rhs
        if self.verdict:
            self.witness = None

    @property
    def holds(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        out = {
            "spec": self.spec,
            "bound": self.bound.value,
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": "holds" if self.verdict else "fails",
        }
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _spec_text(g: Group) -> str:
    return str(g.spec) if g.spec is not None else "?"


def center_index(g: Group) -> int:
    return g.order // len(center(g))


def noncommuting_graph(g: Group) -> list[int]:
    """Adjacency bitsets: bit y of ``adj[x]`` set iff ``xy != yx``."""
    from .groups import _mask_to_bits

    t = g.table
    diff = t != t.T
    return [_mask_to_bits(row) for row in diff]


def max_clique(adj: list[int], vertices: int) -> int:
    """Maximum clique size in the graph restricted to the ``vertices`` bitset.

    Branch and bound; greedy sequential coloring supplies the upper bound.
    """
    best = 0

    def color_sort(p: int) -> tuple[list[int], list[int]]:
        order, colors = [], []
        color = 0
        uncolored = p
        while uncolored:
            color += 1
            q = uncolored
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~adj[v] & ~(1 << v)
                uncolored &= ~(1 << v)
                order.append(v)
                colors.append(color)
        return order, colors

    def expand(size: int, p: int) -> None:
        nonlocal best
        order, colors = color_sort(p)
        for v, col in zip(reversed(order), reversed(colors)):
            if size + col <= best:
                return
            np_ = p & adj[v]
            if np_:
                expand(size + 1, np_)
            elif size + 1 > best:
                best = size + 1
            p &= ~(1 << v)

    if vertices:
        expand(0, vertices)
    return best


def max_noncommuting_set_size(g: Group, cap: int = CLIQUE_CAP) -> int:
    """Size of a largest set of pairwise non-commuting elements.

    Any single element counts, so abelian groups give 1.
    """
    if g.order > cap:
        raise OrderCap(f"clique search on order {g.order} above cap {cap}")
    if "noncommuting" not in g.cache:
        adj = noncommuting_graph(g)
        noncentral = g.full().bits & ~center(g).bits
        g.cache["noncommuting"] = max(1, max_clique(adj, noncentral))
    return g.cache["noncommuting"]


def check_pgroup_bound(g: Group) -> BoundReport:
    """|G| <= t**t with t = c(G), for a noncyclic p-group."""
    if prime_power(g.order) is None:
        raise NotPGroup(f"order {g.order} is not a prime power")
    if is_cyclic(g):
        raise IsCyclic("bound applies to noncyclic p-groups only")
    t = c_count(g)
    return BoundReport(_spec_text(g), Bound.PGROUP_TT, g.order, t**t, detail=f"t={t}")


def check_subquo(g: Group, cap: int = LATTICE_CAP) -> list[BoundReport]:
    """lambda(H) <= lambda(G) over all subgroups, lambda(G/N) <= lambda(G) over normal N."""
    if g.order > cap:
        raise OrderCap(f"subgroup lattice of order {g.order} above cap {cap}")
    lam = lambda_count(g)
    spec = _spec_text(g)
    reports = []
    for h in all_subgroups(g, cap):
        r = BoundReport(spec, Bound.SUBQUO, lambda_within(g, h), lam, detail=f"H order {len(h)}")
        if not r.verdict:
            r.witness = h.indices().tolist()
        reports.append(r)
    for n in normal_subgroups(g, cap):
        r = BoundReport(spec, Bound.SUBQUO, lambda_count(quotient(g, n)), lam, detail=f"G/N, N order {len(n)}")
        if not r.verdict:
            r.witness = n.indices().tolist()
        reports.append(r)
    return reports


def solbound_sides(dl: int, lam: int) -> tuple[int, int]:
    """``dl <= 2 + (5/2) log_3(lam)`` rewritten as ``3**(2(dl-2)) <= lam**5``."""
    return 3 ** (2 * max(0, dl - 2)), lam**5


def check_solbound(g: Group) -> BoundReport | None:
    """None for nonsolvable g."""
    dl = derived_length(g)
    if dl is None:
        return None
    lhs, rhs = solbound_sides(dl, lambda_count(g))
    return BoundReport(_spec_text(g), Bound.SOLBOUND, lhs, rhs, detail=f"derived length {dl}")


def check_noncommuting(g: Group, cap: int = CLIQUE_CAP) -> BoundReport:
    return BoundReport(_spec_text(g), Bound.NONCOMMUTING_LE_LAMBDA, max_noncommuting_set_size(g, cap), lambda_count(g))


def check_kernel(g: Group) -> list[BoundReport]:
    """Covering kernel N: normalizes every subgroup, lies in Z2(G), N'' = 1."""
    from .coverings import covering_kernel, normalizes_all_subgroups

    spec = _spec_text(g)
    n = covering_kernel(g, cross_check=False)
    out = []
    if g.order <= LATTICE_CAP:
        every = normalizes_all_subgroups(g)
        r = BoundReport(spec, Bound.KERNEL_NORMALIZES_ALL, len(n), len(every), kind="eq")
        if n != every:
            r.verdict = False
            r.witness = sorted(set(n) ^ set(every))
        out.append(r)
    z2 = upper_central_Z2(g)
    r = BoundReport(spec, Bound.KERNEL_Z2, len(n), len(n & z2), kind="eq", detail=f"|N|={len(n)} |Z2|={len(z2)}")
    if not r.verdict:
        r.witness = sorted(set(n) - set(z2))
    out.append(r)
    n2 = commutator_subgroup(g, commutator_subgroup(g, n))
    out.append(BoundReport(spec, Bound.KERNEL_METABELIAN, len(n2), 1, kind="eq"))
    return out
