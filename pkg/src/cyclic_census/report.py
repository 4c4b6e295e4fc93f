"""Per-group invariant summary used by the ``invariants`` command."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .coverings import covering_kernel
from .groups import LATTICE_CAP, Group, center, derived_length
from .invariants import c_count, is_cyclic, lambda_count, maximal_cyclic_order_counts
from .numtheory import prime_power
from .structure import CLIQUE_CAP, check_noncommuting, check_pgroup_bound, check_solbound


@dataclass
class InvariantReport:
    spec: str
    order: int
    c: int
    # "lambda" is reserved in Python; serialized under that name
    lam: int
    center_order: int
    derived_length: int | None
    is_cyclic: bool
    maximal_cyclic_orders: dict[int, int]
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        out["lambda"] = out.pop("lam")
        out["derived_length"] = "unsolvable" if self.derived_length is None else self.derived_length
        out["maximal_cyclic_orders"] = {str(k): v for k, v in self.maximal_cyclic_orders.items()}
        return out

    def render(self) -> str:
        dl = "unsolvable" if self.derived_length is None else self.derived_length
        mc = ", ".join(f"{k}^{v}" if v > 1 else str(k) for k, v in self.maximal_cyclic_orders.items())
        lines = [
            f"group           {self.spec}",
            f"order           {self.order}",
            f"c(G)            {self.c}",
            f"lambda(G)       {self.lam}",
            f"|Z(G)|          {self.center_order}",
            f"derived length  {dl}",
            f"maximal cyclic  orders {mc}  (order^multiplicity)",
        ]
        for name, ok in self.checks.items():
            lines.append(f"check {name:<10}{'holds' if ok else 'FAILS'}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def invariant_report(g: Group) -> InvariantReport:
    rep = InvariantReport(
        spec=str(g.spec) if g.spec is not None else "?",
        order=g.order,
        c=c_count(g),
        lam=lambda_count(g),
        center_order=len(center(g)),
        derived_length=derived_length(g),
        is_cyclic=is_cyclic(g),
        maximal_cyclic_orders=maximal_cyclic_order_counts(g),
    )
    sol = check_solbound(g)
    if sol is not None:
        rep.checks["solbound"] = sol.verdict
    if prime_power(g.order) and not rep.is_cyclic:
        rep.checks["pgroup"] = check_pgroup_bound(g).verdict
    if g.order <= CLIQUE_CAP:
        rep.checks["noncomm"] = check_noncommuting(g).verdict
    if g.order <= LATTICE_CAP:
        n = covering_kernel(g)
        rep.notes.append(f"covering kernel has order {len(n)}")
    if rep.is_cyclic:
        rep.notes.append("cyclic: no covering by proper subgroups; lambda = 1 by convention")
    return rep
