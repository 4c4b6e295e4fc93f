"""Finite groups as dense Cayley tables, plus the structural machinery on top.

Element index 0 is always the identity.  Canonical enumerations:

* ``Cyclic(n)``: index ``i`` is ``a**i``.
* ``Abelian([d1..dk])``: mixed radix, first factor most significant.
* ``Dihedral(n)``: rotations ``r**0 .. r**(n-1)`` then reflections ``s*r**i`` at ``n + i``.
* ``Dicyclic(n)``: ``a**i`` at ``i`` and ``a**i * x`` at ``2n + i``, with
  ``a**(2n) = 1``, ``x**2 = a**n``, ``x**-1 a x = a**-1``.
* ``SemidirectCyclic(m, n, k)``: ``a**i * b**j`` at ``i + m*j`` with
  ``b a b**-1 = a**k``.
* ``direct_product(g, h)``: pair ``(i, j)`` at ``i * |h| + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import CayleyParseError, InvalidSpec, NotNormal, NotSubgroup, OrderCap
from .specs import (
    Abelian,
    CayleyFile,
    Cyclic,
    Dicyclic,
    Dihedral,
    GroupSpec,
    Product,
    SemidirectCyclic,
    Table,
)

ORDER_CAP = 8192
LATTICE_CAP = 256
AUDIT_EXHAUSTIVE = 512
DEFAULT_SEED = 0

_DTYPE = np.int32
# rows per block when filling large tables
_BLOCK_ELEMS = 1 << 22


def _mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little", count=n).astype(bool)


class Group:
    """A finite group stored as its multiplication table.

    ``table[i, j]`` is the index of ``i * j``.  Instances are treated as
    immutable; derived data is cached on the instance.
    """

    def __init__(self, table, spec: GroupSpec | None = None):
        table = np.ascontiguousarray(table, dtype=_DTYPE)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidSpec(f"Cayley table must be a non-empty square array, got shape {table.shape}")
        table.setflags(write=False)
        self.table = table
        self.order = int(table.shape[0])
        self.spec = spec
        self.cache: dict = {}

    def __repr__(self):
        return f"Group({self.spec if self.spec is not None else '?'}, order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.argmax(self.table == 0, axis=1).astype(np.intp)
        inv.setflags(write=False)
        return inv

    @cached_property
    def elem_order(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        active = np.arange(n, dtype=np.intp)
        cur = active.copy()
        k = 1
        while active.size:
            if k > n:
                raise InvalidSpec("table is not a group: some element has no finite order")
            done = cur == 0
            orders[active[done]] = k
            active = active[~done]
            cur = self.table[cur[~done], active]
            k += 1
        orders.setflags(write=False)
        return orders

    def power(self, x: int, k: int) -> int:
        k %= int(self.elem_order[x])
        result, base = 0, x
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    def powers(self, x: int) -> np.ndarray:
        """``[x**0, x**1, ..., x**(o(x)-1)]``."""
        o = int(self.elem_order[x])
        out = np.empty(o, dtype=np.intp)
        cur = 0
        row = self.table[:, x]
        for i in range(o):
            out[i] = cur
            cur = row[cur]
        return out

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.elem_order))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def full(self) -> "ElementSet":
        return ElementSet(self, (1 << self.order) - 1)

    def trivial(self) -> "ElementSet":
        return ElementSet(self, 1)

    def subset(self, indices: Iterable[int]) -> "ElementSet":
        return ElementSet.from_indices(self, indices)


@dataclass(frozen=True, eq=False)
class ElementSet:
    """Set of element indices of ``parent``, stored as an int bitset."""

    parent: Group
    bits: int

    @classmethod
    def from_indices(cls, parent: Group, indices) -> "ElementSet":
        mask = np.zeros(parent.order, dtype=bool)
        mask[np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.intp)] = True
        return cls(parent, _mask_to_bits(mask))

    @classmethod
    def from_mask(cls, parent: Group, mask: np.ndarray) -> "ElementSet":
        return cls(parent, _mask_to_bits(np.asarray(mask, dtype=bool)))

    def __eq__(self, other):
        return isinstance(other, ElementSet) and other.parent is self.parent and other.bits == self.bits

    def __hash__(self):
        return hash(self.bits)

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool((self.bits >> int(i)) & 1)

    def __iter__(self):
        return iter(self.indices().tolist())

    def __le__(self, other: "ElementSet") -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.bits != other.bits

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.parent, self.bits & other.bits)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.parent, self.bits | other.bits)

    def __repr__(self):
        idx = self.indices().tolist()
        shown = idx if len(idx) <= 12 else idx[:12] + ["..."]
        return f"ElementSet(size={len(idx)}, {shown})"

    def mask(self) -> np.ndarray:
        return _bits_to_mask(self.bits, self.parent.order)

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask())

    def is_subgroup(self) -> bool:
        if not self.bits & 1:
            return False
        idx = self.indices()
        mask = self.mask()
        # Finite: closure under multiplication suffices.
        return bool(mask[self.parent.table[np.ix_(idx, idx)]].all())


# --------------------------------------------------------------------------
# constructors


def _fill(n: int, rowfunc) -> np.ndarray:
    """Fill an n x n table block-by-block; ``rowfunc(rows)`` returns the block."""
    table = np.empty((n, n), dtype=_DTYPE)
    step = max(1, _BLOCK_ELEMS // n)
    for start in range(0, n, step):
        rows = np.arange(start, min(n, start + step), dtype=np.int64)
        table[start : start + rows.size] = rowfunc(rows)
    return table


def cyclic_table(n: int) -> np.ndarray:
    cols = np.arange(n, dtype=np.int64)
    return _fill(n, lambda r: (r[:, None] + cols[None, :]) % n)


def dihedral_table(n: int) -> np.ndarray:
    size = 2 * n
    cols = np.arange(size, dtype=np.int64)
    f, j = cols // n, cols % n

    def rows(r):
        e, i = r // n, r % n
        sign = np.where(f == 1, -1, 1)
        rot = (sign[None, :] * i[:, None] + j[None, :]) % n
        return ((e[:, None] + f[None, :]) % 2) * n + rot

    return _fill(size, rows)


def dicyclic_table(n: int) -> np.ndarray:
    size, half = 4 * n, 2 * n
    cols = np.arange(size, dtype=np.int64)
    f, j = cols // half, cols % half

    def rows(r):
        e, i = r // half, r % half
        sign = np.where(e == 1, -1, 1)
        both = (e[:, None] == 1) & (f[None, :] == 1)
        exp = (i[:, None] + sign[:, None] * j[None, :] + np.where(both, n, 0)) % half
        return ((e[:, None] + f[None, :]) % 2) * half + exp

    return _fill(size, rows)


def semidirect_table(m: int, n: int, k: int) -> np.ndarray:
    size = m * n
    kpow = np.array([pow(k, j, m) for j in range(n)], dtype=np.int64)
    cols = np.arange(size, dtype=np.int64)
    i2, j2 = cols % m, cols // m

    def rows(r):
        i1, j1 = r % m, r // m
        a = (i1[:, None] + i2[None, :] * kpow[j1][:, None]) % m
        b = (j1[:, None] + j2[None, :]) % n
        return a + m * b

    return _fill(size, rows)


def direct_product(g: Group, h: Group, cap: int = ORDER_CAP, spec: GroupSpec | None = None) -> Group:
    """Componentwise product; pair ``(i, j)`` gets index ``i * h.order + j``."""
    n = g.order * h.order
    if n > cap:
        raise OrderCap(f"direct product of order {n} exceeds cap {cap}")
    ng, nh = g.order, h.order
    tg = g.table.astype(np.int64)
    th = h.table.astype(np.int64)
    cols = np.arange(n, dtype=np.int64)
    cg, ch = cols // nh, cols % nh

    def rows(r):
        rg, rh = r // nh, r % nh
        return tg[rg][:, cg] * nh + th[rh][:, ch]

    if spec is None and g.spec is not None and h.spec is not None:
        spec = Product(g.spec, h.spec)
    return Group(_fill(n, rows), spec)


def build(spec: GroupSpec, cap: int = ORDER_CAP) -> Group:
    """Construct the group described by ``spec``.

    Raises InvalidSpec on violated constraints and OrderCap when the result
    would exceed ``cap`` elements.
    """
    if isinstance(spec, CayleyFile):
        return read_cayley_file(spec.path, cap=cap)
    if isinstance(spec, Table):
        raise InvalidSpec(f"cannot build provenance-only spec {spec}")
    spec.validate()
    n = spec.order()
    if n > cap:
        raise OrderCap(f"{spec} has order {n}, above cap {cap}")
    if isinstance(spec, Cyclic):
        return Group(cyclic_table(spec.n), spec)
    if isinstance(spec, Dihedral):
        return Group(dihedral_table(spec.n), spec)
    if isinstance(spec, Dicyclic):
        return Group(dicyclic_table(spec.n), spec)
    if isinstance(spec, SemidirectCyclic):
        return Group(semidirect_table(spec.m, spec.n, spec.k % spec.m if spec.m > 1 else 0), spec)
    if isinstance(spec, Abelian):
        g = Group(cyclic_table(spec.factors[0]))
        for d in spec.factors[1:]:
            g = direct_product(g, Group(cyclic_table(d)), cap=cap)
        g.spec = spec
        return g
    if isinstance(spec, Product):
        return direct_product(build(spec.left, cap), build(spec.right, cap), cap=cap, spec=spec)
    raise InvalidSpec(f"unknown spec type {type(spec).__name__}")


# --------------------------------------------------------------------------
# Cayley files


def read_cayley_header(path) -> int:
    with open(path) as fh:
        first = fh.readline()
    parts = first.split()
    if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit():
        raise CayleyParseError('expected header "order n"', line=1, column=1)
    return int(parts[1])


def parse_cayley(text: str, cap: int = ORDER_CAP, spec: GroupSpec | None = None) -> Group:
    lines = text.splitlines()
    if not lines:
        raise CayleyParseError("empty file", line=1, column=1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "order":
        raise CayleyParseError('expected header "order n"', line=1, column=1)
    try:
        n = int(head[1])
    except ValueError:
        raise CayleyParseError(f"order is not an integer: {head[1]!r}", line=1, column=lines[0].index(head[1]) + 1)
    if n < 1:
        raise CayleyParseError("order must be positive", line=1, column=lines[0].index(head[1]) + 1)
    if n > cap:
        raise OrderCap(f"Cayley file order {n} exceeds cap {cap}")
    body = [ln for ln in enumerate(lines[1:], start=2) if ln[1].strip()]
    if len(body) != n:
        raise CayleyParseError(f"expected {n} table rows, found {len(body)}", line=len(lines) + 1)
    table = np.empty((n, n), dtype=_DTYPE)
    for r, (lineno, line) in enumerate(body):
        col = 0
        entries = []
        for tok in line.split():
            col = line.index(tok, col)
            if not tok.isdigit():
                raise CayleyParseError(f"not a non-negative integer: {tok!r}", line=lineno, column=col + 1)
            v = int(tok)
            if v >= n:
                raise CayleyParseError(f"entry {v} out of range 0..{n - 1}", line=lineno, column=col + 1)
            entries.append(v)
            col += len(tok)
        if len(entries) != n:
            raise CayleyParseError(f"row has {len(entries)} entries, expected {n}", line=lineno, column=1)
        table[r] = entries
    g = Group(table, spec)
    result = audit(g, exhaustive=True)
    if not result.ok:
        raise InvalidSpec(f"Cayley table is not a group: {result.reason}")
    return g


def read_cayley_file(path, cap: int = ORDER_CAP) -> Group:
    return parse_cayley(Path(path).read_text(), cap=cap, spec=CayleyFile(str(path)))


def format_cayley(g: Group) -> str:
    rows = [f"order {g.order}"]
    rows.extend(" ".join(map(str, row)) for row in g.table.tolist())
    return "\n".join(rows) + "\n"


# --------------------------------------------------------------------------
# audit


@dataclass
class AuditResult:
    ok: bool
    triples_checked: int
    exhaustive: bool
    reason: str = ""
    witness: tuple[int, ...] | None = None


def audit(g: Group, exhaustive: bool | None = None, seed: int = DEFAULT_SEED) -> AuditResult:
    """Check identity, Latin-square and associativity properties of ``g.table``.

    Associativity is exhaustive up to ``AUDIT_EXHAUSTIVE`` elements (or when
    forced) and sampled with ``10 * n**2`` seeded random triples above.
    """
    t = g.table
    n = g.order
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        bad = int(np.flatnonzero((t[0] != ar) | (t[:, 0] != ar))[0])
        return AuditResult(False, 0, False, "index 0 is not the identity", (0, bad))
    srt = np.sort(t, axis=1)
    bad_rows = np.flatnonzero((srt != ar).any(axis=1))
    if bad_rows.size:
        return AuditResult(False, 0, False, f"row {bad_rows[0]} is not a permutation", (int(bad_rows[0]),))
    srt = np.sort(t, axis=0)
    bad_cols = np.flatnonzero((srt != ar[:, None]).any(axis=0))
    if bad_cols.size:
        return AuditResult(False, 0, False, f"column {bad_cols[0]} is not a permutation", (int(bad_cols[0]),))
    if exhaustive is None:
        exhaustive = n <= AUDIT_EXHAUSTIVE
    if exhaustive and n > AUDIT_EXHAUSTIVE:
        return _light_test(g)
    if exhaustive:
        for a in range(n):
            left = t[t[a]]  # (a*b)*c over all b, c
            right = t[a][t]  # a*(b*c)
            diff = left != right
            if diff.any():
                b, c = np.argwhere(diff)[0]
                return AuditResult(False, (a + 1) * n * n, True, "not associative", (a, int(b), int(c)))
        return AuditResult(True, n**3, True)
    rng = np.random.default_rng(seed)
    total = 10 * n * n
    done = 0
    while done < total:
        m = min(1 << 20, total - done)
        a, b, c = rng.integers(0, n, size=(3, m))
        diff = t[t[a, b], c] != t[a, t[b, c]]
        if diff.any():
            k = int(np.argmax(diff))
            return AuditResult(False, done + k + 1, False, "not associative", (int(a[k]), int(b[k]), int(c[k])))
        done += m
    return AuditResult(True, total, False)


def _light_test(g: Group) -> AuditResult:
    """Exact associativity via Light's test on a generating set.

    Elements ``s`` with ``(x s) y = x (s y)`` for all x, y form a subset closed
    under multiplication, hence a sub-quasigroup; checking a generating set
    therefore proves associativity at cost ``|gens| * n**2``.
    """
    t = g.table
    n = g.order
    try:
        gens = group_generators(g)
    except InvalidSpec as exc:
        return AuditResult(False, 0, True, str(exc))
    for s in gens:
        left = t[t[:, s]]  # (x s) y
        right = t[:, t[s]]  # x (s y)
        diff = left != right
        if diff.any():
            x, y = np.argwhere(diff)[0]
            return AuditResult(False, n * n, True, "not associative", (int(x), int(s), int(y)))
    return AuditResult(True, len(gens) * n * n, True)


def perturbed(g: Group, seed: int = DEFAULT_SEED) -> Group:
    """Copy of ``g`` with one non-identity table entry changed (fault injection)."""
    if g.order < 3:
        raise ValueError("need order >= 3 to perturb a non-identity entry")
    rng = np.random.default_rng(seed)
    t = g.table.copy()
    i, j = (int(v) for v in rng.integers(1, g.order, size=2))
    old = int(t[i, j])
    t[i, j] = next(v for v in range(1, g.order) if v != old)
    return Group(t, g.spec)


# --------------------------------------------------------------------------
# structure


def _as_indices(x) -> np.ndarray:
    if isinstance(x, ElementSet):
        return x.indices()
    return np.asarray(list(x), dtype=np.intp)


def _closure_mask(g: Group, start: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Mask of the subgroup generated by ``start`` and ``gens``.

    ``start`` must contain the identity.  Breadth-first right multiplication
    by the generators; finite, so inverses come for free.
    """
    mask = np.zeros(g.order, dtype=bool)
    mask[start] = True
    mask[0] = True
    allgens = np.unique(np.concatenate([gens, start])).astype(np.intp)
    frontier = np.flatnonzero(mask)
    while frontier.size:
        new = np.unique(g.table[np.ix_(frontier, allgens)])
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def subgroup_closure(g: Group, gens) -> ElementSet:
    """Least subgroup containing ``gens``."""
    idx = _as_indices(gens)
    return ElementSet.from_mask(g, _closure_mask(g, np.array([0], dtype=np.intp), idx))


def _join(g: Group, sub_mask: np.ndarray, sub_gens: np.ndarray, extra: int, extra_powers=None) -> np.ndarray:
    """``<H, extra>`` for a subgroup H given by mask and generators.

    Seeded with the product set ``H <extra>``, which is already the answer
    whenever ``<extra>`` normalizes H.
    """
    if extra_powers is None:
        extra_powers = g.powers(extra)
    mask = np.zeros(g.order, dtype=bool)
    mask[g.table[np.ix_(np.flatnonzero(sub_mask), extra_powers)].ravel()] = True
    # Semi-naive closure under products of pairs: word length doubles per round.
    t = g.table
    frontier = np.flatnonzero(mask)
    while frontier.size:
        members = np.flatnonzero(mask)
        new = np.concatenate([t[np.ix_(members, frontier)].ravel(), t[np.ix_(frontier, members)].ravel()])
        new = new[~mask[new]]
        if not new.size:
            break
        new = np.unique(new)
        mask[new] = True
        frontier = new
    return mask


def center(g: Group) -> ElementSet:
    if "center" not in g.cache:
        t = g.table
        mask = (t == t.T).all(axis=1)
        g.cache["center"] = ElementSet.from_mask(g, mask)
    return g.cache["center"]


def _conj_closed(g: Group, s_mask: np.ndarray, s_idx: np.ndarray, by: np.ndarray) -> np.ndarray:
    """For each x in ``by``: whether ``x^-1 s x`` lies in s for all s in ``s_idx``."""
    t = g.table
    inv = g.inv
    out = np.empty(by.size, dtype=bool)
    step = max(1, _BLOCK_ELEMS // max(1, s_idx.size))
    for start in range(0, by.size, step):
        xs = by[start : start + step]
        conj = t[t[inv[xs][:, None], s_idx[None, :]], xs[:, None]]
        out[start : start + xs.size] = s_mask[conj].all(axis=1)
    return out


def group_generators(g: Group) -> np.ndarray:
    """A small generating set, chosen greedily by decreasing element order."""
    if "generators" not in g.cache:
        order = np.argsort(-g.elem_order, kind="stable")
        mask = np.zeros(g.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for x in order:
            if not mask[x]:
                gens.append(int(x))
                mask = _join(g, mask, np.array(gens[:-1], dtype=np.intp), int(x))
            if mask.all():
                break
        g.cache["generators"] = np.array(gens, dtype=np.intp)
    return g.cache["generators"]


def normalizer(g: Group, s: ElementSet) -> ElementSet:
    """``{x : x^-1 s x = s}``; ``s`` must be a subgroup."""
    if not s.is_subgroup():
        raise NotSubgroup("normalizer expects a subgroup")
    return ElementSet.from_mask(g, _conj_closed(g, s.mask(), s.indices(), np.arange(g.order)))


def is_normal(g: Group, s: ElementSet) -> bool:
    return bool(_conj_closed(g, s.mask(), s.indices(), group_generators(g)).all())


def coset_labels(g: Group, n: ElementSet) -> tuple[np.ndarray, np.ndarray]:
    """Label every element by its coset ``xN``.

    Returns ``(labels, reps)``: cosets are numbered by increasing minimal
    member index, ``reps[c]`` is that minimal member.
    """
    nidx = n.indices()
    mins = np.empty(g.order, dtype=np.intp)
    step = max(1, _BLOCK_ELEMS // max(1, nidx.size))
    for start in range(0, g.order, step):
        xs = np.arange(start, min(g.order, start + step))
        mins[xs] = g.table[xs[:, None], nidx[None, :]].min(axis=1)
    reps, labels = np.unique(mins, return_inverse=True)
    return labels.astype(np.intp), reps


def quotient(g: Group, n: ElementSet) -> Group:
    """The group of cosets of a normal subgroup; identity coset at index 0."""
    if not n.is_subgroup() or not is_normal(g, n):
        raise NotNormal("quotient expects a normal subgroup")
    labels, reps = coset_labels(g, n)
    table = labels[g.table[np.ix_(reps, reps)]]
    spec = Table(f"{g.spec}/N{len(n)}")
    q = Group(table, spec)
    q.cache["coset_labels"] = labels
    return q


def induced_group(g: Group, s: ElementSet, label: str | None = None) -> Group:
    """Re-index the subgroup ``s`` as a standalone group (ascending parent index)."""
    if not s.is_subgroup():
        raise NotSubgroup("induced_group expects a subgroup")
    idx = s.indices()
    pos = np.full(g.order, -1, dtype=np.intp)
    pos[idx] = np.arange(idx.size)
    h = Group(pos[g.table[np.ix_(idx, idx)]], Table(label or f"{g.spec}|H{idx.size}"))
    h.cache["embedding"] = idx
    return h


def upper_central_Z2(g: Group) -> ElementSet:
    z = center(g)
    q = quotient(g, z)
    zq = center(q).mask()
    return ElementSet.from_mask(g, zq[q.cache["coset_labels"]])


def commutator_subgroup(g: Group, s: ElementSet) -> ElementSet:
    """``[s, s]`` for a subgroup ``s``, as the closure of all commutators."""
    idx = s.indices()
    t, inv = g.table, g.inv
    comms = np.zeros(g.order, dtype=bool)
    step = max(1, _BLOCK_ELEMS // max(1, idx.size))
    for start in range(0, idx.size, step):
        xs = idx[start : start + step]
        c = t[t[inv[xs][:, None], inv[idx][None, :]], t[xs[:, None], idx[None, :]]]
        comms[c.ravel()] = True
    return subgroup_closure(g, np.flatnonzero(comms))


def derived_series(g: Group) -> list[ElementSet]:
    """``[G, G', G'', ...]``.

    Ends at the trivial subgroup when g is solvable.  Otherwise the series
    stops at a perfect subgroup, which is listed twice to mark stabilization.
    """
    series = [g.full()]
    while len(series[-1]) > 1:
        nxt = commutator_subgroup(g, series[-1])
        series.append(nxt)
        if nxt == series[-2]:
            break
    return series


def derived_length(g: Group) -> int | None:
    """Number of strict steps down to the trivial group; None if unsolvable."""
    if "derived_length" not in g.cache:
        series = derived_series(g)
        g.cache["derived_length"] = len(series) - 1 if len(series[-1]) == 1 else None
    return g.cache["derived_length"]


def cyclic_classes(g: Group) -> list[tuple[int, np.ndarray]]:
    """Distinct cyclic subgroups as ``(canonical generator, powers)``.

    The canonical generator is the minimal index among generators.  Iterating
    elements in index order, the first unvisited element of a cyclic subgroup
    is its minimal generator; all its generators are then marked visited.
    """
    if "cyclic_classes" not in g.cache:
        n = g.order
        orders = g.elem_order
        visited = np.zeros(n, dtype=bool)
        out = []
        from math import gcd

        for x in range(n):
            if visited[x]:
                continue
            pw = g.powers(x)
            o = pw.size
            units = np.array([k for k in range(o) if gcd(k, o) == 1] or [0], dtype=np.intp)
            visited[pw[units]] = True
            out.append((x, pw))
        assert all(int(orders[x]) == pw.size for x, pw in out)
        g.cache["cyclic_classes"] = out
    return g.cache["cyclic_classes"]


def power_map(g: Group, k: int) -> np.ndarray:
    """Array ``x -> x**k`` over all elements."""
    ar = np.arange(g.order, dtype=np.intp)
    result, base = np.zeros(g.order, dtype=np.intp), ar
    while k:
        if k & 1:
            result = g.table[result, base]
        base = g.table[base, base]
        k >>= 1
    return result


def all_subgroups(g: Group, cap: int = LATTICE_CAP) -> list[ElementSet]:
    """Every subgroup exactly once, sorted by (size, bitset value).

    Join closure from the trivial group.  For solvable g every nontrivial
    subgroup K has a normal subgroup H of prime index p, and then
    ``K = H<x>`` for any ``x in K - H``; so it suffices to join H with
    elements ``x`` normalizing H with ``x**p in H``, where the join is just the
    product set.  Nonsolvable groups fall back to generic joins with
    prime-power-order cyclic subgroups.
    """
    if g.order > cap:
        raise OrderCap(f"subgroup lattice of order {g.order} above cap {cap}")
    if "all_subgroups" not in g.cache:
        if derived_length(g) is None:
            found = _lattice_generic(g)
        else:
            found = _lattice_solvable(g)
        subs = sorted(found, key=lambda b: (b.bit_count(), b))
        g.cache["all_subgroups"] = [ElementSet(g, b) for b in subs]
        g.cache["subgroup_generators"] = {b: found[b] for b in subs}
    return list(g.cache["all_subgroups"])


def _lattice_solvable(g: Group) -> dict[int, np.ndarray]:
    from .numtheory import prime_divisors

    t, inv = g.table, g.inv
    n = g.order
    ar = np.arange(n, dtype=np.intp)
    pmaps = [power_map(g, p) for p in prime_divisors(n)] if n > 1 else []
    triv = np.zeros(n, dtype=bool)
    triv[0] = True
    found: dict[int, np.ndarray] = {1: np.zeros(0, dtype=np.intp)}
    queue = [(1, triv)]
    while queue:
        hb, hmask = queue.pop()
        hgens = found[hb]
        hidx = np.flatnonzero(hmask)
        if hgens.size:
            conj = t[t[inv[:, None], hgens[None, :]], ar[:, None]]
            cand = hmask[conj].all(axis=1)
        else:
            cand = np.ones(n, dtype=bool)
        cand &= ~hmask
        ok = np.zeros(n, dtype=bool)
        for pm in pmaps:
            ok |= hmask[pm]
        cand &= ok
        covered = hmask.copy()
        for x in np.flatnonzero(cand):
            if covered[x]:
                continue
            kmask = np.zeros(n, dtype=bool)
            kmask[t[np.ix_(hidx, g.powers(int(x)))].ravel()] = True
            covered |= kmask
            kb = _mask_to_bits(kmask)
            if kb not in found:
                found[kb] = np.append(hgens, x).astype(np.intp)
                queue.append((kb, kmask))
    return found


def _lattice_generic(g: Group) -> dict[int, np.ndarray]:
    from .numtheory import prime_power

    pp = []
    for x, pw in cyclic_classes(g):
        if pw.size > 1 and prime_power(pw.size):
            m = np.zeros(g.order, dtype=bool)
            m[pw] = True
            pp.append((x, pw, _mask_to_bits(m)))
    triv = np.zeros(g.order, dtype=bool)
    triv[0] = True
    found: dict[int, np.ndarray] = {1: np.zeros(0, dtype=np.intp)}
    queue = [(1, triv)]
    while queue:
        hb, hmask = queue.pop()
        hgens = found[hb]
        for x, pw, cb in pp:
            if cb & ~hb == 0:
                continue
            kmask = _join(g, hmask, hgens, x, pw)
            kb = _mask_to_bits(kmask)
            if kb not in found:
                found[kb] = np.append(hgens, x).astype(np.intp)
                queue.append((kb, kmask))
    return found


def subgroup_generators(g: Group, s: ElementSet) -> np.ndarray:
    """Generators recorded for ``s`` by :func:`all_subgroups` (falls back to all elements)."""
    gens = g.cache.get("subgroup_generators", {}).get(s.bits)
    return gens if gens is not None else s.indices()


def normal_subgroups(g: Group, cap: int = LATTICE_CAP) -> list[ElementSet]:
    return [s for s in all_subgroups(g, cap) if is_normal(g, s)]
