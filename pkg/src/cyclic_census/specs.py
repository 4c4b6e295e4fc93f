"""Group constructor expressions.

Every spec prints in the CLI grammar (see :mod:`cyclic_census.grammar`), and
``parse(str(spec)) == spec`` for every spec built from these classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .errors import InvalidSpec


class GroupSpec:
    """Base class for constructor expressions."""

    def order(self) -> int:
        raise NotImplementedError

    def validate(self) -> None:
        """Raise :class:`InvalidSpec` if the arithmetic constraints fail."""

    def family(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def order(self):
        return self.n

    def validate(self):
        if self.n < 1:
            raise InvalidSpec(f"Cyclic(n) needs n >= 1, got {self.n}")

    def family(self):
        return "cyclic"

    def __str__(self):
        return f"C{self.n}"


@dataclass(frozen=True)
class Abelian(GroupSpec):
    """Invariant-factor form: ``factors[i]`` divides ``factors[i+1]``."""

    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def order(self):
        return prod(self.factors)

    def validate(self):
        if not self.factors:
            raise InvalidSpec("Abelian needs at least one invariant factor")
        if any(d < 1 for d in self.factors):
            raise InvalidSpec(f"Abelian factors must be positive: {list(self.factors)}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise InvalidSpec(f"Abelian factors must form a divisor chain: {a} does not divide {b}")

    def family(self):
        return "abelian"

    def __str__(self):
        return "Ab[" + ",".join(map(str, self.factors)) + "]"


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Dihedral group of order ``2n``."""

    n: int

    def order(self):
        return 2 * self.n

    def validate(self):
        if self.n < 1:
            raise InvalidSpec(f"Dihedral(n) needs n >= 1, got {self.n}")

    def family(self):
        return "dihedral"

    def __str__(self):
        return f"D{self.n}"


@dataclass(frozen=True)
class Dicyclic(GroupSpec):
    """Dicyclic group of order ``4n``; generalized quaternion when n is a power of 2."""

    n: int

    def order(self):
        return 4 * self.n

    def validate(self):
        if self.n < 2:
            raise InvalidSpec(f"Dicyclic(n) needs n >= 2, got {self.n}")

    def family(self):
        return "dicyclic"

    def __str__(self):
        return f"Dic{self.n}"


@dataclass(frozen=True)
class SemidirectCyclic(GroupSpec):
    """``C_m x| C_n`` where the generator of C_n acts on C_m by ``a -> a**k``."""

    m: int
    n: int
    k: int

    def order(self):
        return self.m * self.n

    def validate(self):
        m, n, k = self.m, self.n, self.k
        if m < 1 or n < 1:
            raise InvalidSpec(f"SemidirectCyclic needs m, n >= 1, got m={m}, n={n}")
        if gcd(k, m) != 1:
            raise InvalidSpec(f"SemidirectCyclic needs gcd(k, m) = 1, got k={k}, m={m}")
        if pow(k, n, m) != 1 % m:
            raise InvalidSpec(f"SemidirectCyclic needs k^n = 1 mod m, got {k}^{n} mod {m} = {pow(k, n, m)}")

    def family(self):
        return "semidirect"

    def __str__(self):
        return f"SD({self.m},{self.n};{self.k})"


@dataclass(frozen=True)
class CayleyFile(GroupSpec):
    path: str

    def order(self):
        # Only known after reading the header.
        from .groups import read_cayley_header

        return read_cayley_header(self.path)

    def family(self):
        return "table"

    def __str__(self):
        return f"file:{self.path}"


@dataclass(frozen=True)
class Table(GroupSpec):
    """Provenance label for groups derived from others (quotients, subgroups).

    Not buildable; carried on the resulting Group for reporting only.
    """

    label: str

    def order(self):
        raise InvalidSpec("Table specs are provenance labels and cannot be built")

    def family(self):
        return "table"

    def __str__(self):
        return f"<{self.label}>"


@dataclass(frozen=True)
class Product(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    def order(self):
        return self.left.order() * self.right.order()

    def validate(self):
        self.left.validate()
        self.right.validate()

    def family(self):
        return "product"

    def factors(self) -> list[GroupSpec]:
        """Flatten left-nested products."""
        out = []
        for side in (self.left, self.right):
            if isinstance(side, Product) and side is self.left:
                out.extend(side.factors())
            else:
                out.append(side)
        return out

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, Product) else str(self.right)
        return f"{self.left} x {right}"
