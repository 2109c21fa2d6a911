"""Torsion vectors of (Z/nZ)^2 and their cyclic submodules.

A cyclic submodule is named by its canonical generator: among all
generators k*v (k a unit mod the order of v) the one that is least in
(y, x) order. At prime level this gives exactly the forms (1, 0) for
<e1> and (k, 1) for C_k = <k e1 + e2>.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import InvalidDivisor, MismatchedModulus, SingularMatrix, ZeroVector
from .mat2 import Mat2
from .residue import is_prime


@dataclass(frozen=True)
class TorsionVector:
    n: int
    x: int
    y: int

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % self.n)
        object.__setattr__(self, "y", self.y % self.n)
        if self.x == 0 and self.y == 0:
            raise ZeroVector(f"zero vector mod {self.n}")

    @property
    def order(self) -> int:
        return vector_order(self)

    def scaled(self, k: int) -> "TorsionVector":
        return TorsionVector(self.n, k * self.x, k * self.y)

    def __str__(self) -> str:
        return f"({self.x},{self.y}) mod {self.n}"


@dataclass(frozen=True)
class CyclicSubmodule:
    n: int
    generator: TorsionVector
    order: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.generator.y, self.generator.x)

    def __lt__(self, other: "CyclicSubmodule") -> bool:
        return (self.n, self.key) < (other.n, other.key)

    def elements(self) -> frozenset[tuple[int, int]]:
        g = self.generator
        return frozenset(((k * g.x) % self.n, (k * g.y) % self.n) for k in range(self.order))

    def label(self) -> str:
        """``C_k`` / ``C_inf`` alias at prime level, ``<(x,y)> mod n`` otherwise."""
        g = self.generator
        if is_prime(self.n):
            if (g.x, g.y) == (1, 0):
                return "C_inf"
            if g.y == 1:
                return f"C_{g.x}"
        return str(self)

    def __str__(self) -> str:
        return f"<({self.generator.x},{self.generator.y})> mod {self.n}"


def vector_order(v: TorsionVector) -> int:
    return v.n // gcd(gcd(v.x, v.y), v.n)


def _order(x: int, y: int, n: int) -> int:
    return n // gcd(gcd(x, y), n)


def canonical_cyclic(v: TorsionVector) -> CyclicSubmodule:
    n = v.n
    d = vector_order(v)
    best = None
    for k in range(1, d + 1):
        if gcd(k, d) != 1:
            continue
        x, y = k * v.x % n, k * v.y % n
        if best is None or (y, x) < best:
            best = (y, x)
    return CyclicSubmodule(n, TorsionVector(n, best[1], best[0]), d)


def cyclic_of(x: int, y: int, n: int) -> CyclicSubmodule:
    return canonical_cyclic(TorsionVector(n, x, y))


def ck(k: int, ell: int) -> CyclicSubmodule:
    """C_k = <k e1 + e2>."""
    return CyclicSubmodule(ell, TorsionVector(ell, k, 1), ell)


def c_inf(ell: int) -> CyclicSubmodule:
    return CyclicSubmodule(ell, TorsionVector(ell, 1, 0), ell)


@dataclass(frozen=True)
class CycTable:
    """Every nontrivial cyclic submodule of (Z/nZ)^2 with a vector lookup.

    ``index[x*n + y]`` is the position in ``modules`` of <(x, y)>, or -1
    for the zero vector.
    """

    n: int
    modules: tuple[CyclicSubmodule, ...]
    index: np.ndarray

    def position(self, c: CyclicSubmodule) -> int:
        g = c.generator
        return int(self.index[g.x * self.n + g.y])


@lru_cache(maxsize=256)
def cyc_table(n: int) -> CycTable:
    # Visiting vectors in (y, x) order means the first unvisited member of
    # each class is its canonical generator.
    index = np.full(n * n, -1, dtype=np.int64)
    modules: list[CyclicSubmodule] = []
    for y in range(n):
        for x in range(n):
            if (x == 0 and y == 0) or index[x * n + y] >= 0:
                continue
            d = _order(x, y, n)
            pos = len(modules)
            modules.append(CyclicSubmodule(n, TorsionVector(n, x, y), d))
            for k in range(1, d):
                if gcd(k, d) == 1:
                    index[(k * x % n) * n + (k * y % n)] = pos
            index[x * n + y] = pos
    index.setflags(write=False)
    return CycTable(n, tuple(modules), index)


def enumerate_cyclic(n: int, d: int | str = "all") -> list[CyclicSubmodule]:
    """Nontrivial cyclic submodules (of order ``d`` if given), sorted by
    canonical generator in (y, x) order."""
    if d != "all":
        if not isinstance(d, int) or d < 1 or n % d:
            raise InvalidDivisor(f"{d} does not divide {n}")
    mods = cyc_table(n).modules
    if d == "all":
        return list(mods)
    return [c for c in mods if c.order == d]


def enumerate_vectors(n: int, d: int | None = None) -> list[TorsionVector]:
    """Nonzero vectors (of order ``d`` if given) sorted by (x, y)."""
    if d is not None and (d < 1 or n % d):
        raise InvalidDivisor(f"{d} does not divide {n}")
    out = []
    for x in range(n):
        for y in range(n):
            if (x or y) and (d is None or _order(x, y, n) == d):
                out.append(TorsionVector(n, x, y))
    return out


def act_on_vector(m: Mat2, v: TorsionVector) -> TorsionVector:
    if m.n != v.n:
        raise MismatchedModulus(f"{m.n} != {v.n}")
    if not m.is_invertible():
        raise SingularMatrix(f"{m} is not invertible")
    return TorsionVector(v.n, *m.apply(v.x, v.y))


def act_on_cyclic(m: Mat2, c: CyclicSubmodule) -> CyclicSubmodule:
    if m.n != c.n:
        raise MismatchedModulus(f"{m.n} != {c.n}")
    if not m.is_invertible():
        raise SingularMatrix(f"{m} is not invertible")
    x, y = m.apply(c.generator.x, c.generator.y)
    table = cyc_table(c.n)
    return table.modules[int(table.index[x * c.n + y])]
