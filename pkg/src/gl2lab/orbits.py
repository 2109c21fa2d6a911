"""Orbits and stabilizers of subgroups of GL_2(Z/nZ).

Orbit sizes are field degrees: #O_G(x) = [F(x):F]. Orbits are found as
connected components of the graph whose edges are generator images, so
the group itself is never enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvalidModulus, MismatchedModulus, WrongOrder
from .groups import MatrixGroup
from .mat2 import Mat2, mat_inv
from .residue import euler_phi, prime_factors
from .torsion import (
    CyclicSubmodule,
    TorsionVector,
    cyc_table,
    enumerate_cyclic,
    enumerate_vectors,
    vector_order,
)

Point = Union[TorsionVector, CyclicSubmodule]


@dataclass(frozen=True)
class Space:
    """``kind`` is "cyc" (cyclic submodules) or "vec" (nonzero vectors);
    ``order`` restricts to points of that order."""

    kind: str
    n: int
    order: int | None = None

    def __post_init__(self):
        if self.kind not in ("cyc", "vec"):
            raise ValueError(f"unknown space kind {self.kind!r}")

    def describe(self) -> str:
        what = "cyclic submodules" if self.kind == "cyc" else "vectors"
        suffix = f" of order {self.order}" if self.order else ""
        return f"{what}{suffix} mod {self.n}"


@dataclass(frozen=True)
class _Layout:
    points: tuple
    xs: np.ndarray
    ys: np.ndarray
    lookup: np.ndarray  # vector code x*n + y -> point index, -1 if absent


@lru_cache(maxsize=256)
def _layout(space: Space) -> _Layout:
    n = space.n
    if space.kind == "cyc":
        table = cyc_table(n)
        if space.order is None:
            pts = table.modules
        else:
            pts = tuple(enumerate_cyclic(n, space.order))
        pos_of = np.full(len(table.modules), -1, dtype=np.int64)
        for i, c in enumerate(pts):
            pos_of[table.position(c)] = i
        lookup = np.where(table.index >= 0, pos_of[np.maximum(table.index, 0)], -1)
        xs = np.array([c.generator.x for c in pts], dtype=np.int64)
        ys = np.array([c.generator.y for c in pts], dtype=np.int64)
    else:
        pts = tuple(enumerate_vectors(n, space.order))
        xs = np.array([v.x for v in pts], dtype=np.int64)
        ys = np.array([v.y for v in pts], dtype=np.int64)
        lookup = np.full(n * n, -1, dtype=np.int64)
        lookup[xs * n + ys] = np.arange(len(pts))
    return _Layout(tuple(pts), xs, ys, lookup)


def space_points(space: Space) -> tuple:
    return _layout(space).points


def permutation(m: Mat2, space: Space) -> np.ndarray:
    """Image index of every point of ``space`` under ``m``."""
    lay = _layout(space)
    n = space.n
    x = (m.a * lay.xs + m.b * lay.ys) % n
    y = (m.c * lay.xs + m.d * lay.ys) % n
    perm = lay.lookup[x * n + y]
    assert (perm >= 0).all(), "action left the space"
    return perm


def point_index(space: Space, p: Point) -> int:
    lay = _layout(space)
    v = p.generator if isinstance(p, CyclicSubmodule) else p
    idx = int(lay.lookup[v.x * space.n + v.y])
    if idx < 0:
        raise ValueError(f"{p} is not a point of {space.describe()}")
    return idx


@dataclass(frozen=True)
class Orbit:
    size: int
    representative: Point
    members: tuple


@dataclass(frozen=True)
class OrbitDecomposition:
    group: str
    space: Space
    orbits: tuple[Orbit, ...]

    @property
    def sizes(self) -> list[int]:
        return [o.size for o in self.orbits]

    def size_of(self, p: Point) -> int:
        for o in self.orbits:
            if p in o.members:
                return o.size
        raise KeyError(p)


def _labels(G: MatrixGroup, space: Space) -> np.ndarray:
    lay = _layout(space)
    npts = len(lay.points)
    if npts == 0:
        return np.zeros(0, dtype=np.int64)
    src, dst = [np.arange(npts)], [np.arange(npts)]
    for g in G.generators:
        src.append(np.arange(npts))
        dst.append(permutation(g, space))
    s, d = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(s), dtype=np.int8), (s, d)), shape=(npts, npts))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def orbit_size_array(G: MatrixGroup, space: Space) -> np.ndarray:
    """Orbit size of every point of ``space``, in point order."""
    if G.n != space.n:
        raise MismatchedModulus(f"group mod {G.n}, space mod {space.n}")
    labels = _labels(G, space)
    if labels.size == 0:
        return labels
    counts = np.bincount(labels)
    return counts[labels]


def orbit_decomposition(G: MatrixGroup, space: Space) -> OrbitDecomposition:
    if G.n != space.n:
        raise MismatchedModulus(f"group mod {G.n}, space mod {space.n}")
    pts = _layout(space).points
    labels = _labels(G, space)
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)
    # points are stored in canonical order, so the first member is the least
    orbits = [Orbit(len(idx), pts[idx[0]], tuple(pts[i] for i in idx)) for idx in groups.values()]
    orbits.sort(key=lambda o: (o.size, point_index(space, o.representative)))
    return OrbitDecomposition(G.spec, space, tuple(orbits))


def _space_for(p: Point, n: int) -> Space:
    return Space("cyc" if isinstance(p, CyclicSubmodule) else "vec", n)


def orbit(G: MatrixGroup, p: Point) -> list:
    space = _space_for(p, G.n)
    pts = _layout(space).points
    labels = _labels(G, space)
    lab = labels[point_index(space, p)]
    return [pts[i] for i in np.flatnonzero(labels == lab)]


def stabilizer(G: MatrixGroup, p: Point) -> MatrixGroup:
    """Stab_G(p) from Schreier generators; its order is |G| / |orbit|."""
    if p.n != G.n:
        raise MismatchedModulus(f"point mod {p.n}, group mod {G.n}")
    space = _space_for(p, G.n)
    perms = [permutation(g, space) for g in G.generators]
    start = point_index(space, p)
    transversal: dict[int, Mat2] = {start: Mat2.identity(G.n)}
    queue = [start]
    for i in queue:
        for g, perm in zip(G.generators, perms):
            j = int(perm[i])
            if j not in transversal:
                transversal[j] = g @ transversal[i]
                queue.append(j)
    schreier: list[Mat2] = []
    seen = set()
    for i, u in transversal.items():
        for g, perm in zip(G.generators, perms):
            s = mat_inv(transversal[int(perm[i])]) @ g @ u
            if s.code not in seen:
                seen.add(s.code)
                schreier.append(s)
    schreier.sort()
    return MatrixGroup(G.n, schreier, order=G.order // len(transversal))


# -- field-of-definition towers -----------------------------------------

def _prime_power(n: int) -> tuple[int, int]:
    ps = prime_factors(n)
    if len(ps) != 1:
        raise InvalidModulus(f"{n} is not a prime power")
    ell, k, m = ps[0], 0, n
    while m > 1:
        m //= ell
        k += 1
    return ell, k


@dataclass(frozen=True)
class TowerIndices:
    """Degrees in the tower F(P) / F(C), F(lP) / F(lC), as stabilizer
    indices. Bounds on the l-step are only asserted for exponent k >= 2."""

    ell: int
    k: int
    deg_P_over_C: int
    deg_P_over_lP: int
    deg_C_over_lC: int
    deg_lP_over_lC: int
    bound_P_over_C: int
    bound_P_over_lP: int | None
    bound_C_over_lC: int | None
    pass_P_over_C: bool
    pass_P_over_lP: bool | None
    pass_C_over_lC: bool | None
    tower_consistent: bool

    @property
    def passed(self) -> bool:
        flags = (self.pass_P_over_C, self.pass_P_over_lP, self.pass_C_over_lC)
        return self.tower_consistent and all(f is not False for f in flags)


@dataclass
class OrbitSizeCache:
    """Orbit sizes of one group on all vectors and all cyclic submodules."""

    G: MatrixGroup
    _vec: np.ndarray | None = field(default=None, repr=False)
    _cyc: np.ndarray | None = field(default=None, repr=False)

    def vec(self, x: int, y: int) -> int:
        n = self.G.n
        if x % n == 0 and y % n == 0:
            return 1
        space = Space("vec", n)
        if self._vec is None:
            self._vec = orbit_size_array(self.G, space)
        return int(self._vec[_layout(space).lookup[(x % n) * n + y % n]])

    def cyc(self, x: int, y: int) -> int:
        n = self.G.n
        if x % n == 0 and y % n == 0:
            return 1
        space = Space("cyc", n)
        if self._cyc is None:
            self._cyc = orbit_size_array(self.G, space)
        return int(self._cyc[_layout(space).lookup[(x % n) * n + y % n]])


def degree_point_over_cyclic(G: MatrixGroup, P: TorsionVector,
                             cache: OrbitSizeCache | None = None) -> int:
    """[F(P):F(<P>)] = [Stab(<P>) : Stab(P)] = #O(P) / #O(<P>)."""
    cache = cache or OrbitSizeCache(G)
    op, oc = cache.vec(P.x, P.y), cache.cyc(P.x, P.y)
    assert op % oc == 0
    return op // oc


def tower_indices(G: MatrixGroup, P: TorsionVector,
                  cache: OrbitSizeCache | None = None) -> TowerIndices:
    n = G.n
    if P.n != n:
        raise MismatchedModulus(f"point mod {P.n}, group mod {n}")
    ell, k = _prime_power(n)
    if vector_order(P) != n:
        raise WrongOrder(f"{P} does not have order {n}")
    cache = cache or OrbitSizeCache(G)
    o_p = cache.vec(P.x, P.y)
    o_c = cache.cyc(P.x, P.y)
    o_lp = cache.vec(ell * P.x, ell * P.y)
    o_lc = cache.cyc(ell * P.x, ell * P.y)
    d_pc, d_plp, d_clc, d_lplc = o_p // o_c, o_p // o_lp, o_c // o_lc, o_lp // o_lc
    phi = euler_phi(n)
    b_plp = ell * ell * (ell - 1) if k >= 2 else None
    b_clc = ell ** k * (ell - 1) ** 2 if k >= 2 else None
    return TowerIndices(
        ell=ell, k=k,
        deg_P_over_C=d_pc, deg_P_over_lP=d_plp, deg_C_over_lC=d_clc, deg_lP_over_lC=d_lplc,
        bound_P_over_C=phi, bound_P_over_lP=b_plp, bound_C_over_lC=b_clc,
        pass_P_over_C=phi % d_pc == 0,
        pass_P_over_lP=None if b_plp is None else b_plp % d_plp == 0,
        pass_C_over_lC=None if b_clc is None else b_clc % d_clc == 0,
        tower_consistent=d_clc * d_pc == d_plp * d_lplc,
    )


def orbit_size_grid(G: MatrixGroup, kind: str) -> np.ndarray:
    """Orbit sizes indexed by vector code x*n + y (zero vector -> 1).

    For ``kind == "cyc"`` the entry at v is the orbit size of <v>.
    """
    n = G.n
    space = Space(kind, n)
    sizes = orbit_size_array(G, space)
    lookup = _layout(space).lookup
    grid = np.ones(n * n, dtype=np.int64)
    nz = lookup >= 0
    grid[nz] = sizes[lookup[nz]]
    return grid
