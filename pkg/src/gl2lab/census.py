"""Exhaustive enumeration of the subgroup families the theorems quantify
over: subgroups of the split Cartan normalizer N_s(l) and the
non-diagonalizable subgroups of the Borel B(l).

Subgroups of C_s(l) ~ Z_m x Z_m (m = l - 1, coordinates are exponents of
the least generator g) are sublattices of Z^2 containing m Z^2, listed
by Hermite normal form: rows (a, t), (0, b) with a | m, b | m, 0 <= t < b
and b | (m / a) t.

``all_subgroups`` is the brute-force oracle: joins of cyclic subgroups
over a multiplication table, with no structural input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from pathlib import Path

import numpy as np

from .errors import InvalidModulus
from .groups import (
    MatrixGroup,
    det_image,
    minimal_cartan_power,
    standard_group,
)
from .mat2 import GAMMA_SHEAR, Mat2, decode, det_codes, encode, mul_codes
from .residue import divisors, is_prime, least_generator

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CensusConstraints:
    """Group-level hypotheses. ``require_full_det`` asks for
    det(G n C_s) = F_l^x, the determinant condition on the Cartan part;
    surjectivity of det on G alone is weaker (see ``det_full_on_group``)."""

    require_scalars: bool = False
    require_full_det: bool = False
    require_not_in_cartan: bool = False
    require_cartan_power: bool = False

    @classmethod
    def all(cls) -> "CensusConstraints":
        return cls(True, True, True, True)

    def active(self) -> list[str]:
        names = {
            "require_scalars": "scalars",
            "require_full_det": "full-det",
            "require_not_in_cartan": "not-in-cartan",
            "require_cartan_power": "cartan-power",
        }
        return [short for attr, short in names.items() if getattr(self, attr)]

    @classmethod
    def parse(cls, text: str) -> "CensusConstraints":
        if text in ("", "none"):
            return cls()
        if text == "all":
            return cls.all()
        lookup = {"scalars": "require_scalars", "full-det": "require_full_det",
                  "not-in-cartan": "require_not_in_cartan", "cartan-power": "require_cartan_power"}
        kwargs = {}
        for part in text.split(","):
            part = part.strip()
            if part not in lookup:
                raise ValueError(f"unknown constraint {part!r}")
            kwargs[lookup[part]] = True
        return cls(**kwargs)

    def admits(self, G: MatrixGroup) -> bool:
        ell = G.n
        if self.require_scalars and Mat2.scalar(least_generator(ell), ell) not in G:
            return False
        if self.require_not_in_cartan and all(g.b == 0 and g.c == 0 for g in G.generators):
            return False
        if self.require_full_det and not cartan_det_surjective(G):
            return False
        if self.require_cartan_power and minimal_cartan_power(G) is None:
            return False
        return True


def cartan_part(G: MatrixGroup) -> np.ndarray:
    """Element codes of G n C_s(l)."""
    _, b, c, _ = decode(G.elements, G.n)
    return G.elements[(b == 0) & (c == 0)]


def cartan_det_surjective(G: MatrixGroup) -> bool:
    dets = np.unique(det_codes(cartan_part(G), G.n))
    return len(dets) == G.n - 1


def det_full_on_group(G: MatrixGroup) -> bool:
    return det_image(G).surjective


# -- subgroups of Z_m x Z_m ---------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z_m^2 spanned by (a, t) and (0, b)."""

    m: int
    a: int
    t: int
    b: int

    @property
    def order(self) -> int:
        return (self.m // self.a) * (self.m // self.b)

    def points(self) -> np.ndarray:
        m = self.m
        x, y = np.meshgrid(np.arange(m // self.a), np.arange(m // self.b), indexing="ij")
        x, y = x.ravel(), y.ravel()
        return np.stack([(x * self.a) % m, (x * self.t + y * self.b) % m], axis=1)

    def contains(self, i: int, j: int) -> bool:
        m = self.m
        i, j = i % m, j % m
        if i % self.a:
            return False
        x = i // self.a
        return (j - x * self.t) % self.b == 0

    def swap_invariant(self) -> bool:
        return self.contains(self.t, self.a) and self.contains(self.b, 0)


def rank2_subgroups(m: int) -> list[Lattice]:
    out = []
    for a in divisors(m):
        for b in divisors(m):
            for t in range(b):
                if ((m // a) * t) % b == 0:
                    out.append(Lattice(m, a, t, b))
    return out


def _cs_codes(pts: np.ndarray, ell: int) -> np.ndarray:
    g = least_generator(ell)
    powers = np.array([pow(g, k, ell) for k in range(ell - 1)], dtype=np.int64)
    x, y = powers[pts[:, 0]], powers[pts[:, 1]]
    return encode(x, 0 * x, 0 * x, y, ell)


def _lattice_gens(lat: Lattice, ell: int) -> list[Mat2]:
    g = least_generator(ell)
    gens = [Mat2.diag(pow(g, lat.a, ell), pow(g, lat.t, ell), ell),
            Mat2.diag(1, pow(g, lat.b, ell), ell)]
    return [m for m in gens if m != Mat2.identity(ell)]


def cartan_subgroup(lat: Lattice, ell: int) -> MatrixGroup:
    codes = np.unique(_cs_codes(lat.points(), ell))
    return MatrixGroup(ell, _lattice_gens(lat, ell), elements=codes)


def enumerate_cs_subgroups(ell: int) -> list[MatrixGroup]:
    """Every subgroup of C_s(l)."""
    _check(ell, 3)
    return [cartan_subgroup(lat, ell) for lat in rank2_subgroups(ell - 1)]


def _check(ell: int, low: int) -> None:
    if ell < low or not is_prime(ell):
        raise InvalidModulus(f"need a prime >= {low}, got {ell}")


# -- N_s(l) ---------------------------------------------------------------

@dataclass(frozen=True)
class NsEntry:
    group: MatrixGroup
    cartan: Lattice
    coset: tuple[int, int] | None  # exponents (i, j) of t for the w*t coset, None if G = H


def _coset_reps(lat: Lattice) -> list[tuple[int, int]]:
    """Least representative (row-major) of each coset of the lattice in Z_m^2."""
    m = lat.m
    label = np.full((m, m), -1, dtype=np.int64)
    pts = lat.points()
    reps = []
    for i in range(m):
        for j in range(m):
            if label[i, j] >= 0:
                continue
            label[(pts[:, 0] + i) % m, (pts[:, 1] + j) % m] = len(reps)
            reps.append((i, j))
    return reps


def ns_entries(ell: int) -> list[NsEntry]:
    """All subgroups of N_s(l) with their Cartan part.

    G inside C_s is G = H. Otherwise G = H u (w t) H with w the coordinate
    swap; this is a group exactly when H is swap-invariant and
    (w t)^2 = det-free scalar xy*I lies in H, and distinct cosets t H give
    distinct groups.
    """
    _check(ell, 3)
    m = ell - 1
    g = least_generator(ell)
    powers = np.array([pow(g, k, ell) for k in range(m)], dtype=np.int64)
    entries: list[NsEntry] = []
    for lat in rank2_subgroups(m):
        H = cartan_subgroup(lat, ell)
        entries.append(NsEntry(H, lat, None))
        if not lat.swap_invariant():
            continue
        pts = lat.points()
        hx, hy = powers[pts[:, 0]], powers[pts[:, 1]]
        for i, j in _coset_reps(lat):
            if not lat.contains(i + j, i + j):
                continue
            x, y = int(powers[i]), int(powers[j])
            # (w t) h = [[0, y h2], [x h1, 0]] for t = diag(x, y), h = diag(h1, h2)
            anti = encode(0 * hx, (y * hy) % ell, (x * hx) % ell, 0 * hx, ell)
            codes = np.unique(np.concatenate([H.elements, anti]))
            gens = list(H.generators) + [Mat2(ell, 0, y, x, 0)]
            entries.append(NsEntry(MatrixGroup(ell, gens, elements=codes), lat, (i, j)))
    seen = set()
    unique = []
    for e in entries:
        key = e.group.element_key()
        if key not in seen:
            seen.add(key)
            unique.append(e)
    assert len(unique) == len(entries), "coset construction produced a duplicate"
    unique.sort(key=lambda e: (e.group.order, tuple(e.group.elements)))
    return unique


def enumerate_ns_subgroups(ell: int, constraints: CensusConstraints | None = None,
                           cache_dir: str | Path | None = None) -> list[MatrixGroup]:
    _check(ell, 5)
    groups = _cached("ns", ell, cache_dir, lambda: [e.group for e in ns_entries(ell)])
    constraints = constraints or CensusConstraints()
    return [G for G in groups if constraints.admits(G)]


# -- non-diagonalizable Borel subgroups -----------------------------------

def borel_over(lat: Lattice, ell: int) -> MatrixGroup:
    """U * H = {[[h1, b], [0, h2]] : diag(h1, h2) in H, b in F_l}."""
    g = least_generator(ell)
    powers = np.array([pow(g, k, ell) for k in range(ell - 1)], dtype=np.int64)
    pts = lat.points()
    h1 = np.repeat(powers[pts[:, 0]], ell)
    h2 = np.repeat(powers[pts[:, 1]], ell)
    b = np.tile(np.arange(ell, dtype=np.int64), len(pts))
    codes = np.unique(encode(h1, b, 0 * b, h2, ell))
    gens = [Mat2(ell, *GAMMA_SHEAR)] + _lattice_gens(lat, ell)
    return MatrixGroup(ell, gens, elements=codes)


def enumerate_borel_nondiag(ell: int, cache_dir: str | Path | None = None) -> list[MatrixGroup]:
    """Non-diagonalizable subgroups of B(l): exactly the groups U * H."""
    _check(ell, 3)

    def build():
        groups = [borel_over(lat, ell) for lat in rank2_subgroups(ell - 1)]
        groups.sort(key=lambda G: (G.order, tuple(G.elements)))
        return groups

    return _cached("borel", ell, cache_dir, build)


def _cached(family: str, ell: int, cache_dir, build):
    if cache_dir is None or ell < CACHE_MIN_L:
        return build()
    from .cache import read_census, write_census

    hit = read_census(cache_dir, family, ell)
    if hit is not None:
        log.info("census %s l=%d read from cache (%d groups)", family, ell, len(hit))
        return hit
    groups = build()
    write_census(cache_dir, family, ell, groups)
    log.info("census %s l=%d enumerated and cached (%d groups)", family, ell, len(groups))
    return groups


CACHE_MIN_L = 17


# -- brute-force oracle ---------------------------------------------------

def multiplication_table(G: MatrixGroup) -> np.ndarray:
    els = G.elements
    n = G.n
    table = np.empty((len(els), len(els)), dtype=np.int32)
    for j, code in enumerate(els):
        table[:, j] = np.searchsorted(els, mul_codes(els, Mat2.from_code(int(code), n)))
    return table


def subgroups_from_table(table: np.ndarray, ident: int,
                         base: np.ndarray | None = None,
                         base_gens: list[int] | None = None) -> list[np.ndarray]:
    """Boolean membership masks of every subgroup of the group with
    multiplication table ``table`` (containing ``base``, if given), found
    by repeatedly joining cyclic subgroups."""
    N = len(table)
    cyclic: dict[bytes, tuple[np.ndarray, int]] = {}
    for i in range(N):
        mask = np.zeros(N, dtype=bool)
        x = ident
        while not mask[x]:
            mask[x] = True
            x = int(table[x, i])
        key = np.packbits(mask).tobytes()
        if key not in cyclic:
            cyclic[key] = (mask, i)
    atoms = list(cyclic.values())

    def close(start: np.ndarray, gens: list[int]) -> np.ndarray:
        mask = start.copy()
        frontier = np.flatnonzero(mask)
        g = np.array(gens, dtype=np.int64)
        while frontier.size:
            nxt = np.unique(table[np.ix_(frontier, g)].ravel())
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    if base is None:
        base = np.zeros(N, dtype=bool)
        base[ident] = True
        base_gens = []
    found = {np.packbits(base).tobytes(): base}
    queue = [(base, list(base_gens or []))]
    while queue:
        S, gens = queue.pop()
        for mask, gi in atoms:
            if not (mask & ~S).any():
                continue
            J = close(S | mask, gens + [gi])
            key = np.packbits(J).tobytes()
            if key not in found:
                found[key] = J
                queue.append((J, gens + [gi]))
    return list(found.values())


def all_subgroups(G: MatrixGroup, containing: MatrixGroup | None = None) -> list[np.ndarray]:
    """Element-code arrays of every subgroup of G (containing the given
    subgroup, if any). Brute force over the multiplication table."""
    els = G.elements
    table = multiplication_table(G)
    ident = int(np.searchsorted(els, Mat2.identity(G.n).code))
    base = base_gens = None
    if containing is not None:
        base = np.zeros(len(els), dtype=bool)
        base[np.searchsorted(els, containing.elements)] = True
        base_gens = [int(np.searchsorted(els, g.code)) for g in containing.generators]
    masks = subgroups_from_table(table, ident, base, base_gens)
    out = [els[mask] for mask in masks]
    out.sort(key=lambda a: (len(a), tuple(a)))
    return out


def permutation_group(gens: list[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Elements (sorted) and multiplication table of the permutation group
    generated by ``gens``; table[i, j] is the index of p_i followed by p_j."""
    degree = len(gens[0]) if gens else 0
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(seen)
    pos = {p: i for i, p in enumerate(elems)}
    arr = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    table = np.empty((len(elems), len(elems)), dtype=np.int32)
    for j, q in enumerate(elems):
        comp = np.asarray(q)[arr]  # q after p, for every p
        table[:, j] = [pos[tuple(row)] for row in comp]
    return elems, table


def brute_force_ns_subgroups(ell: int) -> list[np.ndarray]:
    return all_subgroups(standard_group("SplitNormalizer", ell))


def brute_force_borel_nondiag(ell: int) -> list[np.ndarray]:
    """Subgroups of B(l) that contain the shear group U."""
    from .groups import shear_group

    return all_subgroups(standard_group("Borel", ell), containing=shear_group(ell))


def ns_index_statistic(G: MatrixGroup) -> tuple[int, int | None, bool | None]:
    """([N_s : G], e, whether the index divides gcd(l - 1, e))."""
    ell = G.n
    idx = 2 * (ell - 1) ** 2 // G.order
    e = minimal_cartan_power(G)
    if e is None:
        return idx, None, None
    return idx, e, gcd(ell - 1, e) % idx == 0
