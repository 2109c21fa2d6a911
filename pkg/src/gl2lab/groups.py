"""Finite subgroups of GL_2(Z/nZ).

A ``MatrixGroup`` is defined by generators. Its element set (a sorted
numpy array of matrix codes) is produced on first use, either by a
closed-form enumeration for the named families or by breadth-first
closure. Membership tests for the named families use predicates, so
GL_2(47) can take part in orbit computations without ever being listed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    ClosureOverflow,
    InvalidModulus,
    MismatchedModulus,
    NotASubgroup,
    NotInBorel,
    SingularMatrix,
    SpecSyntaxError,
    UnsupportedFamily,
)
from .mat2 import (
    GAMMA_SHEAR,
    GAMMA_ZERO,
    SWAP,
    Mat2,
    all_invertible_codes,
    decode,
    det_codes,
    encode,
    gl2_order,
    left_mul_codes,
    mat_inv,
    mul_codes,
    parse_matrix,
)
from .residue import is_prime, least_generator, quad_ext_generator, units

Predicate = Callable[[np.ndarray], np.ndarray]

FAMILIES = (
    "GL2", "Borel", "SplitCartan", "SplitNormalizer", "NonsplitCartan",
    "NonsplitNormalizer", "Gell", "Scalars", "SplitCartanPower",
)

# spec-language short names
SHORT_NAMES = {
    "GL2": "GL2", "B": "Borel", "Cs": "SplitCartan", "Ns": "SplitNormalizer",
    "Cns": "NonsplitCartan", "Nns": "NonsplitNormalizer", "Gell": "Gell", "Z": "Scalars",
}
LONG_TO_SHORT = {v: k for k, v in SHORT_NAMES.items()}


class MatrixGroup:
    """Subgroup of GL_2(Z/nZ) generated by ``generators``."""

    def __init__(self, n: int, generators: Iterable[Mat2], *, spec: str | None = None,
                 elements: np.ndarray | None = None,
                 element_factory: Callable[[], np.ndarray] | None = None,
                 member: Predicate | None = None, order: int | None = None,
                 full: bool = False):
        gens = []
        for g in generators:
            if g.n != n:
                raise MismatchedModulus(f"generator {g} is mod {g.n}, group is mod {n}")
            if not g.is_invertible():
                raise SingularMatrix(f"generator {g} is not invertible")
            if g != Mat2.identity(n) and g not in gens:
                gens.append(g)
        self.n = n
        self.generators: tuple[Mat2, ...] = tuple(gens)
        self._spec = spec
        self._elements = None if elements is None else np.asarray(elements, dtype=np.int64)
        self._factory = element_factory
        self._member = member
        self._order = order
        self.full = full

    # -- element set ---------------------------------------------------
    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            if self._factory is not None:
                els = np.unique(self._factory())
            else:
                els = close_codes(self.generators, self.n)
            els.setflags(write=False)
            self._elements = els
            if self._order is not None and self._order != len(els):
                raise AssertionError(f"{self.spec}: order {self._order} != {len(els)}")
        return self._elements

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = int(len(self.elements))
        return self._order

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Mat2]:
        n = self.n
        for code in self.elements:
            yield Mat2.from_code(int(code), n)

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.full:
            dets = det_codes(codes, self.n)
            return np.array([gcd(int(x), self.n) == 1 for x in dets], dtype=bool)
        if self._member is not None and self._elements is None:
            return self._member(codes)
        els = self.elements
        pos = np.searchsorted(els, codes)
        pos = np.minimum(pos, len(els) - 1)
        return els[pos] == codes

    def __contains__(self, m: Mat2) -> bool:
        if m.n != self.n:
            return False
        return bool(self.contains_codes(np.array([m.code]))[0])

    def contains_group(self, other: "MatrixGroup") -> bool:
        if other.n != self.n:
            raise MismatchedModulus(f"{other.n} != {self.n}")
        if not other.generators:
            return True
        return bool(self.contains_codes(np.array([g.code for g in other.generators])).all())

    def element_key(self) -> bytes:
        return self.elements.tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGroup):
            return NotImplemented
        return (self.n == other.n and self.order == other.order
                and self.contains_group(other))

    def __hash__(self) -> int:
        return hash((self.n, self.order))

    @property
    def spec(self) -> str:
        if self._spec is None:
            self._spec = gen_spec(self.n, self.generators)
        return self._spec

    def __repr__(self) -> str:
        return f"MatrixGroup({self.spec}, order={self.order})"

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(g @ h == h @ g for g in gs for h in gs)


def gen_spec(n: int, gens: Sequence[Mat2]) -> str:
    lits = sorted(g.literal() for g in gens)
    return f"gen({n};{','.join(lits)})" if lits else f"gen({n};[[1,0],[0,1]])"


def close_codes(gens: Sequence[Mat2], n: int) -> np.ndarray:
    """Sorted codes of the group generated by ``gens`` (breadth-first)."""
    cap = gl2_order(n)
    elems = np.array([Mat2.identity(n).code], dtype=np.int64)
    frontier = elems
    while frontier.size and gens:
        new = np.unique(np.concatenate([mul_codes(frontier, g) for g in gens]))
        new = np.setdiff1d(new, elems, assume_unique=True)
        if new.size == 0:
            break
        elems = np.union1d(elems, new)
        if elems.size > cap:
            raise ClosureOverflow(f"closure exceeded |GL_2({n})| = {cap}")
        frontier = new
    return elems


def closure(gens: Sequence[Mat2], n: int | None = None, spec: str | None = None) -> MatrixGroup:
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("closure([]) needs an explicit modulus")
        n = gens[0].n
    grp = MatrixGroup(n, gens, spec=spec)
    grp.elements  # eager
    return grp


def from_codes(codes: np.ndarray, n: int, spec: str | None = None,
               generators: Sequence[Mat2] | None = None) -> MatrixGroup:
    """Wrap a known-closed element set. Generators default to a greedy
    generating subset."""
    els = np.unique(np.asarray(codes, dtype=np.int64))
    if generators is None:
        generators = greedy_generators(els, n)
    return MatrixGroup(n, generators, spec=spec, elements=els)


def greedy_generators(els: np.ndarray, n: int) -> list[Mat2]:
    """Pick elements in code order until they generate ``els``."""
    gens: list[Mat2] = []
    current = np.array([Mat2.identity(n).code], dtype=np.int64)
    target = len(els)
    for code in els:
        if len(current) == target:
            break
        pos = np.searchsorted(current, code)
        if pos < len(current) and current[pos] == code:
            continue
        gens.append(Mat2.from_code(int(code), n))
        current = close_codes(gens, n)
    return gens


# -- named families ------------------------------------------------------

def _require_prime(ell: int, low: int = 3) -> None:
    if ell < low or not is_prime(ell):
        raise InvalidModulus(f"need a prime >= {low}, got {ell}")


def _unit_mask(n: int) -> np.ndarray:
    return np.array([gcd(x, n) == 1 for x in range(n)], dtype=bool)


def _grid(*ranges) -> list[np.ndarray]:
    return [g.ravel() for g in np.meshgrid(*ranges, indexing="ij")]


def gl2(n: int) -> MatrixGroup:
    if n < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {n}")
    gens = [Mat2(n, *GAMMA_SHEAR), Mat2(n, 0, -1, 1, 0)]
    gens += [Mat2.diag(u, 1, n) for u in units(n) if u != 1]
    spec = f"GL2({n})"
    return MatrixGroup(n, gens, spec=spec, element_factory=lambda: all_invertible_codes(n),
                       order=gl2_order(n), full=True)


def standard_group(family: str, ell: int, e: int | None = None) -> MatrixGroup:
    """One of the named subgroups of GL_2(F_l)."""
    family = SHORT_NAMES.get(family, family)
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}")
    _require_prime(ell)
    if family == "Gell" and ell < 5:
        raise UnsupportedFamily("Gell requires l >= 5")
    n = ell
    g = least_generator(ell)
    units_arr = np.arange(1, ell, dtype=np.int64)
    umask = _unit_mask(n)

    if family == "GL2":
        return gl2(ell)

    if family == "Borel":
        gens = [Mat2(n, *GAMMA_SHEAR), Mat2.diag(g, 1, n), Mat2.diag(1, g, n)]

        def factory():
            a, b, d = _grid(units_arr, np.arange(ell), units_arr)
            return encode(a, b, 0 * a, d, n)

        def member(codes):
            a, b, c, d = decode(codes, n)
            return (c == 0) & umask[a] & umask[d]

        return MatrixGroup(n, gens, spec=f"B({ell})", element_factory=factory, member=member,
                           order=ell * (ell - 1) ** 2)

    if family in ("SplitCartan", "SplitNormalizer"):
        gens = [Mat2.diag(g, 1, n), Mat2.diag(1, g, n)]
        normalizer = family == "SplitNormalizer"
        if normalizer:
            gens.append(Mat2(n, *SWAP))

        def factory():
            a, d = _grid(units_arr, units_arr)
            z = 0 * a
            cs = encode(a, z, z, d, n)
            return np.concatenate([cs, encode(z, a, d, z, n)]) if normalizer else cs

        def member(codes):
            a, b, c, d = decode(codes, n)
            diag = (b == 0) & (c == 0) & umask[a] & umask[d]
            if not normalizer:
                return diag
            return diag | ((a == 0) & (d == 0) & umask[b] & umask[c])

        short = "Ns" if normalizer else "Cs"
        return MatrixGroup(n, gens, spec=f"{short}({ell})", element_factory=factory,
                           member=member, order=(2 if normalizer else 1) * (ell - 1) ** 2)

    if family in ("NonsplitCartan", "NonsplitNormalizer"):
        eps = least_generator(ell)
        z = quad_ext_generator(ell)
        gens = [Mat2(n, z.a, z.b * eps, z.b, z.a)]
        normalizer = family == "NonsplitNormalizer"
        if normalizer:
            gens.append(Mat2(n, *GAMMA_ZERO))

        def factory():
            a, b = _grid(np.arange(ell), np.arange(ell))
            keep = (a != 0) | (b != 0)
            a, b = a[keep], b[keep]
            cns = encode(a, b * eps % n, b, a, n)
            if not normalizer:
                return cns
            return np.concatenate([cns, encode(a, b * eps % n, -b % n, -a % n, n)])

        def member(codes):
            a, b, c, d = decode(codes, n)
            nz = (a != 0) | (c != 0)
            cns = (a == d) & (b == c * eps % n) & nz
            if not normalizer:
                return cns
            return cns | ((a == (-d) % n) & (b == (-c * eps) % n) & nz)

        short = "Nns" if normalizer else "Cns"
        return MatrixGroup(n, gens, spec=f"{short}({ell})", element_factory=factory,
                           member=member, order=(2 if normalizer else 1) * (ell * ell - 1))

    if family == "Gell":
        eps = least_generator(ell)
        z = quad_ext_generator(ell)
        c = Mat2(n, z.a, z.b * eps, z.b, z.a)
        return MatrixGroup(n, [Mat2(n, *GAMMA_ZERO), c ** 3], spec=f"Gell({ell})")

    if family == "Scalars":
        def factory():
            return encode(units_arr, 0 * units_arr, 0 * units_arr, units_arr, n)

        def member(codes):
            a, b, c, d = decode(codes, n)
            return (a == d) & (b == 0) & (c == 0) & umask[a]

        return MatrixGroup(n, [Mat2.scalar(g, n)], spec=f"Z({ell})", element_factory=factory,
                           member=member, order=ell - 1)

    # SplitCartanPower
    if e is None or e < 1:
        raise UnsupportedFamily("SplitCartanPower needs e >= 1")
    ge = pow(g, e, ell)
    powers = np.unique([pow(int(u), e, ell) for u in units_arr])
    pmask = np.zeros(n, dtype=bool)
    pmask[powers] = True

    def factory():
        a, d = _grid(powers, powers)
        return encode(a, 0 * a, 0 * a, d, n)

    def member(codes):
        a, b, c, d = decode(codes, n)
        return (b == 0) & (c == 0) & pmask[a] & pmask[d]

    k = len(powers)
    return MatrixGroup(n, [Mat2.diag(ge, 1, n), Mat2.diag(1, ge, n)], spec=f"CsPow({ell},{e})",
                       element_factory=factory, member=member, order=k * k)


def shear_group(ell: int) -> MatrixGroup:
    """U = {[[1, b], [0, 1]]}."""
    n = ell

    def factory():
        b = np.arange(n, dtype=np.int64)
        return encode(0 * b + 1, b, 0 * b, 0 * b + 1, n)

    return MatrixGroup(n, [Mat2(n, *GAMMA_SHEAR)], element_factory=factory, order=ell)


# -- group operations ----------------------------------------------------

def index(G: MatrixGroup, H: MatrixGroup) -> int:
    if G.n != H.n:
        raise MismatchedModulus(f"{G.n} != {H.n}")
    if not G.contains_group(H):
        raise NotASubgroup(f"{H.spec} is not contained in {G.spec}")
    q, r = divmod(G.order, H.order)
    assert r == 0, "Lagrange violated"
    return q


@dataclass(frozen=True)
class DetImage:
    values: tuple[int, ...]
    surjective: bool


def det_image(G: MatrixGroup) -> DetImage:
    """det(G) as a subgroup of the units; generated by the generator dets."""
    n = G.n
    vals = {1 % n}
    dets = [g.det() for g in G.generators]
    frontier = list(vals)
    while frontier:
        nxt = []
        for x in frontier:
            for d in dets:
                y = x * d % n
                if y not in vals:
                    vals.add(y)
                    nxt.append(y)
        frontier = nxt
    return DetImage(tuple(sorted(vals)), len(vals) == len(units(n)))


def conjugate(G: MatrixGroup, m: Mat2) -> MatrixGroup:
    """m^-1 G m."""
    mi = mat_inv(m)
    gens = [mi @ g @ m for g in G.generators]
    els = None
    if G._elements is not None:
        els = np.unique(mul_codes(left_mul_codes(mi, G._elements), m))
    return MatrixGroup(G.n, gens, elements=els, order=G._order)


def join(*groups: MatrixGroup) -> MatrixGroup:
    n = groups[0].n
    gens = [g for G in groups for g in G.generators]
    if any(G.n != n for G in groups):
        raise MismatchedModulus("join of groups with different moduli")
    return MatrixGroup(n, gens)


def semisimplify_borel(G: MatrixGroup) -> MatrixGroup:
    """Image of G under [[a, b], [0, d]] -> diag(a, d)."""
    for g in G.generators:
        if g.c != 0:
            raise NotInBorel(f"{g} is not upper triangular")
    # the diagonal projection is a homomorphism on B, so generator images suffice
    return MatrixGroup(G.n, [Mat2.diag(g.a, g.d, G.n) for g in G.generators])


CARTAN_POWERS = (1, 2, 3, 4, 6)


def minimal_cartan_power(G: MatrixGroup) -> int | None:
    ell = G.n
    _require_prime(ell)
    g = least_generator(ell)
    for e in CARTAN_POWERS:
        ge = pow(g, e, ell)
        if Mat2.diag(ge, 1, ell) in G and Mat2.diag(1, ge, ell) in G:
            return e
    return None


def power_subgroup(G: MatrixGroup, k: int) -> MatrixGroup:
    """{m^k : m in G} for abelian G."""
    if not G.is_abelian():
        raise ValueError("power_subgroup needs an abelian group")
    gens = [g ** k for g in G.generators]
    return MatrixGroup(G.n, gens)


def is_upper_triangular(G: MatrixGroup) -> bool:
    return all(g.c == 0 for g in G.generators)


# -- group-spec mini-language -------------------------------------------

_FAMILY_CALL = re.compile(r"(GL2|B|Cs|Ns|Cns|Nns|Gell|Z)\(\s*(\d+)\s*\)")
_CSPOW = re.compile(r"CsPow\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_group_spec(text: str) -> MatrixGroup:
    """Parse ``B(7)``, ``CsPow(7,2)``, ``gen(n;[[..]],...)`` or ``join(s,s)``."""
    s = text.strip().replace(" ", "")
    mt = _FAMILY_CALL.fullmatch(s)
    if mt:
        fam, ell = mt.group(1), int(mt.group(2))
        if fam == "GL2" and not is_prime(ell):
            return gl2(ell)
        return standard_group(SHORT_NAMES[fam], ell)
    mt = _CSPOW.fullmatch(s)
    if mt:
        return standard_group("SplitCartanPower", int(mt.group(1)), int(mt.group(2)))
    if s.startswith("gen(") and s.endswith(")"):
        body = s[4:-1]
        if ";" not in body:
            raise SpecSyntaxError(f"gen spec needs 'n;' prefix: {text!r}")
        n_txt, mats = body.split(";", 1)
        if not n_txt.isdigit():
            raise SpecSyntaxError(f"bad modulus in {text!r}")
        n = int(n_txt)
        gens = [parse_matrix(m, n) for m in _split_top(mats, ",") if m]
        grp = MatrixGroup(n, gens)
        grp._spec = s if gens else None
        return grp
    if s.startswith("join(") and s.endswith(")"):
        parts = _split_top(s[5:-1], ",")
        if len(parts) != 2:
            raise SpecSyntaxError(f"join takes two specs: {text!r}")
        grp = join(parse_group_spec(parts[0]), parse_group_spec(parts[1]))
        grp._spec = s
        return grp
    raise SpecSyntaxError(f"cannot parse group spec {text!r}")
