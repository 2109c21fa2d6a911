"""Place a subgroup of GL_2(F_l) inside the Borel, a Cartan, or a Cartan
normalizer, up to conjugacy.

Points of the projective line over F_{l^2} are ``None`` (infinity,
the line <e1>) or an element z of F_l[sqrt(eps)] (the line <(z, 1)>).
A group lies in a Borel iff it fixes an F_l-point, in a split Cartan iff
it fixes two, in a split normalizer iff it stabilizes a pair of F_l
points, and in the nonsplit Cartan / normalizer iff it fixes / stabilizes
a Frobenius-conjugate pair off the F_l-line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd

import numpy as np

from .errors import InvalidModulus
from .groups import MatrixGroup, standard_group
from .mat2 import Mat2, all_invertible_codes, decode, encode, gl2_order, mat_inv
from .residue import QuadExtElem, is_prime, least_generator, sqrt_mod

LABELS = ("borel", "split-cartan", "split-normalizer", "nonsplit-cartan",
          "nonsplit-normalizer", "full")

LABEL_FAMILY = {
    "borel": "Borel",
    "split-cartan": "SplitCartan",
    "split-normalizer": "SplitNormalizer",
    "nonsplit-cartan": "NonsplitCartan",
    "nonsplit-normalizer": "NonsplitNormalizer",
    "full": "GL2",
}

Point = "QuadExtElem | None"


@dataclass(frozen=True)
class Classification:
    labels: tuple[str, ...]
    conjugators: dict = field(default_factory=dict)

    def __contains__(self, label: str) -> bool:
        return label in self.labels


def _is_scalar(m: Mat2) -> bool:
    return m.b == 0 and m.c == 0 and m.a == m.d


def _q(x: int, ell: int) -> QuadExtElem:
    return QuadExtElem.make(x, 0, ell)


def mobius(m: Mat2, p):
    ell = m.n
    if p is None:
        if m.c == 0:
            return None
        return _q(m.a * pow(m.c, -1, ell), ell)
    num = p.scale(m.a) + _q(m.b, ell)
    den = p.scale(m.c) + _q(m.d, ell)
    if den.is_zero():
        return None
    return num * den.inverse()


def _sqrt_ext(x: int, ell: int) -> QuadExtElem:
    """A square root of x in F_{l^2} (x in F_l)."""
    x %= ell
    roots = sqrt_mod(x, ell)
    if roots:
        return _q(min(roots), ell)
    eps = least_generator(ell)
    y = min(sqrt_mod(x * pow(eps, -1, ell), ell))
    return QuadExtElem.make(0, y, ell)


def fixed_points(m: Mat2) -> list:
    """Fixed points of a non-scalar m on P^1(F_{l^2}); c z^2 + (d-a) z - b = 0."""
    ell = m.n
    if _is_scalar(m):
        raise ValueError("scalar matrices fix every point")
    a, b, c, d = m.entries
    if c == 0:
        pts = [None]
        if (d - a) % ell:
            pts.append(_q(b * pow(d - a, -1, ell), ell))
        return pts
    disc = ((d - a) ** 2 + 4 * b * c) % ell
    s = _sqrt_ext(disc, ell)
    inv2c = pow(2 * c, -1, ell)
    base = _q(a - d, ell)
    r1, r2 = (base + s).scale(inv2c), (base - s).scale(inv2c)
    return [r1] if r1 == r2 else [r1, r2]


def _in_base(p) -> bool:
    return p is None or p.b == 0


def _vector(p) -> tuple[int, int]:
    return (1, 0) if p is None else (p.a, 1)


def _canonical_conj(p) -> QuadExtElem:
    """Of z and its conjugate, the one with 0 < b <= (l-1)/2."""
    return p if p.b <= (p.ell - 1) // 2 else p.frobenius()


def _pair_candidates(gens: tuple[Mat2, ...]):
    """Points that any stabilized pair must consist of, or None when no
    element with non-scalar square is at hand (caller scans instead)."""
    elems = list(gens) + [g @ h for g, h in combinations(gens, 2)]
    for h in elems:
        h2 = h @ h
        if not _is_scalar(h2):
            return fixed_points(h2)
    return None


def _stabilizes(gens, pair) -> bool:
    p, q = pair
    for g in gens:
        img = {_key(mobius(g, p)), _key(mobius(g, q))}
        if img != {_key(p), _key(q)}:
            return False
    return True


def _key(p):
    return ("inf",) if p is None else (p.a, p.b)


def _base_points(ell: int) -> list:
    return [None] + [_q(x, ell) for x in range(ell)]


def classify(G: MatrixGroup) -> Classification:
    ell = G.n
    if ell < 3 or not is_prime(ell):
        raise InvalidModulus(f"classification needs an odd prime modulus, got {ell}")
    gens = G.generators
    conj: dict[str, Mat2] = {}
    nonscalar = [g for g in gens if not _is_scalar(g)]

    if G.full:
        conj["full"] = Mat2.identity(ell)
        return _finish(G, conj)

    if not nonscalar:
        ident = Mat2.identity(ell)
        for label in LABELS[:-1]:
            conj[label] = ident
        return _finish(G, conj)

    fixed = [p for p in fixed_points(nonscalar[0])
             if all(_key(mobius(g, p)) == _key(p) for g in gens)]
    base_fixed = sorted((p for p in fixed if _in_base(p)), key=_vector)
    ext_fixed = [p for p in fixed if not _in_base(p)]
    if base_fixed:
        conj["borel"] = _borel_conjugator(base_fixed[0], ell)
    if len(base_fixed) >= 2:
        conj["split-cartan"] = _columns(base_fixed[0], base_fixed[1], ell)
    if ext_fixed:
        conj["nonsplit-cartan"] = _nonsplit_conjugator(_canonical_conj(ext_fixed[0]))

    cands = _pair_candidates(gens)
    if cands is None:
        base_pairs = combinations(_base_points(ell), 2)
        ext_pairs = [(z, z.frobenius()) for z in _ext_points(ell)]
    else:
        base_pairs = [tuple(cands)] if len(cands) == 2 and all(map(_in_base, cands)) else []
        ext_pairs = []
        if len(cands) == 2 and not _in_base(cands[0]):
            z = _canonical_conj(cands[0])
            ext_pairs = [(z, z.frobenius())]
    for pair in base_pairs:
        if _stabilizes(gens, pair):
            p, q = sorted(pair, key=_vector)
            conj["split-normalizer"] = _columns(p, q, ell)
            break
    for pair in ext_pairs:
        if _stabilizes(gens, pair):
            conj["nonsplit-normalizer"] = _nonsplit_conjugator(pair[0])
            break
    # only a group in no proper family can be all of GL_2; closure is needed
    # just for that case
    if not conj and G.order == gl2_order(ell):
        conj["full"] = Mat2.identity(ell)
    return _finish(G, conj)


def _ext_points(ell: int):
    for b in range(1, (ell - 1) // 2 + 1):
        for a in range(ell):
            yield QuadExtElem.make(a, b, ell)


def _borel_conjugator(p, ell: int) -> Mat2:
    if p is None:
        return Mat2.identity(ell)
    return Mat2(ell, p.a, 1, 1, 0)


def _columns(p, q, ell: int) -> Mat2:
    (x1, y1), (x2, y2) = _vector(p), _vector(q)
    return Mat2(ell, x1, x2, y1, y2)


def _nonsplit_conjugator(z: QuadExtElem) -> Mat2:
    # [[y, x], [0, 1]] sends sqrt(eps) to x + y sqrt(eps)
    return Mat2(z.ell, z.b, z.a, 0, 1)


def _finish(G: MatrixGroup, conj: dict) -> Classification:
    ell = G.n
    for label, m in conj.items():
        target = standard_group(LABEL_FAMILY[label], ell)
        mi = mat_inv(m)
        for g in G.generators:
            if mi @ g @ m not in target:
                raise AssertionError(f"conjugator for {label} failed on {g}")
    labels = tuple(lab for lab in LABELS if lab in conj)
    return Classification(labels, {lab: conj[lab] for lab in labels})


def brute_force_conjugator(G: MatrixGroup, label: str) -> Mat2 | None:
    """Least m in GL_2(l) (by code) with m^-1 G m inside the standard
    representative of ``label``; exhaustive search."""
    ell = G.n
    target = standard_group(LABEL_FAMILY[label], ell)
    codes = all_invertible_codes(ell)
    a, b, c, d = decode(codes, ell)
    det = (a * d - b * c) % ell
    inv_table = np.array([pow(x, -1, ell) if gcd(x, ell) == 1 else 0 for x in range(ell)])
    t = inv_table[det]
    ia, ib, ic, id_ = d * t % ell, -b * t % ell, -c * t % ell, a * t % ell
    ok = np.ones(len(codes), dtype=bool)
    for g in G.generators:
        # (m^-1 g) m
        pa = (ia * g.a + ib * g.c) % ell
        pb = (ia * g.b + ib * g.d) % ell
        pc = (ic * g.a + id_ * g.c) % ell
        pd = (ic * g.b + id_ * g.d) % ell
        conj = encode((pa * a + pb * c) % ell, (pa * b + pb * d) % ell,
                      (pc * a + pd * c) % ell, (pc * b + pd * d) % ell, ell)
        ok &= target.contains_codes(conj)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return Mat2.from_code(int(codes[hits[0]]), ell)
