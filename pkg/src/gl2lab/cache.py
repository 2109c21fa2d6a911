"""On-disk cache of census results.

One file per (family, l)::

    #gl2lab-census v1 ns 17
    v1;17;[[0,1],[1,0]];[[3,0],[0,3]];32

Generators are stored in matrix-literal form, sorted; the group order
closes each line. Reading re-closes every group and compares orders, so
a damaged file is detected and treated as a miss.
"""

from __future__ import annotations

import logging
from pathlib import Path

from .errors import CacheCorrupt, Gl2LabError
from .groups import MatrixGroup, closure
from .mat2 import Mat2, parse_matrix

log = logging.getLogger(__name__)

VERSION = "v1"


def cache_path(cache_dir: str | Path, family: str, ell: int) -> Path:
    return Path(cache_dir) / f"census-{family}-{ell}.txt"


def _header(family: str, ell: int) -> str:
    return f"#gl2lab-census {VERSION} {family} {ell}"


def format_group(G: MatrixGroup) -> str:
    gens = sorted(G.generators)
    return ";".join([VERSION, str(G.n), *(g.literal() for g in gens), str(G.order)])


def write_census(cache_dir: str | Path, family: str, ell: int, groups: list[MatrixGroup]) -> Path:
    path = cache_path(cache_dir, family, ell)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [_header(family, ell)] + [format_group(G) for G in groups]
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)
    return path


def parse_census(text: str, family: str, ell: int) -> list[MatrixGroup]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != _header(family, ell):
        raise CacheCorrupt(f"bad census header for {family} l={ell}")
    groups = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.strip().split(";")
        if len(parts) < 3 or parts[0] != VERSION:
            raise CacheCorrupt(f"line {lineno}: malformed record")
        try:
            n, order = int(parts[1]), int(parts[-1])
            gens = [parse_matrix(p, n) for p in parts[2:-1]]
        except (ValueError, Gl2LabError) as exc:
            raise CacheCorrupt(f"line {lineno}: {exc}") from exc
        if n != ell:
            raise CacheCorrupt(f"line {lineno}: modulus {n}, expected {ell}")
        if any(not g.is_invertible() for g in gens):
            raise CacheCorrupt(f"line {lineno}: singular generator")
        G = closure(gens or [Mat2.identity(n)], n)
        if G.order != order:
            raise CacheCorrupt(f"line {lineno}: re-closure gives order {G.order}, file says {order}")
        groups.append(G)
    return groups


def read_census(cache_dir: str | Path, family: str, ell: int) -> list[MatrixGroup] | None:
    """Cached groups, or None on a miss (absent or corrupt file)."""
    path = cache_path(cache_dir, family, ell)
    if not path.exists():
        return None
    try:
        return parse_census(path.read_text(), family, ell)
    except CacheCorrupt as exc:
        log.warning("ignoring corrupt cache %s: %s", path, exc)
        return None
