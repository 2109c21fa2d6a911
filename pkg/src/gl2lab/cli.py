"""Command-line interface.

    gl2lab group describe <spec>
    gl2lab orbits <spec> --space cyc|vec [--order d]
    gl2lab verify <check-id>|all [--l-min A] [--l-max B] [--jobs N] [--out F] [--seed S]
    gl2lab census ns|borel --l L [--constraints scalars,full-det,...]
    gl2lab constants [--c C] [--degree D]

Exit status: 0 success, 1 a check found a counterexample, 2 usage or
internal error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path

from . import __version__
from .errors import Gl2LabError

log = logging.getLogger("gl2lab")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def default_cache_dir() -> Path:
    env = os.environ.get("GL2LAB_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "gl2lab"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gl2lab", description="GL_2(Z/nZ) subgroup and orbit lab")
    p.add_argument("--version", action="version", version=f"gl2lab {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0, help="log to stderr (-vv: debug)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="inspect a group")
    gsub = g.add_subparsers(dest="action", required=True)
    d = gsub.add_parser("describe", help="order, det image, classification, minimal e")
    d.add_argument("spec")

    o = sub.add_parser("orbits", help="orbit decomposition")
    o.add_argument("spec")
    o.add_argument("--space", choices=("cyc", "vec"), default="cyc")
    o.add_argument("--order", type=int, default=None, help="restrict to points of this order")
    o.add_argument("--members", action="store_true", help="list every orbit member")

    v = sub.add_parser("verify", help="run a catalog check")
    v.add_argument("check", help="check id, or 'all'")
    v.add_argument("--l-min", type=int, default=None)
    v.add_argument("--l-max", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="write the JSON report here (else to stdout)")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--option", action="append", default=[], metavar="KEY=VALUE",
                   help="override a check option (repeatable), e.g. samples=100")
    v.add_argument("--timing", action="store_true",
                   help="record wall-clock duration_ms (reports are then not reproducible)")

    c = sub.add_parser("census", help="enumerate subgroups of Ns(l) or non-diagonalizable B(l)")
    c.add_argument("family", choices=("ns", "borel"))
    c.add_argument("--l", dest="ell", type=int, required=True)
    c.add_argument("--constraints", default="none",
                   help="comma list of scalars, full-det, not-in-cartan, cartan-power; or all")
    c.add_argument("--cache-dir", default=None)
    c.add_argument("--no-cache", action="store_true")
    c.add_argument("--list", action="store_true", help="print every group")

    k = sub.add_parser("constants", help="numeric constants")
    k.add_argument("--c", type=int, default=7, help="B = product of primes <= c")
    k.add_argument("--degree", type=int, default=None, help="[F:Q] for the large-prime threshold")
    return p


def _cmd_describe(args) -> int:
    from .classify import classify
    from .groups import det_image, minimal_cartan_power, parse_group_spec
    from .residue import is_prime

    G = parse_group_spec(args.spec)
    det = det_image(G)
    print(f"group: {G.spec}")
    print(f"modulus: {G.n}")
    print(f"order: {G.order}")
    print(f"det image: {list(det.values)}{' (surjective)' if det.surjective else ''}")
    if G.n >= 3 and is_prime(G.n):
        cls = classify(G)
        print(f"classification: {', '.join(cls.labels) if cls.labels else 'none'}")
        for label in cls.labels:
            print(f"  {label}: conjugator {cls.conjugators[label].literal()}")
        e = minimal_cartan_power(G)
        print(f"minimal e: {e if e is not None else 'none'}")
    return EXIT_OK


def _cmd_orbits(args) -> int:
    from .groups import parse_group_spec
    from .orbits import Space, orbit_decomposition

    G = parse_group_spec(args.spec)
    if args.order is not None and (args.order < 1 or G.n % args.order):
        raise Gl2LabError(f"--order {args.order} does not divide {G.n}")
    space = Space(args.space, G.n, args.order)
    dec = orbit_decomposition(G, space)
    print(f"group: {G.spec}")
    print(f"space: {space.describe()}")
    print(f"orbit sizes: {dec.sizes}")
    for orb in dec.orbits:
        rep = orb.representative
        name = rep.label() if hasattr(rep, "label") else str(rep)
        line = f"  size {orb.size}: {name}"
        if args.members:
            line += " = {" + ", ".join(str(m) for m in orb.members) + "}"
        print(line)
    return EXIT_OK


@contextmanager
def _mapper(jobs: int):
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield pool.map


def _cmd_verify(args) -> int:
    from .checks import check_ids, run_check
    from .report import report_json, write_report

    if args.jobs < 1:
        raise Gl2LabError("--jobs must be >= 1")
    ids = check_ids() if args.check == "all" else [args.check]
    options = _parse_options(args.option)
    worst = EXIT_OK
    with _mapper(args.jobs) as mapper:
        for cid in ids:
            t0 = time.perf_counter()
            rep = run_check(cid, args.l_min, args.l_max, seed=args.seed, options=options,
                            mapper=mapper, timing=args.timing)
            elapsed = time.perf_counter() - t0
            log.info("%s finished in %.2f s", cid, elapsed)
            if args.out:
                out = Path(args.out)
                if len(ids) > 1:
                    out.mkdir(parents=True, exist_ok=True)
                    out = out / f"{cid}.json"
                write_report(rep, out)
                print(f"{cid}: {rep.status} ({len(rep.counterexamples)} counterexamples) -> {out}")
            else:
                sys.stdout.write(report_json(rep))
            if rep.status == "fail":
                worst = EXIT_FAIL
    return worst


def _parse_options(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs:
        key, sep, val = pair.partition("=")
        if not sep or not key:
            raise Gl2LabError(f"--option expects KEY=VALUE, got {pair!r}")
        out[key] = int(val) if val.lstrip("-").isdigit() else val
    return out


def _cmd_census(args) -> int:
    from .census import CensusConstraints, enumerate_borel_nondiag, enumerate_ns_subgroups

    cache = None if args.no_cache else Path(args.cache_dir or default_cache_dir())
    t0 = time.perf_counter()
    if args.family == "ns":
        cons = CensusConstraints.parse(args.constraints)
        groups = enumerate_ns_subgroups(args.ell, cons, cache_dir=cache)
        label = f"subgroups of Ns({args.ell})"
        if cons.active():
            label += f" with {', '.join(cons.active())}"
    else:
        if args.constraints not in ("none", ""):
            raise Gl2LabError("--constraints applies to the ns census only")
        groups = enumerate_borel_nondiag(args.ell, cache_dir=cache)
        label = f"non-diagonalizable subgroups of B({args.ell})"
    log.info("census took %.3f s", time.perf_counter() - t0)
    print(f"{label}: {len(groups)}")
    if args.list:
        for G in groups:
            print(f"  order {G.order}: {G.spec}")
    return EXIT_OK


def _cmd_constants(args) -> int:
    from .residue import (
        KENKU_DEGREES,
        QQ_ORBIT_PRIMES,
        large_prime_threshold,
        primes_up_to,
        product_of_primes,
        product_of_primes_up_to,
    )

    print(f"product of {list(QQ_ORBIT_PRIMES)} = {product_of_primes(QQ_ORBIT_PRIMES)}")
    print(f"primes <= {args.c}: {primes_up_to(args.c)}")
    print(f"B = {product_of_primes_up_to(args.c)}")
    print("Kenku degrees: n in [1,19] u {21,25,27,37,43,67,163}")
    print(f"  = {list(KENKU_DEGREES)}")
    if args.degree is not None:
        if args.degree < 1:
            raise Gl2LabError("--degree must be >= 1")
        print(f"large-prime threshold for [F:Q] = {args.degree}: max(74, 15*{args.degree}+2) = "
              f"{large_prime_threshold(args.degree)}")
    return EXIT_OK


COMMANDS = {"orbits": _cmd_orbits, "verify": _cmd_verify, "census": _cmd_census,
            "constants": _cmd_constants}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_ERROR
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    handler = _cmd_describe if args.command == "group" else COMMANDS[args.command]
    try:
        return handler(args)
    except (Gl2LabError, ValueError, OSError) as exc:
        print(f"gl2lab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
