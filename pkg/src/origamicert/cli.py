"""Command-line interface.

Commands: inspect, decompose, twist, charpoly, galois, certify, scan.
All numeric output is exact (integers, or rationals as "num/den" strings).
Exit codes: 0 success / certificate passed, 1 certificate failed, 2 usage
or parse error, 3 disconnected origami, 4 inconclusive, 5 I/O error.

The environment variable ORIGAMI_SEED overrides the factorizer seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import galois
from .certify import (FAMILY_CONGRUENCES, arithmeticity_certificate,
                      _canonical_json)
from .cylinders import Direction, decompose, moduli, multitwist
from .errors import BadParameters, DisconnectedOrigami, OrigamiError
from .exact_algebra import charpoly, mat_mul
from .homology import build_homology
from .perms import Origami, Permutation, make_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DISCONNECTED, EXIT_INCONCLUSIVE, EXIT_IO = 0, 1, 2, 3, 4, 5


def _seed(args) -> int:
    env = os.environ.get("ORIGAMI_SEED")
    if getattr(args, "seed", None) is not None:
        return args.seed
    if env is not None:
        return int(env)
    return galois.DEFAULT_SEED


def _parse_origami(args) -> Origami:
    h = Permutation.parse(args.h, n=args.squares)
    v = Permutation.parse(args.v, n=args.squares)
    n = max(h.degree, v.degree)
    if h.degree < n:
        h = Permutation(tuple(h.images) + tuple(range(h.degree + 1, n + 1)))
    if v.degree < n:
        v = Permutation(tuple(v.images) + tuple(range(v.degree + 1, n + 1)))
    return Origami(h, v)


def _family_origami(args):
    if args.family is not None:
        if args.family not in (4, 5, 6):
            raise BadParameters("family must be 4, 5 or 6")
        overrides = None
        if args.N is not None or args.M is not None:
            if args.N is None or args.M is None:
                raise BadParameters("--N and --M must be given together")
            overrides = (args.N, args.M)
        return make_family(args.family, args.m, overrides)
    if args.h is None or args.v is None:
        raise BadParameters("give either --family/--m or -h/-v permutation strings")
    return _parse_origami(args)


def _emit(args, payload) -> None:
    text = json.dumps(_canonical_json(payload), sort_keys=True, indent=None if args.compact else 2)
    print(text)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")


def cmd_inspect(args) -> int:
    o = _parse_origami(args)
    if not o.connected:
        print("error: origami is disconnected", file=sys.stderr)
        return EXIT_DISCONNECTED
    _emit(args, {
        "squares": o.n,
        "h": str(o.h),
        "v": str(o.v),
        "connected": True,
        "genus": o.genus(),
        "stratum": list(o.stratum()),
    })
    return EXIT_OK


def cmd_decompose(args) -> int:
    o = _family_origami(args)
    d = Direction.parse(args.dir)
    model = build_homology(o)
    cyls = decompose(o, d, model)
    _emit(args, {
        "direction": [d.p, d.q],
        "cylinders": [{
            "length": c.length,
            "height": c.height,
            "modulus": c.modulus,
            "waist_h0": model.project_to_H0(c.waist) if c.waist.holonomy() == (0, 0) else None,
            "waist_holonomy": list(c.waist.holonomy()),
        } for c in cyls],
        "moduli": moduli(o, d, model),
    })
    return EXIT_OK


def cmd_twist(args) -> int:
    o = _family_origami(args)
    d = Direction.parse(args.dir)
    model = build_homology(o)
    scale = Fraction(args.scale) if args.scale else None
    t = multitwist(o, d, scale=scale, model=model)
    payload = {
        "direction": [d.p, d.q],
        "scale": t.scale,
        "twist_counts": list(t.twist_counts),
    }
    if args.verbose:
        payload["matrix_h0"] = t.matrix
    _emit(args, payload)
    return EXIT_OK


def cmd_charpoly(args) -> int:
    o = _family_origami(args)
    model = build_homology(o)
    from .certify import FAMILY_SETUP
    if args.family in FAMILY_SETUP:
        sh, sv = FAMILY_SETUP[args.family]["scales"]
        from .certify import _family_params
        N, M = (args.N, args.M) if args.N else _family_params(args.family, args.m)
        scales = (sh(N, M), sv(N, M))
    else:
        scales = (None, None)
    mh = multitwist(o, Direction(1, 0), scale=scales[0], model=model)
    mv = multitwist(o, Direction(0, 1), scale=scales[1], model=model)
    P = charpoly(mat_mul(mh.matrix, mv.matrix))
    _emit(args, {"charpoly_low_to_high": P,
                 "scales": [mh.scale, mv.scale]})
    return EXIT_OK


def cmd_galois(args) -> int:
    coeffs = [int(t) for t in args.poly.split(",")]
    pair = galois.trace_polynomial(coeffs)
    verdict = galois.hyperoctahedral_certificate(pair, args.prime_budget, _seed(args))
    _emit(args, {
        "P": list(pair.P),
        "Q": list(pair.Q),
        "group": verdict.group,
        "evidence": [[str(e[0]), _canonical_json(e[1]), str(e[2])] for e in verdict.evidence],
    })
    return EXIT_OK if verdict.passed() else EXIT_INCONCLUSIVE


def cmd_certify(args) -> int:
    if args.family not in (4, 5, 6):
        print("error: family must be 4, 5 or 6", file=sys.stderr)
        return EXIT_USAGE
    report = arithmeticity_certificate(args.family, args.m,
                                       prime_budget=args.prime_budget,
                                       seed=_seed(args))
    payload = report.to_json_dict()
    if not args.verbose:
        payload["density"].pop("charpoly", None)
    _emit(args, payload)
    if args.json_out:
        try:
            with open(args.json_out, "w") as fh:
                fh.write(report.to_json() + "\n")
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_IO
    if report.verdict == "arithmetic-certified":
        return EXIT_OK
    if report.verdict == "fail":
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _scan_one(task):
    family, m, prime_budget, seed = task
    report = arithmeticity_certificate(family, m, prime_budget=prime_budget, seed=seed)
    return {
        "family": report.family, "m": report.m, "N": report.N, "M": report.M,
        "verdict": report.verdict,
        "witness_summary": _witness_summary(report),
        "wall_ms": report.timing_ms, "tool_version": report.tool_version,
        "seed": report.seed,
    }


def _witness_summary(report) -> str:
    gal = report.density.get("galois") or {}
    prims = []
    for e in gal.get("evidence", ()):
        if len(e) == 3 and "prime" in str(e[2]):
            val = e[1]
            if isinstance(val, int):
                prims.append(val)
            elif isinstance(val, (list, tuple)) and val and isinstance(val[0], int):
                prims.append(val[0])
    abc = report.transvections.get("params")
    return "group=%s primes=%s abc=%s" % (gal.get("group"), prims, abc)


def cmd_scan(args) -> int:
    lo, hi = args.m_range
    if lo < 1 or hi < lo:
        print("error: bad m range", file=sys.stderr)
        return EXIT_USAGE
    residue, modulus = None, None
    if args.congruence:
        residue, modulus = (int(x) for x in args.congruence.split("%"))
    elif args.family in FAMILY_CONGRUENCES and not args.all:
        r, mods = FAMILY_CONGRUENCES[args.family]
        modulus = 1
        for p in mods:
            modulus *= p
        residue = r % modulus
    ms = [m for m in range(lo, hi + 1)
          if residue is None or m % modulus == residue % modulus]
    seen = set()
    try:
        if os.path.exists(args.out):
            with open(args.out) as fh:
                for line in fh:
                    if line.strip():
                        rec = json.loads(line)
                        seen.add((rec["family"], rec["m"]))
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    tasks = [(args.family, m, args.prime_budget, _seed(args))
             for m in ms if (args.family, m) not in seen]
    records = []
    if args.jobs > 1 and len(tasks) > 1:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_scan_one, tasks))
    else:
        records = [_scan_one(t) for t in tasks]
    records.sort(key=lambda r: (r["family"], r["m"]))
    try:
        with open(args.out, "a") as fh:
            for rec in records:
                fh.write(json.dumps(_canonical_json(rec), sort_keys=True,
                                    separators=(",", ":")) + "\n")
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    counts = {}
    for rec in records:
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
    print(json.dumps({"new_records": len(records), "skipped": len(ms) - len(tasks),
                      "verdicts": counts}, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="origamicert", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--compact", action="store_true", help="single-line JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_origami_opts(p, family=True):
        if family:
            p.add_argument("--family", type=int, default=None)
            p.add_argument("--m", type=int, default=1)
            p.add_argument("--N", type=int, default=None)
            p.add_argument("--M", type=int, default=None)
        p.add_argument("-H", "--horizontal", dest="h", default=None,
                       help="horizontal permutation, cycles like '(1 2 3)(4 5)'")
        p.add_argument("-V", "--vertical", dest="v", default=None)
        p.add_argument("--squares", type=int, default=None,
                       help="total number of squares (degree)")

    p = sub.add_parser("inspect", help="squares, connectivity, genus, stratum")
    add_origami_opts(p, family=False)
    p.set_defaults(fn=cmd_inspect)

    p = sub.add_parser("decompose", help="cylinder decomposition in a direction")
    add_origami_opts(p)
    p.add_argument("--dir", required=True, help="direction 'p,q'")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("twist", help="multitwist matrix data for a direction")
    add_origami_opts(p)
    p.add_argument("--dir", required=True)
    p.add_argument("--scale", default=None)
    p.add_argument("--verbose", action="store_true", help="include the full matrix")
    p.set_defaults(fn=cmd_twist)

    p = sub.add_parser("charpoly", help="characteristic polynomial of M_h * M_v")
    add_origami_opts(p)
    p.set_defaults(fn=cmd_charpoly)

    p = sub.add_parser("galois", help="hyperoctahedral certificate for a reciprocal polynomial")
    p.add_argument("--poly", required=True, help="coefficients low-to-high, comma separated")
    p.add_argument("--prime-budget", type=int, default=galois.DEFAULT_PRIME_BUDGET)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=cmd_galois)

    p = sub.add_parser("certify", help="full arithmeticity certificate for a family member")
    p.add_argument("--family", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prime-budget", type=int, default=galois.DEFAULT_PRIME_BUDGET)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json-out", default=None)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("scan", help="batch certificates over a range of m, JSONL output")
    p.add_argument("--family", type=int, required=True)
    p.add_argument("--m-range", type=int, nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--congruence", default=None, help="filter 'residue%%modulus'")
    p.add_argument("--all", action="store_true", help="scan every m, no congruence filter")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--prime-budget", type=int, default=galois.DEFAULT_PRIME_BUDGET)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="JSONL path (append, idempotent)")
    p.set_defaults(fn=cmd_scan)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except DisconnectedOrigami as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DISCONNECTED
    except (ValueError, BadParameters) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except OrigamiError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
