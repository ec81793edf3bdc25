"""Command-line front-end.

Subcommands operate on polyhedron documents (JSON, see docio):

* ``closure``  one Chvatal-Gomory closure round, optionally checked
  against the bounded-norm cut oracle;
* ``rank``     the CG rank by iterated closures;
* ``hull``     the integer hull;
* ``points``   the integer points, optionally of the relative interior;
* ``rcgr``     the reverse-rank decision with its certificate;
* ``gen``      the instance families;
* ``sweep``    a CSV of rank growth along the Q_t family.

Exit codes: 0 success, 2 invalid input, 3 a search cap was exceeded,
4 an internal invariant failed.  The environment variable POLYRANK_CAP
overrides the default iteration caps.
"""

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from .closure import cch_lower_bound, cg_rank, closure_oracle, elementary_closure, integer_hull
from .config import RcgrCaps, default_rank_cap, default_rcgr_caps
from .errors import (
    CapExceeded,
    InternalInvariantError,
    ParseError,
    PolyrankError,
    SearchCapExceeded,
)
from .docio import dump, emit_document, load
from .families import gen_01_segment, gen_pk_qk, gen_qalpha, gen_qt, gen_unit_simplex
from .lattice import integer_points, relint_integer_points
from .reverse import CapExceededVerdict, Finite, Infinite, decide_rcgr

__all__ = ["main", "console_main"]


def _vec_str(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def _write_poly(P, path, name=""):
    if path:
        dump(P, path, name=name)
    else:
        json.dump(emit_document(P, name=name), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _cmd_closure(args) -> int:
    Q = load(args.input)
    closed = elementary_closure(Q)
    _write_poly(closed, args.output, name="closure")
    if args.oracle is not None:
        agrees = closure_oracle(Q, args.oracle) == closed
        print(f"oracle(B={args.oracle}): {'match' if agrees else 'differ'}")
    return 0


def _cmd_rank(args) -> int:
    Q = load(args.input)
    cap = args.cap if args.cap is not None else default_rank_cap()
    print(cg_rank(Q, cap=cap))
    return 0


def _cmd_hull(args) -> int:
    Q = load(args.input)
    _write_poly(integer_hull(Q), args.output, name="integer-hull")
    return 0


def _cmd_points(args) -> int:
    P = load(args.input)
    report = relint_integer_points(P) if args.relint else integer_points(P)
    for z in report.points:
        print(" ".join(str(c) for c in z))
    return 0


def _cmd_rcgr(args) -> int:
    P = load(args.input)
    caps = default_rcgr_caps()
    caps = RcgrCaps(
        max_norm=args.max_norm if args.max_norm is not None else caps.max_norm,
        max_k=args.max_k if args.max_k is not None else caps.max_k,
    )
    verdict = decide_rcgr(P, caps=caps)
    if args.json:
        json.dump(verdict.as_dict(), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    elif isinstance(verdict, Infinite):
        print(f"INFINITE witness={_vec_str(verdict.witness)}")
    elif isinstance(verdict, Finite):
        if verdict.covering_level is not None:
            print(f"FINITE level={verdict.covering_level}")
        else:
            print("FINITE")
    else:
        print(f"CAP-EXCEEDED last_norm={verdict.last_norm} last_k={verdict.last_k}")
    return 3 if isinstance(verdict, CapExceededVerdict) else 0


def _cmd_gen(args) -> int:
    if args.family == "qt":
        P, name = gen_qt(args.t), f"qt_{args.t}"
    elif args.family == "pkqk":
        pk, qk = gen_pk_qk(args.k)
        if args.part == "p":
            P, name = pk, f"pk_{args.k}"
        else:
            P, name = qk, f"qk_{args.k}"
    elif args.family == "qalpha":
        base = load(args.input)
        direction = tuple(int(c) for c in args.direction.split(","))
        P, name = gen_qalpha(base, direction, args.alpha), f"qalpha_{args.alpha}"
    elif args.family == "simplex":
        P, name = gen_unit_simplex(args.n), f"simplex_{args.n}"
    else:
        P, name = gen_01_segment(args.n), f"segment01_{args.n}"
    _write_poly(P, args.output, name=name)
    return 0


def _cmd_sweep(args) -> int:
    rows = []
    for t in range(args.start, args.stop + 1):
        Q = gen_qt(t)
        started = time.monotonic()
        rank = cg_rank(Q)
        wall_ms = int(round((time.monotonic() - started) * 1000))
        bound = cch_lower_bound(Q, (Fraction(t), Fraction(1, 2)), (1, 0))
        rows.append({
            "param": t,
            "rank": rank,
            "cch_bound": bound,
            "closure_iters": rank,
            "wall_ms": wall_ms,
        })
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["param", "rank", "cch_bound", "closure_iters", "wall_ms"])
        writer.writeheader()
        writer.writerows(rows)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="polyrank",
        description="Chvatal-Gomory closures, ranks, and reverse-rank decisions "
                    "in exact rational arithmetic.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="one CG closure round")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--oracle", type=int, default=None, metavar="B",
                   help="cross-check against all cuts with norm at most B")
    p.set_defaults(fn=_cmd_closure)

    p = sub.add_parser("rank", help="CG rank by iterated closures")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=_cmd_rank)

    p = sub.add_parser("hull", help="integer hull")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=_cmd_hull)

    p = sub.add_parser("points", help="integer point enumeration")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--relint", action="store_true",
                   help="only points of the relative interior")
    p.set_defaults(fn=_cmd_points)

    p = sub.add_parser("rcgr", help="reverse CG rank finiteness decision")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--max-norm", type=int, default=None)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_rcgr)

    p = sub.add_parser("gen", help="instance families")
    p.add_argument("family", choices=["qt", "pkqk", "qalpha", "simplex", "segment01"])
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--part", choices=["p", "q"], default="q",
                   help="which half of the pkqk pair to emit")
    p.add_argument("-i", "--input", default=None,
                   help="base polyhedron for qalpha")
    p.add_argument("--direction", default="1,0",
                   help="witness direction for qalpha, comma-separated")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("sweep", help="rank growth CSV over the Q_t family")
    p.add_argument("family", choices=["qt"])
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--csv", required=True)
    p.set_defaults(fn=_cmd_sweep)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SearchCapExceeded, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    except (ParseError, PolyrankError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
