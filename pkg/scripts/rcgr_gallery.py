#!/usr/bin/env python3
"""Reverse CG rank verdicts across a gallery of small integral polyhedra.

Prints one line per instance: the verdict, its certificate (witness
direction or covering level), and the wall time.  The 3D tetrahedron
whose covering level is 21 takes on the order of twenty minutes and is
therefore opt-in:

    python3 scripts/rcgr_gallery.py
    python3 scripts/rcgr_gallery.py --tetrahedron --max-k 24
"""

import argparse
import sys
import time

from polyrank.config import RcgrCaps
from polyrank.families import gen_01_segment, gen_unit_simplex
from polyrank.polyhedron import Polyhedron
from polyrank.reverse import CapExceededVerdict, Finite, Infinite, decide_rcgr

GALLERY = [
    ("unit segment in R1", Polyhedron.from_vrep([(0,), (1,)])),
    ("unit segment in R2", gen_01_segment(2)),
    ("unit square", Polyhedron.from_vrep([(0, 0), (1, 0), (0, 1), (1, 1)])),
    ("unit simplex", gen_unit_simplex(2)),
    ("doubled simplex", Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)])),
    ("single point", Polyhedron.from_vrep([(4, -1)])),
    ("unit cube", Polyhedron.from_vrep(
        [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])),
    ("half strip", Polyhedron.from_vrep([(0, 0), (0, 1)], rays=[(1, 0)])),
    ("strip with lineality", Polyhedron.from_vrep(
        [(0, 0), (0, 1)], lines=[(1, 0)])),
]

TETRA = Polyhedron.from_vrep([(0, 0, 0), (3, 1, 0), (2, 3, 0), (3, 2, 2)])


def describe(verdict) -> str:
    if isinstance(verdict, Infinite):
        return f"INFINITE  witness={verdict.witness}"
    if isinstance(verdict, Finite):
        lvl = verdict.covering_level
        tag = f"level={lvl}" if lvl is not None else verdict.reason
        return f"FINITE    {tag}"
    assert isinstance(verdict, CapExceededVerdict)
    return f"CAP       {verdict.diagnostics}"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tetrahedron", action="store_true",
                    help="include the finite-but-slow 3D tetrahedron")
    ap.add_argument("--max-norm", type=int, default=6)
    ap.add_argument("--max-k", type=int, default=10)
    args = ap.parse_args(argv)

    gallery = list(GALLERY)
    if args.tetrahedron:
        gallery.append(("tetrahedron, no escape direction", TETRA))
    caps = RcgrCaps(max_norm=args.max_norm, max_k=args.max_k)
    for name, P in gallery:
        t0 = time.monotonic()
        verdict = decide_rcgr(P, caps)
        dt = time.monotonic() - t0
        print(f"{name:<32} {describe(verdict):<44} {dt:7.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
