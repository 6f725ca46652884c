"""Look for separating models between associative-type varieties beyond the
default budget, e.g. ``python scripts/probe_separations.py A6 A2 A9 A4 --size 5``.

Enumerates the first variety up to isomorphism at the given size and reports
how many of its models leave each of the other varieties, with the least one.
"""

import argparse
import time

from zlab.algebra import format_table, in_variety
from zlab.atlas import get_variety
from zlab.search import enumerate_models, variety_problem


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("inside")
    ap.add_argument("outside", nargs="+")
    ap.add_argument("--size", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=4)
    args = ap.parse_args()

    v = get_variety(args.inside)
    t0 = time.perf_counter()
    out = enumerate_models(variety_problem(args.size, v), jobs=args.jobs, max_size=args.size)
    print(f"{v.name}: {len(out.models)} models of size {args.size} up to iso "
          f"({out.stats.nodes} nodes, {time.perf_counter() - t0:.1f}s)")
    for name in args.outside:
        w = get_variety(name)
        bad = [g for g in out.models if not in_variety(g, w).holds]
        print(f"  outside {w.name}: {len(bad)}")
        if bad:
            print(format_table(bad[0]))


if __name__ == "__main__":
    main()
