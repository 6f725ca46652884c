"""Regenerate tests/golden/counts.json from the naive numpy oracle.

Counts every catalog variety at sizes 1..3, raw and up to 0-fixing
isomorphism.  The pruned search is never consulted here.
"""

import argparse
import json
from pathlib import Path

from zlab.atlas import builtin_catalog
from zlab.oracle import iso_classes, naive_models

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--out", default=str(ROOT / "tests" / "golden" / "counts.json"))
    args = ap.parse_args()

    counts = {}
    for name, v in sorted(builtin_catalog().items()):
        row = {}
        for n in range(1, args.max_size + 1):
            models = naive_models(n, v.identities, in_I=v.relative_to_I)
            row[str(n)] = {"raw": len(models), "iso": len(iso_classes(models))}
        counts[name] = row
        print(name, row)
    doc = {"source": "naive oracle over all n^(n*n) tables", "counts": counts}
    Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
