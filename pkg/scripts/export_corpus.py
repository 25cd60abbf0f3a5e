"""Write .pgp files for a scan corpus: every catalog build plus the named
candidate groups of each order in a range.

    python scripts/export_corpus.py OUTDIR [--p 2] [--min-exp 5] [--max-exp 7]

The named candidates are not all groups of a given order; for a complete
corpus export one presentation per group from an external small-groups
library into the same directory.
"""
import argparse
from pathlib import Path

from atgroups import catalog, cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--min-exp", type=int, default=5)
    ap.add_argument("--max-exp", type=int, default=7)
    args = ap.parse_args()

    out = args.outdir
    opts = cli.Options(primes=(args.p,), max_order=args.p**args.max_exp)
    written = cli.export_catalog(out, cli.ALL_IDS, opts)
    for e in range(args.min_exp, args.max_exp + 1):
        for i, label in enumerate(catalog.candidate_labels(args.p, e)):
            path = out / f"named_{args.p}^{e}_{i:03d}.pgp"
            path.write_text(catalog.build_label(label).to_text())
            written.append(path)
    print(f"wrote {len(written)} files to {out}")


if __name__ == "__main__":
    main()
