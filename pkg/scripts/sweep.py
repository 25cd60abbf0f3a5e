"""Run the catalog sweep and print a per-entry summary with timings.

    python scripts/sweep.py [--entry GLOB ...] [--max-order N] [--jobs N]
"""
import argparse
import time
from collections import defaultdict

from atgroups import cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--entry", action="append")
    ap.add_argument("--max-order", type=int, default=6561)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    opts = cli.Options(max_order=args.max_order)
    start = time.perf_counter()
    records = cli.run_verify(cli.select_ids(args.entry), opts, args.jobs)
    wall = time.perf_counter() - start

    by_id = defaultdict(lambda: {"pass": 0, "fail": 0, "skipped": 0, "time": 0.0})
    for r in records:
        by_id[r.id][r.verdict] += 1
        by_id[r.id]["time"] += r.time
    print(f"{'entry':10} {'pass':>5} {'fail':>5} {'skip':>5} {'seconds':>8}")
    for id, c in by_id.items():
        print(f"{id:10} {c['pass']:5d} {c['fail']:5d} {c['skipped']:5d} {c['time']:8.2f}")
    for r in records:
        if r.verdict == "fail":
            print(f"FAIL {r.id} {r.params}: {r.reason}")
    print(f"wall time {wall:.1f}s")


if __name__ == "__main__":
    main()
