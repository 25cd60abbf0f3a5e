"""Time enumeration, lattice and A_t analysis for a few catalog groups.

    python scripts/timing.py
"""
import time

from atgroups import atlevel as at
from atgroups import catalog
from atgroups import structure as st
from atgroups.engine import enumerate_group

CASES = [
    ("thm3.7", {}),
    ("thm3.6.5", {"n": 4}),
    ("thm3.6.16", {}),
    ("thm3.6.21", {"p": 3, "nu1": 1, "nu2": 1}),
    ("thm3.6.23", {"p": 3, "nu": 1}),
    ("thm3.1", {"p": 5, "H": "M(2,1)", "c_order": 125, "amalgamated": True}),
]


def timed(fn, *a):
    t = time.perf_counter()
    out = fn(*a)
    return out, time.perf_counter() - t


def main():
    print(f"{'entry':10} {'params':40} {'order':>6} {'enum':>7} {'lattice':>8} {'levels':>7} {'subgroups':>9}")
    for id, prm in CASES:
        try:
            pres = catalog.build(id, prm)
        except Exception as exc:
            print(f"{id:10} {str(prm):40} skipped: {exc}")
            continue
        G, t_enum = timed(enumerate_group, pres)
        L, t_lat = timed(st.lattice, G, 5**6)
        _, t_lev = timed(at.lattice_levels, G, 5**6)
        print(f"{id:10} {str(prm):40} {G.order:6d} {t_enum:7.2f} {t_lat:8.2f} {t_lev:7.2f} {len(L.subgroups):9d}")


if __name__ == "__main__":
    main()
