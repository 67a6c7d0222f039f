"""Empirical rank probe: for which ranks does X = K hold, compared with the sufficient bound."""

import argparse
import json

from krcrystals.xk import rank_probe

CASES = [
    ("D", [(1, 1), (1, 1)], ()),
    ("D", [(1, 2), (1, 1)], (1,)),
    ("D", [(1, 1), (1, 1), (1, 1)], (1,)),
    ("C", [(1, 1), (1, 1)], (1, 1)),
    ("C", [(1, 2), (1, 1)], (1,)),
    ("D", [(2, 2), (3, 1), (1, 3)], (2, 1, 1)),
]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    rows = []
    for family, shapes, lam in CASES:
        rep = rank_probe(lam, shapes, family, range(2, args.max_rank + 1))
        rows.append(rep)
        if not args.json:
            tested = [r for r in rep["rows"] if "skipped" not in r]
            fails = [r["n"] for r in tested if not r["xk"] or r.get("properties") is False]
            guarded = [r["n"] for r in tested if r.get("properties", True) is None]
            print(f"{family} {shapes} lambda={lam}: bound {rep['rank_bound']}, "
                  f"ranks {[r['n'] for r in tested]}, failing {fails}, minimal passing {rep['minimal_passing_rank']}"
                  + (f", properties skipped by the guard at {guarded}" if guarded else ""))
    if args.json:
        print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
