"""List every odd-generator coefficient that differs from the printed action tables.

    python3 scripts/action_discrepancies.py [--points 1,1 2,1 2,2] [--q 3/7] [--p 2/5]
"""

import argparse

from glrep.exact import parse_scalar
from glrep.multiplets import OddActionComputer, build_table, iter_sources
from glrep.realization import GeneratorAction, ModuleParams


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", nargs="+", default=["1,1", "2,1", "2,2"], help="2J1,2J2 pairs")
    ap.add_argument("--q", default="3/7")
    ap.add_argument("--p", default="2/5")
    args = ap.parse_args()
    q, p = parse_scalar(args.q), parse_scalar(args.p)
    for pt in args.points:
        a, b = (int(x) for x in pt.split(","))
        params = ModuleParams(a, b, q, p)
        comp = OddActionComputer(params, build_table(params), GeneratorAction(params))
        n = 0
        for sid in iter_sources(comp.table):
            for g in ("E23", "E32"):
                for d in comp.expand(g, sid).discrepancies:
                    n += 1
                    print(f"{params}  {g} {sid} -> {d['target']}: computed {d['computed']}, printed {d['printed']}")
        print(f"{params}: {n} discrepancies")


if __name__ == "__main__":
    main()
