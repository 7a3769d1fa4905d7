"""Print the Askey-Wilson scalars of one pair, computed from its parameter array
and, for translation-free tuples, from the closed forms.

    python3 scripts/aw_scalars_table.py --d 4 --a 1 --a-prime 2 --b 5 --b-prime 3 --c 1
"""

import argparse
from dataclasses import fields

from leonard.awrel import AWScalars, aw_scalars, closed_scalars, verify_aw
from leonard.expr import parse_scalar
from leonard.lbtd import build, parameter_array_of
from leonard.params import ClosedFormParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3)
    for name, default in (("a", "1"), ("a-prime", "2"), ("b", "5"), ("b-prime", "3"),
                          ("c", "1"), ("alpha", "0"), ("alpha-star", "0")):
        ap.add_argument("--" + name, default=default)
    args = ap.parse_args()
    cf = ClosedFormParams(d=args.d, **{k: parse_scalar(v) for k, v in vars(args).items()
                                       if k != "d"})
    pair = build(cf)
    s = aw_scalars(parameter_array_of(cf))
    closed = None if cf.alpha or cf.alpha_star else closed_scalars(cf)
    width = max(len(f.name) for f in fields(AWScalars))
    for f in fields(AWScalars):
        val = getattr(s, f.name)
        mark = "" if closed is None else ("  (closed form agrees)" if getattr(closed, f.name) == val
                                           else "  (closed form DIFFERS)")
        print(f"{f.name:<{width}} = {val}{mark}")
    print(f"relations hold: {verify_aw(pair.A, pair.Astar, s)}")


if __name__ == "__main__":
    main()
