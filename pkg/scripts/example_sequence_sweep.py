"""Purity of 0 -> O(a) -> O(b) + O(c) -> O(d) -> 0 over a range of twists."""

import argparse

from purisheaf.config import ExampleSweepConfig
from purisheaf.exactlinear import parse_field
from purisheaf.purity import purity_report
from purisheaf.sheafp1 import line_bundle_sequence


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=ExampleSweepConfig.bound)
    ap.add_argument("--field", action="append", help="q or fp:P; may repeat")
    args = ap.parse_args()
    cfg = ExampleSweepConfig(args.bound, tuple(args.field or ExampleSweepConfig.fields))

    print("%-6s %-16s %6s %6s %6s %6s" % ("field", "(a,b,c,d)", "cPure", "gPure", "tensor", "torHom"))
    bad = 0
    for fname in cfg.fields:
        field = parse_field(fname)
        for quad in cfg.quadruples():
            r = purity_report(line_bundle_sequence(*quad, field))
            bad += r.c_pure or not r.g_pure or not r.criteria_agreement
            print("%-6s %-16s %6s %6s %6s %6s" % (fname, quad, r.c_pure, r.g_pure, r.via_tensor, r.via_torsion_hom))
    print("%d sequences, %d unexpected" % (len(cfg.fields) * len(cfg.quadruples()), bad))


if __name__ == "__main__":
    main()
