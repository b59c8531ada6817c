"""Recompute the Z_(p) two-point table and the triple purity witnesses."""

import argparse

from purisheaf.twopoint import format_table, is_c_pure_mono_triple, multiplication_by_p, witness_family, zp_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=1, help="exponent of the cyclic row Z_(p)/(p^k)")
    ap.add_argument("--p", type=int, default=2, help="prime for the witness triples")
    ap.add_argument("--max-rank", type=int, default=3)
    args = ap.parse_args()

    rows = zp_table(args.k)
    print(format_table(rows))
    print("rows matching stored values: %d/%d" % (sum(r.matches for r in rows), len(rows)))
    print()
    for a in range(1, args.max_rank + 1):
        r = is_c_pure_mono_triple(witness_family(a, args.p))
        print("witness rank %d, p=%d: g-pure=%s c-pure=%s" % (a, args.p, r.g_pure, r.c_pure))
    r = is_c_pure_mono_triple(multiplication_by_p(args.p))
    print("multiplication by p: g-pure=%s c-pure=%s" % (r.g_pure, r.c_pure))


if __name__ == "__main__":
    main()
