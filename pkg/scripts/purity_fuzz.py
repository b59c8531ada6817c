"""Random extensions of small sheaves: do the four purity tests agree?"""

import argparse
import random
from collections import Counter

from purisheaf.config import PurityFuzzConfig
from purisheaf.exactlinear import parse_field
from purisheaf.homalg import ext1
from purisheaf.purity import purity_report, random_extension
from purisheaf.sheafp1 import random_labels, sheaf_from_labels


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=PurityFuzzConfig.seed)
    ap.add_argument("--pairs", type=int, default=PurityFuzzConfig.pairs)
    ap.add_argument("--classes", type=int, default=PurityFuzzConfig.classes_per_pair)
    args = ap.parse_args()
    cfg = PurityFuzzConfig(seed=args.seed, pairs=args.pairs, classes_per_pair=args.classes)

    counts = Counter()
    for fname in cfg.fields:
        field = parse_field(fname)
        rng = random.Random(cfg.seed)
        for i in range(cfg.pairs):
            A, C = (sheaf_from_labels(random_labels(field, rng, cfg.max_summands, cfg.deg_range, cfg.max_length,
                                                    p_torsion=cfg.p_torsion), field) for _ in range(2))
            E = ext1(C, A, seed=i)
            for j in range(cfg.classes_per_pair):
                r = purity_report(random_extension(A, C, seed=1000 * i + j, ext=E)[0])
                counts["total"] += 1
                counts["c-pure"] += r.c_pure
                counts["g-pure"] += r.g_pure
                counts["g-pure, not c-pure"] += r.g_pure and not r.c_pure
                counts["agree"] += r.criteria_agreement
                if not r.criteria_agreement:
                    print("disagreement: field=%s pair=%d class=%d" % (fname, i, j))
    for key in ("total", "agree", "c-pure", "g-pure", "g-pure, not c-pure"):
        print("%-20s %d" % (key, counts[key]))


if __name__ == "__main__":
    main()
