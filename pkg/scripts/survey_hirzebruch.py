"""How often is (O, O(a1,b1), ..., O(ak,bk)) fine on a Hirzebruch surface?

Bundles are written O(a, b) = a D1 + b D4 with small nonnegative a, b.
Lists are sampled with a fixed seed and sorted into an admissible order.

    python3 scripts/survey_hirzebruch.py --a 1 --samples 40 --max-extra 3 --seed 7
"""

import argparse
import random
import time
from collections import Counter

from tq import catalog, moduli, quiver
from tq.config import PipelineConfig


def bundle(a, b):
    return (a, 0, 0, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=int, default=1, help="Hirzebruch index")
    ap.add_argument("--samples", type=int, default=30)
    ap.add_argument("--max-extra", type=int, default=3)
    ap.add_argument("--box", type=int, default=2, help="largest a or b")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    fan = catalog.fan(f"hirzebruch:{args.a}")
    pool = [bundle(a, b) for a in range(args.box + 1) for b in range(args.box + 1) if a or b]
    rnd = random.Random(args.seed)
    tally = Counter()
    pipe = PipelineConfig.from_env()
    t0 = time.perf_counter()
    with pipe.applied():
        for _ in range(args.samples):
            k = rnd.randint(1, min(args.max_extra, len(pool)))
            bl = [bundle(0, 0)] + rnd.sample(pool, k)
            try:
                rep = moduli.is_fine(fan, bl, reorder=True)
            except quiver.QuiverError as exc:
                tally["rejected"] += 1
                print(f"{bl}: rejected ({type(exc).__name__})")
                continue
            verdict = "fine" if rep.fine else ("very ample only" if rep.very_ample else "not very ample")
            tally[verdict] += 1
            print(f"{list(rep.quiver.bundles)}: {verdict}")
    print()
    for k, v in sorted(tally.items()):
        print(f"{k}: {v}")
    print(f"total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
