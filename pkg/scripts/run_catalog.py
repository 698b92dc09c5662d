"""Run the fine-moduli pipeline over catalog bundle lists and print a timing table.

    python3 scripts/run_catalog.py [--json out.json] [--saturation generators] [names...]
"""

import argparse
import json
import time

from tq import catalog, moduli, quiver
from tq.config import ExperimentConfig, PipelineConfig


def run_one(name, cfg: ExperimentConfig):
    bl = catalog.bundle_list(name)
    fan = catalog.fan(bl.fan)
    t0 = time.perf_counter()
    Q = quiver.complete_quiver_of_sections(fan, bl.bundles, reorder=cfg.pipeline.reorder)
    if cfg.use_listed_order and bl.arrow_order is not None:
        Q = Q.permuted(quiver.arrow_permutation(Q, bl.arrow_order))
    rep = moduli.is_fine(
        fan, Q.bundles, Q=Q,
        exhaustive=cfg.pipeline.exhaustive_very_ample,
        saturation_method=cfg.pipeline.saturation_method,
    )
    series = moduli.multilinear_fan(Q)
    return {
        "name": name,
        "vertices": Q.nvertices,
        "arrows": Q.narrows,
        "trees": len(series.trees),
        "rays": len(series.rays),
        "IQ_gb": len(rep.I_Q.groebner()),
        "IR_gb": len(rep.I_R.groebner()),
        "fine": rep.fine,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*")
    ap.add_argument("--json")
    ap.add_argument("--saturation", choices=["primes", "generators"], default="primes")
    ap.add_argument("--exhaustive", action="store_true")
    args = ap.parse_args()

    pipe = PipelineConfig.from_env(saturation_method=args.saturation, exhaustive_very_ample=args.exhaustive)
    cfg = ExperimentConfig(pipeline=pipe)
    if args.names:
        cfg.names = args.names
    with pipe.applied():
        rows = [run_one(n, cfg) for n in cfg.names]

    cols = ["name", "vertices", "arrows", "trees", "rays", "IQ_gb", "IR_gb", "fine", "seconds"]
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in cols))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
