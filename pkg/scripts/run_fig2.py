"""Uniform sweep at n=2000, P=20000 over K=4..18 for k=2,3.

The k=3 check is the slow part (about 0.2s per graph once min degree reaches 3),
so the full preset takes on the order of an hour on one core.  Use --grid to
restrict K, e.g. --grid 9,10,11,12.
"""
import argparse
import time

from riglab.harness import SweepConfig, gnuplot_blocks, preset_fig2, rows_to_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--grid", default=None, help="comma separated K values")
    ap.add_argument("--out", default="fig2.csv")
    ap.add_argument("--gnuplot", default=None)
    args = ap.parse_args()

    cfg = preset_fig2(trials=args.trials, seed=args.seed)
    if args.grid:
        cfg = SweepConfig(**{**cfg.__dict__, "grid": tuple(int(x) for x in args.grid.split(","))})
    t0 = time.time()
    rows = run_sweep(cfg, workers=args.threads)
    with open(args.out, "w") as f:
        f.write(rows_to_csv(rows))
    if args.gnuplot:
        with open(args.gnuplot, "w") as f:
            f.write(gnuplot_blocks(rows))
    print(f"{len(rows)} rows -> {args.out} in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
