"""Recursive optimizer vs grid-tuned Adagrad on the synthetic absolute loss.

Writes one CSV per (target, seed, optimizer) into --out-dir and prints the
final holdout losses. Adagrad's learning rate is picked per seed by final
holdout loss over --lr-grid.
"""

import argparse
from pathlib import Path

from betfree.bench import ExperimentConfig, run_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=100)
    ap.add_argument("--cond-number", type=float, default=750.0)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--lr-grid", type=float, nargs="+", default=[1e-3, 1e-2, 1e-1, 1.0, 10.0])
    ap.add_argument("--eval-every", type=int, default=100)
    ap.add_argument("--out-dir", default="results/synthetic")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = dict(dim=args.dim, cond_number=args.cond_number, steps=args.steps, eval_every=args.eval_every)
    print(f"{'target':8} {'seed':>4} {'recursive':>11} {'adagrad':>11} {'best lr':>8}")
    for target in ("min_eig", "max_eig"):
        for seed in args.seeds:
            rec = run_experiment(ExperimentConfig(optimizer="recursive", target=target, seed=seed,
                                                  out=str(out / f"{target}_s{seed}_recursive.csv"), **base))
            best = None
            for lr in args.lr_grid:
                res = run_experiment(ExperimentConfig(optimizer="adagrad", target=target, seed=seed, lr=lr,
                                                      gmax_scale=False,
                                                      out=str(out / f"{target}_s{seed}_adagrad_lr{lr:g}.csv"), **base))
                loss = res.records[-1].holdout_loss
                if best is None or loss < best[0]:
                    best = (loss, lr)
            print(f"{target:8} {seed:>4} {rec.records[-1].holdout_loss:>11.4g} {best[0]:>11.4g} {best[1]:>8g}")


if __name__ == "__main__":
    main()
