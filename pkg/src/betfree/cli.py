import argparse
import json
import sys

from .bench import OPTIMIZERS, ExperimentConfig, run_experiment
from .learners import ConfigurationError, ContractViolation, InvariantFailure
from .verify import run_all


def _bool(text):
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(prog="betfree", description="Coin-betting online learners and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the synthetic absolute-loss benchmark")
    run.add_argument("--optimizer", choices=OPTIMIZERS, default="recursive")
    run.add_argument("--dim", type=int, default=100)
    run.add_argument("--steps", type=int, default=20000)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--epsilon", type=float, default=1.0)
    run.add_argument("--eta", type=float, default=0.5)
    run.add_argument("--lr", type=float, default=1.0)
    run.add_argument("--cond-number", type=float, default=750.0)
    run.add_argument("--target", choices=("min-eig", "max-eig"), default="min-eig")
    run.add_argument("--gmax-scale", type=_bool, default=None,
                     help="default: true for betting learners, false for adagrad")
    run.add_argument("--momentum", type=_bool, default=False)
    run.add_argument("--init-clamp", type=_bool, default=False)
    run.add_argument("--holdout", type=int, default=1000)
    run.add_argument("--eval-every", type=int, default=100)
    run.add_argument("--out", required=True)

    ver = sub.add_parser("verify", help="check closed forms against grid oracles")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--quick", action="store_true", help="100 instances per check instead of 1000")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        results = run_all(seed=args.seed, quick=args.quick)
        for r in results:
            print(r.line())
        return 0 if all(r.passed for r in results) else 2

    gmax = args.gmax_scale if args.gmax_scale is not None else args.optimizer != "adagrad"
    try:
        config = ExperimentConfig(
            optimizer=args.optimizer, dim=args.dim, steps=args.steps, seed=args.seed,
            epsilon=args.epsilon, eta=args.eta, lr=args.lr, cond_number=args.cond_number,
            target=args.target.replace("-", "_"), gmax_scale=gmax, momentum=args.momentum,
            init_clamp=args.init_clamp, holdout=args.holdout, eval_every=args.eval_every, out=args.out,
        )
        result = run_experiment(config)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (ContractViolation, InvariantFailure) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 2
    last = result.records[-1]
    print(json.dumps({"step": last.step, "holdout_loss": last.holdout_loss, "regret": last.regret, "out": args.out}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
