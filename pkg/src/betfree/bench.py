"""Synthetic absolute-loss benchmark and biased gradient streams.

Losses are l_t(w) = |x_t . (w - target)| with x_t ~ N(0, Sigma). Sigma has
geometrically decaying eigenvalues, and the target is the eigenvector of
either the largest or the smallest eigenvalue.
"""

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .baselines import Adagrad
from .diag import DiagOptimizer
from .doubling import DoublingBettor
from .learners import ConfigurationError, ContractViolation, RegretLedger
from .recursive import RecursiveOptimizer
from .safeguards import GmaxScaler, InitFractionClamp, MomentumOffset
from .vectorlab import RNG_ALGORITHM, make_covariance, sample_gaussian, seeded_rng

OPTIMIZERS = ("recursive", "diag", "doubling1d", "adagrad")
CSV_COLUMNS = ("step", "train_loss", "holdout_loss", "regret", "wealth", "g_max")

# stream ids under one seed
COV_STREAM, TRAIN_STREAM, HOLDOUT_STREAM = 0, 1, 2
BLOCK = 1000


@dataclass(frozen=True)
class SyntheticProblem:
    cov: object
    target: np.ndarray
    dim: int
    seed: int
    target_mode: str


def make_problem(dim=100, cond=750.0, target_mode="min_eig", seed=0):
    mode = target_mode.replace("-", "_")
    if mode not in ("min_eig", "max_eig"):
        raise ConfigurationError(f"unknown target mode {target_mode!r}")
    cov = make_covariance(dim, cond, seeded_rng(seed, COV_STREAM))
    col = 0 if mode == "max_eig" else -1
    return SyntheticProblem(cov, cov.basis[:, col].copy(), dim, seed, mode)


def loss_and_grad(problem, w, x):
    """|x.(w - target)| and its subgradient sign(.) x, with sign(0) = 0."""
    r = float(x @ (np.asarray(w) - problem.target))
    return abs(r), np.sign(r) * x


def synthetic_loss_and_grad(problem, w, rng):
    return loss_and_grad(problem, w, sample_gaussian(problem.cov, rng))


def holdout_set(problem, size):
    return sample_gaussian(problem.cov, seeded_rng(problem.seed, HOLDOUT_STREAM), size)


def holdout_loss(problem, w, xs):
    return float(np.mean(np.abs(xs @ (np.asarray(w) - problem.target))))


def draw_blocks(cov, rng, block=BLOCK):
    while True:
        yield from sample_gaussian(cov, rng, block)


@dataclass
class ExperimentConfig:
    optimizer: str = "recursive"
    dim: int = 100
    steps: int = 20000
    seed: int = 0
    epsilon: float = 1.0
    eta: float = 0.5
    lr: float = 1.0
    cond_number: float = 750.0
    target: str = "min_eig"
    gmax_scale: bool = True
    momentum: bool = False
    init_clamp: bool = False
    holdout: int = 1000
    eval_every: int = 100
    out: str = None
    keep_ledger: bool = False

    def __post_init__(self):
        if self.optimizer not in OPTIMIZERS:
            raise ConfigurationError(f"unknown optimizer {self.optimizer!r}; choose from {OPTIMIZERS}")
        if self.steps < 1 or self.holdout < 1 or self.eval_every < 1:
            raise ConfigurationError("steps, holdout and eval_every must be >= 1")


@dataclass
class RunRecord:
    step: int
    train_loss: float
    holdout_loss: float
    regret: float
    wealth: float = None
    g_max: float = None


@dataclass
class RunResult:
    records: list
    metadata: dict
    ledger: RegretLedger = field(default=None, repr=False)
    final_iterate: np.ndarray = field(default=None, repr=False)


def build_learner(config):
    shape = (config.dim,)
    name = config.optimizer
    if name == "adagrad":
        learner = Adagrad(shape, config.lr)
    else:
        clamp = InitFractionClamp(shape) if config.init_clamp else None
        if name == "recursive":
            inner = DiagOptimizer(shape, epsilon=config.epsilon, eta=config.eta, clamp=clamp)
            learner = RecursiveOptimizer(shape, epsilon=config.epsilon, inner=inner)
        elif name == "diag":
            learner = DiagOptimizer(shape, epsilon=config.epsilon, eta=config.eta, clamp=clamp)
        else:
            learner = DoublingBettor(shape, epsilon=config.epsilon / config.dim)
    if config.gmax_scale:
        learner = GmaxScaler(learner)
    if config.momentum:
        learner = MomentumOffset(learner)
    return learner


def _unwrap(learner, kind):
    while learner is not None:
        if isinstance(learner, kind):
            return learner
        learner = learner.__dict__.get("inner")
    return None


def _wealth(learner):
    core = learner
    while isinstance(core, (GmaxScaler, MomentumOffset)):
        core = core.inner
    if isinstance(core, Adagrad):
        return None
    return float(np.sum(core.wealth))


def run_experiment(config, learner=None, problem=None):
    """Online loop with periodic holdout evaluation; writes CSV if config.out is set."""
    problem = problem or make_problem(config.dim, config.cond_number, config.target, config.seed)
    learner = learner or build_learner(config)
    scaler = _unwrap(learner, GmaxScaler)
    xs_hold = holdout_set(problem, config.holdout)
    stream = draw_blocks(problem.cov, seeded_rng(config.seed, TRAIN_STREAM))
    ledger = RegretLedger() if config.keep_ledger else None

    records = []
    payout = 0.0
    grad_sum = np.zeros(problem.dim)
    window_loss, window_n = 0.0, 0
    for step in range(1, config.steps + 1):
        w = learner.predict()
        loss, g = loss_and_grad(problem, w, next(stream))
        payout += float(g @ w)
        grad_sum += g
        if ledger is not None:
            ledger.record(g, w)
        try:
            learner.update(g)
        except ContractViolation as exc:
            raise ContractViolation(f"step {step}: {exc}") from exc
        window_loss += loss
        window_n += 1
        if step % config.eval_every == 0 or step == config.steps:
            w_next = learner.predict()
            records.append(
                RunRecord(
                    step=step,
                    train_loss=window_loss / window_n,
                    holdout_loss=holdout_loss(problem, w_next, xs_hold),
                    regret=payout - float(grad_sum @ problem.target),
                    wealth=_wealth(learner),
                    g_max=None if scaler is None else float(scaler.g_max),
                )
            )
            window_loss, window_n = 0.0, 0

    meta = {
        "config": {k: v for k, v in asdict(config).items() if k != "keep_ledger"},
        "rng": RNG_ALGORITHM,
        "learner": learner.metadata(),
    }
    if config.out:
        write_csv(config.out, records)
        Path(str(config.out) + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return RunResult(records, meta, ledger, learner.predict())


def _fmt(value):
    return "" if value is None else "%.12g" % value


def write_csv(path, records):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow([r.step] + [_fmt(getattr(r, c)) for c in CSV_COLUMNS[1:]])


class BiasedGradientStream:
    """Gradients x_t - sqrt(bias) x_min, rescaled by the running max L1 norm.

    x_t ~ N(0, Sigma) and x_min is the unit eigenvector of Sigma's smallest
    eigenvalue, so the gradients carry a persistent drift along x_min.
    """

    def __init__(self, dim, cond, epsilon_bias, seed):
        if epsilon_bias <= 0:
            raise ValueError("epsilon_bias must be positive")
        self.cov = make_covariance(dim, cond, seeded_rng(seed, COV_STREAM))
        self.x_min = self.cov.basis[:, -1].copy()
        self.shift = np.sqrt(epsilon_bias) * self.x_min
        self.seed = seed
        self.g_max = 0.0

    def __iter__(self):
        for x in draw_blocks(self.cov, seeded_rng(self.seed, TRAIN_STREAM)):
            g = x - self.shift
            self.g_max = max(self.g_max, float(np.sum(np.abs(g))))
            yield g / self.g_max if self.g_max > 0 else np.zeros_like(g)


def full_matrix_regime_problem(dim, cond, epsilon_bias, seed):
    return BiasedGradientStream(dim, cond, epsilon_bias, seed)
