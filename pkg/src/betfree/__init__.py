"""Coin-betting online learners with matrix-free preconditioning."""

from .baselines import Adagrad, FixedFractionBettor, fixed_fraction_run
from .diag import DiagOptimizer, ftrl_fraction
from .doubling import DoublingBettor
from .learners import ConfigurationError, ContractViolation, InvariantFailure, RegretLedger, regret_at
from .recursive import RecursiveOptimizer
from .safeguards import GmaxScaler, InitFractionClamp, MomentumOffset

__all__ = [
    "Adagrad",
    "ConfigurationError",
    "ContractViolation",
    "DiagOptimizer",
    "DoublingBettor",
    "FixedFractionBettor",
    "GmaxScaler",
    "InitFractionClamp",
    "InvariantFailure",
    "MomentumOffset",
    "RecursiveOptimizer",
    "RegretLedger",
    "fixed_fraction_run",
    "ftrl_fraction",
    "regret_at",
]
