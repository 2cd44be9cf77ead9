"""Bayesian optimization with randomized GP-UCB confidence parameters."""

from ._core import (
    InputError,
    NumericalError,
    __version__,
    beta,
    eval_benchmark,
    gp_predict,
    greedy_mig,
    information_gain,
    kappa,
    log_marginal_likelihood,
    run_experiment,
    run_trial,
    sample_zeta,
    shift,
    validate,
)

__all__ = [
    "InputError",
    "NumericalError",
    "__version__",
    "beta",
    "eval_benchmark",
    "gp_predict",
    "greedy_mig",
    "information_gain",
    "kappa",
    "log_marginal_likelihood",
    "run_experiment",
    "run_trial",
    "sample_zeta",
    "shift",
    "validate",
]
