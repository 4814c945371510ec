# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals, print_function
import logging
import os
import sys

import docopt
import numpy as np

import sparse_factor_tools
from sparse_factor_tools import bundle, config, theory
from sparse_factor_tools.baselines import nuclear_norm_complete
from sparse_factor_tools.constants import Method, Penalty
from sparse_factor_tools.core import frobenius_error
from sparse_factor_tools.exceptions import Error, ConfigError
from sparse_factor_tools.experiment import run_experiment, truth_seed
from sparse_factor_tools.report import emit_outputs
from sparse_factor_tools.solver import admm_solve
from sparse_factor_tools.synth import WeakLp, generate_ground_truth, make_instance

logger = logging.getLogger('sparse_factor_tools')
logger.addHandler(logging.StreamHandler())

def main(argv=None):
    """
    sparse-factor-tools.py

    Usage:
        sparse-factor-tools.py generate [--preset <name>] [--config <path>] [--gamma <gamma>] [--seed <n>] [--out <dir>] [--verbose]
        sparse-factor-tools.py solve <bundle> [--config <path>] [--lambda <lam>] [--method <method>] [--seed <n>] [--out <dir>] [--verbose]
        sparse-factor-tools.py experiment [--preset <name>] [--config <path>] [--seed <n>] [--out <dir>] [--jobs <n>] [--timing] [--verbose]
        sparse-factor-tools.py bounds [--preset <name>] [--config <path>] [--gamma <gamma>] [--seed <n>] [--verbose]
        sparse-factor-tools.py -h | --help
        sparse-factor-tools.py --version

    Options:
        --preset <name>         gaussian, laplace, poisson, onebit, compare62,
                                gaussian_sigma1, gaussian_sigma2, laplace_tau_sqrt8,
                                laplace_tau_sqrt_half, their *_weak variants or
                                table2_* full-scale runs.
        --config <path>         Flat 'key = value' config file.
        --seed <n>              Random seed (overrides sweep.seed).
        --out <dir>             Output directory.
        --jobs <n>              Worker processes for the sweep.
        --gamma <gamma>         Sampling rate.
        --lambda <lam>          Sparsity penalty [default: 10].
        --method <method>       l0_admm, l1_admm or nuclear [default: l0_admm].
        --timing                Record wall-clock time per sweep cell.
        -v --verbose            Be more verbose.

    """
    args = docopt.docopt(main.__doc__, argv=argv, version=sparse_factor_tools.__version__)

    if args['--verbose']:
        logger.setLevel(logging.DEBUG)
    else:
        logger.setLevel(logging.INFO)

    try:
        if args['generate']:
            generate(args)
        elif args['solve']:
            solve(args)
        elif args['experiment']:
            experiment(args)
        else:
            bounds(args)
    except (Error, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    return 0


def _settings(args, **overrides):
    if not (args['--preset'] or args['--config']):
        raise ConfigError("give --preset or --config")
    overrides['sweep.seed'] = args['--seed']
    return config.resolve_settings(args['--preset'], args['--config'], overrides)

def _gamma(args, experiment_config):
    if args['--gamma'] is None:
        return max(experiment_config.gammas)
    try:
        return float(args['--gamma'])
    except ValueError:
        raise ConfigError("bad --gamma %r" % args['--gamma'])


def generate(args):
    exp = config.build_experiment(_settings(args))
    truth = generate_ground_truth(exp.truth, np.random.default_rng(truth_seed(exp)))
    rng = np.random.default_rng(exp.seed)
    instance = make_instance(exp.truth, exp.model, _gamma(args, exp), rng,
                             exp.d_box, exp.a_box, truth=truth)
    out = args['--out'] or 'bundle'
    bundle.write_bundle(out, instance.problem, truth)
    print("wrote %r to %s" % (instance.problem, out))


def solve(args):
    directory = args['<bundle>']
    problem = bundle.read_problem(directory)
    settings = config.load_config(args['--config']) if args['--config'] else {}
    solver = config.build_solver(settings)
    seed = int(args['--seed'] or config.SettingsReader(settings).int('sweep.seed', str(config.DEFAULT_SEED)))
    try:
        lam = float(args['--lambda'])
    except ValueError:
        raise ConfigError("bad --lambda %r" % args['--lambda'])
    method = args['--method']
    out = args['--out'] or os.path.join(directory, 'estimate')
    if not os.path.isdir(out):
        os.makedirs(out)

    if method == Method.NUCLEAR:
        result = nuclear_norm_complete(problem, lam)
        X_hat, iterations, converged = result.X, result.iterations, result.converged
    elif Method.is_known(method):
        penalty = Penalty.L1 if method == Method.L1_ADMM else Penalty.L0
        result = admm_solve(problem, solver._replace(lam=lam, penalty=penalty),
                            rng=np.random.default_rng(seed))
        bundle.write_matrix(os.path.join(out, 'D_hat.txt'), result.factors.D)
        bundle.write_matrix(os.path.join(out, 'A_hat.txt'), result.factors.A)
        X_hat, iterations, converged = result.factors.X, result.iterations, result.converged
    else:
        raise ConfigError("unknown method %r" % method)

    bundle.write_matrix(os.path.join(out, 'X_hat.txt'), X_hat)
    print("%s: %d iterations, converged=%s" % (method, iterations, converged))
    X_true = bundle.read_truth_matrix(directory)
    if X_true is not None:
        print("per-element MSE: %r" % frobenius_error(X_hat, X_true))


def experiment(args):
    settings = _settings(args, **{
        'output.dir': args['--out'],
        'run.jobs': args['--jobs'],
        'output.timing': 'true' if args['--timing'] else None,
    })
    exp = config.build_experiment(settings)
    result = run_experiment(exp)
    emit_outputs(result.rows, result.summary, exp.output_dir, exp.model.kind)
    for row in result.summary:
        print("gamma=%-6s %-8s best_lambda=%-8s mse=%.6g +/- %.2g" % (
            row.gamma, row.method, row.best_lambda, row.mean_mse, row.stderr_mse))
    for method, slope in result.slopes.items():
        print("slope %s: %s" % (method, 'n/a' if slope is None else '%.4f' % slope))


def bounds(args):
    exp = config.build_experiment(_settings(args))
    truth = generate_ground_truth(exp.truth, np.random.default_rng(truth_seed(exp)))
    n1, n2 = exp.truth.n1, exp.truth.n2
    coefficients = exp.truth.coefficient_model
    p = coefficients.p if isinstance(coefficients, WeakLp) else None
    gammas = [_gamma(args, exp)] if args['--gamma'] else exp.gammas

    print("gamma m beta lambda log_term rate_term approx_term total")
    for gamma in gammas:
        m = max(1, int(round(gamma * n1 * n2)))
        value = theory.corollary_bound(theory.bound_inputs_from_truth(truth, exp.model, m, p=p))
        print(" ".join([repr(gamma), str(m)] + ["%.6g" % v for v in (
            value.beta, value.lam, value.log_term, value.rate_term, value.approx_term, value.total)]))
