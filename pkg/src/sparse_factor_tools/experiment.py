# -*- coding: utf-8 -*-
"""
Sweeps over sampling rates and regularization weights.

One ground truth is drawn per experiment. Every (gamma, lambda, trial,
method) cell then draws its own mask and observations from a seed derived
from the experiment seed, so cells are independent of each other and of
the number of worker processes.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging
import math
import multiprocessing
import time

import numpy as np

from sparse_factor_tools.baselines import NuclearNorm, nuclear_norm_complete
from sparse_factor_tools.constants import Method, Penalty
from sparse_factor_tools.core import frobenius_error
from sparse_factor_tools.exceptions import Error, ValidationError
from sparse_factor_tools.solver.admm import admm_solve
from sparse_factor_tools.synth import generate_ground_truth, make_instance
from sparse_factor_tools.utils import derive_seed, new_registry

logger = logging.getLogger(__name__)

METHODS, register = new_registry()

ExperimentConfig = collections.namedtuple(
    "ExperimentConfig",
    "name, model, truth, d_box, a_box, gammas, lambdas, trials, seed, solver, "
    "methods, nuclear_step, nuclear_max_iters, output_dir, timing, jobs"
)

ResultRow = collections.namedtuple(
    "ResultRow", "gamma, lam, trial, method, mse, outer_iters, runtime_ms, converged"
)

SummaryRow = collections.namedtuple("SummaryRow", "gamma, method, best_lambda, mean_mse, stderr_mse")

ExperimentResult = collections.namedtuple("ExperimentResult", "rows, summary, slopes")

Job = collections.namedtuple("Job", "gamma_index, lambda_index, trial, method, gamma, lam")


@register(Method.L0_ADMM)
def _l0_admm(problem, config, lam, rng):
    result = admm_solve(problem, config.solver._replace(lam=float(lam), penalty=Penalty.L0), rng=rng)
    return result.factors.X, result.iterations, result.converged

@register(Method.L1_ADMM)
def _l1_admm(problem, config, lam, rng):
    result = admm_solve(problem, config.solver._replace(lam=float(lam), penalty=Penalty.L1), rng=rng)
    return result.factors.X, result.iterations, result.converged

@register(Method.NUCLEAR)
def _nuclear(problem, config, lam, rng):
    kind = NuclearNorm(lam, config.nuclear_step, config.nuclear_max_iters)
    result = nuclear_norm_complete(problem, kind.lam, kind.step, kind.max_iters)
    return result.X, result.iterations, result.converged


def truth_seed(config):
    return derive_seed(config.seed, 'truth')

def make_jobs(config):
    jobs = []
    for gamma_index, gamma in enumerate(config.gammas):
        for method in config.methods:
            for lambda_index, lam in enumerate(config.lambdas[method]):
                for trial in range(config.trials):
                    jobs.append(Job(gamma_index, lambda_index, trial, method, gamma, lam))
    return jobs


def run_cell(config, truth, job):
    """
    Runs one sweep cell and returns its :class:`ResultRow`. Solver errors
    are logged and recorded as ``converged = False`` with ``mse = inf``.
    """
    rng = np.random.default_rng(
        derive_seed(config.seed, job.gamma_index, job.lambda_index, job.trial, job.method))
    started = time.perf_counter()
    try:
        instance = make_instance(config.truth, config.model, job.gamma, rng,
                                 config.d_box, config.a_box, truth=truth)
        X_hat, iterations, converged = METHODS[job.method](instance.problem, config, job.lam, rng)
        mse = frobenius_error(X_hat, truth.X)
    except Error as e:
        logger.warning("cell gamma=%r lambda=%r trial=%d method=%s failed: %s",
                       job.gamma, job.lam, job.trial, job.method, e)
        mse, iterations, converged = float('inf'), 0, False
    runtime_ms = int(round((time.perf_counter() - started) * 1000)) if config.timing else 0
    return ResultRow(job.gamma, job.lam, job.trial, job.method, mse, iterations, runtime_ms, converged)

def _run_job(args):
    return run_cell(*args)


def run_experiment(config):
    """
    Runs every cell of the sweep (in ``config.jobs`` processes) and
    returns rows, the best-lambda summary and one slope per method.
    """
    truth = generate_ground_truth(config.truth, np.random.default_rng(truth_seed(config)))
    jobs = make_jobs(config)
    logger.info("%s: %d cells over %d sampling rates", config.name, len(jobs), len(config.gammas))

    tasks = [(config, truth, job) for job in jobs]
    if config.jobs > 1:
        pool = multiprocessing.Pool(config.jobs)
        try:
            rows = pool.map(_run_job, tasks)
        finally:
            pool.close()
            pool.join()
    else:
        rows = []
        for index, task in enumerate(tasks, 1):
            rows.append(_run_job(task))
            if index % max(1, len(tasks) // 10) == 0:
                logger.info("%d/%d cells done", index, len(tasks))

    summary = summarize(rows)
    slopes = collections.OrderedDict()
    for method in config.methods:
        points = [(row.gamma, row.mean_mse) for row in summary if row.method == method]
        try:
            slopes[method] = estimate_slope(points)
        except ValidationError as e:
            logger.info("no slope for %s: %s", method, e)
            slopes[method] = None
    return ExperimentResult(rows, summary, slopes)


def summarize(rows):
    """
    Per (gamma, method): the lambda with the lowest mean MSE, that mean
    and its standard error. Ties go to the first lambda seen.
    """
    groups = collections.OrderedDict()
    for row in rows:
        groups.setdefault((row.gamma, row.method), collections.OrderedDict()) \
              .setdefault(row.lam, []).append(row.mse)

    summary = []
    for (gamma, method), by_lambda in groups.items():
        best = None
        for lam, errors in by_lambda.items():
            mean = float(np.mean(errors))
            if best is None or mean < best[1]:
                best = (lam, mean, errors)
        lam, mean, errors = best
        if len(errors) > 1 and math.isfinite(mean):
            stderr = float(np.std(errors, ddof=1) / math.sqrt(len(errors)))
        else:
            stderr = 0.0
        summary.append(SummaryRow(gamma, method, lam, mean, stderr))
    return summary


def estimate_slope(points):
    """
    Least-squares slope of ``log10(mse)`` against ``log10(gamma)``.
    """
    points = list(points)
    if len(points) < 2:
        raise ValidationError("slope needs at least two points (got %d)" % len(points))
    gammas = np.array([gamma for gamma, _ in points], dtype=float)
    errors = np.array([mse for _, mse in points], dtype=float)
    if np.any(~(gammas > 0)) or np.any(~(errors > 0)) or not np.all(np.isfinite(errors)):
        raise ValidationError("slope needs positive finite values")
    if np.all(gammas == gammas[0]):
        raise ValidationError("slope needs at least two distinct sampling rates")
    slope, _ = np.polyfit(np.log10(gammas), np.log10(errors), 1)
    return float(slope)
