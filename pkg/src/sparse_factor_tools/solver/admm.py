# -*- coding: utf-8 -*-
"""
ADMM for the constrained penalized maximum likelihood problem::

    min  sum_S loss(Y, X) + lam ||A||_0   s.t.  X = D A,  X, D, A in their boxes

Each outer iteration updates X entry-wise through the likelihood prox,
then A (hard thresholding) and D (projected Newton) against
``Z = X + Lambda / rho``, then the dual ``Lambda`` and the penalty ``rho``.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging
import math

import numpy as np

from sparse_factor_tools.constants import Penalty
from sparse_factor_tools.core import FactorPair
from sparse_factor_tools.exceptions import Error, ValidationError, SolverError
from sparse_factor_tools.solver.subsolvers import a_iht, d_newton

logger = logging.getLogger(__name__)

STOP_REFERENCE_ENTRIES = 1e5
STOP_REFERENCE_VALUE = 10.0
RHO_BALANCE = 10.0

_AdmmConfig = collections.namedtuple(
    "AdmmConfig",
    "eps1, eps2, delta1_stop, delta2_stop, eta, rho0, lam, max_outer_iters, "
    "max_inner_iters, newton_damping_delta, penalty, warm_start"
)

class AdmmConfig(_AdmmConfig):
    """
    Solver settings. ``delta1_stop``/``delta2_stop`` left as None scale with
    the problem size as ``10 sqrt(n1 n2 / 1e5)``.
    """
    __slots__ = ()

    def __new__(cls, eps1=1e-7, eps2=1e-7, delta1_stop=None, delta2_stop=None,
                eta=1.05, rho0=1e-3, lam=0.0, max_outer_iters=2000,
                max_inner_iters=500, newton_damping_delta=1e-6,
                penalty=Penalty.L0, warm_start=True):
        for name, value in (('eps1', eps1), ('eps2', eps2), ('rho0', rho0),
                            ('newton_damping_delta', newton_damping_delta),
                            ('delta1_stop', delta1_stop), ('delta2_stop', delta2_stop)):
            if value is not None and not value > 0:
                raise ValidationError("%s must be positive (got %r)" % (name, value))
        if not eta > 1:
            raise ValidationError("eta must exceed 1 (got %r)" % (eta,))
        if not lam >= 0:
            raise ValidationError("lam must be nonnegative (got %r)" % (lam,))
        for name, value in (('max_outer_iters', max_outer_iters), ('max_inner_iters', max_inner_iters)):
            if int(value) != value or value < 1:
                raise ValidationError("%s must be a positive integer (got %r)" % (name, value))
        if not Penalty.is_known(penalty):
            raise ValidationError("Unknown penalty %r" % (penalty,))
        return super(AdmmConfig, cls).__new__(
            cls, float(eps1), float(eps2), delta1_stop, delta2_stop, float(eta),
            float(rho0), float(lam), int(max_outer_iters), int(max_inner_iters),
            float(newton_damping_delta), penalty, bool(warm_start)
        )

    def _replace(self, **changes):
        # rebuilt through __new__ so replaced values are validated too
        return AdmmConfig(**dict(self._asdict(), **changes))

    def stops_for(self, n1, n2):
        default = STOP_REFERENCE_VALUE * math.sqrt(n1 * n2 / STOP_REFERENCE_ENTRIES)
        return (
            default if self.delta1_stop is None else float(self.delta1_stop),
            default if self.delta2_stop is None else float(self.delta2_stop),
        )


AdmmState = collections.namedtuple("AdmmState", "X, factors, Lambda, rho, delta1, delta2, iter")

TraceRecord = collections.namedtuple("TraceRecord", "delta1, delta2, rho, objective")

_AdmmResult = collections.namedtuple("AdmmResult", "factors, X, trace, converged, iterations")

class AdmmResult(_AdmmResult):
    __slots__ = ()

    def __repr__(self):
        return "AdmmResult(%r, iterations=%d, converged=%s)" % (
            self.factors, self.iterations, self.converged)


def update_x(problem, state):
    """
    X-update: the likelihood prox at observed entries, the plain target
    ``D A - Lambda / rho`` elsewhere, both clamped to the X box.
    """
    rho = state.rho
    X = state.factors.X - state.Lambda / rho
    mask = problem.mask
    if mask.size:
        z = X[mask.rows, mask.cols]
        X[mask.rows, mask.cols] = problem.likelihood.prox(
            z, rho, problem.observations, x_box=problem.x_box)
    return np.clip(X, problem.x_box.lo, problem.x_box.hi)


def objective(problem, X, A, lam, penalty=Penalty.L0):
    """
    ``sum_S loss(Y, X) + lam * ||A||_0`` (``||A||_1`` for the l1 penalty).
    """
    mask = problem.mask
    data = np.sum(problem.likelihood.loss(problem.observations, X[mask.rows, mask.cols]))
    if penalty == Penalty.L1:
        reg = np.sum(np.abs(A))
    else:
        reg = np.count_nonzero(A)
    return float(data + lam * reg)


def _a_step(penalty):
    if penalty == Penalty.L1:
        from sparse_factor_tools.baselines import a_l1_subsolve
        return a_l1_subsolve
    return a_iht


def initial_factors(problem, rng):
    """
    D uniform over the D box, A = 0.
    """
    D = rng.uniform(problem.d_box.lo, problem.d_box.hi, size=(problem.n1, problem.r))
    return FactorPair(D, np.zeros((problem.r, problem.n2)))


def admm_solve(problem, config=None, init=None, rng=None, callback=None):
    """
    Runs the ADMM loop until ``delta1 <= delta1_stop`` and
    ``delta2 <= delta2_stop`` or ``max_outer_iters`` is reached.

    ``init`` is an optional starting :class:`FactorPair`; otherwise D is drawn
    from ``rng`` (a numpy Generator). Returns an :class:`AdmmResult` whose
    ``trace`` holds one :class:`TraceRecord` per outer iteration.

    ``callback``, when given, is called after every outer iteration with the
    :class:`AdmmState` reached (the ``rho`` it was computed with, before
    adaptation).
    """
    if problem.mask.size < 1:
        raise ValidationError("The sample mask is empty")
    config = config or AdmmConfig()
    if init is None:
        if rng is None:
            raise ValidationError("admm_solve needs either init or rng")
        init = initial_factors(problem, rng)

    delta1_stop, delta2_stop = config.stops_for(problem.n1, problem.n2)
    a_step = _a_step(config.penalty)
    x_box, d_box, a_box = problem.x_box, problem.d_box, problem.a_box

    D = np.clip(init.D, d_box.lo, d_box.hi)
    A = np.clip(init.A, a_box.lo, a_box.hi)
    DA = D.dot(A)
    X = np.clip(DA, x_box.lo, x_box.hi)
    Lambda = np.zeros(problem.shape)
    rho = config.rho0
    delta1 = delta2 = float('inf')
    trace = []
    converged = False
    logger.debug("ADMM on %r: lam=%r, stops=(%.4g, %.4g)", problem, config.lam, delta1_stop, delta2_stop)

    iteration = 0
    for iteration in range(1, config.max_outer_iters + 1):
        state = AdmmState(X, FactorPair(D, A), Lambda, rho, delta1, delta2, iteration - 1)
        try:
            X = update_x(problem, state)
            Z = X + Lambda / rho
            if not np.any(D):
                A = np.zeros_like(A)
            else:
                A = a_step(D, Z, config.lam, rho, a_box, config.eps1,
                           config.max_inner_iters, A0=A if config.warm_start else None).value
            D = d_newton(A, Z, rho, d_box, config.eps2, config.newton_damping_delta,
                         config.max_inner_iters, D0=D if config.warm_start else None).value
        except Error as e:
            raise SolverError("ADMM failed at outer iteration %d: %s" % (iteration, e),
                              iteration=iteration) from e

        DA_new = D.dot(A)
        residual = X - DA_new
        Lambda = Lambda + rho * residual
        delta1 = float(np.linalg.norm(residual))
        delta2 = float(rho * np.linalg.norm(DA - DA_new))
        DA = DA_new
        trace.append(TraceRecord(delta1, delta2, rho,
                                 objective(problem, X, A, config.lam, config.penalty)))
        logger.debug("iter %d: delta1=%.4g delta2=%.4g rho=%.4g", iteration, delta1, delta2, rho)
        if callback is not None:
            callback(AdmmState(X, FactorPair(D, A), Lambda, rho, delta1, delta2, iteration))

        if delta1 <= delta1_stop and delta2 <= delta2_stop:
            converged = True
            break
        if delta1 >= RHO_BALANCE * delta2:
            rho *= config.eta
        elif delta2 >= RHO_BALANCE * delta1:
            rho /= config.eta

    if not converged:
        logger.warning("ADMM stopped at the %d outer iteration cap (delta1=%.4g, delta2=%.4g)",
                       config.max_outer_iters, delta1, delta2)
    return AdmmResult(FactorPair(D, A), X, trace, converged, iteration)
