# -*- coding: utf-8 -*-
"""
Comparison solvers: the l1-penalized A-step used by the l1 ADMM variant
and nuclear-norm regularized completion.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging
import math

import numpy as np
from scipy import linalg

from sparse_factor_tools.constants import Likelihood
from sparse_factor_tools.exceptions import ValidationError, SolverError
from sparse_factor_tools.solver.subsolvers import spectral_norm, SubsolverResult
from sparse_factor_tools.utils import soft_threshold, relative_change

logger = logging.getLogger(__name__)


_L1Admm = collections.namedtuple("L1Admm", "lam")

class L1Admm(_L1Admm):
    __slots__ = ()

    def __new__(cls, lam):
        if not lam >= 0:
            raise ValidationError("L1Admm lam must be nonnegative (got %r)" % (lam,))
        return super(L1Admm, cls).__new__(cls, float(lam))


_NuclearNorm = collections.namedtuple("NuclearNorm", "lam, step, max_iters")

class NuclearNorm(_NuclearNorm):
    __slots__ = ()

    def __new__(cls, lam, step=0.5, max_iters=500):
        if not lam >= 0:
            raise ValidationError("NuclearNorm lam must be nonnegative (got %r)" % (lam,))
        if not step > 0:
            raise ValidationError("NuclearNorm step must be positive (got %r)" % (step,))
        if int(max_iters) != max_iters or max_iters < 1:
            raise ValidationError("NuclearNorm max_iters must be a positive integer (got %r)" % (max_iters,))
        return super(NuclearNorm, cls).__new__(cls, float(lam), float(step), int(max_iters))


def l1_objective(A, D, Z, lam, rho):
    return lam * np.sum(np.abs(A)) + 0.5 * rho * np.linalg.norm(Z - D.dot(A)) ** 2

def a_l1_subsolve(D, Z, lam, rho, a_box, eps=1e-7, max_iters=500, A0=None):
    """
    Minimizes ``I_A(A) + lam ||A||_1 + rho/2 ||Z - D A||_F^2`` with the
    monotone variant of FISTA; the prox is soft thresholding followed by
    clamping to the box.
    """
    D, Z = np.asarray(D, dtype=float), np.asarray(Z, dtype=float)
    L = spectral_norm(D) ** 2
    if L == 0:
        raise ValidationError("A-step needs a nonzero D")
    step = 1.0 / (rho * L)

    if A0 is None:
        A = np.zeros((D.shape[1], Z.shape[1]))
    else:
        A = np.clip(A0, a_box.lo, a_box.hi)
    value = l1_objective(A, D, Z, lam, rho)
    Y = A
    t = 1.0

    for iteration in range(1, max_iters + 1):
        gradient = rho * D.T.dot(D.dot(Y) - Z)
        candidate = np.clip(soft_threshold(Y - step * gradient, lam * step), a_box.lo, a_box.hi)
        candidate_value = l1_objective(candidate, D, Z, lam, rho)
        accepted = candidate_value <= value
        A_new = candidate if accepted else A

        t_new = (1.0 + math.sqrt(1.0 + 4.0 * t * t)) / 2.0
        Y = A_new + (t / t_new) * (candidate - A_new) + ((t - 1.0) / t_new) * (A_new - A)
        change = relative_change(A_new, A)
        A, t = A_new, t_new
        if accepted:
            value = candidate_value
            if change <= eps:
                return SubsolverResult(A, iteration, True)

    logger.debug("l1 A-step hit the %d iteration cap", max_iters)
    return SubsolverResult(A, max_iters, False)


def singular_value_threshold(M, threshold):
    """
    Shrinks every singular value of ``M`` by ``threshold`` (floored at 0).
    """
    try:
        U, s, Vt = linalg.svd(np.asarray(M, dtype=float), full_matrices=False)
    except linalg.LinAlgError as e:
        raise SolverError("SVD failed: %s" % e)
    return (U * np.maximum(s - threshold, 0.0)).dot(Vt)


_NuclearResult = collections.namedtuple("NuclearResult", "X, objectives, iterations, converged")

class NuclearResult(_NuclearResult):
    __slots__ = ()

    def __repr__(self):
        return "NuclearResult(iterations=%d, converged=%s, objective=%r)" % (
            self.iterations, self.converged, self.objectives[-1] if self.objectives else None)


def nuclear_objective(problem, X, lam):
    mask = problem.mask
    fit = np.sum((problem.observations - X[mask.rows, mask.cols]) ** 2)
    return float(fit + lam * np.sum(linalg.svdvals(X)))

def nuclear_norm_complete(problem, lam, step=0.5, max_iters=500, tol=1e-7, X0=None):
    """
    Proximal gradient for ``||Y_S - X_S||_F^2 + lam ||X||_*``.

    The data term has Lipschitz constant 2, so the default step 1/2 keeps
    the objective non-increasing.
    """
    if not lam >= 0:
        raise ValidationError("nuclear-norm lam must be nonnegative (got %r)" % (lam,))
    if problem.likelihood.kind != Likelihood.GAUSSIAN:
        logger.debug("nuclear-norm baseline fits %s observations with a squared loss",
                     problem.likelihood.kind)
    mask = problem.mask
    X = np.zeros(problem.shape) if X0 is None else np.array(X0, dtype=float)
    objectives = [nuclear_objective(problem, X, lam)]

    for iteration in range(1, max_iters + 1):
        gradient = np.zeros(problem.shape)
        gradient[mask.rows, mask.cols] = 2.0 * (X[mask.rows, mask.cols] - problem.observations)
        X_new = singular_value_threshold(X - step * gradient, lam * step)
        change = relative_change(X_new, X)
        X = X_new
        objectives.append(nuclear_objective(problem, X, lam))
        if change <= tol:
            return NuclearResult(X, objectives, iteration, True)

    logger.warning("nuclear-norm completion stopped at the %d iteration cap", max_iters)
    return NuclearResult(X, objectives, max_iters, False)
