# -*- coding: utf-8 -*-
"""
Inner solvers of the ADMM loop: the box-constrained iterative hard
thresholding A-step and the projected Newton D-step.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging

import numpy as np
from scipy import linalg

from sparse_factor_tools.exceptions import ValidationError, SolverError
from sparse_factor_tools.utils import relative_change

logger = logging.getLogger(__name__)

SPECTRAL_SEED = 0

_SubsolverResult = collections.namedtuple("SubsolverResult", "value, iterations, converged")

class SubsolverResult(_SubsolverResult):
    """
    ``converged`` is False when the iteration cap was reached.
    """
    __slots__ = ()

    def __repr__(self):
        return "SubsolverResult(shape=%s, iterations=%d, converged=%s)" % (
            self.value.shape, self.iterations, self.converged)


def spectral_norm(D, tol=1e-12, max_iters=10000):
    """
    Largest singular value of ``D`` by power iteration on ``D^T D``.

    The iteration is run from the normalized all-ones vector and from a
    fixed Gaussian vector and the larger estimate is kept: a start vector
    lying in an eigenspace of a smaller eigenvalue never leaves it.
    """
    D = np.asarray(D, dtype=float)
    if not np.any(D):
        return 0.0
    gram = D.T.dot(D)
    n = gram.shape[0]
    starts = (np.ones(n), np.random.default_rng(SPECTRAL_SEED).standard_normal(n))
    estimate = max(_power_iteration(gram, v, tol, max_iters) for v in starts)
    if estimate == 0:
        # both starts in the null space
        logger.debug("power iteration fell back to an SVD")
        return float(linalg.svdvals(D)[0])
    return float(np.sqrt(estimate))

def _power_iteration(gram, v, tol, max_iters):
    v = v / np.linalg.norm(v)
    estimate = 0.0
    for iteration in range(max_iters):
        w = gram.dot(v)
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        v = w / norm
        previous, estimate = estimate, float(v.dot(gram).dot(v))
        if abs(estimate - previous) <= tol * estimate:
            break
    else:
        logger.debug("power iteration stopped after %d iterations", max_iters)
    return estimate


def iht_objective(A, D, Z, lam, rho):
    return lam * np.count_nonzero(A) + 0.5 * rho * np.linalg.norm(Z - D.dot(A)) ** 2

def hard_threshold_box(Y, threshold_sq, a_box):
    """
    Entry-wise minimiser of ``lam 1[a != 0] + (rho L / 2)(a - Y)^2`` over the box,
    with ``threshold_sq = 2 lam / (rho L)``.

    The surviving value is ``clamp(Y)``, the argmin of the quadratic over the
    box. An entry is zeroed when ``Y^2 <= threshold_sq + (clamp(Y) - Y)^2``;
    inside the box this is ``|Y| <= sqrt(threshold_sq)``.
    """
    clamped = np.clip(Y, a_box.lo, a_box.hi)
    if a_box.lo > 0 or a_box.hi < 0:
        return clamped
    keep = Y ** 2 > threshold_sq + (clamped - Y) ** 2
    return np.where(keep, clamped, 0.0)


def a_iht(D, Z, lam, rho, a_box, eps=1e-7, max_iters=500, A0=None):
    """
    Minimizes ``I_A(A) + lam ||A||_0 + rho/2 ||Z - D A||_F^2`` by
    iterative hard thresholding with step ``1 / ||D||_2^2``.

    Starts from ``A0`` (zero by default) and stops when the relative
    Frobenius change drops to ``eps``.
    """
    D, Z = np.asarray(D, dtype=float), np.asarray(Z, dtype=float)
    L = spectral_norm(D) ** 2
    if L == 0:
        raise ValidationError("A-step needs a nonzero D")

    if A0 is None:
        A = np.zeros((D.shape[1], Z.shape[1]))
    else:
        A = np.clip(A0, a_box.lo, a_box.hi)
    threshold_sq = 2.0 * lam / (rho * L)

    for iteration in range(1, max_iters + 1):
        Y = A - D.T.dot(D.dot(A) - Z) / L
        A_new = hard_threshold_box(Y, threshold_sq, a_box)
        change = relative_change(A_new, A)
        A = A_new
        if change <= eps:
            return SubsolverResult(A, iteration, True)

    logger.debug("A-step hit the %d iteration cap", max_iters)
    return SubsolverResult(A, max_iters, False)


def d_newton(A, Z, rho, d_box, eps=1e-7, delta=1e-6, max_iters=500, D0=None):
    """
    Projected Newton iterations for ``min_D I_D(D) + rho/2 ||Z - D A||_F^2``::

        D <- Proj_D[D - rho (D A - Z) A^T (rho A A^T + delta I)^-1]
    """
    A, Z = np.asarray(A, dtype=float), np.asarray(Z, dtype=float)
    r = A.shape[0]
    hessian = rho * A.dot(A.T) + delta * np.eye(r)
    try:
        factor = linalg.cho_factor(hessian)
    except linalg.LinAlgError as e:
        raise SolverError("D-step Hessian is not positive definite: %s" % e)

    if D0 is None:
        D = np.zeros((Z.shape[0], r))
    else:
        D = np.clip(D0, d_box.lo, d_box.hi)

    for iteration in range(1, max_iters + 1):
        gradient = rho * (D.dot(A) - Z).dot(A.T)
        step = linalg.cho_solve(factor, gradient.T).T
        D_new = np.clip(D - step, d_box.lo, d_box.hi)
        change = relative_change(D_new, D)
        D = D_new
        if change <= eps:
            return SubsolverResult(D, iteration, True)

    logger.debug("D-step hit the %d iteration cap", max_iters)
    return SubsolverResult(D, max_iters, False)
