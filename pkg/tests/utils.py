# -*- coding: utf-8 -*-
"""
Brute-force oracles and small instance builders shared by the tests.
"""
from __future__ import absolute_import, division, unicode_literals
import itertools

import numpy as np
from scipy import optimize

from sparse_factor_tools.core import BoxBounds, FactorPair, SampleMask, make_problem

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section(func, lo, hi, iters=200):
    """
    Vectorized golden-section search for the minimizers of convex
    ``func`` on ``[lo, hi]`` (entry-wise brackets).
    """
    lo, hi = np.array(lo, dtype=float), np.array(hi, dtype=float)
    a = hi - GOLDEN * (hi - lo)
    b = lo + GOLDEN * (hi - lo)
    fa, fb = func(a), func(b)
    for _ in range(iters):
        left = fa <= fb
        hi = np.where(left, b, hi)
        lo = np.where(left, lo, a)
        a_new = hi - GOLDEN * (hi - lo)
        b_new = lo + GOLDEN * (hi - lo)
        a, b = a_new, b_new
        fa, fb = func(a), func(b)
    return 0.5 * (lo + hi)


def prox_objective(model, z, rho, y):
    return lambda x: model.loss(y, x) + 0.5 * rho * (x - z) ** 2


def orthogonal_factor(n1, r, scale, rng):
    """
    An n1 x r matrix with orthogonal columns of equal norm ``scale``.
    """
    Q, _ = np.linalg.qr(rng.standard_normal((n1, r)))
    return scale * Q[:, :r]


def column_support_oracle(D, Z, lam, rho, a_box):
    """
    Exhaustive search over supports of A with box-constrained least
    squares per support. Returns the optimal objective.
    """
    r, n2 = D.shape[1], Z.shape[1]
    best = np.inf
    for pattern in itertools.product([False, True], repeat=r * n2):
        support = np.array(pattern).reshape(r, n2)
        A = np.zeros((r, n2))
        for j in range(n2):
            rows = np.nonzero(support[:, j])[0]
            if len(rows) == 0:
                continue
            fit = optimize.lsq_linear(D[:, rows], Z[:, j], bounds=(a_box.lo, a_box.hi),
                                      method='bvls', tol=1e-14)
            A[rows, j] = fit.x
        value = lam * support.sum() + 0.5 * rho * np.linalg.norm(Z - D.dot(A)) ** 2
        best = min(best, value)
    return best


def l1_coordinate_descent(D, Z, lam, rho, a_box, sweeps=5000):
    """
    Cyclic coordinate descent for ``lam ||A||_1 + rho/2 ||Z - D A||_F^2``
    over the box. Returns the final A.
    """
    r, n2 = D.shape[1], Z.shape[1]
    A = np.zeros((r, n2))
    norms = np.sum(D ** 2, axis=0)
    for _ in range(sweeps):
        for j in range(n2):
            for i in range(r):
                residual = Z[:, j] - D.dot(A[:, j]) + D[:, i] * A[i, j]
                target = D[:, i].dot(residual) / norms[i]
                shrunk = np.sign(target) * max(abs(target) - lam / (rho * norms[i]), 0.0)
                A[i, j] = min(max(shrunk, a_box.lo), a_box.hi)
    return A


def make_full_problem(X, model, x_box=None, d_box=None, a_box=None, r=1):
    """
    A fully observed problem whose observations are exactly ``X``.
    """
    X = np.asarray(X, dtype=float)
    mask = SampleMask.full(*X.shape)
    return make_problem(mask, X[mask.rows, mask.cols], model,
                        x_box or BoxBounds(-10, 10), d_box or BoxBounds(-10, 10),
                        a_box or BoxBounds(-10, 10), r)


def random_truth(n1, n2, r, rng, scale=1.0):
    D = rng.uniform(-1, 1, size=(n1, r))
    A = rng.uniform(-scale, scale, size=(r, n2))
    return FactorPair(D, A)
