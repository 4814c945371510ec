# -*- coding: utf-8 -*-
"""
Synthetic ground truth, Bernoulli sampling masks and noisy observations.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging

import numpy as np

from sparse_factor_tools.constants import Likelihood
from sparse_factor_tools.core import BoxBounds, FactorPair, SampleMask, make_problem
from sparse_factor_tools.exceptions import ValidationError, DomainError

logger = logging.getLogger(__name__)


_ExactSparse = collections.namedtuple("ExactSparse", "k")

class ExactSparse(_ExactSparse):
    """Every column of A has exactly ``k`` nonzeros."""
    __slots__ = ()


_WeakLp = collections.namedtuple("WeakLp", "p")

class WeakLp(_WeakLp):
    """Columns of A have sorted magnitudes ``A_max * i ** (-1/p)``."""
    __slots__ = ()

    def __new__(cls, p):
        p = float(p)
        if not 0 < p <= 1:
            raise ValidationError("Weak-lp exponent p must lie in (0, 1] (got %r)" % p)
        return super(WeakLp, cls).__new__(cls, p)


_GroundTruthSpec = collections.namedtuple(
    "GroundTruthSpec", "n1, n2, r, coefficient_model, d_box_true, a_box_true, nonnegative"
)

class GroundTruthSpec(_GroundTruthSpec):
    __slots__ = ()

    def __new__(cls, n1, n2, r, coefficient_model, d_box_true, a_box_true, nonnegative=False):
        for name, value in (('n1', n1), ('n2', n2), ('r', r)):
            if int(value) != value or value < 1:
                raise ValidationError("%s must be a positive integer (got %r)" % (name, value))
        if r > n2:
            raise ValidationError("r=%d exceeds n2=%d" % (r, n2))
        if isinstance(coefficient_model, ExactSparse):
            if not 1 <= coefficient_model.k <= r:
                raise ValidationError("Sparsity k=%r must lie in [1, r=%d]" % (coefficient_model.k, r))
        elif not isinstance(coefficient_model, WeakLp):
            raise ValidationError("Unknown coefficient model %r" % (coefficient_model,))
        return super(GroundTruthSpec, cls).__new__(
            cls, int(n1), int(n2), int(r), coefficient_model, d_box_true, a_box_true, bool(nonnegative))


_SyntheticInstance = collections.namedtuple("SyntheticInstance", "truth, problem, x_true_min, x_true_max")

class SyntheticInstance(_SyntheticInstance):
    __slots__ = ()

    @property
    def X_true(self):
        return self.truth.X


def generate_ground_truth(spec, rng):
    """
    Draws ``(D*, A*)``.

    D* is a standard Gaussian matrix scaled by the D box width and clamped to
    the box. For exactly sparse A*, a Gaussian matrix scaled by a third of
    the A box width is clamped and ``r - k`` random entries per column are
    zeroed. Weak-lp columns are random permutations of ``A_max i^(-1/p)``
    with random signs. In nonnegative mode every entry of A* is >= 0.
    """
    n1, n2, r = spec.n1, spec.n2, spec.r
    d_box, a_box = spec.d_box_true, spec.a_box_true

    D = np.clip(rng.standard_normal((n1, r)) * d_box.width, d_box.lo, d_box.hi)

    model = spec.coefficient_model
    if isinstance(model, ExactSparse):
        A = rng.standard_normal((r, n2)) * (a_box.width / 3.0)
        if spec.nonnegative:
            A = np.abs(A)
        A = np.clip(A, a_box.lo, a_box.hi)
        dropped = np.argsort(rng.random((r, n2)), axis=0)[:r - model.k]
        np.put_along_axis(A, dropped, 0.0, axis=0)
    else:
        magnitudes = a_box.magnitude * np.arange(1, r + 1) ** (-1.0 / model.p)
        A = np.empty((r, n2))
        for j in range(n2):
            A[:, j] = magnitudes[rng.permutation(r)]
        if not spec.nonnegative:
            A *= rng.choice([-1.0, 1.0], size=(r, n2))

    logger.debug("ground truth %dx%d, r=%d, nnz(A)=%d", n1, n2, r, np.count_nonzero(A))
    return FactorPair(D, A)


def sample_mask(n1, n2, gamma, rng):
    """
    Includes each of the n1 x n2 cells independently with probability ``gamma``.
    """
    if not 0 < gamma <= 1:
        raise ValidationError("Sampling rate must lie in (0, 1] (got %r)" % (gamma,))
    return SampleMask.from_view(rng.random((n1, n2)) < gamma)


def derive_x_box(X_true, likelihood):
    """
    Estimation box for X: ``[0, 2 X*max]`` for Poisson and
    ``[-2 |X*min|, 2 X*max]`` otherwise, with ``X*max = ||X*||_max``.
    """
    X_true = np.asarray(X_true, dtype=float)
    x_max = float(np.max(np.abs(X_true)))
    if likelihood == Likelihood.POISSON:
        return BoxBounds(0.0, 2 * x_max)
    return BoxBounds(-2 * abs(float(np.min(X_true))), 2 * x_max)


def generate_observations(truth, mask, model, rng, d_box=None, a_box=None, x_box=None):
    """
    Samples one observation per mask entry at ``X* = D* A*`` and returns the
    resulting :class:`CompletionProblem`.

    Missing boxes default to twice the truth's largest magnitude (D, A) and
    to :func:`derive_x_box` (X).
    """
    X_true = truth.X
    if model.kind == Likelihood.POISSON and np.any(X_true < 0):
        i, j = np.unravel_index(np.argmin(X_true), X_true.shape)
        raise DomainError("Poisson rate X*[%d, %d] = %r is negative" % (i, j, float(X_true[i, j])),
                          index=(int(i), int(j)))
    if d_box is None:
        d_box = BoxBounds.symmetric(2 * np.max(np.abs(truth.D)))
    if a_box is None:
        a_box = BoxBounds.symmetric(2 * np.max(np.abs(truth.A)))
    if x_box is None:
        x_box = derive_x_box(X_true, model.kind)

    observations = model.sample(X_true[mask.rows, mask.cols], rng)
    return make_problem(mask, np.atleast_1d(observations), model, x_box, d_box, a_box, truth.r)


def make_instance(spec, model, gamma, rng, d_box, a_box, truth=None):
    """
    Ground truth (unless given), a fresh mask and observations in one go.
    """
    if truth is None:
        truth = generate_ground_truth(spec, rng)
    X_true = truth.X
    mask = sample_mask(spec.n1, spec.n2, gamma, rng)
    problem = generate_observations(truth, mask, model, rng, d_box=d_box, a_box=a_box)
    return SyntheticInstance(truth, problem, float(np.min(X_true)), float(np.max(np.abs(X_true))))
