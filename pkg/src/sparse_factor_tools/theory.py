# -*- coding: utf-8 -*-
"""
Theoretical quantities: the discretization exponent ``beta``, the
regularization weight ``lam``, weak-lp approximation bounds and the
explicit-constant per-element MSE bounds for each likelihood.

Notation: ``L = log(max(n1, n2))``, ``B = (beta + 2) L`` and
``df = n1 r + ||A*||_0``.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging
import math

import numpy as np

from sparse_factor_tools.constants import Likelihood
from sparse_factor_tools.core import BoxBounds
from sparse_factor_tools.exceptions import ValidationError
from sparse_factor_tools.likelihoods import one_bit_log_constants, exp_or_inf
from sparse_factor_tools.utils import new_registry

logger = logging.getLogger(__name__)

BOUNDS, register = new_registry()


_BoundInputs = collections.namedtuple(
    "BoundInputs", "n1, n2, r, m, noise, a_max, x_max, a_l0, p, x_min"
)

class BoundInputs(_BoundInputs):
    """
    Parameters of a bound. Give ``a_l0`` (exactly sparse A*) or ``p``
    (weak-lp columns), not both.
    """
    __slots__ = ()

    def __new__(cls, n1, n2, r, m, noise, a_max, x_max, a_l0=None, p=None, x_min=None):
        for name, value in (('n1', n1), ('n2', n2), ('r', r), ('m', m)):
            if int(value) != value or value < 1:
                raise ValidationError("%s must be a positive integer (got %r)" % (name, value))
        if m > n1 * n2:
            raise ValidationError("m=%d exceeds n1 n2=%d" % (m, n1 * n2))
        if (a_l0 is None) == (p is None):
            raise ValidationError("Give exactly one of a_l0 (sparse) and p (weak-lp)")
        if a_l0 is not None and (int(a_l0) != a_l0 or a_l0 < 0):
            raise ValidationError("a_l0 must be a nonnegative integer (got %r)" % (a_l0,))
        if p is not None and not 0 < p <= 1:
            raise ValidationError("p must lie in (0, 1] (got %r)" % (p,))
        if not 0 < a_max <= max(n1, n2):
            raise ValidationError("a_max must lie in (0, max(n1, n2)] (got %r)" % (a_max,))
        if not x_max >= 1:
            raise ValidationError("x_max must be at least 1 (got %r)" % (x_max,))
        if x_min is not None and not x_min > 0:
            raise ValidationError("x_min must be positive (got %r)" % (x_min,))
        return super(BoundInputs, cls).__new__(
            cls, int(n1), int(n2), int(r), int(m), noise, float(a_max), float(x_max),
            None if a_l0 is None else int(a_l0), p, x_min)

    @property
    def n_max(self):
        return max(self.n1, self.n2)

    @property
    def is_sparse(self):
        return self.a_l0 is not None

    @property
    def alpha(self):
        return 1.0 / self.p - 0.5

    @property
    def alpha_prime(self):
        return 1.0 / self.p - 1.0

    @property
    def x_box(self):
        return BoxBounds.symmetric(self.x_max)


_BoundValue = collections.namedtuple(
    "BoundValue", "total, log_term, rate_term, approx_term, beta, lam, c_d, k"
)

class BoundValue(_BoundValue):
    """
    Bound terms. A term is ``inf`` when it is too large for a float (the
    one-bit constants overflow for steep links on wide boxes); terms are
    never nan.
    """
    __slots__ = ()

    @property
    def finite(self):
        return math.isfinite(self.total)

    def __repr__(self):
        return "BoundValue(total=%.6g, log=%.6g, rate=%.6g, approx=%.6g, k=%s)" % (
            self.total, self.log_term, self.rate_term, self.approx_term, self.k)


def compute_beta(inputs):
    ratio = 8.0 * inputs.r * inputs.a_max / inputs.x_max
    return max(1.0, 1.0 + math.log(ratio) / math.log(inputs.n_max))

def theory_constant(inputs):
    return inputs.noise.theory_constant_cd(inputs.x_box, inputs.x_min)

def regularization_weight(c_d, beta, n_max):
    return _product(2.0 * (1.0 + 2.0 * c_d / 3.0), (beta + 2.0) * math.log(n_max))

def _product(*factors):
    # 0 * inf is 0 here: a vanishing factor wins over an overflowed constant
    if any(factor == 0 for factor in factors):
        return 0.0
    value = 1.0
    for factor in factors:
        value *= factor
    return value

def compute_lambda(inputs, beta, c_d=None):
    """
    ``lam = 2 (1 + 2 C_D / 3)(beta + 2) log(max(n1, n2))``; ``C_D`` defaults
    to the noise model's constant for ``inputs``.
    """
    if c_d is None:
        c_d = theory_constant(inputs)
    return regularization_weight(c_d, beta, inputs.n_max)

minimum_lambda = compute_lambda


def weak_lp_approx_error(R, p, k, q):
    """
    Bound on the l_q error of the best k-term approximation of a vector in
    the weak-l_p ball of radius ``R``: ``R C k^(1/q - 1/p)`` with
    ``C = (p / (q - p))^(1/q)``, which is at most 1 once ``q >= 2p``.
    """
    if not q > p:
        raise ValidationError("q=%r must exceed p=%r" % (q, p))
    constant = (p / (q - p)) ** (1.0 / q)
    if q >= 2 * p:
        constant = min(constant, 1.0)
    return R * constant * k ** (1.0 / q - 1.0 / p)


def theorem_bound(c_d, beta, lam, m, n1, n2, r, kl_term, a_l0):
    """
    Generic right-hand side in Hellinger units for a candidate with KL
    term ``kl_term`` (summed over all n1 n2 entries) and ``a_l0`` nonzeros.
    """
    log_n = math.log(max(n1, n2))
    return (_product(8.0 * c_d, math.log(m)) / m +
            3.0 * (kl_term / (n1 * n2) +
                   _product(lam + _product(4.0 * c_d, (beta + 2.0) * log_n) / 3.0, n1 * r + a_l0) / m))


def corollary_bound(inputs):
    """
    Per-element MSE bound for ``inputs.noise`` with explicit constants.
    """
    kind = inputs.noise.kind
    if kind == Likelihood.POISSON and inputs.x_min is None:
        raise ValidationError("Poisson bound needs x_min")
    beta = compute_beta(inputs)
    c_d = theory_constant(inputs)
    lam = regularization_weight(c_d, beta, inputs.n_max)
    bound = BOUNDS[kind]
    log_term, rate_term, approx_term, k = bound(inputs, beta, lam)
    total = log_term + rate_term + approx_term
    logger.debug("%s bound: total=%.6g (beta=%.4g, lam=%.4g)", kind, total, beta, lam)
    if not math.isfinite(total):
        logger.warning("%s bound overflows a float for x_max=%g", kind, inputs.x_max)
    return BoundValue(total, log_term, rate_term, approx_term, beta, lam, c_d, k)


def _scale(inputs, beta):
    return (beta + 2.0) * math.log(inputs.n_max)


@register(Likelihood.GAUSSIAN)
def _gaussian(inputs, beta, lam):
    m, x2 = inputs.m, inputs.x_max ** 2
    variance = 8.0 * (3.0 * inputs.noise.sigma ** 2 + 8.0 * x2) * _scale(inputs, beta)
    if inputs.is_sparse:
        df = inputs.n1 * inputs.r + inputs.a_l0
        return 70.0 * x2 * math.log(m) / m, variance * df / m, 0.0, None
    alpha = inputs.alpha
    k = (m / inputs.n2) ** (1.0 / (1.0 + 2.0 * alpha))
    approx = (24.0 * inputs.a_max ** 2 + variance) * (inputs.n2 / m) ** (2.0 * alpha / (2.0 * alpha + 1.0))
    return 88.0 * x2 * math.log(m) / m, variance * inputs.n1 * inputs.r / m, approx, k


@register(Likelihood.LAPLACE)
def _laplace(inputs, beta, lam):
    m, tau, x_max = inputs.m, inputs.noise.tau, inputs.x_max
    lead = (tau * x_max + 1.0) ** 2 / tau ** 2
    log_term = 76.0 * lead * tau * x_max * math.log(m) / m
    spread = (2.0 + 16.0 * tau * x_max / 3.0) * _scale(inputs, beta)
    if inputs.is_sparse:
        df = inputs.n1 * inputs.r + inputs.a_l0
        return log_term, 12.0 * lead * spread * df / m, 0.0, None
    if inputs.p > 0.5:
        raise ValidationError("Laplace weak-lp bound needs p <= 1/2 (got %r)" % (inputs.p,))
    alpha = inputs.alpha_prime
    k = (m / inputs.n2) ** (1.0 / (alpha + 1.0))
    approx = 12.0 * lead * (tau * inputs.a_max + spread) * (inputs.n2 / m) ** (alpha / (alpha + 1.0))
    return log_term, 12.0 * lead * spread * inputs.n1 * inputs.r / m, approx, k


def _general_terms(inputs):
    """
    Approximation error, degrees of freedom and k of the quantized
    candidate used by the Poisson and one-bit bounds.
    """
    m, x2 = inputs.m, inputs.x_max ** 2
    if inputs.is_sparse:
        return x2 / m, inputs.n1 * inputs.r + inputs.a_l0, None
    alpha = inputs.alpha
    k = (m / inputs.n2) ** (1.0 / (1.0 + 2.0 * alpha))
    approx = 4.0 * inputs.a_max ** 2 * k ** (-2.0 * alpha) + 4.0 * x2 / m
    return approx, inputs.n1 * inputs.r + k * inputs.n2, k


@register(Likelihood.POISSON)
def _poisson(inputs, beta, lam):
    m, x_max, x_min = inputs.m, inputs.x_max, inputs.x_min
    approx, dof, k = _general_terms(inputs)
    lead = 12.0 * x_max / x_min
    log_term = 128.0 * x_max ** 3 * math.log(m) / (x_min * m)
    rate = lead * (lam + 16.0 * x_max ** 2 * _scale(inputs, beta) / 3.0) * dof / m
    return log_term, rate, lead * approx, k


@register(Likelihood.ONEBIT)
def _onebit(inputs, beta, lam):
    # c / c_prime is kept as a log; it overflows for steep links on wide boxes
    m, x2 = inputs.m, inputs.x_max ** 2
    log_c, log_c_prime = one_bit_log_constants(inputs.noise.link, inputs.x_max)
    log_ratio = log_c - log_c_prime
    approx, dof, k = _general_terms(inputs)
    scale = _scale(inputs, beta)
    # lam / c with lam = 2 (1 + 2 C_D / 3) B and C_D = 2 c x_max^2
    lam_over_c = 2.0 * scale * (exp_or_inf(-log_c) + 4.0 * x2 / 3.0)
    log_term = _scaled(log_ratio, 128.0 * x2 * math.log(m) / m)
    rate = _scaled(log_ratio, 24.0 * (lam_over_c + 8.0 * x2 * scale / 3.0) * dof / m)
    return log_term, rate, _scaled(log_ratio, 24.0 * approx), k

def _scaled(log_factor, value):
    if value == 0:
        return 0.0
    return exp_or_inf(log_factor + math.log(value))


def bound_inputs_from_truth(truth, model, m, p=None):
    """
    Bound inputs matching a ground truth: ``a_max = ||A*||_max``,
    ``x_max = max(1, 2 ||X*||_max)`` and, for Poisson, ``x_min = min X*``.
    With ``p`` given the weak-lp form is used instead of ``||A*||_0``.
    """
    X_true = truth.X
    x_min = None
    if model.kind == Likelihood.POISSON:
        x_min = float(np.min(X_true))
    n1, n2 = X_true.shape
    return BoundInputs(
        n1, n2, truth.r, m, model,
        a_max=float(np.max(np.abs(truth.A))),
        x_max=max(1.0, 2.0 * float(np.max(np.abs(X_true)))),
        a_l0=truth.nnz if p is None else None, p=p, x_min=x_min,
    )

def bound_inputs_from_instance(instance, model):
    return bound_inputs_from_truth(instance.truth, model, instance.problem.mask.size)
