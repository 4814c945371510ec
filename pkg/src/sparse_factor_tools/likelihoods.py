# -*- coding: utf-8 -*-
"""
Per-entry observation models.

Every model exposes the negative log-likelihood ``loss(y, x)``, the scalar
proximal operator ``prox(z, rho, y)`` (argmin_x loss(y, x) + rho/2 (x - z)^2),
the KL divergence and negative log Hellinger affinity between the
observation distributions at two parameters, an observation sampler and the
constant ``C_D`` bounding per-entry KL divergences.

All methods work entry-wise on numpy arrays (scalars in, floats out).
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging
import math

import numpy as np
from scipy import special

from sparse_factor_tools.constants import Likelihood, LinkFamily
from sparse_factor_tools.exceptions import ValidationError, DomainError, ConvergenceError
from sparse_factor_tools.utils import soft_threshold

logger = logging.getLogger(__name__)

LOG_CLAMP = 1e-12
POISSON_FLOOR = 1e-12
NEWTON_TOL = 1e-7
NEWTON_MAX_ITERS = 100
GRID_POINTS = 10**4


def _result(value):
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return float(value)
    return value


_LinkSpec = collections.namedtuple("LinkSpec", "family, s")

class LinkSpec(_LinkSpec):
    """
    Logistic link ``F(x) = 1 / (1 + exp(-x/s))``.
    """
    __slots__ = ()

    def __new__(cls, family=LinkFamily.LOGISTIC, s=1.0):
        if not LinkFamily.is_known(family):
            raise ValidationError("Unknown link family %r" % (family,))
        s = float(s)
        if not s > 0 or not math.isfinite(s):
            raise ValidationError("Link scale must be positive (got %r)" % s)
        return super(LinkSpec, cls).__new__(cls, family, s)

    @classmethod
    def logistic(cls, s):
        return cls(LinkFamily.LOGISTIC, s)

    @classmethod
    def from_sigma(cls, sigma):
        """
        Logistic link whose noise has standard deviation ``sigma``
        (s = sqrt(3) sigma / pi).
        """
        return cls(LinkFamily.LOGISTIC, math.sqrt(3) * sigma / math.pi)

    def cdf(self, x):
        return special.expit(np.asarray(x, dtype=float) / self.s)

    def sf(self, x):
        return special.expit(-np.asarray(x, dtype=float) / self.s)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return self.cdf(x) * self.sf(x) / self.s

    def log_cdf(self, x):
        return special.log_expit(np.asarray(x, dtype=float) / self.s)

    def log_sf(self, x):
        return special.log_expit(-np.asarray(x, dtype=float) / self.s)


class LikelihoodModel(object):
    """
    Mixin with the operations shared by all observation models.

    Models compare equal only when they have the same kind and the same
    parameters, so ``Gaussian(1.0) != Laplace(1.0)``.
    """
    __slots__ = ()
    kind = None

    def __eq__(self, other):
        return (isinstance(other, LikelihoodModel) and self.kind == other.kind and
                tuple(self) == tuple(other))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.kind, tuple(self)))

    def loss(self, y, x):
        raise NotImplementedError()

    def prox(self, z, rho, y, x_box=None):
        raise NotImplementedError()

    def kl_divergence(self, x_true, x):
        raise NotImplementedError()

    def neg_log_hellinger(self, x_true, x):
        raise NotImplementedError()

    def sample(self, x, rng):
        raise NotImplementedError()

    def theory_constant_cd(self, x_box, x_min=None):
        raise NotImplementedError()

    def validate_observations(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(y)):
            raise ValidationError("Observations must be finite")

    def hellinger_distance_sq(self, x_true, x):
        """
        Squared Hellinger distance ``2 (1 - A)`` where A is the affinity.
        """
        affinity = np.exp(-0.5 * np.asarray(self.neg_log_hellinger(x_true, x)))
        return _result(2.0 * (1.0 - affinity))

    def _check_rho(self, rho):
        if not np.all(np.asarray(rho) > 0):
            raise ValidationError("rho must be positive")


_Gaussian = collections.namedtuple("Gaussian", "sigma")

class Gaussian(LikelihoodModel, _Gaussian):
    __slots__ = ()
    kind = Likelihood.GAUSSIAN

    def __new__(cls, sigma):
        sigma = float(sigma)
        if not sigma > 0:
            raise ValidationError("Gaussian sigma must be positive (got %r)" % sigma)
        return super(Gaussian, cls).__new__(cls, sigma)

    def loss(self, y, x):
        y, x = np.asarray(y, dtype=float), np.asarray(x, dtype=float)
        return _result((y - x) ** 2 / (2 * self.sigma ** 2))

    def prox(self, z, rho, y, x_box=None):
        self._check_rho(rho)
        z, y = np.asarray(z, dtype=float), np.asarray(y, dtype=float)
        s2 = self.sigma ** 2
        return _result((y + s2 * rho * z) / (1 + s2 * rho))

    def kl_divergence(self, x_true, x):
        return _result((np.asarray(x_true, dtype=float) - x) ** 2 / (2 * self.sigma ** 2))

    def neg_log_hellinger(self, x_true, x):
        return _result((np.asarray(x_true, dtype=float) - x) ** 2 / (4 * self.sigma ** 2))

    def sample(self, x, rng):
        x = np.asarray(x, dtype=float)
        return _result(x + self.sigma * rng.standard_normal(x.shape))

    def theory_constant_cd(self, x_box, x_min=None):
        return 2 * x_box.magnitude ** 2 / self.sigma ** 2


_Laplace = collections.namedtuple("Laplace", "tau")

class Laplace(LikelihoodModel, _Laplace):
    __slots__ = ()
    kind = Likelihood.LAPLACE

    def __new__(cls, tau):
        tau = float(tau)
        if not tau > 0:
            raise ValidationError("Laplace tau must be positive (got %r)" % tau)
        return super(Laplace, cls).__new__(cls, tau)

    def loss(self, y, x):
        return _result(self.tau * np.abs(np.asarray(y, dtype=float) - x))

    def prox(self, z, rho, y, x_box=None):
        # the minimiser lies between y and z
        self._check_rho(rho)
        z, y = np.asarray(z, dtype=float), np.asarray(y, dtype=float)
        return _result(y + soft_threshold(z - y, self.tau / rho))

    def kl_divergence(self, x_true, x):
        d = self.tau * np.abs(np.asarray(x_true, dtype=float) - x)
        return _result(d - (1.0 - np.exp(-d)))

    def neg_log_hellinger(self, x_true, x):
        d = self.tau * np.abs(np.asarray(x_true, dtype=float) - x)
        return _result(d - 2.0 * np.log1p(d / 2.0))

    def sample(self, x, rng):
        x = np.asarray(x, dtype=float)
        return _result(x + rng.laplace(0.0, 1.0 / self.tau, x.shape))

    def theory_constant_cd(self, x_box, x_min=None):
        return 2 * self.tau * x_box.magnitude


_Poisson = collections.namedtuple("Poisson", "")

class Poisson(LikelihoodModel, _Poisson):
    __slots__ = ()
    kind = Likelihood.POISSON

    def loss(self, y, x):
        y, x = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(x, dtype=float))
        value = np.full(x.shape, np.inf)
        inside = x > 0
        value[inside] = x[inside] - y[inside] * np.log(x[inside])
        return _result(value)

    def prox(self, z, rho, y, x_box=None):
        self._check_rho(rho)
        z, y = np.asarray(z, dtype=float), np.asarray(y, dtype=float)
        if np.any(y < 0):
            raise DomainError("Poisson observations must be nonnegative")
        b = rho * z - 1.0
        root = np.sqrt(b * b + 4.0 * rho * y)
        # (b + root) / (2 rho) loses precision when b < 0; use the conjugate form
        with np.errstate(divide='ignore', invalid='ignore'):
            conjugate = np.where(root - b > 0, 2.0 * y / (root - b), 0.0)
        value = np.where(b >= 0, (b + root) / (2.0 * rho), conjugate)
        return _result(np.maximum(value, POISSON_FLOOR))

    def kl_divergence(self, x_true, x):
        x_true, x = self._check_rates(x_true, x)
        return _result(np.maximum(x_true * np.log(x_true / x) - x_true + x, 0.0))

    def neg_log_hellinger(self, x_true, x):
        x_true, x = self._check_rates(x_true, x)
        return _result((np.sqrt(x_true) - np.sqrt(x)) ** 2)

    def sample(self, x, rng):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise DomainError("Poisson rate must be nonnegative (min %r)" % float(np.min(x)))
        return _result(rng.poisson(x).astype(float))

    def theory_constant_cd(self, x_box, x_min=None):
        if x_min is None or not x_min > 0:
            raise DomainError("Poisson C_D needs a positive x_min (got %r)" % (x_min,))
        return 4 * x_box.magnitude ** 2 / x_min

    def validate_observations(self, y):
        super(Poisson, self).validate_observations(y)
        y = np.asarray(y, dtype=float)
        if np.any(y < 0) or np.any(y != np.floor(y)):
            raise ValidationError("Poisson observations must be nonnegative integers")

    def _check_rates(self, x_true, x):
        x_true, x = np.asarray(x_true, dtype=float), np.asarray(x, dtype=float)
        if np.any(x_true <= 0) or np.any(x <= 0):
            raise DomainError("Poisson divergences need positive rates")
        return x_true, x

    def __repr__(self):
        return "Poisson()"


_OneBit = collections.namedtuple("OneBit", "link")

class OneBit(LikelihoodModel, _OneBit):
    __slots__ = ()
    kind = Likelihood.ONEBIT

    def __new__(cls, link):
        if not isinstance(link, LinkSpec):
            raise ValidationError("OneBit needs a LinkSpec (got %r)" % (link,))
        return super(OneBit, cls).__new__(cls, link)

    def loss(self, y, x):
        y = np.asarray(y, dtype=float)
        F = np.clip(self.link.cdf(x), LOG_CLAMP, 1 - LOG_CLAMP)
        S = np.clip(self.link.sf(x), LOG_CLAMP, 1 - LOG_CLAMP)
        return _result(-y * np.log(F) - (1 - y) * np.log(S))

    def prox(self, z, rho, y, x_box=None):
        """
        Newton iterations on ``G(x) = loss(y, x) + rho/2 (x - z)^2``.

        The root of G' lies in ``[z - 1/(s rho), z]`` for y = 0 and in
        ``[z, z + 1/(s rho)]`` for y = 1; steps leaving the bracket are
        replaced by bisection.
        """
        self._check_rho(rho)
        z, y = np.broadcast_arrays(np.asarray(z, dtype=float), np.asarray(y, dtype=float))
        rho = np.broadcast_to(np.asarray(rho, dtype=float), z.shape)
        s = self.link.s
        width = 1.0 / (s * rho)
        lo = np.where(y > 0.5, z, z - width)
        hi = np.where(y > 0.5, z + width, z)

        x = z if x_box is None else np.clip(z, x_box.lo, x_box.hi)
        x = np.clip(x, lo, hi)
        for iteration in range(NEWTON_MAX_ITERS):
            F = self.link.cdf(x)
            grad = (F - y) / s + rho * (x - z)
            hess = F * (1 - F) / s ** 2 + rho
            hi = np.where(grad > 0, x, hi)
            lo = np.where(grad < 0, x, lo)
            x_new = x - grad / hess
            outside = (x_new < lo) | (x_new > hi)
            x_new = np.where(outside, 0.5 * (lo + hi), x_new)
            step = np.abs(x_new - x)
            x = x_new
            if np.all(step <= NEWTON_TOL):
                return _result(x)
        raise ConvergenceError(
            "One-bit prox did not converge in %d Newton iterations" % NEWTON_MAX_ITERS,
            last_iterate=_result(x)
        )

    def kl_divergence(self, x_true, x):
        x_true, x = self._check_args(x_true, x)
        p = self.link.cdf(x_true)
        value = (p * (self.link.log_cdf(x_true) - self.link.log_cdf(x)) +
                 (1 - p) * (self.link.log_sf(x_true) - self.link.log_sf(x)))
        return _result(np.maximum(value, 0.0))

    def neg_log_hellinger(self, x_true, x):
        x_true, x = self._check_args(x_true, x)
        log_affinity = np.logaddexp(
            0.5 * (self.link.log_cdf(x_true) + self.link.log_cdf(x)),
            0.5 * (self.link.log_sf(x_true) + self.link.log_sf(x)),
        )
        return _result(np.maximum(-2.0 * log_affinity, 0.0))

    def sample(self, x, rng):
        x = np.asarray(x, dtype=float)
        return _result((rng.random(x.shape) < self.link.cdf(x)).astype(float))

    def theory_constant_cd(self, x_box, x_min=None):
        x_max = x_box.magnitude
        if x_max == 0:
            return 0.0
        log_c, _ = one_bit_log_constants(self.link, x_max)
        return exp_or_inf(log_c + math.log(2 * x_max ** 2))

    def validate_observations(self, y):
        y = np.asarray(y, dtype=float)
        if not np.all((y == 0) | (y == 1)):
            raise ValidationError("One-bit observations must be 0 or 1")

    def _check_args(self, x_true, x):
        x_true, x = np.asarray(x_true, dtype=float), np.asarray(x, dtype=float)
        if not (np.all(np.isfinite(x_true)) and np.all(np.isfinite(x))):
            raise DomainError("One-bit divergences need finite parameters")
        return x_true, x


def one_bit_log_constants(link, x_max, points=GRID_POINTS):
    """
    Returns ``(log c, log c_prime)`` for the link on ``[-x_max, x_max]``::

        c       = sup 1/(F (1 - F)) * sup f^2
        c_prime = inf f^2 / (F (1 - F))

    evaluated on a uniform grid of ``points`` values. With ``f = F (1 - F) / s``
    both reduce to sums of ``log F + log(1 - F)``, which stay finite where
    ``F (1 - F)`` itself underflows.
    """
    t = np.linspace(-x_max, x_max, points)
    log_variance = link.log_cdf(t) + link.log_sf(t)
    log_s2 = 2.0 * math.log(link.s)
    log_c = np.max(-log_variance) + np.max(2.0 * log_variance) - log_s2
    log_c_prime = np.min(log_variance) - log_s2
    return float(log_c), float(log_c_prime)

def one_bit_constants(link, x_max, points=GRID_POINTS):
    """
    ``(c, c_prime)`` as floats; ``c`` is ``inf`` and ``c_prime`` is 0 when
    they are out of floating point range.
    """
    log_c, log_c_prime = one_bit_log_constants(link, x_max, points)
    return exp_or_inf(log_c), exp_or_inf(log_c_prime)

def exp_or_inf(log_value):
    with np.errstate(over='ignore', under='ignore'):
        return float(np.exp(log_value))


def model_from_name(name, sigma=None, tau=None, scale=None):
    """
    Builds a model from its likelihood name and noise parameters.
    One-bit accepts either the link ``scale`` or ``sigma``.
    """
    if name == Likelihood.GAUSSIAN:
        _require(sigma, 'sigma', name)
        return Gaussian(sigma)
    if name == Likelihood.LAPLACE:
        _require(tau, 'tau', name)
        return Laplace(tau)
    if name == Likelihood.POISSON:
        return Poisson()
    if name == Likelihood.ONEBIT:
        if scale is not None:
            return OneBit(LinkSpec.logistic(scale))
        _require(sigma, 'sigma or scale', name)
        return OneBit(LinkSpec.from_sigma(sigma))
    raise ValidationError("Unknown likelihood %r (expected one of %s)" % (
        name, ", ".join(Likelihood.values())))

def _require(value, what, name):
    if value is None:
        raise ValidationError("%s likelihood needs %s" % (name, what))


# function-style access mirroring the model methods

def loss(model, y, x):
    return model.loss(y, x)

def prox(model, z, rho, y, x_box=None):
    return model.prox(z, rho, y, x_box=x_box)

def kl_divergence(model, x_true, x):
    return model.kl_divergence(x_true, x)

def neg_log_hellinger(model, x_true, x):
    return model.neg_log_hellinger(x_true, x)

def hellinger_distance_sq(model, x_true, x):
    return model.hellinger_distance_sq(x_true, x)

def sample_observation(model, x, rng):
    return model.sample(x, rng)

def theory_constant_cd(model, x_box, x_min=None):
    return model.theory_constant_cd(x_box, x_min)
