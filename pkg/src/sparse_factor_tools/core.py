# -*- coding: utf-8 -*-
"""
Domain types shared by every module: box constraints, sample masks,
factor pairs and completion problems.

Indices are 0-based. All arrays held by these types are read-only copies.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import logging
import math

import numpy as np

from sparse_factor_tools.constants import Likelihood
from sparse_factor_tools.exceptions import ValidationError
from sparse_factor_tools.utils import frozen_array, shape_repr

logger = logging.getLogger(__name__)


_BoxBounds = collections.namedtuple("BoxBounds", "lo, hi")

class BoxBounds(_BoxBounds):
    """
    Closed interval ``[lo, hi]`` used for entry-wise feasibility.
    """
    __slots__ = ()

    def __new__(cls, lo, hi):
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValidationError("Box bounds must be finite (got [%r, %r])" % (lo, hi))
        if lo > hi:
            raise ValidationError("Box lower bound %r exceeds upper bound %r" % (lo, hi))
        return super(BoxBounds, cls).__new__(cls, lo, hi)

    @classmethod
    def symmetric(cls, magnitude):
        return cls(-abs(magnitude), abs(magnitude))

    @property
    def magnitude(self):
        return max(abs(self.lo), abs(self.hi))

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, M):
        M = np.asarray(M)
        return bool(np.all((M >= self.lo) & (M <= self.hi)))

    def clamp(self, M):
        return project_box(M, self)

    def scaled(self, factor):
        return BoxBounds(self.lo * factor, self.hi * factor)

    def __repr__(self):
        return "BoxBounds([%r, %r])" % (self.lo, self.hi)


_SampleMask = collections.namedtuple("SampleMask", "n1, n2, rows, cols, view")

class SampleMask(_SampleMask):
    """
    Set of observed (i, j) locations.

    ``rows``/``cols`` hold the coordinates sorted row-major, ``view`` is the
    n1 x n2 boolean membership matrix. Build with :meth:`from_pairs` or
    :meth:`from_view`.
    """
    __slots__ = ()

    @classmethod
    def from_view(cls, view):
        view = np.array(view, dtype=bool)
        if view.ndim != 2 or 0 in view.shape:
            raise ValidationError("Mask view must be a non-empty 2-d array, got shape %s" % shape_repr(view))
        rows, cols = np.nonzero(view)
        view.setflags(write=False)
        return cls(view.shape[0], view.shape[1],
                   frozen_array(rows, int), frozen_array(cols, int), view)

    @classmethod
    def from_pairs(cls, n1, n2, pairs):
        n1, n2 = _positive_int(n1, "n1"), _positive_int(n2, "n2")
        view = np.zeros((n1, n2), dtype=bool)
        for i, j in pairs:
            if not (0 <= i < n1 and 0 <= j < n2):
                raise ValidationError("Mask entry (%d, %d) outside %dx%d" % (i, j, n1, n2))
            if view[i, j]:
                raise ValidationError("Duplicate mask entry (%d, %d)" % (i, j))
            view[i, j] = True
        return cls.from_view(view)

    @classmethod
    def full(cls, n1, n2):
        return cls.from_view(np.ones((n1, n2), dtype=bool))

    @property
    def size(self):
        return len(self.rows)

    @property
    def gamma(self):
        return self.size / (self.n1 * self.n2)

    @property
    def entries(self):
        return list(zip(self.rows.tolist(), self.cols.tolist()))

    def __contains__(self, pair):
        i, j = pair
        return 0 <= i < self.n1 and 0 <= j < self.n2 and bool(self.view[i, j])

    def __repr__(self):
        return "SampleMask(%dx%d, size=%d)" % (self.n1, self.n2, self.size)


_FactorPair = collections.namedtuple("FactorPair", "D, A")

class FactorPair(_FactorPair):
    """
    Factors ``D`` (n1 x r) and ``A`` (r x n2) of ``X = D A``.
    """
    __slots__ = ()

    def __new__(cls, D, A):
        D, A = frozen_array(D), frozen_array(A)
        if D.ndim != 2 or A.ndim != 2:
            raise ValidationError("Factors must be matrices (got %s and %s)" % (shape_repr(D), shape_repr(A)))
        if D.shape[1] != A.shape[0]:
            raise ValidationError("Inner dimensions differ: D is %s, A is %s" % (shape_repr(D), shape_repr(A)))
        if D.shape[1] < 1 or D.shape[1] > A.shape[1]:
            raise ValidationError("Factor rank %d must lie in [1, n2=%d]" % (D.shape[1], A.shape[1]))
        return super(FactorPair, cls).__new__(cls, D, A)

    @property
    def r(self):
        return self.D.shape[1]

    @property
    def X(self):
        return self.D.dot(self.A)

    @property
    def nnz(self):
        return int(np.count_nonzero(self.A))

    def __repr__(self):
        return "FactorPair(D=%s, A=%s, nnz=%d)" % (shape_repr(self.D), shape_repr(self.A), self.nnz)


_CompletionProblem = collections.namedtuple(
    "CompletionProblem", "mask, observations, likelihood, x_box, d_box, a_box, r"
)

class CompletionProblem(_CompletionProblem):
    """
    One estimation instance. Use :func:`make_problem` to build it.
    """
    __slots__ = ()

    @property
    def n1(self):
        return self.mask.n1

    @property
    def n2(self):
        return self.mask.n2

    @property
    def shape(self):
        return (self.mask.n1, self.mask.n2)

    def observed_matrix(self, fill=0.0):
        """
        Dense n1 x n2 matrix with observations on the mask and ``fill`` elsewhere.
        """
        Y = np.full(self.shape, fill, dtype=float)
        Y[self.mask.rows, self.mask.cols] = self.observations
        return Y

    def __repr__(self):
        return "CompletionProblem(%dx%d, r=%d, m=%d, likelihood=%r)" % (
            self.n1, self.n2, self.r, self.mask.size, self.likelihood
        )


def make_problem(mask, observations, likelihood, x_box, d_box, a_box, r):
    """
    Validates and builds a :class:`CompletionProblem`.
    """
    observations = frozen_array(observations)
    if observations.shape != (mask.size,):
        raise ValidationError("Expected %d observations (one per mask entry), got %s" % (
            mask.size, shape_repr(observations)))
    r = _positive_int(r, "r")
    if r > mask.n2:
        raise ValidationError("Rank r=%d exceeds n2=%d" % (r, mask.n2))
    likelihood.validate_observations(observations)
    if likelihood.kind == Likelihood.POISSON and x_box.lo < 0:
        raise ValidationError("Poisson problems need a nonnegative X box (got %r)" % (x_box,))
    return CompletionProblem(mask, observations, likelihood, x_box, d_box, a_box, r)


def frobenius_error(X, Xref):
    """
    Per-element squared error ``||X - Xref||_F^2 / (n1 n2)``.
    """
    X, Xref = np.asarray(X, dtype=float), np.asarray(Xref, dtype=float)
    if X.shape != Xref.shape:
        raise ValidationError("Shape mismatch: %s vs %s" % (shape_repr(X), shape_repr(Xref)))
    return float(np.mean((X - Xref) ** 2))

def project_box(M, box):
    return np.clip(np.asarray(M, dtype=float), box.lo, box.hi)


def _positive_int(value, name):
    if int(value) != value or value < 1:
        raise ValidationError("%s must be a positive integer (got %r)" % (name, value))
    return int(value)
