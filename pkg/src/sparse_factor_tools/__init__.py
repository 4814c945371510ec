from __future__ import absolute_import

__version__ = '0.1.0'

from .core import BoxBounds, SampleMask, FactorPair, CompletionProblem, make_problem, frobenius_error, project_box
from .likelihoods import Gaussian, Laplace, Poisson, OneBit, LinkSpec
from .solver import AdmmConfig, admm_solve
