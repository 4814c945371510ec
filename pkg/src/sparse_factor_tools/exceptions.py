# -*- coding: utf-8 -*-
from __future__ import absolute_import

class Error(Exception):
    pass


class ValidationError(Error, ValueError):
    pass


class DomainError(Error, ValueError):
    """
    A likelihood was asked for a value outside its domain.
    ``index`` is the (i, j) matrix entry when one is known.
    """
    def __init__(self, message, index=None):
        super(DomainError, self).__init__(message)
        self.index = index


class ConvergenceError(Error):
    def __init__(self, message, last_iterate=None):
        super(ConvergenceError, self).__init__(message)
        self.last_iterate = last_iterate


class SolverError(Error):
    def __init__(self, message, iteration=None):
        super(SolverError, self).__init__(message)
        self.iteration = iteration


class ConfigError(Error):
    pass


class BundleError(Error):
    pass


class OutputError(Error, IOError):
    pass
