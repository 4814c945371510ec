# -*- coding: utf-8 -*-
"""
Plain-text problem bundles.

Matrices: a ``n1 n2`` header line followed by n1 rows of floats.
Masks: the same header followed by one ``i j`` pair per line.
Observations: one value per line, in mask order.
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import io
import logging
import os

import numpy as np

from sparse_factor_tools.config import SettingsReader, build_model, format_config, load_config
from sparse_factor_tools.core import make_problem, SampleMask
from sparse_factor_tools.exceptions import Error, BundleError
from sparse_factor_tools.utils import format_float

logger = logging.getLogger(__name__)

MATRIX_FILES = ('D.txt', 'A.txt', 'X.txt')
MASK_FILE = 'mask.txt'
OBSERVATIONS_FILE = 'observations.txt'
PROBLEM_FILE = 'problem.cfg'


def _read_lines(path):
    try:
        with io.open(path, encoding='utf-8') as f:
            return [(lineno, line.split()) for lineno, line in enumerate(f, 1) if line.strip()]
    except (IOError, OSError) as e:
        raise BundleError("cannot read %s: %s" % (path, e))

def _write_lines(path, lines):
    try:
        with io.open(path, 'w', encoding='utf-8') as f:
            for line in lines:
                f.write(line + '\n')
    except (IOError, OSError) as e:
        raise BundleError("cannot write %s: %s" % (path, e))
    logger.debug("wrote %s", path)

def _parse(path, lineno, func, token):
    try:
        return func(token)
    except ValueError:
        raise BundleError("%s:%d: bad value %r" % (path, lineno, token))

def _header(path, lines):
    if not lines or len(lines[0][1]) != 2:
        raise BundleError("%s:1: expected an 'n1 n2' header" % path)
    lineno, tokens = lines[0]
    return tuple(_parse(path, lineno, int, token) for token in tokens)


def write_matrix(path, M):
    M = np.asarray(M, dtype=float)
    lines = ["%d %d" % M.shape]
    lines.extend(" ".join(format_float(value) for value in row) for row in M)
    _write_lines(path, lines)

def read_matrix(path):
    lines = _read_lines(path)
    n1, n2 = _header(path, lines)
    if len(lines) - 1 != n1:
        raise BundleError("%s: expected %d rows, found %d" % (path, n1, len(lines) - 1))
    M = np.empty((n1, n2))
    for i, (lineno, tokens) in enumerate(lines[1:]):
        if len(tokens) != n2:
            raise BundleError("%s:%d: expected %d values, found %d" % (path, lineno, n2, len(tokens)))
        M[i] = [_parse(path, lineno, float, token) for token in tokens]
    return M


def write_mask(path, mask):
    lines = ["%d %d" % (mask.n1, mask.n2)]
    lines.extend("%d %d" % pair for pair in mask.entries)
    _write_lines(path, lines)

def read_mask(path):
    lines = _read_lines(path)
    n1, n2 = _header(path, lines)
    pairs = []
    for lineno, tokens in lines[1:]:
        if len(tokens) != 2:
            raise BundleError("%s:%d: expected 'i j'" % (path, lineno))
        pairs.append(tuple(_parse(path, lineno, int, token) for token in tokens))
    try:
        return SampleMask.from_pairs(n1, n2, pairs)
    except Error as e:
        raise BundleError("%s: %s" % (path, e))


def write_observations(path, values):
    _write_lines(path, [format_float(value) for value in np.atleast_1d(values)])

def read_observations(path):
    values = []
    for lineno, tokens in _read_lines(path):
        if len(tokens) != 1:
            raise BundleError("%s:%d: expected one value per line" % (path, lineno))
        values.append(_parse(path, lineno, float, tokens[0]))
    return np.array(values, dtype=float)


def problem_settings(problem):
    """
    Flat settings describing a problem's likelihood, boxes and rank.
    """
    model = problem.likelihood
    settings = collections.OrderedDict([('likelihood', model.kind)])
    if hasattr(model, 'sigma'):
        settings['noise.sigma'] = format_float(model.sigma)
    if hasattr(model, 'tau'):
        settings['noise.tau'] = format_float(model.tau)
    if hasattr(model, 'link'):
        settings['noise.scale'] = format_float(model.link.s)
    for name in ('x_box', 'd_box', 'a_box'):
        box = getattr(problem, name)
        settings['estimate.%s' % name] = "%s, %s" % (format_float(box.lo), format_float(box.hi))
    settings['truth.r'] = str(problem.r)
    return settings


def write_bundle(directory, problem, truth=None):
    """
    Writes a problem (and optionally its ground truth factors) to ``directory``.
    """
    if not os.path.isdir(directory):
        try:
            os.makedirs(directory)
        except OSError as e:
            raise BundleError("cannot create %s: %s" % (directory, e))
    if truth is not None:
        for name, M in zip(MATRIX_FILES, (truth.D, truth.A, truth.X)):
            write_matrix(os.path.join(directory, name), M)
    write_mask(os.path.join(directory, MASK_FILE), problem.mask)
    write_observations(os.path.join(directory, OBSERVATIONS_FILE), problem.observations)
    _write_lines(os.path.join(directory, PROBLEM_FILE),
                 format_config(problem_settings(problem)).splitlines())
    logger.info("wrote bundle to %s", directory)


def read_problem(directory):
    settings = load_config(os.path.join(directory, PROBLEM_FILE))
    reader = SettingsReader(settings)
    mask = read_mask(os.path.join(directory, MASK_FILE))
    observations = read_observations(os.path.join(directory, OBSERVATIONS_FILE))
    try:
        return make_problem(mask, observations, build_model(settings),
                            reader.box('estimate.x_box'), reader.box('estimate.d_box'),
                            reader.box('estimate.a_box'), reader.int('truth.r'))
    except Error as e:
        raise BundleError("%s: %s" % (directory, e))


def read_truth_matrix(directory):
    """
    The ground-truth X of a bundle, or None when the bundle has none.
    """
    path = os.path.join(directory, MATRIX_FILES[2])
    if not os.path.exists(path):
        return None
    return read_matrix(path)
