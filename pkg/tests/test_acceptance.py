# -*- coding: utf-8 -*-
"""
Desk-scale sweeps reproducing the error-decay behaviour. Run with --runslow.
"""
from __future__ import absolute_import, division
import io
import os

import numpy as np
import pytest

from sparse_factor_tools import config, theory
from sparse_factor_tools.experiment import run_experiment, truth_seed
from sparse_factor_tools.report import emit_outputs
from sparse_factor_tools.synth import generate_ground_truth

pytestmark = pytest.mark.slow

SLOPE_RANGES = (
    ('gaussian', (-1.4, -0.6)),
    ('laplace', (-1.4, -0.6)),
    ('poisson', (-1.4, -0.6)),
    ('onebit', (-1.5, -0.5)),
)

_cache = {}

def _run(preset):
    if preset not in _cache:
        cfg = config.build_experiment(config.resolve_settings(preset))
        _cache[preset] = (cfg, run_experiment(cfg))
    return _cache[preset]


@pytest.mark.parametrize(("preset", "bounds"), SLOPE_RANGES)
def test_error_decay_slope(preset, bounds):
    cfg, result = _run(preset)
    slope = result.slopes['l0_admm']
    assert slope is not None
    assert bounds[0] <= slope <= bounds[1]

def test_gaussian_bound_dominates_every_run():
    cfg, result = _run('gaussian')
    truth = generate_ground_truth(cfg.truth, np.random.default_rng(truth_seed(cfg)))
    n = cfg.truth.n1 * cfg.truth.n2
    for row in result.rows:
        m = int(round(row.gamma * n))
        bound = theory.corollary_bound(theory.bound_inputs_from_truth(truth, cfg.model, m))
        assert row.mse <= bound.total

def test_sparse_penalty_beats_nuclear_norm():
    cfg, result = _run('compare62')
    means = dict((row.method, row.mean_mse) for row in result.summary)
    assert means['l0_admm'] <= means['nuclear']
    assert means['l1_admm'] <= 1.5 * means['l0_admm']

def test_repeated_sweep_is_byte_identical(tmp_path):
    cfg, result = _run('gaussian')
    first = emit_outputs(result.rows, result.summary, str(tmp_path / 'a'))[0]
    second = emit_outputs(run_experiment(cfg).rows, [], str(tmp_path / 'b'))[0]
    with io.open(first, 'rb') as f, io.open(second, 'rb') as g:
        assert f.read() == g.read()
    assert os.path.basename(first) == 'results.csv'
