# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals
import math

import pytest

from sparse_factor_tools import config
from sparse_factor_tools.core import BoxBounds
from sparse_factor_tools.exceptions import ConfigError
from sparse_factor_tools.likelihoods import Gaussian, Laplace, Poisson, OneBit, LinkSpec
from sparse_factor_tools.synth import ExactSparse, WeakLp

CONFIG_TEXT = """
# desk run
preset = gaussian
noise.sigma = 1.0   # override
Sweep.Gammas = 0.5, 1.0

solver.eta = 1.1
"""

def test_parse_config():
    settings = config.parse_config(CONFIG_TEXT)
    assert list(settings.items()) == [
        ('preset', 'gaussian'), ('noise.sigma', '1.0'),
        ('sweep.gammas', '0.5, 1.0'), ('solver.eta', '1.1'),
    ]

@pytest.mark.parametrize(("text", "line"), (
    ("a = 1\nno equals sign\n", 2),
    ("\n\n = 3\n", 3),
))
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ConfigError) as excinfo:
        config.parse_config(text, source='run.cfg')
    assert 'run.cfg:%d' % line in str(excinfo.value)

def test_format_round_trip():
    settings = config.parse_config(CONFIG_TEXT)
    assert config.parse_config(config.format_config(settings)) == settings

def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        config.load_config(str(tmp_path / 'missing.cfg'))


def test_resolve_priority(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text(CONFIG_TEXT)
    settings = config.resolve_settings(path=str(path), overrides={'sweep.trials': 2, 'sweep.seed': None})
    assert settings['noise.sigma'] == '1.0'
    assert settings['sweep.trials'] == '2'
    assert settings['sweep.seed'] == str(config.DEFAULT_SEED)
    assert settings['name'] == 'gaussian'
    assert 'preset' not in settings

def test_unknown_preset():
    with pytest.raises(ConfigError):
        config.resolve_settings('nope')


@pytest.mark.parametrize("name", list(config.PRESETS))
def test_presets_build(name):
    experiment = config.build_experiment(config.resolve_settings(name))
    assert experiment.name == name
    assert experiment.trials >= 1
    for method in experiment.methods:
        assert experiment.lambdas[method]

PRESET_VALUES = (
    ('gaussian', Gaussian(0.5), (50, 200, 10), ExactSparse(4)),
    ('laplace', Laplace(math.sqrt(2)), (50, 200, 10), ExactSparse(4)),
    ('poisson', Poisson(), (50, 200, 10), ExactSparse(4)),
    ('onebit', OneBit(LinkSpec.from_sigma(0.1)), (200, 200, 4), ExactSparse(2)),
    ('gaussian_weak', Gaussian(0.5), (50, 200, 10), WeakLp(1 / 3)),
    ('gaussian_sigma2', Gaussian(2.0), (50, 200, 10), ExactSparse(4)),
    ('laplace_tau_sqrt_half', Laplace(1 / math.sqrt(2)), (50, 200, 10), ExactSparse(4)),
    ('laplace_tau_sqrt8_weak', Laplace(math.sqrt(8)), (50, 200, 10), WeakLp(1 / 3)),
    ('table2_gaussian', Gaussian(1.0), (100, 1000, 20), ExactSparse(8)),
    ('table2_onebit', OneBit(LinkSpec.from_sigma(0.1)), (1000, 1000, 5), ExactSparse(2)),
)

@pytest.mark.parametrize(("name", "model", "dims", "coefficients"), PRESET_VALUES)
def test_preset_values(name, model, dims, coefficients):
    experiment = config.build_experiment(config.resolve_settings(name))
    assert experiment.model == model
    assert (experiment.truth.n1, experiment.truth.n2, experiment.truth.r) == dims
    assert experiment.truth.coefficient_model == coefficients

def test_poisson_preset_boxes():
    experiment = config.build_experiment(config.resolve_settings('poisson'))
    assert experiment.truth.d_box_true == BoxBounds(0.1, 1)
    assert experiment.truth.a_box_true == BoxBounds(0, 40)
    assert experiment.truth.nonnegative
    assert experiment.a_box == BoxBounds(-80, 80)

def test_comparison_preset_lambda_grids():
    experiment = config.build_experiment(config.resolve_settings('compare62'))
    assert experiment.methods == ('l0_admm', 'l1_admm', 'nuclear')
    assert experiment.lambdas['nuclear'] == (1.0, 3.0, 10.0, 30.0, 100.0)
    assert experiment.lambdas['l1_admm'] == experiment.lambdas['l0_admm']
    assert experiment.gammas == (0.5,)


def _settings(**overrides):
    settings = config.resolve_settings('gaussian')
    for key, value in overrides.items():
        settings[key.replace('__', '.')] = value
    return settings

BAD_SETTINGS = (
    dict(sweep__typo='1'),
    dict(sweep__methods='l0_admm, magic'),
    dict(sweep__gammas='0.5, 1.5'),
    dict(sweep__trials='0'),
    dict(sweep__lambdas='1, -2'),
    dict(noise__sigma='abc'),
    dict(noise__sigma='-1'),
    dict(truth__p='0.5'),
    dict(truth__d_box='1, -1'),
    dict(truth__a_box='1'),
    dict(solver__eta='0.9'),
    dict(truth__nonnegative='maybe'),
    dict(run__jobs='0'),
    dict(likelihood='cauchy'),
)

@pytest.mark.parametrize("overrides", BAD_SETTINGS)
def test_invalid_settings(overrides):
    with pytest.raises(ConfigError):
        config.build_experiment(_settings(**overrides))

def test_solver_settings():
    solver = config.build_solver(_settings(solver__max_outer_iters='50', solver__warm_start='no',
                                           solver__delta1_stop='2.5'))
    assert solver.max_outer_iters == 50
    assert not solver.warm_start
    assert solver.delta1_stop == 2.5
    assert solver.delta2_stop is None

def test_reader_missing_key():
    with pytest.raises(ConfigError):
        config.SettingsReader({}).float('noise.sigma')
