# -*- coding: utf-8 -*-
"""
Flat ``key = value`` configuration files and experiment presets.

Keys use dotted sections (``solver.eta = 1.05``), lists are comma
separated and ``#`` starts a comment::

    preset = gaussian
    noise.sigma = 1.0
    sweep.gammas = 0.5, 0.75, 1.0
"""
from __future__ import absolute_import, division, unicode_literals
import collections
import io
import logging
import math

from sparse_factor_tools.constants import Likelihood, Method
from sparse_factor_tools.core import BoxBounds
from sparse_factor_tools.exceptions import Error, ConfigError
from sparse_factor_tools.likelihoods import model_from_name
from sparse_factor_tools.solver.admm import AdmmConfig
from sparse_factor_tools.synth import ExactSparse, WeakLp, GroundTruthSpec

logger = logging.getLogger(__name__)

KNOWN_KEYS = set([
    'preset', 'name', 'likelihood',
    'noise.sigma', 'noise.tau', 'noise.scale',
    'truth.n1', 'truth.n2', 'truth.r', 'truth.k', 'truth.p',
    'truth.d_box', 'truth.a_box', 'truth.nonnegative',
    'estimate.d_box', 'estimate.a_box',
    'sweep.gammas', 'sweep.lambdas', 'sweep.trials', 'sweep.seed', 'sweep.methods',
    'nuclear.step', 'nuclear.max_iters',
    'output.dir', 'output.timing', 'run.jobs',
] + ['%s.lambdas' % method for method in Method.values()]
  + ['solver.%s' % field for field in AdmmConfig._fields if field not in ('lam', 'penalty')])

DEFAULT_SEED = 20151
DEFAULT_GAMMAS = "0.4, 0.55, 0.7, 0.85, 1.0"


def parse_config(text, source='<config>'):
    """
    Parses config text into an ordered dict of raw string values;
    later keys override earlier ones.
    """
    settings = collections.OrderedDict()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError("%s:%d: expected 'key = value', got %r" % (source, lineno, line))
        key, value = line.split('=', 1)
        key = key.strip().lower()
        if not key:
            raise ConfigError("%s:%d: empty key" % (source, lineno))
        settings[key] = value.strip()
    return settings

def format_config(settings):
    return "".join("%s = %s\n" % (key, value) for key, value in settings.items())

def load_config(path):
    try:
        with io.open(path, encoding='utf-8') as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise ConfigError("cannot read config %s: %s" % (path, e))
    logger.debug("read config %s", path)
    return parse_config(text, source=path)


def _preset(**values):
    settings = collections.OrderedDict([
        ('truth.d_box', '-1, 1'),
        ('truth.a_box', '-20, 20'),
        ('estimate.d_box', '-2, 2'),
        ('estimate.a_box', '-40, 40'),
        ('sweep.gammas', DEFAULT_GAMMAS),
        ('sweep.lambdas', '1, 3, 10, 30, 100, 300'),
        ('sweep.trials', '10'),
        ('sweep.seed', str(DEFAULT_SEED)),
        ('sweep.methods', Method.L0_ADMM),
    ])
    for key, value in values.items():
        settings[key.replace('__', '.')] = str(value)
    return settings

_DESK = dict(truth__n1=50, truth__n2=200, truth__r=10, truth__k=4)
_POISSON = dict(truth__d_box='0.1, 1', truth__a_box='0, 40', estimate__a_box='-80, 80',
                truth__nonnegative='true', sweep__lambdas='0.3, 1, 3, 10, 30, 100')
_ONEBIT = dict(noise__sigma=0.1, sweep__lambdas='0.1, 0.3, 1, 3, 10, 30')
_TABLE = dict(truth__n1=100, truth__n2=1000, truth__r=20, truth__k=8, sweep__trials=20)
_TABLE_ONEBIT = dict(truth__n1=1000, truth__n2=1000, truth__r=5, truth__k=2, sweep__trials=20)

# further noise levels of the gaussian and laplace sweeps
_NOISE_LEVELS = (
    ('gaussian_sigma1', 'gaussian', 'noise.sigma', 1.0),
    ('gaussian_sigma2', 'gaussian', 'noise.sigma', 2.0),
    ('laplace_tau_sqrt8', 'laplace', 'noise.tau', math.sqrt(8)),
    ('laplace_tau_sqrt_half', 'laplace', 'noise.tau', 1 / math.sqrt(2)),
)


def _weak(settings):
    settings = collections.OrderedDict(settings)
    del settings['truth.k']
    settings['truth.p'] = '0.3333333333333333'
    return settings


def _build_presets():
    presets = collections.OrderedDict()
    presets['gaussian'] = _preset(likelihood='gaussian', noise__sigma=0.5, **_DESK)
    presets['laplace'] = _preset(likelihood='laplace', noise__tau=math.sqrt(2), **_DESK)
    presets['poisson'] = _preset(likelihood='poisson', **dict(_DESK, **_POISSON))
    presets['onebit'] = _preset(likelihood='onebit', truth__n1=200, truth__n2=200,
                                truth__r=4, truth__k=2, **_ONEBIT)
    presets['compare62'] = _preset(
        likelihood='gaussian', noise__sigma=1.0, truth__n1=50, truth__n2=500,
        truth__r=10, truth__k=4, sweep__gammas='0.5',
        sweep__methods='l0_admm, l1_admm, nuclear',
        nuclear__lambdas='1, 3, 10, 30, 100')
    for name in ('gaussian', 'laplace', 'poisson', 'onebit'):
        presets[name + '_weak'] = _weak(presets[name])
    for name, base, key, value in _NOISE_LEVELS:
        presets[name] = collections.OrderedDict(presets[base])
        presets[name][key] = str(value)
        presets[name + '_weak'] = _weak(presets[name])
    presets['table2_gaussian'] = _preset(likelihood='gaussian', noise__sigma=1.0, **_TABLE)
    presets['table2_laplace'] = _preset(likelihood='laplace', noise__tau=math.sqrt(2), **_TABLE)
    presets['table2_poisson'] = _preset(likelihood='poisson', **dict(_TABLE, **_POISSON))
    presets['table2_onebit'] = _preset(likelihood='onebit', **dict(_TABLE_ONEBIT, **_ONEBIT))
    for name, settings in presets.items():
        settings['name'] = name
    return presets

PRESETS = _build_presets()


def resolve_settings(preset=None, path=None, overrides=None):
    """
    Merges, in increasing priority: the preset (``preset`` argument or the
    file's ``preset`` key), the config file and ``overrides``.
    """
    file_settings = load_config(path) if path else collections.OrderedDict()
    preset = preset or file_settings.get('preset')
    settings = collections.OrderedDict()
    if preset:
        if preset not in PRESETS:
            raise ConfigError("Unknown preset %r (expected one of %s)" % (preset, ", ".join(PRESETS)))
        settings.update(PRESETS[preset])
    settings.update(file_settings)
    for key, value in (overrides or {}).items():
        if value is not None:
            settings[key] = str(value)
    settings.pop('preset', None)
    return settings


class SettingsReader(object):
    """
    Typed access to raw settings with key-aware error messages.
    """
    def __init__(self, settings):
        self.settings = settings

    def has(self, key):
        return self.settings.get(key) not in (None, '')

    def raw(self, key, default=None):
        if not self.has(key):
            if default is None:
                raise ConfigError("missing config key %r" % key)
            return default
        return self.settings[key]

    def _convert(self, key, func, value):
        try:
            return func(value)
        except (TypeError, ValueError) as e:
            raise ConfigError("bad value for %r: %r (%s)" % (key, value, e))

    def float(self, key, default=None):
        return self._convert(key, float, self.raw(key, default))

    def optional_float(self, key):
        return self.float(key) if self.has(key) else None

    def int(self, key, default=None):
        return self._convert(key, int, self.raw(key, default))

    def bool(self, key, default='false'):
        value = str(self.raw(key, default)).lower()
        if value in ('1', 'true', 'yes', 'on'):
            return True
        if value in ('0', 'false', 'no', 'off'):
            return False
        raise ConfigError("bad boolean for %r: %r" % (key, value))

    def float_list(self, key, default=None):
        raw = self.raw(key, default)
        return tuple(self._convert(key, float, item) for item in raw.split(',') if item.strip())

    def str_list(self, key, default=None):
        return tuple(item.strip() for item in self.raw(key, default).split(',') if item.strip())

    def box(self, key, default=None):
        values = self.float_list(key, default)
        if len(values) != 2:
            raise ConfigError("%r needs two values 'lo, hi' (got %r)" % (key, self.raw(key, default)))
        try:
            return BoxBounds(*values)
        except Error as e:
            raise ConfigError("bad box for %r: %s" % (key, e))


def build_model(settings):
    reader = SettingsReader(settings)
    try:
        return model_from_name(reader.raw('likelihood'),
                               sigma=reader.optional_float('noise.sigma'),
                               tau=reader.optional_float('noise.tau'),
                               scale=reader.optional_float('noise.scale'))
    except Error as e:
        raise ConfigError(str(e))


def build_solver(settings):
    reader = SettingsReader(settings)
    kwargs = {}
    for field in AdmmConfig._fields:
        key = 'solver.%s' % field
        if not reader.has(key):
            continue
        if field == 'warm_start':
            kwargs[field] = reader.bool(key)
        elif field in ('max_outer_iters', 'max_inner_iters'):
            kwargs[field] = reader.int(key)
        else:
            kwargs[field] = reader.float(key)
    try:
        return AdmmConfig(**kwargs)
    except Error as e:
        raise ConfigError("bad solver settings: %s" % e)


def build_truth_spec(settings):
    reader = SettingsReader(settings)
    if reader.has('truth.k') == reader.has('truth.p'):
        raise ConfigError("give exactly one of truth.k (sparse) and truth.p (weak-lp)")
    try:
        if reader.has('truth.k'):
            coefficients = ExactSparse(reader.int('truth.k'))
        else:
            coefficients = WeakLp(reader.float('truth.p'))
        nonnegative = reader.bool('truth.nonnegative',
                                  'true' if reader.raw('likelihood') == Likelihood.POISSON else 'false')
        return GroundTruthSpec(reader.int('truth.n1'), reader.int('truth.n2'), reader.int('truth.r'),
                               coefficients, reader.box('truth.d_box'), reader.box('truth.a_box'),
                               nonnegative)
    except ConfigError:
        raise
    except Error as e:
        raise ConfigError(str(e))


def build_experiment(settings):
    """
    Validates raw settings and returns an :class:`ExperimentConfig`.
    """
    from sparse_factor_tools.experiment import ExperimentConfig

    unknown = sorted(key for key in settings if key not in KNOWN_KEYS)
    if unknown:
        raise ConfigError("unknown config keys: %s" % ", ".join(unknown))
    reader = SettingsReader(settings)

    methods = reader.str_list('sweep.methods', Method.L0_ADMM)
    for method in methods:
        if not Method.is_known(method):
            raise ConfigError("unknown method %r (expected one of %s)" % (method, ", ".join(Method.values())))
    default_lambdas = reader.float_list('sweep.lambdas') if reader.has('sweep.lambdas') else None
    lambdas = collections.OrderedDict()
    for method in methods:
        key = '%s.lambdas' % method
        grid = reader.float_list(key) if reader.has(key) else default_lambdas
        if not grid:
            raise ConfigError("no lambda grid for method %r" % method)
        if any(lam < 0 for lam in grid):
            raise ConfigError("%s has a negative lambda" % key)
        lambdas[method] = grid

    gammas = reader.float_list('sweep.gammas', DEFAULT_GAMMAS)
    if not gammas or any(not 0 < gamma <= 1 for gamma in gammas):
        raise ConfigError("sweep.gammas must be a nonempty list in (0, 1]")
    trials = reader.int('sweep.trials', '1')
    if trials < 1:
        raise ConfigError("sweep.trials must be at least 1")
    jobs = reader.int('run.jobs', '1')
    if jobs < 1:
        raise ConfigError("run.jobs must be at least 1")
    nuclear_step = reader.float('nuclear.step', '0.5')
    nuclear_max_iters = reader.int('nuclear.max_iters', '500')
    if not nuclear_step > 0 or nuclear_max_iters < 1:
        raise ConfigError("nuclear.step must be positive and nuclear.max_iters at least 1")

    return ExperimentConfig(
        name=reader.raw('name', 'experiment'),
        model=build_model(settings),
        truth=build_truth_spec(settings),
        d_box=reader.box('estimate.d_box', '-2, 2'),
        a_box=reader.box('estimate.a_box', '-40, 40'),
        gammas=gammas,
        lambdas=lambdas,
        trials=trials,
        seed=reader.int('sweep.seed', str(DEFAULT_SEED)),
        solver=build_solver(settings),
        methods=methods,
        nuclear_step=nuclear_step,
        nuclear_max_iters=nuclear_max_iters,
        output_dir=reader.raw('output.dir', 'results'),
        timing=reader.bool('output.timing'),
        jobs=jobs,
    )
