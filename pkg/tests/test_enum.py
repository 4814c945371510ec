# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

import pytest

from sparse_factor_tools.constants import Enum, Likelihood, LinkFamily, Method, Penalty

KNOWN = (
    (Likelihood, 'poisson', 'POISSON'),
    (Likelihood, 'onebit', 'ONEBIT'),
    (LinkFamily, 'logistic', 'LOGISTIC'),
    (Penalty, 'l1', 'L1'),
    (Method, 'nuclear', 'NUCLEAR'),
)

UNKNOWN = (
    (Likelihood, 'probit'),
    (Penalty, 'l2'),
    (Method, 'L0_ADMM'),
)


class Levels(Enum):
    LOW = 1
    HIGH = 2
    _HIDDEN = 3


@pytest.mark.parametrize(("enum", "value", "name"), KNOWN)
def test_known_values(enum, value, name):
    assert enum.is_known(value)
    assert enum.name_of(value) == name


@pytest.mark.parametrize(("enum", "value"), UNKNOWN)
def test_unknown_values(enum, value):
    assert not enum.is_known(value)
    assert enum.name_of(value) == '<unknown>'


def test_private_names_are_skipped():
    assert Levels.values() == [1, 2]
    assert not Levels.is_known(3)


def test_values_are_per_class():
    assert Likelihood.values() == ['gaussian', 'laplace', 'onebit', 'poisson']
    assert Penalty.values() == ['l0', 'l1']
    assert Method.values() == ['l0_admm', 'l1_admm', 'nuclear']
