# -*- coding: utf-8 -*-
from __future__ import absolute_import, unicode_literals

class Enum(object):

    _attributes_cache = None
    _values_dict_cache = None

    @classmethod
    def _attributes(cls):
        if cls.__dict__.get('_attributes_cache') is None:
            attrs = [name for name in dir(cls)
                    if name.isupper() and not name.startswith('_')]
            cls._attributes_cache = attrs
        return cls._attributes_cache

    @classmethod
    def _values_dict(cls):
        if cls.__dict__.get('_values_dict_cache') is None:
            cls._values_dict_cache = dict([
                (getattr(cls, name), name)
                for name in cls._attributes()
            ])
        return cls._values_dict_cache

    @classmethod
    def is_known(cls, value):
        return value in cls._values_dict()

    @classmethod
    def name_of(cls, value):
        return cls._values_dict().get(value, "<unknown>")

    @classmethod
    def values(cls):
        return sorted(cls._values_dict())


class Likelihood(Enum):
    GAUSSIAN = 'gaussian'
    LAPLACE = 'laplace'
    POISSON = 'poisson'
    ONEBIT = 'onebit'

class LinkFamily(Enum):
    LOGISTIC = 'logistic'

class Penalty(Enum):
    L0 = 'l0'
    L1 = 'l1'

class Method(Enum):
    L0_ADMM = 'l0_admm'
    L1_ADMM = 'l1_admm'
    NUCLEAR = 'nuclear'
