# -*- coding: utf-8 -*-
from __future__ import absolute_import
from .subsolvers import spectral_norm, a_iht, d_newton, SubsolverResult
from .admm import (AdmmConfig, AdmmState, AdmmResult, TraceRecord,
                   update_x, admm_solve, objective)
