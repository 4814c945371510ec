# -*- coding: utf-8 -*-
from __future__ import absolute_import, division
import numpy as np
import pytest
from scipy import linalg

from sparse_factor_tools.baselines import (L1Admm, NuclearNorm, a_l1_subsolve, l1_objective,
                                           singular_value_threshold, nuclear_norm_complete)
from sparse_factor_tools.core import BoxBounds, SampleMask, make_problem, FactorPair
from sparse_factor_tools.exceptions import ValidationError
from sparse_factor_tools.likelihoods import Gaussian
from sparse_factor_tools.solver import a_iht

from .utils import orthogonal_factor, l1_coordinate_descent, make_full_problem

WIDE = BoxBounds(-1e6, 1e6)


@pytest.mark.parametrize(("factory", "args"), (
    (L1Admm, (-1.0,)),
    (NuclearNorm, (-1.0,)),
    (NuclearNorm, (1.0, 0.0)),
    (NuclearNorm, (1.0, 0.5, 0)),
))
def test_settings_validation(factory, args):
    with pytest.raises(ValidationError):
        factory(*args)


def test_l1_matches_iht_without_penalty():
    rng = np.random.default_rng(1)
    D = orthogonal_factor(5, 3, 2.0, rng)
    Z = rng.standard_normal((5, 4))
    box = BoxBounds(-0.3, 0.3)
    l1 = a_l1_subsolve(D, Z, 0.0, 1.0, box).value
    l0 = a_iht(D, Z, 0.0, 1.0, box).value
    np.testing.assert_allclose(l1, l0, atol=1e-6)

def test_l1_huge_penalty_gives_zero():
    rng = np.random.default_rng(2)
    D, Z = rng.standard_normal((5, 3)), rng.standard_normal((5, 4))
    result = a_l1_subsolve(D, Z, 1e9, 1.0, WIDE)
    assert not np.any(result.value)
    assert result.converged

@pytest.mark.parametrize("seed", (3, 4, 5))
def test_l1_matches_coordinate_descent(seed):
    rng = np.random.default_rng(seed)
    D, Z = rng.standard_normal((2, 2)), 2 * rng.standard_normal((2, 2))
    box = BoxBounds(-1, 1)
    lam, rho = 0.3, 1.0
    A = a_l1_subsolve(D, Z, lam, rho, box, eps=1e-12, max_iters=20000).value
    expected = l1_objective(l1_coordinate_descent(D, Z, lam, rho, box), D, Z, lam, rho)
    assert l1_objective(A, D, Z, lam, rho) == pytest.approx(expected, rel=1e-5, abs=1e-8)

def test_l1_objective_is_monotone():
    rng = np.random.default_rng(6)
    D, Z = rng.standard_normal((6, 3)), rng.standard_normal((6, 5))
    box = BoxBounds(-0.5, 0.5)
    values = [l1_objective(np.zeros((3, 5)), D, Z, 0.2, 2.0)]
    for iters in range(1, 30):
        A = a_l1_subsolve(D, Z, 0.2, 2.0, box, eps=0.0, max_iters=iters).value
        assert box.contains(A)
        values.append(l1_objective(A, D, Z, 0.2, 2.0))
    assert np.all(np.diff(values) <= 1e-12)

def test_l1_rejects_zero_dictionary():
    with pytest.raises(ValidationError):
        a_l1_subsolve(np.zeros((2, 2)), np.ones((2, 2)), 0.1, 1.0, WIDE)


def test_singular_value_threshold_matches_svd():
    M = np.random.default_rng(7).standard_normal((10, 6))
    s = linalg.svdvals(M)
    shrunk = linalg.svdvals(singular_value_threshold(M, 1.0))
    np.testing.assert_allclose(np.sort(shrunk)[::-1], np.maximum(s - 1.0, 0.0), atol=1e-10)


def test_nuclear_without_penalty_returns_observations():
    Y = np.random.default_rng(8).standard_normal((5, 4))
    result = nuclear_norm_complete(make_full_problem(Y, Gaussian(1), r=2), 0.0)
    np.testing.assert_allclose(result.X, Y, atol=1e-10)
    assert result.converged

def test_nuclear_large_penalty_gives_zero():
    Y = np.random.default_rng(9).standard_normal((5, 4))
    lam = 2 * linalg.svdvals(Y)[0]
    result = nuclear_norm_complete(make_full_problem(Y, Gaussian(1), r=2), lam, max_iters=1)
    assert not np.any(result.X)

def test_nuclear_objective_is_monotone():
    rng = np.random.default_rng(10)
    Y = rng.standard_normal((8, 6))
    mask = SampleMask.from_view(rng.random((8, 6)) < 0.7)
    problem = make_problem(mask, Y[mask.rows, mask.cols], Gaussian(1),
                           BoxBounds(-5, 5), BoxBounds(-5, 5), BoxBounds(-5, 5), 2)
    result = nuclear_norm_complete(problem, 0.5, max_iters=100)
    assert np.all(np.diff(result.objectives) <= 1e-10)
    assert len(result.objectives) == result.iterations + 1

def test_nuclear_completes_rank_one():
    rng = np.random.default_rng(11)
    X_true = FactorPair(rng.uniform(0.5, 1.5, (20, 1)), rng.uniform(0.5, 1.5, (1, 20))).X
    mask = SampleMask.from_view(rng.random((20, 20)) < 0.8)
    problem = make_problem(mask, X_true[mask.rows, mask.cols], Gaussian(1),
                           BoxBounds(-5, 5), BoxBounds(-5, 5), BoxBounds(-5, 5), 1)
    result = nuclear_norm_complete(problem, 0.01, max_iters=2000)
    assert np.linalg.norm(result.X - X_true) / np.linalg.norm(X_true) <= 1e-2
