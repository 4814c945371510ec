# -*- coding: utf-8 -*-
from __future__ import absolute_import, division
import numpy as np
import pytest

from sparse_factor_tools.core import (BoxBounds, SampleMask, FactorPair, make_problem,
                                      frobenius_error, project_box)
from sparse_factor_tools.exceptions import ValidationError
from sparse_factor_tools.likelihoods import Gaussian, Poisson, OneBit, LinkSpec

BAD_BOXES = (
    (1.0, -1.0),
    (float('nan'), 1.0),
    (-float('inf'), 1.0),
)

@pytest.mark.parametrize(("lo", "hi"), BAD_BOXES)
def test_box_rejects_bad_bounds(lo, hi):
    with pytest.raises(ValidationError):
        BoxBounds(lo, hi)

def test_box_helpers():
    box = BoxBounds(-3, 2)
    assert box.magnitude == 3
    assert box.width == 5
    assert box.contains([[-3, 0], [2, 1]])
    assert not box.contains([2.5])
    assert BoxBounds.symmetric(-2) == BoxBounds(-2, 2)
    assert box.scaled(2) == BoxBounds(-6, 4)
    assert repr(box) == 'BoxBounds([-3.0, 2.0])'


def test_mask_from_pairs():
    mask = SampleMask.from_pairs(2, 3, [(1, 2), (0, 1)])
    assert mask.size == 2
    assert mask.entries == [(0, 1), (1, 2)]
    assert (1, 2) in mask
    assert (1, 1) not in mask
    assert (5, 5) not in mask
    assert mask.gamma == pytest.approx(2 / 6)

@pytest.mark.parametrize("pairs", ([(0, 0), (0, 0)], [(2, 0)], [(0, -1)]))
def test_mask_rejects_bad_pairs(pairs):
    with pytest.raises(ValidationError):
        SampleMask.from_pairs(2, 2, pairs)

def test_empty_mask_is_allowed():
    mask = SampleMask.from_view(np.zeros((2, 2), dtype=bool))
    assert mask.size == 0
    assert mask.entries == []

def test_mask_view_is_frozen():
    mask = SampleMask.full(2, 2)
    with pytest.raises(ValueError):
        mask.view[0, 0] = False


def test_factor_pair():
    pair = FactorPair(np.ones((3, 2)), [[1, 0, 0], [0, 0, 2]])
    assert pair.r == 2
    assert pair.nnz == 2
    np.testing.assert_array_equal(pair.X, [[1, 0, 2]] * 3)

@pytest.mark.parametrize(("D", "A"), (
    (np.ones((3, 2)), np.ones((3, 3))),
    (np.ones((3, 4)), np.ones((4, 3))),
    (np.ones(3), np.ones((1, 3))),
))
def test_factor_pair_rejects_bad_shapes(D, A):
    with pytest.raises(ValidationError):
        FactorPair(D, A)


def _mask():
    return SampleMask.from_pairs(2, 2, [(0, 0), (1, 1)])

def test_make_problem():
    box = BoxBounds(-1, 1)
    problem = make_problem(_mask(), [0.5, -0.5], Gaussian(1), box, box, box, 1)
    assert problem.shape == (2, 2)
    np.testing.assert_array_equal(problem.observed_matrix(), [[0.5, 0], [0, -0.5]])

@pytest.mark.parametrize(("observations", "model", "x_box", "r"), (
    ([0.5], Gaussian(1), BoxBounds(-1, 1), 1),
    ([0.5, 0.5], Gaussian(1), BoxBounds(-1, 1), 3),
    ([1.5, 2.0], Poisson(), BoxBounds(0, 1), 1),
    ([1.0, 2.0], Poisson(), BoxBounds(-1, 1), 1),
    ([1.0, -1.0], Poisson(), BoxBounds(0, 1), 1),
    ([1.0, 0.5], OneBit(LinkSpec.logistic(1)), BoxBounds(-1, 1), 1),
    ([float('nan'), 0.5], Gaussian(1), BoxBounds(-1, 1), 1),
))
def test_make_problem_rejects(observations, model, x_box, r):
    box = BoxBounds(-1, 1)
    with pytest.raises(ValidationError):
        make_problem(_mask(), observations, model, x_box, box, box, r)


FROBENIUS = (
    ([[0, 0]], [[2, 0]], 2.0),
    ([[1, 2], [3, 4]], [[1, 2], [3, 4]], 0.0),
)

@pytest.mark.parametrize(("X", "Xref", "expected"), FROBENIUS)
def test_frobenius_error(X, Xref, expected):
    assert frobenius_error(X, Xref) == expected

def test_frobenius_error_matches_loop():
    rng = np.random.default_rng(3)
    X, Xref = rng.standard_normal((5, 5)), rng.standard_normal((5, 5))
    total = 0.0
    for i in range(5):
        for j in range(5):
            total += (X[i, j] - Xref[i, j]) ** 2
    assert frobenius_error(X, Xref) == pytest.approx(total / 25, rel=1e-12)
    assert frobenius_error(X, Xref) == frobenius_error(Xref, X)

def test_frobenius_error_shape_mismatch():
    with pytest.raises(ValidationError):
        frobenius_error(np.zeros((2, 2)), np.zeros((2, 3)))


def test_project_box():
    box = BoxBounds(-2, 2)
    assert project_box([[3.5]], box)[0, 0] == 2
    M = np.array([[0.5, -1.0]])
    np.testing.assert_array_equal(project_box(M, box), M)

def test_project_box_properties():
    rng = np.random.default_rng(7)
    box = BoxBounds(-1, 1)
    M, N = 3 * rng.standard_normal((6, 4)), 3 * rng.standard_normal((6, 4))
    projected = project_box(M, box)
    expected = [[min(max(value, -1.0), 1.0) for value in row] for row in M]
    np.testing.assert_array_equal(projected, expected)
    np.testing.assert_array_equal(project_box(projected, box), projected)
    assert np.linalg.norm(projected - project_box(N, box)) <= np.linalg.norm(M - N)
