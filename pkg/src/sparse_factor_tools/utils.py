# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, unicode_literals

import hashlib
import struct

import numpy as np

SEED_MASK = 2**64 - 1


def soft_threshold(x, t):
    """
    Entry-wise soft thresholding: sign(x) * max(|x| - t, 0).
    """
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)

def relative_change(new, old):
    """
    ``||new - old||_F / ||old||_F``; 0 when both are zero
    and +inf when only ``old`` is zero.
    """
    diff = np.linalg.norm(np.asarray(new) - np.asarray(old))
    base = np.linalg.norm(old)
    if base == 0:
        return 0.0 if diff == 0 else float('inf')
    return diff / base

def derive_seed(seed, *keys):
    """
    Derives a 64-bit seed for one sweep cell: ``seed`` xor a hash of ``keys``.
    """
    text = "|".join(str(key) for key in keys).encode('utf-8')
    digest = hashlib.blake2b(text, digest_size=8).digest()
    return (int(seed) ^ struct.unpack(str(">Q"), digest)[0]) & SEED_MASK

def format_float(value):
    return repr(float(value))

def shape_repr(matrix):
    return "x".join(str(dim) for dim in np.shape(matrix))

def frozen_array(data, dtype=float):
    """
    Returns a read-only copy of ``data``.
    """
    arr = np.array(data, dtype=dtype)
    arr.setflags(write=False)
    return arr

def new_registry():
    """
    Returns an empty dict and a @register decorator
    """
    registry = {}

    def register(key):
        def decorator(func):
            registry[key] = func
            return func
        return decorator

    return registry, register
