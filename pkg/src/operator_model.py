# src/operator_model.py
"""
Truncated operator model of the one-coordinate algebra.

χ_(m,S) is realized as the N×N matrix with entry 1 at (x+m, x) for x ∈ S ∩ [0, N).
Products of truncations agree with truncations of products on the window of
indices below N - B, where B bounds all translations and finite supports, which
makes this a brute-force oracle for the convolution code.
"""

import numpy as np

from src.errors import DimensionMismatch
from src.gaussian import GaussianRational
from src.groupoid_algebra import AlgebraElement


def to_matrix(f: AlgebraElement, size: int) -> np.ndarray:
    if f.n != 1:
        raise DimensionMismatch("the operator model is only defined for n = 1")
    out = np.empty((size, size), dtype=object)
    out.fill(GaussianRational())
    for c, t in f.terms:
        (m,) = t.m
        for x in range(size):
            if t.support.contains((x,)):
                y = x + m
                if 0 <= y < size:
                    out[y, x] = out[y, x] + c
    return out


def _check_square(a: np.ndarray, b: np.ndarray):
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionMismatch(f"truncations of different sizes: {a.shape} vs {b.shape}")


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two truncations of the same size N."""
    _check_square(a, b)
    return a @ b


def _check_window(a: np.ndarray, b: np.ndarray, window: int):
    _check_square(a, b)
    if not 0 <= window <= a.shape[0]:
        raise DimensionMismatch(f"window {window} outside 0..{a.shape[0]}")


def window_equal(a: np.ndarray, b: np.ndarray, window: int) -> bool:
    _check_window(a, b, window)
    return bool(np.all(a[:window, :window] == b[:window, :window]))


def mismatches(a: np.ndarray, b: np.ndarray, window: int) -> list:
    _check_window(a, b, window)
    rows, cols = np.nonzero(a[:window, :window] != b[:window, :window])
    return [(int(i), int(j)) for i, j in zip(rows, cols)]
