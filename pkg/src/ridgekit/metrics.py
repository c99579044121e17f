"""Quality metrics for comparing two binarizations of the same image.

G is the reference binarization (global Otsu), F is the one under test.
``snr_ms`` is sum(G^2) / sum((G-F)^2) and is deliberately asymmetric in
its arguments; ``e_rms`` is the root-mean-square pixel error; correlation
is plain Pearson over the flattened rasters.
"""
from __future__ import annotations

import math

import numpy as np

from .validation import check_binary_image, check_same_shape


def snr_ms(g, f) -> float:
    """Mean-square signal-to-noise ratio of F against reference G.

    Returns ``math.inf`` when the images are identical (zero denominator).
    """
    ga = check_binary_image(g)
    fa = check_binary_image(f)
    check_same_shape(ga, fa)
    signal = int(ga.astype(np.int64).sum())
    noise = int(((ga.astype(np.int64) - fa) ** 2).sum())
    if noise == 0:
        return math.inf
    return signal / noise


def e_rms(g, f) -> float:
    """Root-mean-square error between two equal-size binary rasters."""
    ga = check_binary_image(g)
    fa = check_binary_image(f)
    check_same_shape(ga, fa)
    diff = int(((ga.astype(np.int64) - fa) ** 2).sum())
    return math.sqrt(diff / ga.size)


def correlation(g, f) -> float:
    """Pearson correlation of the flattened pixel sequences.

    Undefined (raises ValueError) when either image is constant.
    """
    ga = check_binary_image(g).ravel().astype(np.float64)
    fa = check_binary_image(f).ravel().astype(np.float64)
    if ga.shape != fa.shape:
        raise ValueError("image dimensions differ")
    gd = ga - ga.mean()
    fd = fa - fa.mean()
    g_ss = float(gd @ gd)
    f_ss = float(fd @ fd)
    if g_ss == 0.0 or f_ss == 0.0:
        raise ValueError("correlation is undefined for a constant image")
    return float(gd @ fd) / math.sqrt(g_ss * f_ss)
