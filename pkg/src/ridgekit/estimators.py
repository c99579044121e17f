"""scikit-learn compatible transformers for the preprocessing chain.

Each stage of binarize -> dilate -> thin is exposed as a stateless
transformer so the chain composes with ``sklearn.pipeline.Pipeline``,
``clone``, and parameter search.  ``X`` may be a single 2-D image or a
sequence/stack of them; the output mirrors the input structure.

    >>> from sklearn.pipeline import Pipeline
    >>> chain = Pipeline([
    ...     ("binarize", AdaptiveBinarizer(block_size=16, overlap=1)),
    ...     ("dilate", Dilator()),
    ...     ("thin", ParallelThinner(iterations=6)),
    ... ])
    >>> skeleton = chain.fit_transform(gray_image)
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import morphology, threshold
from .threshold import DARK_FOREGROUND


def _apply(X, func):
    """Apply an image->image function to one image or a batch of them."""
    if isinstance(X, np.ndarray) and X.ndim == 2:
        return func(X)
    if isinstance(X, np.ndarray) and X.ndim == 3:
        return np.stack([func(img) for img in X])
    if isinstance(X, (list, tuple)):
        return [func(img) for img in X]
    raise ValueError(
        "X must be a 2-D image, a 3-D stack, or a sequence of 2-D images")


class AdaptiveBinarizer(BaseEstimator, TransformerMixin):
    """Per-block mean thresholding with overlapped blocks.

    Parameters mirror the library functions: ``block_size`` and
    ``overlap`` define the tiling, ``polarity`` selects whether dark or
    light pixels become foreground.
    """

    def __init__(self, block_size=16, overlap=1, polarity=DARK_FOREGROUND):
        self.block_size = block_size
        self.overlap = overlap
        self.polarity = polarity

    def fit(self, X=None, y=None):
        # Thresholds are recomputed per image; fitting only checks params.
        if self.block_size < 2:
            raise ValueError("block_size must be >= 2")
        if not 0 <= self.overlap < self.block_size:
            raise ValueError("overlap must be in [0, block_size)")
        return self

    def transform(self, X):
        self.fit()

        def binarize_one(img):
            grid = threshold.build_block_grid(
                img.shape[1], img.shape[0], self.block_size, self.overlap)
            tmap = threshold.threshold_map(img, grid)
            return threshold.binarize(img, tmap, self.polarity)

        return _apply(X, binarize_one)


class Dilator(BaseEstimator, TransformerMixin):
    """2x2 dilation closing single-pixel holes and hairline breaks."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X):
        return _apply(X, morphology.dilate_2x2)


class ParallelThinner(BaseEstimator, TransformerMixin):
    """Two-subiteration parallel thinning down to unit-width strokes.

    ``iterations`` fixes the pass count (six suffices for ridge widths up
    to ~13 px); ``early_exit`` stops once an iteration deletes nothing;
    ``min_neighbors`` relaxes the neighbor-count lower bound to the
    classic value of 2 if desired.
    """

    def __init__(self, iterations=morphology.DEFAULT_ITERATIONS,
                 min_neighbors=3, early_exit=False):
        self.iterations = iterations
        self.min_neighbors = min_neighbors
        self.early_exit = early_exit

    def fit(self, X=None, y=None):
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.min_neighbors not in (2, 3):
            raise ValueError("min_neighbors must be 2 or 3")
        return self

    def transform(self, X):
        self.fit()
        lut = (None if self.min_neighbors == 3
               else morphology.build_lut(self.min_neighbors))

        def thin_one(img):
            return morphology.thin(img, self.iterations, lut,
                                   self.early_exit).image

        return _apply(X, thin_one)


def preprocessing_chain(block_size=16, overlap=1, polarity=DARK_FOREGROUND,
                        iterations=morphology.DEFAULT_ITERATIONS):
    """The standard three-stage chain as an sklearn ``Pipeline``."""
    from sklearn.pipeline import Pipeline

    return Pipeline([
        ("binarize", AdaptiveBinarizer(block_size, overlap, polarity)),
        ("dilate", Dilator()),
        ("thin", ParallelThinner(iterations)),
    ])
