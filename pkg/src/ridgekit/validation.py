"""Input validation helpers shared by the image operations and estimators.

Images are plain 2-D numpy arrays: grayscale rasters hold one 8-bit value
per pixel, binary rasters hold 0 (background) or 1 (foreground/ridge).
"""
from __future__ import annotations

import numpy as np


def check_gray_image(img) -> np.ndarray:
    """Validate a grayscale raster and return it as a C-contiguous uint8 array."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"grayscale image must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("grayscale image is empty")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"grayscale image must have integer dtype, got {arr.dtype}")
    if arr.dtype != np.uint8:
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("grayscale pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return np.ascontiguousarray(arr)


def check_binary_image(img) -> np.ndarray:
    """Validate a binary raster (values 0/1) and return it as uint8."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"binary image must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("binary image is empty")
    if not np.issubdtype(arr.dtype, np.integer) and arr.dtype != np.bool_:
        raise ValueError(f"binary image must have integer or bool dtype, got {arr.dtype}")
    arr = arr.astype(np.uint8, copy=False)
    if arr.max(initial=0) > 1:
        raise ValueError("binary image may only contain 0 and 1")
    return np.ascontiguousarray(arr)


def check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")


def check_rect_inside(width: int, height: int, x0: int, y0: int, w: int, h: int) -> None:
    """Require the rectangle (x0, y0, w, h) to lie fully inside a width x height raster."""
    if w < 1 or h < 1:
        raise ValueError(f"rectangle must have positive size, got {w}x{h}")
    if x0 < 0 or y0 < 0 or x0 + w > width or y0 + h > height:
        raise ValueError(
            f"rectangle ({x0},{y0},{w},{h}) exceeds image bounds {width}x{height}"
        )
