"""Local adaptive thresholding with overlapped blocks.

The image is tiled into N x N blocks whose origins advance by
``block_size - overlap`` pixels per axis; the last block per axis is
shifted (not shrunk) so it ends at the image edge and every block keeps
exactly N*N pixels.  Each block's threshold is the floor of its mean gray
value, matching a divide-by-2^k right shift in fixed-point hardware.
A pixel covered by several blocks is owned by the block with the smallest
(y0, x0) in lexicographic order, which makes binarization deterministic.

Also provides the block-size selection score (threshold variance scaled by
the fourth root of N), a global Otsu reference thresholder, and the
two-class optimal threshold formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .validation import check_gray_image, check_rect_inside

DARK_FOREGROUND = "dark"
LIGHT_FOREGROUND = "light"

#: Block sizes scored by default when selecting N.
DEFAULT_BLOCK_CANDIDATES = (4, 16, 64, 256)


def _axis_origins(dim: int, block_size: int, overlap: int) -> tuple[int, ...]:
    """Block origins along one axis: stride block_size-overlap, last one clamped."""
    stride = block_size - overlap
    origins = list(range(0, dim - block_size + 1, stride))
    if origins[-1] + block_size < dim:
        origins.append(dim - block_size)
    return tuple(origins)


def _owner_indices(origins: Sequence[int], block_size: int, dim: int) -> np.ndarray:
    """Index of the owning (smallest-origin) block for every coordinate."""
    owner = np.full(dim, -1, dtype=np.intp)
    for idx, origin in enumerate(origins):
        view = owner[origin:min(origin + block_size, dim)]
        view[view < 0] = idx
    return owner


@dataclass(frozen=True)
class BlockGrid:
    """Tiling of a width x height image into overlapping N x N blocks."""

    width: int
    height: int
    block_size: int
    overlap: int
    x_origins: tuple[int, ...]
    y_origins: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols) of the block lattice."""
        return len(self.y_origins), len(self.x_origins)

    @cached_property
    def blocks(self) -> tuple[tuple[int, int, int, int], ...]:
        """All (x0, y0, w, h) rectangles in row-major lattice order."""
        n = self.block_size
        return tuple(
            (x0, y0, n, n) for y0 in self.y_origins for x0 in self.x_origins
        )

    @cached_property
    def owner_x(self) -> np.ndarray:
        return _owner_indices(self.x_origins, self.block_size, self.width)

    @cached_property
    def owner_y(self) -> np.ndarray:
        return _owner_indices(self.y_origins, self.block_size, self.height)


def build_block_grid(width: int, height: int, block_size: int = 16,
                     overlap: int = 1) -> BlockGrid:
    """Build the block tiling for an image of the given dimensions.

    Requires block_size >= 2, 0 <= overlap < block_size, and both image
    dimensions at least block_size.
    """
    if block_size < 2:
        raise ValueError(f"block_size must be >= 2, got {block_size}")
    if not 0 <= overlap < block_size:
        raise ValueError(f"overlap must be in [0, block_size), got {overlap}")
    if width < block_size or height < block_size:
        raise ValueError(
            f"image {width}x{height} smaller than block size {block_size}"
        )
    return BlockGrid(
        width=width,
        height=height,
        block_size=block_size,
        overlap=overlap,
        x_origins=_axis_origins(width, block_size, overlap),
        y_origins=_axis_origins(height, block_size, overlap),
    )


def block_mean_threshold(img, block: tuple[int, int, int, int]) -> int:
    """Floor of the mean gray value over one block.

    For a 16x16 block this is exactly the hardware divide-by-256 right
    shift of the pixel sum.
    """
    arr = check_gray_image(img)
    x0, y0, w, h = block
    check_rect_inside(arr.shape[1], arr.shape[0], x0, y0, w, h)
    total = int(arr[y0:y0 + h, x0:x0 + w].sum(dtype=np.int64))
    return total // (w * h)


@dataclass(frozen=True)
class ThresholdMap:
    """One threshold per grid block, laid out as a (rows, cols) array."""

    grid: BlockGrid
    thresholds: np.ndarray

    def per_pixel(self) -> np.ndarray:
        """Expand to a full-size array of each pixel's owner-block threshold."""
        g = self.grid
        return self.thresholds[np.ix_(g.owner_y, g.owner_x)]


def threshold_map(img, grid: BlockGrid) -> ThresholdMap:
    """Compute the floor-mean threshold of every block in the grid."""
    arr = check_gray_image(img)
    if (arr.shape[1], arr.shape[0]) != (grid.width, grid.height):
        raise ValueError(
            f"grid built for {grid.width}x{grid.height}, "
            f"image is {arr.shape[1]}x{arr.shape[0]}"
        )
    n = grid.block_size
    area = n * n
    rows, cols = grid.shape
    out = np.empty((rows, cols), dtype=np.int16)
    for iy, y0 in enumerate(grid.y_origins):
        for ix, x0 in enumerate(grid.x_origins):
            total = int(arr[y0:y0 + n, x0:x0 + n].sum(dtype=np.int64))
            out[iy, ix] = total // area
    return ThresholdMap(grid=grid, thresholds=out)


def binarize(img, tmap: ThresholdMap, polarity: str = DARK_FOREGROUND) -> np.ndarray:
    """Threshold a grayscale image against its owner-block thresholds.

    ``light`` marks pixels strictly above the threshold as foreground;
    ``dark`` marks pixels at or below it (ridges are dark in standard
    fingerprint scans, so dark is the default).  The two polarities are
    exact bitwise complements of each other.
    """
    arr = check_gray_image(img)
    if (arr.shape[1], arr.shape[0]) != (tmap.grid.width, tmap.grid.height):
        raise ValueError("threshold map does not cover this image")
    t = tmap.per_pixel()
    if polarity == LIGHT_FOREGROUND:
        bits = arr.astype(np.int16) > t
    elif polarity == DARK_FOREGROUND:
        bits = arr.astype(np.int16) <= t
    else:
        raise ValueError(f"polarity must be 'dark' or 'light', got {polarity!r}")
    return bits.astype(np.uint8)


@dataclass(frozen=True)
class ClassStats:
    """Two-class pixel statistics: means, common variance, class priors."""

    mu1: float
    mu2: float
    sigma2: float
    p1: float
    p2: float

    def __post_init__(self):
        if self.p1 <= 0 or self.p2 <= 0:
            raise ValueError("class probabilities must be positive")
        if abs(self.p1 + self.p2 - 1.0) > 1e-9:
            raise ValueError(f"class probabilities must sum to 1, got {self.p1 + self.p2}")
        if self.sigma2 < 0:
            raise ValueError("variance must be nonnegative")


def optimal_threshold(stats: ClassStats) -> float:
    """Minimum-misclassification threshold between two Gaussian pixel classes.

    T = (mu1 + mu2)/2 + sigma^2/(mu1 - mu2) * ln(p1/p2).  With equal
    priors the log term vanishes and T reduces to the midpoint of the two
    class means, which is what the per-block mean threshold approximates.
    """
    if stats.mu1 == stats.mu2:
        raise ValueError("class means must differ (division by zero otherwise)")
    midpoint = 0.5 * (stats.mu1 + stats.mu2)
    return midpoint + (stats.sigma2 / (stats.mu1 - stats.mu2)) * math.log(stats.p1 / stats.p2)


FACTOR_MULTIPLY = "mul"
FACTOR_DIVIDE = "div"


def block_factor(img, block_size: int, mode: str = FACTOR_MULTIPLY) -> tuple[float, float]:
    """Score one candidate block size N.

    Tiles the image with non-overlapping N x N blocks (edge blocks
    clamped), takes the population variance of the block thresholds, and
    combines it with the fourth root of N.  ``mul`` (the default) uses
    variance * N^(1/4); ``div`` uses variance / N^(1/4).  Returns
    (variance, factor).
    """
    arr = check_gray_image(img)
    grid = build_block_grid(arr.shape[1], arr.shape[0], block_size, overlap=0)
    tmap = threshold_map(arr, grid)
    sigma2 = float(np.var(tmap.thresholds.astype(np.float64)))
    root = block_size ** 0.25
    if mode == FACTOR_MULTIPLY:
        factor = sigma2 * root
    elif mode == FACTOR_DIVIDE:
        factor = sigma2 / root
    else:
        raise ValueError(f"mode must be 'mul' or 'div', got {mode!r}")
    return sigma2, factor


@dataclass(frozen=True)
class BlockFactorReport:
    """Scores for each candidate block size and the winning N."""

    mode: str
    candidates: tuple[tuple[int, float, float], ...]  # (N, variance, factor)
    selected: int


def select_block_size(img, candidates: Iterable[int] = DEFAULT_BLOCK_CANDIDATES,
                      mode: str = FACTOR_MULTIPLY) -> BlockFactorReport:
    """Score every candidate N and pick the factor argmax (ties -> smaller N)."""
    ns = sorted(set(int(n) for n in candidates))
    if not ns:
        raise ValueError("no block size candidates given")
    rows = []
    best_n = None
    best_factor = -math.inf
    for n in ns:
        sigma2, factor = block_factor(img, n, mode)
        rows.append((n, sigma2, factor))
        if factor > best_factor:
            best_factor = factor
            best_n = n
    return BlockFactorReport(mode=mode, candidates=tuple(rows), selected=best_n)


def gray_histogram(img) -> np.ndarray:
    """256-bin histogram of an 8-bit grayscale image."""
    arr = check_gray_image(img)
    return np.bincount(arr.ravel(), minlength=256).astype(np.int64)


def otsu_threshold(hist) -> int:
    """Global Otsu threshold over a 256-bin histogram.

    Returns the t in [0, 255] maximizing the between-class variance of the
    split {<= t} / {> t}; the smallest maximizing t wins ties.  The
    comparison is done in exact integer arithmetic: for class sums s0, s1
    and weights w0, w1 the between-class variance is proportional to
    (s0*w1 - s1*w0)^2 / (w0*w1), and fractions are compared by
    cross-multiplication.
    """
    h = [int(v) for v in hist]
    if len(h) != 256:
        raise ValueError(f"histogram must have 256 bins, got {len(h)}")
    if any(v < 0 for v in h):
        raise ValueError("histogram counts must be nonnegative")
    total = sum(h)
    if total == 0:
        raise ValueError("histogram is empty")
    total_sum = sum(i * v for i, v in enumerate(h))

    best_t = 0
    best_num = 0  # (s0*w1 - s1*w0)^2
    best_den = 1  # w0*w1
    w0 = 0
    s0 = 0
    for t in range(256):
        w0 += h[t]
        s0 += t * h[t]
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        s1 = total_sum - s0
        num = (s0 * w1 - s1 * w0) ** 2
        den = w0 * w1
        if num * best_den > best_num * den:
            best_num, best_den, best_t = num, den, t
    return best_t


def otsu_binarize(img, polarity: str = DARK_FOREGROUND) -> np.ndarray:
    """Binarize with a single global Otsu threshold (the reference method)."""
    arr = check_gray_image(img)
    t = otsu_threshold(gray_histogram(arr))
    if polarity == LIGHT_FOREGROUND:
        bits = arr > t
    elif polarity == DARK_FOREGROUND:
        bits = arr <= t
    else:
        raise ValueError(f"polarity must be 'dark' or 'light', got {polarity!r}")
    return bits.astype(np.uint8)
