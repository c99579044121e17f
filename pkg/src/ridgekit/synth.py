"""Deterministic synthetic fingerprint-like test images.

Real scans cannot be redistributed, so the bundled corpus is generated:
a whorl/loop ridge pattern (period 8..12 px, matching the ridge-frequency
range of 500 dpi scans) under smooth uneven illumination, a lighter
background outside the finger oval, and mild sensor noise.  Images are
reproducible from (width, height, seed) alone.

Run ``python -m ridgekit.synth out.pgm --seed 3`` to write a sample.
"""
from __future__ import annotations

import argparse

import numpy as np

from .pnm import save_pgm

#: Seeds of the bundled evaluation corpus.
CORPUS_SEEDS = (1, 2, 3, 4, 5)


def _box_blur(field: np.ndarray, radius: int) -> np.ndarray:
    """Separable box blur via padded cumulative sums."""
    size = 2 * radius + 1
    for axis in (0, 1):
        pad = [(0, 0), (0, 0)]
        pad[axis] = (radius + 1, radius)
        padded = np.pad(field, pad, mode="edge")
        csum = padded.cumsum(axis=axis)
        if axis == 0:
            field = (csum[size:, :] - csum[:-size, :]) / size
        else:
            field = (csum[:, size:] - csum[:, :-size]) / size
    return field


def synthetic_fingerprint(width: int = 512, height: int = 512, seed: int = 0,
                          ridge_period: float | None = None) -> np.ndarray:
    """Generate one grayscale fingerprint-like image (dark ridges)."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)

    cx = width / 2 + rng.uniform(-width / 10, width / 10)
    cy = height / 2 + rng.uniform(-height / 10, height / 10)
    dx = xx - cx
    dy = yy - cy
    r = np.hypot(dx, dy)
    theta = np.arctan2(dy, dx)

    if ridge_period is None:
        ridge_period = rng.uniform(7.6, 8.6)
    swirl = rng.uniform(-2.0, 2.0)

    # Low-frequency phase wobble bends the ridges so they are not circles.
    wobble = np.zeros_like(xx)
    for _ in range(3):
        kx = rng.uniform(-1, 1) / rng.uniform(90, 180)
        ky = rng.uniform(-1, 1) / rng.uniform(90, 180)
        amp = rng.uniform(1.0, 2.5)
        wobble += amp * np.sin(2 * np.pi * (kx * xx + ky * yy) + rng.uniform(0, 2 * np.pi))

    phase = 2 * np.pi * r / ridge_period + swirl * theta + wobble
    ridges = np.cos(phase)

    # Finger oval: ridge contrast fades out, background lightens slightly.
    ax = width * rng.uniform(0.58, 0.66)
    ay = height * rng.uniform(0.62, 0.70)
    d2 = (dx / ax) ** 2 + (dy / ay) ** 2
    envelope = np.clip(1.0 - np.maximum(d2 - 0.55, 0.0) * 3.0, 0.0, 1.0)

    # Uneven press/illumination: smooth blobs a few ridge periods wide plus a
    # weak linear gradient.  Their scale sits between the 16 px and 64 px
    # block sizes, which is what makes 16 px thresholds track them best.
    illum = np.zeros_like(xx)
    blob_count = max(16, (width * height) // 5200)
    for _ in range(blob_count):
        bx = rng.uniform(0, width)
        by = rng.uniform(0, height)
        sigma = rng.uniform(22, 29)
        amp = rng.uniform(36, 72) * rng.choice((-1.0, 1.0))
        illum += amp * np.exp(-((xx - bx) ** 2 + (yy - by) ** 2) / (2 * sigma ** 2))
    illum += rng.uniform(-8, 8) * (xx - width / 2) / width
    illum += rng.uniform(-8, 8) * (yy - height / 2) / height

    contrast = 30.0
    gray = 150.0 + illum - contrast * envelope * ridges + 10.0 * (1.0 - envelope)
    gray += rng.normal(0.0, 4.0, gray.shape)
    gray = _box_blur(gray, 1)
    return np.clip(np.rint(gray), 0, 255).astype(np.uint8)


def corpus(width: int = 512, height: int = 512) -> list[np.ndarray]:
    """The bundled deterministic evaluation corpus."""
    return [synthetic_fingerprint(width, height, seed) for seed in CORPUS_SEEDS]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="write a synthetic fingerprint PGM")
    parser.add_argument("output")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--width", type=int, default=512)
    parser.add_argument("--height", type=int, default=512)
    args = parser.parse_args(argv)
    img = synthetic_fingerprint(args.width, args.height, args.seed)
    with open(args.output, "wb") as fh:
        fh.write(save_pgm(img))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
