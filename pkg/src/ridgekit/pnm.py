"""Binary netpbm codecs (PGM P5 for grayscale, PBM P4 for binary rasters).

Only the binary variants are supported so that round-trips are bit-exact:
the writers emit one canonical header form, and golden files stay
byte-comparable.  PBM bit 1 means foreground (ridge), MSB first within a
byte, rows padded to whole bytes.
"""
from __future__ import annotations

import numpy as np

from .validation import check_binary_image, check_gray_image, check_rect_inside


class PnmDecodeError(ValueError):
    """Raised when a PGM/PBM byte stream cannot be decoded."""


_WHITESPACE = b" \t\r\n\x0b\x0c"


def _read_token(data: bytes, pos: int, field: str) -> tuple[bytes, int]:
    # Skip whitespace and '#' comment lines, netpbm style.
    n = len(data)
    while pos < n:
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos:pos + 1] == b"#":
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE:
        pos += 1
    if start == pos:
        raise PnmDecodeError(f"truncated header: missing {field}")
    return data[start:pos], pos


def _read_int(data: bytes, pos: int, field: str) -> tuple[int, int]:
    token, pos = _read_token(data, pos, field)
    if not token.isdigit():
        raise PnmDecodeError(f"malformed {field}: {token!r}")
    return int(token), pos


def _read_header(data: bytes, magic: bytes) -> tuple[int, int, int]:
    token, pos = _read_token(data, 0, "magic")
    if token != magic:
        raise PnmDecodeError(f"unsupported magic {token!r}, expected {magic.decode()}")
    width, pos = _read_int(data, pos, "width")
    height, pos = _read_int(data, pos, "height")
    if width < 1 or height < 1:
        raise PnmDecodeError(f"invalid dimensions {width}x{height}")
    return width, height, pos


def load_pgm(data: bytes) -> np.ndarray:
    """Decode a binary PGM (P5, maxval <= 255) into a 2-D uint8 array."""
    width, height, pos = _read_header(data, b"P5")
    maxval, pos = _read_int(data, pos, "maxval")
    if maxval > 255:
        raise PnmDecodeError(f"unsupported maxval {maxval} (only 8-bit supported)")
    if maxval < 1:
        raise PnmDecodeError(f"invalid maxval {maxval}")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PnmDecodeError("malformed header: missing whitespace before payload")
    pos += 1
    payload = data[pos:pos + width * height]
    if len(payload) < width * height:
        raise PnmDecodeError(
            f"truncated payload: expected {width * height} bytes, got {len(payload)}"
        )
    img = np.frombuffer(payload, dtype=np.uint8).reshape(height, width)
    if maxval < 255 and img.max() > maxval:
        raise PnmDecodeError(f"pixel value exceeds declared maxval {maxval}")
    return img.copy()


def save_pgm(img) -> bytes:
    """Encode a grayscale raster as a canonical binary PGM (P5, maxval 255)."""
    arr = check_gray_image(img)
    height, width = arr.shape
    header = f"P5\n{width} {height}\n255\n".encode()
    return header + arr.tobytes()


def load_pbm(data: bytes) -> np.ndarray:
    """Decode a binary PBM (P4) into a 2-D uint8 array of 0/1, bit 1 = foreground."""
    width, height, pos = _read_header(data, b"P4")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PnmDecodeError("malformed header: missing whitespace before payload")
    pos += 1
    row_bytes = (width + 7) // 8
    payload = data[pos:pos + row_bytes * height]
    if len(payload) < row_bytes * height:
        raise PnmDecodeError(
            f"truncated payload: expected {row_bytes * height} bytes, got {len(payload)}"
        )
    packed = np.frombuffer(payload, dtype=np.uint8).reshape(height, row_bytes)
    bits = np.unpackbits(packed, axis=1)[:, :width]
    return np.ascontiguousarray(bits)


def save_pbm(img) -> bytes:
    """Encode a binary raster as PBM P4 (MSB first, rows padded with zero bits)."""
    arr = check_binary_image(img)
    height, width = arr.shape
    packed = np.packbits(arr, axis=1)
    header = f"P4\n{width} {height}\n".encode()
    return header + packed.tobytes()


def crop(img: np.ndarray, x0: int, y0: int, w: int, h: int) -> np.ndarray:
    """Return the exact (x0, y0, w, h) sub-raster of a gray or binary image.

    Used to restrict metrics and iteration experiments to the region of
    interest that actually covers the fingerprint.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"crop expects a 2-D image, got shape {arr.shape}")
    check_rect_inside(arr.shape[1], arr.shape[0], x0, y0, w, h)
    return arr[y0:y0 + h, x0:x0 + w].copy()
