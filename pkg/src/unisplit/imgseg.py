"""Intensity-based image segmentation via valley-point splitting.

Grayscale images are treated as weighted samples of their pixel values
(0-255 quantization gives at most 256 distinct values). Valley points of the
intensity density become thresholds; pixels are recolored with their
segment's mean intensity. I/O uses binary PGM (P5) for grayscale and binary
PPM (P6) for color input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import make_dataset
from .splitting import unisplit

__all__ = ["GrayImage", "to_gray", "segment", "recolor", "read_image", "write_pgm"]


@dataclass(frozen=True)
class GrayImage:
    pixels: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ValueError("pixels must be a non-empty 2-d array")
        object.__setattr__(self, "pixels", px.astype(np.uint8))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])


def to_gray(rgb: np.ndarray) -> GrayImage:
    """Luma conversion 0.299 R + 0.587 G + 0.114 B, rounded half-up."""
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError("expected an array of RGB triplets")
    luma = 0.299 * arr[:, :, 0] + 0.587 * arr[:, :, 1] + 0.114 * arr[:, :, 2]
    return GrayImage(np.floor(luma + 0.5).astype(np.uint8))


def segment(img: GrayImage, alpha: float = 0.01) -> tuple[np.ndarray, int, list[float]]:
    """Split pixel intensities at density valleys.

    Returns (labels, k, thresholds): labels has the image shape, with segment
    index increasing with brightness; thresholds are the valley points.
    """
    flat = img.pixels.astype(np.float64).ravel()
    if np.unique(flat).size < 2:
        return np.zeros(img.pixels.shape, dtype=np.int64), 1, []
    result = unisplit(make_dataset(flat), alpha, step=1.0)
    thresholds = [float(v) for v in result.valley_points]
    labels = result.labels_for(flat).reshape(img.pixels.shape)
    return labels, result.k, thresholds


def recolor(img: GrayImage, labels: np.ndarray) -> GrayImage:
    """Replace each pixel by the rounded mean intensity of its segment."""
    labels = np.asarray(labels)
    if labels.shape != img.pixels.shape:
        raise ValueError("labels must cover all pixels")
    out = np.empty(img.pixels.shape, dtype=np.uint8)
    flat = img.pixels.astype(np.float64)
    for lab in np.unique(labels):
        mask = labels == lab
        out[mask] = np.uint8(np.floor(flat[mask].mean() + 0.5))
    return GrayImage(out)


def _read_header(data: bytes) -> tuple[bytes, list[int], int]:
    """Parse a PNM header: magic plus 3 (or 4 for color) decimal fields,
    skipping '#' comments; returns (magic, fields, offset_of_raster)."""
    if len(data) < 2:
        raise ValueError("truncated image file")
    magic = data[:2]
    fields: list[int] = []
    i = 2
    need = 3
    token = b""
    while len(fields) < need and i < len(data):
        c = data[i:i + 1]
        if c == b"#":
            while i < len(data) and data[i:i + 1] != b"\n":
                i += 1
        elif c.isspace():
            if token:
                fields.append(int(token))
                token = b""
        else:
            token += c
        i += 1
    if len(fields) < need:
        raise ValueError("truncated image header")
    return magic, fields, i


def read_image(path) -> GrayImage:
    """Read a binary PGM (P5) or PPM (P6, converted to grayscale) file."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, (width, height, maxval), offset = _read_header(data)
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported image format {magic!r}; expected binary PGM/PPM")
    if maxval <= 0 or maxval > 255:
        raise ValueError("only 8-bit images are supported")
    channels = 1 if magic == b"P5" else 3
    count = width * height * channels
    raster = np.frombuffer(data, dtype=np.uint8, count=count, offset=offset)
    if raster.size < count:
        raise ValueError("truncated image raster")
    if magic == b"P5":
        return GrayImage(raster.reshape(height, width))
    return to_gray(raster.reshape(height, width, 3).astype(np.float64))


def write_pgm(img: GrayImage, path) -> None:
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.width} {img.height}\n255\n".encode())
        fh.write(img.pixels.tobytes())
