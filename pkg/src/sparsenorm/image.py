"""Image containers, file I/O, color transforms and quantization grids.

Images are plain numpy arrays in float64: ``(H, W)`` for a single channel,
``(H, W, 3)`` for color.  LDR images live in [0, 1]; HDR images carry
positive luminance values of arbitrary magnitude.  All functions here are
pure: they never mutate their inputs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import cv2
import numpy as np

IRLS = "irls"
BRUTE_FORCE = "bruteforce"

# BT.601 luma plus scaled B-Y / R-Y chroma.  The chroma rows are built from
# the luma row and the inverse is derived numerically, so the pair is an
# exact linear bijection and gray inputs land on (v, 0, 0).
_LUMA = np.array([0.299, 0.587, 0.114])
_YUV_FROM_RGB = np.vstack(
    [
        _LUMA,
        0.492 * (np.array([0.0, 0.0, 1.0]) - _LUMA),
        0.877 * (np.array([1.0, 0.0, 0.0]) - _LUMA),
    ]
)
_RGB_FROM_YUV = np.linalg.inv(_YUV_FROM_RGB)


@dataclass(frozen=True)
class FilterParams:
    """Parameter bundle for the sparse-norm filter.

    p           norm exponent, 0 < p <= 2
    r           square window radius in pixels (window is (2r+1)^2)
    bins        quantization bin count for the accelerated paths
    eps         smoothing constant guarding the p-2 power at zero difference
    iterations  number of filtering rounds (diffusion steps)
    strategy    "irls" (weighted average) or "bruteforce" (quantized argmin)
    spatial_sigma  optional Gaussian distance weighting; None = uniform window
    per_channel    filter RGB channels independently instead of luma only
    """

    p: float
    r: int
    bins: int = 32
    eps: float = 1.0 / 255.0
    iterations: int = 1
    strategy: str = IRLS
    spatial_sigma: float | None = None
    per_channel: bool = False

    def __post_init__(self):
        if not 0.0 < self.p <= 2.0:
            raise ValueError(f"p must be in (0, 2], got {self.p}")
        if self.r < 1:
            raise ValueError(f"radius must be >= 1, got {self.r}")
        if self.bins < 2:
            raise ValueError(f"bin count must be >= 2, got {self.bins}")
        if self.eps <= 0.0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.strategy not in (IRLS, BRUTE_FORCE):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.spatial_sigma is not None and self.spatial_sigma <= 0.0:
            raise ValueError("spatial_sigma must be positive when set")


def make_quant_grid(bins):
    """Uniform grid of ``bins`` intensity levels covering [0, 1].

    Levels are computed as b/(bins-1) with the same float division used by
    the LDR loaders, so a grid with bins=256 contains every normalized 8-bit
    code value exactly.
    """
    if bins < 2:
        raise ValueError(f"bin count must be >= 2, got {bins}")
    return np.arange(bins, dtype=np.float64) / (bins - 1)


def load_image(path, kind="ldr"):
    """Load an image file as a float64 array.

    LDR accepts 8/16-bit PNG and binary PGM/PPM; code values are divided by
    the full-scale code (255 or 65535) into [0, 1].  HDR accepts PFM and is
    read as raw reals.  Color images come back as (H, W, 3) RGB; an alpha
    channel, if present, is dropped.
    """
    path = os.fspath(path)
    if kind == "hdr":
        return _read_pfm(path)
    if kind != "ldr":
        raise ValueError(f"kind must be 'ldr' or 'hdr', got {kind!r}")

    arr = cv2.imread(path, cv2.IMREAD_UNCHANGED)
    if arr is None:
        raise IOError(f"cannot read image file: {path}")
    if arr.dtype == np.uint8:
        scale = 255.0
    elif arr.dtype == np.uint16:
        scale = 65535.0
    else:
        raise ValueError(f"unsupported LDR bit depth {arr.dtype} in {path}")
    if arr.ndim == 3:
        if arr.shape[2] == 4:
            arr = arr[:, :, :3]
        arr = arr[:, :, ::-1]  # BGR -> RGB
    return np.ascontiguousarray(arr, dtype=np.float64) / scale


def save_image(img, path, kind="ldr", bits=8):
    """Write an image to disk.

    LDR output clamps to [0, 1] and rounds to 8- or 16-bit codes; format
    follows the file extension (.png/.pgm/.ppm).  HDR output writes a
    little-endian PFM with the raw values.
    """
    path = os.fspath(path)
    img = np.asarray(img, dtype=np.float64)
    if kind == "hdr":
        _write_pfm(path, img)
        return
    if kind != "ldr":
        raise ValueError(f"kind must be 'ldr' or 'hdr', got {kind!r}")
    if bits == 8:
        full, dtype = 255.0, np.uint8
    elif bits == 16:
        full, dtype = 65535.0, np.uint16
    else:
        raise ValueError(f"LDR bit depth must be 8 or 16, got {bits}")
    codes = np.rint(np.clip(img, 0.0, 1.0) * full).astype(dtype)
    if codes.ndim == 3:
        codes = np.ascontiguousarray(codes[:, :, ::-1])  # RGB -> BGR
    if not cv2.imwrite(path, codes):
        raise IOError(f"cannot write image file: {path}")


def _read_pfm(path):
    with open(path, "rb") as fh:
        header = fh.readline().strip()
        if header == b"PF":
            channels = 3
        elif header == b"Pf":
            channels = 1
        else:
            raise ValueError(f"not a PFM file: {path}")
        dims = fh.readline().split()
        width, height = int(dims[0]), int(dims[1])
        scale = float(fh.readline())
        endian = "<" if scale < 0 else ">"
        count = width * height * channels
        raw = fh.read(count * 4)
        if len(raw) != count * 4:
            raise IOError(f"truncated PFM payload in {path}")
    data = np.frombuffer(raw, dtype=endian + "f4").astype(np.float64)
    shape = (height, width, channels) if channels == 3 else (height, width)
    # PFM scanlines are stored bottom-to-top.
    return data.reshape(shape)[::-1].copy()


def _write_pfm(path, img):
    if img.ndim == 3 and img.shape[2] == 3:
        header = b"PF"
    elif img.ndim == 2:
        header = b"Pf"
    else:
        raise ValueError(f"PFM expects 1 or 3 channels, got shape {img.shape}")
    height, width = img.shape[:2]
    payload = np.ascontiguousarray(img[::-1], dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(header + b"\n")
        fh.write(f"{width} {height}\n".encode())
        fh.write(b"-1.0\n")  # negative scale = little-endian
        fh.write(payload.tobytes())


def rgb_to_yuv(img):
    """Luma/chroma transform (BT.601).  Input must be (H, W, 3)."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"rgb_to_yuv expects (H, W, 3), got shape {img.shape}")
    return img @ _YUV_FROM_RGB.T


def yuv_to_rgb(img):
    """Exact inverse of :func:`rgb_to_yuv`."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"yuv_to_rgb expects (H, W, 3), got shape {img.shape}")
    return img @ _RGB_FROM_YUV.T


def luminance(img):
    """BT.601 luma of a color image, or the image itself if single channel."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 2:
        return img
    return img @ _YUV_FROM_RGB[0]
