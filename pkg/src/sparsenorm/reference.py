"""Slow, independently coded ground-truth filters for testing and baselines.

Everything here favors being obviously correct over being fast: windows are
sliced and summed directly, medians are sorted, and nothing is shared with
the accelerated paths in :mod:`sparsenorm.core` or
:mod:`sparsenorm.boxfilter`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BilateralParams:
    sigma_s: float
    sigma_r: float
    r: int

    def __post_init__(self):
        if self.sigma_s <= 0 or self.sigma_r <= 0 or self.r <= 0:
            raise ValueError("bilateral parameters must be positive")


def _window(img, y, x, r):
    return img[max(0, y - r):y + r + 1, max(0, x - r):x + r + 1]


def energy_at(img, pixel, v, p, r):
    """Window energy sum |v - I_j|^p at one pixel, by direct summation.

    This is the ground truth every argmin test is checked against.
    """
    img = np.asarray(img, dtype=np.float64)
    y, x = pixel
    if not (0 <= y < img.shape[0] and 0 <= x < img.shape[1]):
        raise IndexError(f"pixel {pixel} outside image of shape {img.shape}")
    return float(np.sum(np.abs(v - _window(img, y, x, r)) ** p))


def median_filter(img, r):
    """Sorting median over the clipped window; lower median on even counts."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        return np.dstack([median_filter(img[:, :, c], r) for c in range(img.shape[2])])
    out = np.empty_like(img)
    h, w = img.shape
    for y in range(h):
        for x in range(w):
            values = np.sort(_window(img, y, x, r), axis=None)
            out[y, x] = values[(values.size - 1) // 2]
    return out


def bilateral_filter(img, bp):
    """Classic bilateral filter, evaluated pixel by pixel.

    Weights are exp(-dist^2 / 2 sigma_s^2) * exp(-(I_j - I_i)^2 / 2 sigma_r^2)
    over the clipped square window of radius ``bp.r``.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        return np.dstack([bilateral_filter(img[:, :, c], bp) for c in range(img.shape[2])])
    h, w = img.shape
    out = np.empty_like(img)
    offsets = np.arange(-bp.r, bp.r + 1)
    dist2 = offsets[:, None] ** 2 + offsets[None, :] ** 2
    spatial = np.exp(-dist2 / (2.0 * bp.sigma_s**2))
    for y in range(h):
        ys = slice(max(0, y - bp.r), min(h, y + bp.r + 1))
        ky = slice(ys.start - y + bp.r, ys.stop - y + bp.r)
        for x in range(w):
            xs = slice(max(0, x - bp.r), min(w, x + bp.r + 1))
            kx = slice(xs.start - x + bp.r, xs.stop - x + bp.r)
            window = img[ys, xs]
            wt = spatial[ky, kx] * np.exp(-((window - img[y, x]) ** 2) / (2.0 * bp.sigma_r**2))
            out[y, x] = np.sum(wt * window) / np.sum(wt)
    return out


def _grad_transfer(shape):
    """Fourier symbol of grad^T grad for periodic forward differences."""
    h, w = shape
    fy = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(h) / h)
    fx = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(w) / w)
    return fy[:, None] + fx[None, :]


def tikhonov_filter(img, lam):
    """Quadratic smoothing: solve (Id + lam * grad^T grad) B = I.

    Periodic boundary makes the operator diagonal in frequency space, so
    the solve is a single FFT division and the result can be checked by
    plugging back into the operator.
    """
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    img = np.asarray(img, dtype=np.float64)
    if img.ndim == 3:
        return np.dstack([tikhonov_filter(img[:, :, c], lam) for c in range(img.shape[2])])
    denom = 1.0 + lam * _grad_transfer(img.shape)
    return np.real(np.fft.ifft2(np.fft.fft2(img) / denom))


def psf_to_otf(kernel, shape):
    """Fourier transform of a centered point-spread function on a grid."""
    kernel = np.asarray(kernel, dtype=np.float64)
    kh, kw = kernel.shape
    padded = np.zeros(shape)
    padded[:kh, :kw] = kernel
    padded = np.roll(padded, (-(kh // 2), -(kw // 2)), axis=(0, 1))
    return np.fft.fft2(padded)


def tikhonov_deconvolve(obs, kernel, lam):
    """Quadratic-prior deconvolution baseline (periodic boundary).

    Minimizes ||k (x) I - obs||^2 + lam * ||grad I||^2 in closed form.
    """
    obs = np.asarray(obs, dtype=np.float64)
    if obs.ndim == 3:
        return np.dstack(
            [tikhonov_deconvolve(obs[:, :, c], kernel, lam) for c in range(obs.shape[2])]
        )
    otf = psf_to_otf(kernel, obs.shape)
    denom = np.abs(otf) ** 2 + lam * _grad_transfer(obs.shape) + 1e-12
    return np.real(np.fft.ifft2(np.conj(otf) * np.fft.fft2(obs) / denom))
