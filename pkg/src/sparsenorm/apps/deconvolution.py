"""Non-blind deconvolution with a window-gradient sparse-norm prior.

The data term ||k (x) I - obs||^2 is paired with a penalty on every
difference between a pixel and its window neighbors.  Half-quadratic
splitting introduces one auxiliary field per window offset: the v-step is
an independent scalar shrinkage per element, the I-step a single
frequency-domain quadratic solve (every offset difference is a periodic
convolution).  The coupling weight beta doubles each sweep.
"""

from __future__ import annotations

import numpy as np

from ..image import FilterParams
from ..reference import psf_to_otf

DECONV_PARAMS = FilterParams(p=0.5, r=5)
DEFAULT_BETAS = tuple(2.0**k for k in range(9))


def load_kernel(path):
    """Read a plain-text kernel grid (rows of reals) and normalize it."""
    kernel = np.atleast_2d(np.loadtxt(path, dtype=np.float64))
    return normalize_kernel(kernel)


def normalize_kernel(kernel):
    """Validate an odd-sized non-negative kernel and scale its sum to 1."""
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2 or kernel.shape[0] % 2 == 0 or kernel.shape[1] % 2 == 0:
        raise ValueError(f"kernel must be odd-sized 2D, got shape {kernel.shape}")
    if np.any(kernel < 0.0):
        raise ValueError("kernel taps must be non-negative")
    total = kernel.sum()
    if total <= 0.0:
        raise ValueError("kernel sum must be positive")
    return kernel / total


def _check_kernel(kernel):
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.ndim != 2 or kernel.shape[0] % 2 == 0 or kernel.shape[1] % 2 == 0:
        raise ValueError(f"kernel must be odd-sized 2D, got shape {kernel.shape}")
    if np.any(kernel < 0.0) or abs(kernel.sum() - 1.0) > 1e-9:
        raise ValueError("kernel must be normalized (non-negative taps summing to 1)")
    return kernel


def edge_taper(obs, kernel):
    """Blend image borders toward their blurred version.

    Softens the wrap-around seam assumed by the periodic-boundary solver
    when the scene is not actually periodic.
    """
    obs = np.asarray(obs, dtype=np.float64)
    if obs.ndim == 3:
        return np.dstack([edge_taper(obs[:, :, c], kernel) for c in range(obs.shape[2])])
    kernel = np.asarray(kernel, dtype=np.float64)
    h, w = obs.shape

    def ramp(n, t):
        t = min(t, n // 2)
        win = np.ones(n)
        if t > 0:
            rise = 0.5 * (1.0 - np.cos(np.pi * (np.arange(t) + 0.5) / t))
            win[:t] = rise
            win[-t:] = rise[::-1]
        return win

    alpha = ramp(h, kernel.shape[0])[:, None] * ramp(w, kernel.shape[1])[None, :]
    blurred = np.real(np.fft.ifft2(np.fft.fft2(obs) * psf_to_otf(kernel, obs.shape)))
    return alpha * obs + (1.0 - alpha) * blurred


def shrink(t, beta, c, p, eps):
    """Per-element minimizer of beta*(v - t)^2 + c*|v|^p.

    Soft threshold at p = 1, plain scaling at p = 2.  Other exponents make
    the eps-smoothed objective non-convex (up to two local minima in
    [0, |t|]), so the minimizer is located by a coarse seed grid followed
    by step-clamped Newton polish.
    """
    t = np.asarray(t, dtype=np.float64)
    if c == 0.0:
        return t.copy()
    if p == 1.0:
        return np.sign(t) * np.maximum(np.abs(t) - c / (2.0 * beta), 0.0)
    if p == 2.0:
        return beta * t / (beta + c)

    a = np.abs(t)
    e2 = eps * eps

    def objective(v):
        return beta * (v - a) ** 2 + c * (v * v + e2) ** (p / 2.0)

    best_v = np.zeros_like(a)
    best_val = objective(best_v)
    for s in np.linspace(1.0 / 16.0, 1.0, 16):
        cand = s * a
        val = objective(cand)
        take = val < best_val
        best_val = np.where(take, val, best_val)
        best_v = np.where(take, cand, best_v)
    v = best_v
    max_step = a / 16.0 + 1e-30
    for _ in range(20):
        base = v * v + e2
        grad = 2.0 * beta * (v - a) + c * p * v * base ** ((p - 2.0) / 2.0)
        curv = 2.0 * beta + c * p * base ** ((p - 4.0) / 2.0) * (e2 + (p - 1.0) * v * v)
        step = grad / np.maximum(np.abs(curv), 2.0 * beta)
        v = np.clip(v - np.clip(step, -max_step, max_step), 0.0, a)
    improved = objective(v) <= best_val
    return np.sign(t) * np.where(improved, v, best_v)


def deconvolve_snf(obs, kernel, lam, params=DECONV_PARAMS, betas=DEFAULT_BETAS, taper=True):
    """Deconvolve a blurry observation under a sparse window-gradient prior.

    ``lam`` balances the prior against the data term (scaled by the window
    population, so it is radius-independent); ``betas`` is the ascending
    splitting schedule, one v/I sweep per value.  A zero ``lam`` degenerates
    to the plain frequency-domain inverse of the kernel.
    """
    kernel = _check_kernel(kernel)
    obs = np.asarray(obs, dtype=np.float64)
    if obs.ndim == 3:
        return np.dstack(
            [deconvolve_snf(obs[:, :, c], kernel, lam, params, betas, taper)
             for c in range(obs.shape[2])]
        )
    if lam < 0.0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if taper:
        obs = edge_taper(obs, kernel)

    otf = psf_to_otf(kernel, obs.shape)
    obs_hat = np.fft.fft2(obs)
    if lam == 0.0:
        return np.real(np.fft.ifft2(np.conj(otf) * obs_hat / (np.abs(otf) ** 2 + 1e-12)))

    h, w = obs.shape
    r = params.r
    offsets = [(dy, dx) for dy in range(-r, r + 1) for dx in range(-r, r + 1) if (dy, dx) != (0, 0)]
    c = lam / float((2 * r + 1) ** 2)

    # 1D shift factors; the transfer of I - shift_d(I) is built per offset.
    row_phase = {d: np.exp(2j * np.pi * np.fft.fftfreq(h) * d) for d in range(-r, r + 1)}
    col_phase = {d: np.exp(2j * np.pi * np.fft.fftfreq(w) * d) for d in range(-r, r + 1)}
    sum_d2 = np.zeros((h, w))
    for dy, dx in offsets:
        sum_d2 += np.abs(1.0 - row_phase[dy][:, None] * col_phase[dx][None, :]) ** 2

    data_num = np.conj(otf) * obs_hat
    data_den = np.abs(otf) ** 2
    img = obs.copy()
    for beta in betas:
        # Coupling scales with the prior weight c so the data term keeps its
        # say in the I-step; beta -> inf then enforces v = difference exactly.
        couple = c * beta
        acc = np.zeros((h, w), dtype=np.complex128)
        for dy, dx in offsets:
            diff = img - np.roll(img, (-dy, -dx), axis=(0, 1))
            v = shrink(diff, beta, 1.0, params.p, params.eps)
            transfer = 1.0 - row_phase[dy][:, None] * col_phase[dx][None, :]
            acc += np.conj(transfer) * np.fft.fft2(v)
        img = np.real(np.fft.ifft2((data_num + couple * acc) / (data_den + couple * sum_d2)))
    return img
