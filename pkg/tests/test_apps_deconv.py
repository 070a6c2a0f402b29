"""Deconvolution tests: shrinkage oracle, kernel I/O, and recovery."""

import numpy as np
import pytest

from sparsenorm import FilterParams
from sparsenorm.apps import (
    DECONV_PARAMS,
    deconvolve_snf,
    edge_taper,
    load_kernel,
    normalize_kernel,
    shrink,
)
from sparsenorm.reference import psf_to_otf, tikhonov_deconvolve

EPS = 1.0 / 255.0


def gaussian_kernel(radius, sigma):
    yy, xx = np.mgrid[-radius:radius + 1, -radius:radius + 1]
    k = np.exp(-(yy**2 + xx**2) / (2 * sigma**2))
    return k / k.sum()


def periodic_blur(img, kernel):
    return np.real(np.fft.ifft2(np.fft.fft2(img) * psf_to_otf(kernel, img.shape)))


def test_preset_settings():
    assert (DECONV_PARAMS.p, DECONV_PARAMS.r) == (0.5, 5)


def test_shrink_analytic_cases():
    t = np.array([-0.5, -0.01, 0.0, 0.02, 0.8])
    beta, c = 4.0, 0.1
    soft = np.sign(t) * np.maximum(np.abs(t) - c / (2 * beta), 0.0)
    assert np.allclose(shrink(t, beta, c, 1.0, EPS), soft, atol=1e-12)
    assert np.allclose(shrink(t, beta, c, 2.0, EPS), beta * t / (beta + c), atol=1e-12)
    assert np.array_equal(shrink(t, beta, 0.0, 0.5, EPS), t)


def test_shrink_beats_grid_search():
    rng = np.random.default_rng(61)
    for _ in range(200):
        t = rng.uniform(-1, 1)
        beta = 10 ** rng.uniform(0, 2.5)
        c = 10 ** rng.uniform(-4, 0)
        p = rng.uniform(0.1, 1.9)
        v = float(shrink(np.array([t]), beta, c, p, EPS)[0])
        obj = lambda u: beta * (u - t) ** 2 + c * (u * u + EPS * EPS) ** (p / 2)  # noqa: E731
        grid = np.linspace(-abs(t), abs(t), 2001)
        assert obj(v) <= obj(grid).min() + 1e-6


def test_kernel_loading_and_validation(tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("1 2 1\n2 4 2\n1 2 1\n")
    k = load_kernel(path)
    assert k.shape == (3, 3) and k.sum() == pytest.approx(1.0, abs=1e-12)
    assert k[1, 1] == pytest.approx(0.25)
    with pytest.raises(ValueError):
        normalize_kernel(np.ones((2, 3)))  # even side
    with pytest.raises(ValueError):
        normalize_kernel(np.array([[1.0, -1.0, 1.0]]))
    with pytest.raises(ValueError):
        normalize_kernel(np.zeros((3, 3)))


def test_deconvolve_rejects_unnormalized_kernel():
    with pytest.raises(ValueError):
        deconvolve_snf(np.zeros((16, 16)), np.ones((3, 3)), 0.1)


def test_identity_kernel_lambda_zero_returns_observation():
    rng = np.random.default_rng(62)
    obs = rng.random((24, 24))
    ident = np.zeros((3, 3))
    ident[1, 1] = 1.0
    for lam in (0.0, 1e-10):
        assert np.abs(deconvolve_snf(obs, ident, lam) - obs).max() < 1e-6


def test_lambda_zero_inverts_nullfree_blur():
    rng = np.random.default_rng(63)
    truth = rng.random((32, 32))
    kernel = np.outer([1, 4, 1], [1, 4, 1]) / 36.0
    obs = periodic_blur(truth, kernel)
    out = deconvolve_snf(obs, kernel, 0.0, taper=False)
    assert np.abs(out - truth).max() < 1e-6


def test_edge_taper_blends_borders_only():
    rng = np.random.default_rng(64)
    img = rng.random((32, 32))
    kernel = gaussian_kernel(3, 1.2)
    tapered = edge_taper(img, kernel)
    assert np.array_equal(tapered[10:-10, 10:-10], img[10:-10, 10:-10])
    assert not np.array_equal(tapered[0], img[0])


def test_sparse_prior_beats_quadratic_prior():
    rng = np.random.default_rng(65)
    truth = np.full((64, 64), 0.5)
    for _ in range(8):
        y0, x0 = rng.integers(0, 48, 2)
        h0, w0 = rng.integers(8, 24, 2)
        truth[y0:y0 + h0, x0:x0 + w0] = rng.random()
    kernel = gaussian_kernel(3, 1.2)
    obs = periodic_blur(truth, kernel) + 0.01 * rng.standard_normal(truth.shape)
    rmse = lambda a: float(np.sqrt(np.mean((a - truth) ** 2)))  # noqa: E731
    lams = [1e-4, 1e-3, 1e-2, 1e-1, 1.0]
    pr = FilterParams(p=0.5, r=3)
    best_snf = min(rmse(deconvolve_snf(obs, kernel, lam, pr)) for lam in lams)
    best_tik = min(rmse(tikhonov_deconvolve(obs, kernel, lam)) for lam in lams)
    assert best_snf < best_tik
    assert best_snf < rmse(obs)


def test_color_deconvolution_shapes():
    rng = np.random.default_rng(66)
    truth = rng.random((24, 24, 3))
    kernel = gaussian_kernel(2, 1.0)
    obs = np.dstack([periodic_blur(truth[:, :, c], kernel) for c in range(3)])
    out = deconvolve_snf(obs, kernel, 1e-3, FilterParams(p=0.5, r=2))
    assert out.shape == truth.shape
