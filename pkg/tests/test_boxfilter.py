"""Integral image and box filter tests against direct summation."""

import numpy as np
import pytest

from sparsenorm.boxfilter import box_mean, box_sum, integral_image, window_counts


def direct_window_sum(img, y, x, r):
    return img[max(0, y - r):y + r + 1, max(0, x - r):x + r + 1].sum()


def test_integral_zero_image():
    assert not integral_image(np.zeros((4, 4))).any()


def test_integral_ones_corner():
    table = integral_image(np.ones((4, 4)))
    assert table[4, 4] == 16
    assert not table[0].any() and not table[:, 0].any()


def test_integral_rejects_multichannel():
    with pytest.raises(ValueError):
        integral_image(np.zeros((4, 4, 3)))


def test_window_sums_match_direct_summation():
    rng = np.random.default_rng(10)
    img = rng.random((8, 8))
    sums, counts = box_sum(integral_image(img), 1)
    for y in range(8):
        for x in range(8):
            assert sums[y, x] == pytest.approx(direct_window_sum(img, y, x, 1), abs=1e-12)
            assert counts[y, x] == img[max(0, y - 1):y + 2, max(0, x - 1):x + 2].size


def test_box_sum_1x5_example():
    row = np.array([[0.0, 0.0, 3.0, 0.0, 0.0]])
    sums, counts = box_sum(integral_image(row), 1)
    assert np.array_equal(sums, [[0, 3, 3, 3, 0]])
    assert np.array_equal(counts, [[2, 3, 3, 3, 2]])


def test_box_sum_constant_field():
    sums, counts = box_sum(integral_image(np.full((6, 7), 0.3)), 2)
    assert np.allclose(sums, 0.3 * counts, atol=1e-12)


def test_box_sum_giant_radius_is_global_sum():
    rng = np.random.default_rng(11)
    img = rng.random((5, 9))
    sums, counts = box_sum(integral_image(img), max(img.shape))
    assert np.allclose(sums, img.sum(), atol=1e-9)
    assert np.all(counts == img.size)


def test_box_mean_1x5_example():
    assert np.allclose(box_mean(np.array([[0.0, 0.0, 3.0, 0.0, 0.0]]), 1), [[0, 1, 1, 1, 0]])


def test_box_mean_constant_unchanged():
    img = np.full((9, 9), 0.42)
    assert np.allclose(box_mean(img, 3), img, atol=1e-12)


def test_box_mean_matches_direct_mean():
    rng = np.random.default_rng(12)
    img = rng.random((16, 16))
    out = box_mean(img, 2)
    for y in range(16):
        for x in range(16):
            window = img[max(0, y - 2):y + 3, max(0, x - 2):x + 3]
            assert abs(out[y, x] - window.mean()) < 1e-9


def test_box_mean_multichannel():
    rng = np.random.default_rng(13)
    img = rng.random((8, 8, 3))
    out = box_mean(img, 2)
    for c in range(3):
        assert np.array_equal(out[:, :, c], box_mean(img[:, :, c], 2))


def test_box_mean_is_quadratic_argmin():
    # Perturbing any output value strictly increases the window's sum of
    # squared differences.
    rng = np.random.default_rng(14)
    img = rng.random((10, 10))
    out = box_mean(img, 2)
    for y, x in [(0, 0), (3, 7), (5, 5), (9, 9), (9, 0)]:
        window = img[max(0, y - 2):y + 3, max(0, x - 2):x + 3]
        e = np.sum((out[y, x] - window) ** 2)
        for delta in (0.01, -0.01):
            assert np.sum((out[y, x] + delta - window) ** 2) > e


def test_box_mean_flip_equivariance_exact():
    # Dyadic values keep all partial sums exact in float64, so flipping
    # commutes bitwise, not just within tolerance.
    rng = np.random.default_rng(15)
    img = np.floor(rng.random((12, 17)) * 1024) / 1024
    assert np.array_equal(box_mean(img[:, ::-1], 3), box_mean(img, 3)[:, ::-1])
    assert np.array_equal(box_mean(img[::-1], 3), box_mean(img, 3)[::-1])


def test_window_counts_corner_values():
    counts = window_counts((5, 5), 1)
    assert counts[0, 0] == 4 and counts[0, 2] == 6 and counts[2, 2] == 9


def test_radius_validation():
    with pytest.raises(ValueError):
        box_mean(np.zeros((4, 4)), 0)
    with pytest.raises(ValueError):
        box_sum(integral_image(np.zeros((4, 4))), -1)
