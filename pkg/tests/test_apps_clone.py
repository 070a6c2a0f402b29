"""Seamless cloning tests, including a direct dense-solve oracle."""

import numpy as np
import pytest

from helpers import dense_clone_solve, textured
from sparsenorm.apps import CloneTask, clone_residual, seamless_clone
from sparsenorm.boxfilter import integral_image, window_counts, window_sums


def test_task_validation():
    tgt = np.zeros((8, 8))
    with pytest.raises(ValueError):
        CloneTask(source=tgt, target=tgt, mask=np.zeros((8, 8), bool))
    border = np.zeros((8, 8), bool)
    border[0, 3] = True
    with pytest.raises(ValueError):
        CloneTask(source=tgt, target=tgt, mask=border)
    off = np.zeros((8, 8), bool)
    off[3:5, 3:5] = True
    with pytest.raises(ValueError):
        CloneTask(source=np.zeros((2, 2)), target=tgt, mask=off, offset=(6, 6))


def test_source_equals_target_is_fixed_point():
    img = textured(32, 1)
    mask = np.zeros((32, 32), bool)
    mask[8:24, 8:24] = True
    task = CloneTask(source=img.copy(), target=img, mask=mask)
    for iters in (0, 1, 7):
        assert np.abs(seamless_clone(task, r=4, iters=iters) - img).max() < 1e-12


def test_constant_source_constant_target():
    src = np.full((32, 32), 0.9)
    tgt = np.full((32, 32), 0.2)
    mask = np.zeros((32, 32), bool)
    mask[10:22, 10:22] = True
    out = seamless_clone(CloneTask(source=src, target=tgt, mask=mask), r=5, iters=40)
    assert np.abs(out - 0.2).max() < 1e-6


def test_residual_nonincreasing_and_small_after_ten():
    src = textured(64, 2, base=0.6, amp=0.25)
    tgt = textured(64, 3, base=0.4, amp=0.2)
    mask = np.zeros((64, 64), bool)
    mask[20:44, 20:44] = True
    task = CloneTask(source=src, target=tgt, mask=mask)
    r = 10  # non-local: window comparable to the fill-in region
    counts = window_counts(tgt.shape, r)
    rhs = counts * src - window_sums(integral_image(src), r)
    prev = np.inf
    for iters in range(1, 11):
        res = clone_residual(task, seamless_clone(task, r=r, iters=iters), r)
        norm = np.linalg.norm(res[mask])
        assert norm <= prev + 1e-9
        prev = norm
    assert prev / np.linalg.norm(rhs[mask]) < 1e-2


def test_matches_direct_dense_solve():
    src = textured(48, 4, base=0.7, amp=0.2)
    tgt = textured(48, 5, base=0.3, amp=0.25)
    mask = np.zeros((48, 48), bool)
    mask[16:34, 14:36] = True
    task = CloneTask(source=src, target=tgt, mask=mask)
    fast = seamless_clone(task, r=9, iters=10)
    exact = dense_clone_solve(task, r=9)
    assert np.abs(fast - exact).max() < 1e-2


def test_offset_shifts_source_content():
    src = np.zeros((20, 20))
    src[:10] = 1.0  # bright top half
    tgt = np.full((40, 40), 0.5)
    mask = np.zeros((40, 40), bool)
    mask[20:28, 20:28] = True
    task = CloneTask(source=src, target=tgt, mask=mask, offset=(18, 16))
    out = seamless_clone(task, r=3, iters=10)
    assert out.shape == tgt.shape
    # the pasted window straddles the source's bright/dark boundary
    assert out[mask].std() > 1e-3


def test_color_cloning_per_channel():
    rng = np.random.default_rng(6)
    src = rng.random((24, 24, 3))
    tgt = rng.random((24, 24, 3))
    mask = np.zeros((24, 24), bool)
    mask[8:16, 8:16] = True
    task = CloneTask(source=src, target=tgt, mask=mask)
    out = seamless_clone(task, r=3, iters=8)
    for c in range(3):
        single = CloneTask(source=src[:, :, c], target=tgt[:, :, c], mask=mask)
        assert np.array_equal(out[:, :, c], seamless_clone(single, r=3, iters=8))
