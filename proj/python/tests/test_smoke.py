import math

import numpy as np
import pytest

import srgf


def test_bypass_round_trip_is_exact():
    rays, disp = srgf.layered_scene((2, 2, 24, 24), layers=2, seed=3)
    data = srgf.encode(rays, disp, q=0, superrays=12)
    out, depth = srgf.decode(data)
    assert depth == 8
    assert out.shape == (2, 2, 24, 24)
    np.testing.assert_array_equal(out, rays)
    assert math.isinf(srgf.psnr(rays, out))


def test_separable_unit_step_is_quasi_lossless():
    rays, disp = srgf.textured_plane((3, 3, 32, 32), disparity=0.5, seed=2)
    data = srgf.encode(rays, disp, mode="separable", q=1.0, superrays=40)
    out, _ = srgf.decode(data)
    assert srgf.psnr(rays, out) > 50.0


def test_truncated_stream_raises():
    rays, disp = srgf.textured_plane((2, 2, 16, 16))
    data = srgf.encode(rays, disp, superrays=8)
    with pytest.raises(srgf.BitstreamError):
        srgf.decode(data[: len(data) // 2])


def test_eigendecompose_path_graph():
    lap = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])
    values, vectors = srgf.eigendecompose(lap)
    np.testing.assert_allclose(values, [0.0, 1.0, 3.0], atol=1e-12)
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(3), atol=1e-12)
    sel = srgf.select_sampling_set(vectors, 2, 0)
    assert sel["samples"][0] == 0 and len(sel["samples"]) == 2


def test_signed_stream_round_trip():
    values = [0, 1, -1, 300, -70000, 2**40]
    data = srgf.encode_signed_stream(values)
    assert srgf.decode_signed_stream(data, len(values)) == values


def test_analyze_reports_both_modes():
    rays, disp = srgf.textured_plane((2, 2, 32, 32), seed=4)
    report = srgf.analyze(rays, disp, superrays=20)
    for mode in ("nonseparable", "separable"):
        assert 0.95 <= report[mode]["energy_fraction"] <= 1.0
        assert report[mode]["super_rays"]


def test_bad_mode_rejected():
    rays, disp = srgf.textured_plane((1, 2, 8, 8))
    with pytest.raises(ValueError):
        srgf.encode(rays, disp, mode="diagonal")
