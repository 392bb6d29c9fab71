"""Shared corpus of grayscale JPEGs, encoded by an independent codec (Pillow)."""

import io

import numpy as np
import pytest
from PIL import Image

from dcdt import parse_jpeg


def pil_jpeg_bytes(array, quality, **save_kw):
    buf = io.BytesIO()
    Image.fromarray(array.astype(np.uint8), "L").save(
        buf, "JPEG", quality=quality, **save_kw
    )
    return buf.getvalue()


def _noise(rng, h, w, lo=0, hi=256):
    return rng.integers(lo, hi, (h, w)).astype(np.uint8)


def _blobs(rng, h, w, cell=16, sigma=8.0):
    base = rng.normal(128, 45, ((h + cell - 1) // cell, (w + cell - 1) // cell))
    up = np.kron(base, np.ones((cell, cell)))[:h, :w]
    return np.clip(up + rng.normal(0, sigma, (h, w)), 0, 255).astype(np.uint8)


def _texture(rng, h, w):
    yy, xx = np.mgrid[0:h, 0:w]
    waves = 40 * np.sin(xx / 7.3) * np.cos(yy / 11.1) + 25 * np.sin((xx + yy) / 4.9)
    blob = _blobs(rng, h, w, cell=32, sigma=0).astype(float)
    mask = rng.random((h, w)) < 0.5
    out = np.where(mask, blob + waves, blob + rng.normal(0, 20, (h, w)))
    return np.clip(out, 0, 255).astype(np.uint8)


def _gradient(rng, h, w):
    yy, xx = np.mgrid[0:h, 0:w]
    g = 50 + 150 * xx / max(w - 1, 1) + 30 * yy / max(h - 1, 1)
    return np.clip(g + rng.normal(0, 5, (h, w)), 0, 255).astype(np.uint8)


def _checker(rng, h, w, cell=4):
    yy, xx = np.mgrid[0:h, 0:w]
    board = (((yy // cell) + (xx // cell)) % 2) * 170 + 40
    return np.clip(board + rng.normal(0, 10, (h, w)), 0, 255).astype(np.uint8)


def _camera():
    from skimage import data

    return data.camera()


def build_corpus_arrays():
    """(name, pixel array, quality, save kwargs) for >= 20 mixed files."""
    rng = np.random.default_rng(20240817)
    cam = _camera()
    specs = [
        ("noise64_q50", _noise(rng, 64, 64), 50, {}),
        ("noise64_q92", _noise(rng, 64, 64), 92, {}),
        ("blobs96_q60", _blobs(rng, 96, 96), 60, {}),
        ("blobs128_q75", _blobs(rng, 128, 128), 75, {}),
        ("grad80x56_q70", _gradient(rng, 56, 80), 70, {}),
        ("odd100x75_q75", _texture(rng, 75, 100), 75, {}),
        ("odd129x97_q85", _texture(rng, 97, 129), 85, {}),
        ("flat64_q75", np.full((64, 64), 128, np.uint8), 75, {}),
        ("dark32_q95", np.full((32, 32), 4, np.uint8), 95, {}),
        ("texture256_q75", _texture(rng, 256, 256), 75, {}),
        ("texture256_q95", _texture(rng, 256, 256), 95, {}),
        ("camera_q75", cam, 75, {}),
        ("camera_q95", cam, 95, {}),
        ("blobs128_q80_rst", _blobs(rng, 128, 128), 80, {"restart_marker_rows": 2}),
        ("blobs128_q85_opt", _blobs(rng, 128, 128), 85, {"optimize": True}),
        ("noise48_q30", _noise(rng, 48, 48), 30, {}),
        ("checker64_q75", _checker(rng, 64, 64), 75, {}),
        ("flat8_q75", np.full((8, 8), 128, np.uint8), 75, {}),
        ("noise16_q100", _noise(rng, 16, 16), 100, {}),
        ("mixed120_q88", _texture(rng, 120, 120), 88, {}),
        ("stripes72_q65", _checker(rng, 72, 72, cell=2), 65, {}),
        ("camcrop256_q35", cam[128:384, 128:384], 35, {}),
    ]
    return specs


@pytest.fixture(scope="session")
def corpus_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    paths = []
    for name, arr, quality, kw in build_corpus_arrays():
        path = root / f"{name}.jpg"
        path.write_bytes(pil_jpeg_bytes(arr, quality, **kw))
        paths.append(path)
    return paths


@pytest.fixture(scope="session")
def corpus_images(corpus_files):
    return [(path, parse_jpeg(path.read_bytes())) for path in corpus_files]


@pytest.fixture(scope="session")
def ten_q75_images(tmp_path_factory):
    """Ten textured 256x256 quality-75 covers for payload/histogram checks."""
    root = tmp_path_factory.mktemp("q75")
    out = []
    for k in range(10):
        rng = np.random.default_rng(777 + k)
        arr = _texture(rng, 256, 256)
        path = root / f"q75_{k}.jpg"
        path.write_bytes(pil_jpeg_bytes(arr, 75))
        out.append((path, parse_jpeg(path.read_bytes())))
    return out


@pytest.fixture(scope="session")
def fuzz_base(tmp_path_factory):
    """Small valid JPEG (with restart markers) used as the mutation seed."""
    rng = np.random.default_rng(99)
    return pil_jpeg_bytes(_blobs(rng, 24, 24, cell=6), 70, restart_marker_rows=1)
