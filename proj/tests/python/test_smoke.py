# SPDX-License-Identifier: Apache-2.0
import json
import os
import subprocess

import numpy as np
import pytest

import clifsig

CLI = os.environ.get("CLIFSIG_CLI")


def cosine(rows, cols, w1, w2):
    y, x = np.mgrid[0:rows, 0:cols]
    return np.cos(2 * np.pi * (w1 * x / cols + w2 * y / rows))


def write_pgm(path, img):
    data = np.clip(np.round(img * 255), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (data.shape[1], data.shape[0]))
        fh.write(data.tobytes())


def test_layout_and_monogenic_cosine():
    f = cosine(16, 16, 3, 4)
    a = clifsig.multiplier("monogenic", f.shape)
    assert a.kind == "vector_pseudovector"
    assert a.symmetry_class == "ordinary"
    d = clifsig.decompose(f, a)
    assert d["R"].shape == (16, 16)
    assert d["vhat"].shape == (3, 16, 16)
    np.testing.assert_allclose(d["R"], 1.0, atol=1e-12)
    valid = ~d["invalid"]
    np.testing.assert_allclose(np.abs(d["vhat"][0][valid]), 0.6, atol=1e-12)
    np.testing.assert_allclose(np.abs(d["vhat"][1][valid]), 0.8, atol=1e-12)


def test_toggle_and_partial_transforms():
    rng = np.random.default_rng(1)
    f = rng.standard_normal((12, 10))
    a = clifsig.multiplier("hypercomplex", f.shape)
    kept, removed = clifsig.remove_exceptional(f, a)
    np.testing.assert_allclose(kept + removed, f, atol=1e-12)
    fH = clifsig.extended_hilbert(kept, a)
    assert fH.shape == (12, 10, 8)
    p = clifsig.partial_transforms(kept)
    np.testing.assert_allclose(fH[..., 3], p["fHT"], atol=1e-12)
    np.testing.assert_allclose(fH[..., 0], 0.0, atol=1e-12)


def test_classical_1d_sine():
    x = np.arange(32)
    d = clifsig.classical_1d(np.cos(2 * np.pi * 3 * x / 32))
    np.testing.assert_allclose(d["fH_im"], np.sin(2 * np.pi * 3 * x / 32), atol=1e-13)


def test_errors_raise():
    with pytest.raises(clifsig.ClifsigError):
        clifsig.multiplier("nonesuch", (8, 8))
    with pytest.raises(clifsig.ClifsigError):
        clifsig.multiplier("monogenic", (8, 8), seed=3)
    a = clifsig.multiplier("hypercomplex", (8, 8))
    with pytest.raises(clifsig.ClifsigError):
        clifsig.reconstruct_from_orientation(np.zeros((3, 8, 8)), a)


def test_parametric_and_random():
    a = clifsig.multiplier("parametric", (8, 8), params={"A": 1.5})
    assert a.symmetry_class == "generic"
    r1 = clifsig.multiplier("random", (8, 8), seed=7).values
    r2 = clifsig.multiplier("random", (8, 8), seed=7).values
    assert np.array_equal(r1, r2)


def test_selftest_and_fault():
    results = clifsig.selftest()
    assert len(results) == 12
    assert all(r["pass"] for r in results)
    faulty = clifsig.selftest(inject_fault=True)
    assert not faulty[7]["pass"]


@pytest.mark.skipif(CLI is None, reason="CLIFSIG_CLI not set")
def test_cli_round_trip(tmp_path):
    img = 0.5 + 0.25 * cosine(32, 32, 2, 3) + 0.2 * cosine(32, 32, -1, 5)
    write_pgm(tmp_path / "in.pgm", img)
    out = tmp_path / "an"
    run = subprocess.run([CLI, "analytic", "--multiplier", "monogenic",
                          str(tmp_path / "in.pgm"), str(out)], capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    lines = [json.loads(s) for s in run.stdout.splitlines()]
    assert all(line["status"] in ("pass", "info") for line in lines)
    archive = clifsig.load_archive(out / "analytic.clifsig")
    assert archive["class"] == "ordinary"

    rec = subprocess.run([CLI, "reconstruct", str(out / "analytic.clifsig"), str(tmp_path / "re")],
                         capture_output=True, text=True)
    assert rec.returncode == 0, rec.stderr
    checks = {json.loads(s)["check"]: json.loads(s) for s in rec.stdout.splitlines()}
    assert checks["reconstruction"]["status"] == "pass"

    ori = subprocess.run([CLI, "reconstruct", "--orientation-only", str(out / "analytic.clifsig"),
                          str(tmp_path / "ori")], capture_output=True, text=True)
    assert ori.returncode == 0, ori.stderr
    checks = {json.loads(s)["check"]: json.loads(s) for s in ori.stdout.splitlines()}
    assert checks["pearson-correlation"]["value"] > 0.5


@pytest.mark.skipif(CLI is None, reason="CLIFSIG_CLI not set")
def test_cli_random_is_deterministic(tmp_path):
    write_pgm(tmp_path / "in.pgm", 0.5 + 0.4 * cosine(16, 16, 1, 2))
    blobs = []
    for name in ("a", "b"):
        subprocess.run([CLI, "analytic", "--multiplier", "random", "--seed", "7",
                        str(tmp_path / "in.pgm"), str(tmp_path / name)], check=True,
                       capture_output=True)
        blobs.append((tmp_path / name / "analytic.clifsig").read_bytes())
    assert blobs[0] == blobs[1]
