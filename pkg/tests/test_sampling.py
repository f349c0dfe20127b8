"""Tests for Latin hypercube sampling, dataset generation, splitting and dataset files."""

import math

import numpy as np
import pytest

from optnet.errors import DatasetFormatError, DimensionError, UsageError
from optnet.mathcore import RngStream
from optnet.pricing import (
    BsInputs,
    HestonParams,
    bs_scaled_call,
    heston_cos_call,
    intrinsic_value,
)
from optnet.sampling import (
    BS_BOX,
    HESTON_BOX,
    Box,
    ProblemKind,
    build_dataset,
    lhs_sample,
    read_dataset,
    split_dataset,
    train_validation_split,
    write_dataset,
)


def test_lhs_two_points_one_per_half() -> None:
    x = lhs_sample(2, Box(("u",), (0.0,), (1.0,)), RngStream(0))
    assert sorted(np.floor(x[:, 0] * 2).astype(int).tolist()) == [0, 1]


def test_lhs_every_stratum_hit_once() -> None:
    n = 1000
    x = lhs_sample(n, BS_BOX, RngStream(1))
    assert x.shape == (n, 4)
    unit = (x - BS_BOX.lower) / (BS_BOX.upper - BS_BOX.lower)
    for j in range(4):
        strata = np.minimum(np.floor(unit[:, j] * n).astype(int), n - 1)
        np.testing.assert_array_equal(np.sort(strata), np.arange(n))


def test_lhs_is_deterministic() -> None:
    a = lhs_sample(50, HESTON_BOX, RngStream(8))
    b = lhs_sample(50, HESTON_BOX, RngStream(8))
    np.testing.assert_array_equal(a, b)
    assert np.all(HESTON_BOX.contains(a))


def test_lhs_needs_a_sample() -> None:
    with pytest.raises(DimensionError):
        lhs_sample(0, BS_BOX, RngStream(0))


def test_problem_dimensions() -> None:
    assert ProblemKind("bs").input_dim == 4
    assert ProblemKind("heston").input_dim == 8
    assert ProblemKind("tiv").input_box.names[-1] == "log_time_value"
    assert ProblemKind.IMPLIED_VOL.label_name == "sigma"


def test_bs_dataset_labels() -> None:
    g = build_dataset("bs", 2000, 4)
    assert g.n == 2000
    assert np.all(BS_BOX.contains(g.inputs))
    assert np.all(g.labels > 0.0) and np.all(g.labels < 0.92)
    time_value = g.labels - intrinsic_value(*g.inputs[:, :3].T)
    assert np.all(time_value > 1e-12)
    np.testing.assert_allclose(g.labels, bs_scaled_call(BsInputs(*g.inputs.T)), rtol=1e-14, atol=0)


def test_iv_swaps_price_and_sigma() -> None:
    bs = build_dataset(ProblemKind.BS_PRICE, 2000, 2)
    iv = build_dataset(ProblemKind.IMPLIED_VOL, 2000, 2)
    assert iv.resampled  # this seed redraws some rows
    assert iv.resampled == bs.resampled
    np.testing.assert_array_equal(iv.inputs[:, :3], bs.inputs[:, :3])
    np.testing.assert_array_equal(iv.inputs[:, 3], bs.labels)
    np.testing.assert_array_equal(iv.labels, bs.inputs[:, 3])


def test_tiv_inputs_are_log_time_values() -> None:
    g = build_dataset("tiv", 2000, 2)
    log_tv = g.inputs[:, 3]
    assert np.all(log_tv >= math.log(1e-8) - 1e-12)
    assert np.all(log_tv <= -0.9)
    assert np.all((g.labels >= 0.01) & (g.labels <= 1.0))


def test_heston_dataset_labels() -> None:
    g = build_dataset("heston", 60, 3)
    assert g.inputs.shape == (60, 8)
    assert np.all(np.isfinite(g.labels)) and np.all(g.labels >= 0.0)
    for row, label in zip(g.inputs[:5], g.labels[:5]):
        assert heston_cos_call(HestonParams(*row)) == pytest.approx(label, abs=1e-8)


def test_build_dataset_is_deterministic() -> None:
    a, b = build_dataset("iv", 300, 12), build_dataset("iv", 300, 12)
    np.testing.assert_array_equal(a.inputs, b.inputs)
    np.testing.assert_array_equal(a.labels, b.labels)
    assert a.resampled == b.resampled


def test_build_dataset_rejects_empty() -> None:
    with pytest.raises(DimensionError):
        build_dataset("bs", 0, 0)


def test_split_partitions_rows() -> None:
    g = build_dataset("bs", 1000, 0)
    train, val, test = split_dataset(g, 0.8, 200, 5)
    assert (train.n, val.n, test.n) == (800, 200, 200)
    rows = {tuple(r) for r in np.vstack([train.inputs, val.inputs])}
    assert rows == {tuple(r) for r in g.inputs}
    assert not {tuple(r) for r in test.inputs} & {tuple(r) for r in g.inputs}


def test_split_with_explicit_test_seed() -> None:
    g = build_dataset("bs", 100, 0)
    _, _, test = split_dataset(g, 0.8, 50, 1, test_seed=99)
    assert test.seed == 99
    np.testing.assert_array_equal(test.inputs, build_dataset("bs", 50, 99).inputs)


def test_subset_keeps_problem_and_seed() -> None:
    g = build_dataset("bs", 50, 11)
    part = g.subset(np.array([0, 3, 7]))
    assert (part.problem, part.seed, part.n) == (g.problem, 11, 3)
    np.testing.assert_array_equal(part.inputs, g.inputs[[0, 3, 7]])


def test_split_rejects_bad_sizes() -> None:
    g = build_dataset("bs", 100, 0)
    with pytest.raises(DimensionError):
        split_dataset(g, 0.8, 0, 1)
    with pytest.raises(UsageError):
        train_validation_split(g, 1.0, 1)


def test_dataset_file_round_trip(tmp_path) -> None:
    g = build_dataset("tiv", 100, 21)
    path = tmp_path / "tiv.txt"
    write_dataset(g, path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# problem=tiv seed=21 n=100")
    assert lines[1] == "moneyness,tau,r,log_time_value,label"

    back = read_dataset(path)
    assert (back.problem, back.seed) == (g.problem, g.seed)
    np.testing.assert_array_equal(back.inputs, g.inputs)
    np.testing.assert_array_equal(back.labels, g.labels)
    assert back.resampled == g.resampled


def test_dataset_file_keeps_resampled_rows(tmp_path) -> None:
    g = build_dataset("iv", 2000, 2)
    assert g.resampled
    path = tmp_path / "iv.txt"
    write_dataset(g, path)
    assert f"resampled={g.resampled[0]}," in path.read_text().splitlines()[0]

    back = read_dataset(path)
    assert back.resampled == g.resampled
    np.testing.assert_array_equal(back.inputs, g.inputs)
    np.testing.assert_array_equal(back.labels, g.labels)


def test_dataset_with_out_of_range_resampled_row_rejected(tmp_path) -> None:
    path = tmp_path / "bs.txt"
    path.write_text("# problem=bs seed=0 n=1 resampled=3\nmoneyness,tau,r,sigma,label\n1,1,0.05,0.2,0.1\n")
    with pytest.raises(DatasetFormatError):
        read_dataset(path)


def test_dataset_files_are_reproducible(tmp_path) -> None:
    write_dataset(build_dataset("bs", 64, 3), tmp_path / "a.txt")
    write_dataset(build_dataset("bs", 64, 3), tmp_path / "b.txt")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_truncated_dataset_rejected(tmp_path) -> None:
    path = tmp_path / "bs.txt"
    write_dataset(build_dataset("bs", 20, 0), path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(DatasetFormatError):
        read_dataset(path)


def test_dataset_with_bad_header_rejected(tmp_path) -> None:
    path = tmp_path / "bad.txt"
    path.write_text("# problem=bs\nmoneyness,tau,r,sigma,label\n1,1,1,1,1\n")
    with pytest.raises(DatasetFormatError):
        read_dataset(path)
    with pytest.raises(DatasetFormatError):
        read_dataset(tmp_path / "missing.txt")
