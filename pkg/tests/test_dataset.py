import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from transclust.dataset import SHAPES, DataSet, SyntheticSpec, generate, load_csv, write_csv
from transclust.errors import CsvFormatError, InvalidSpecError


# ---------- DataSet validation ----------

def test_dataset_basic_properties():
    data = DataSet(np.array([[0.0, 1.0], [2.0, 3.0]]), np.array([0, 1]))
    assert (data.n, data.dim, data.k) == (2, 2, 2)
    assert data.name == "dataset"


def test_dataset_unlabeled_k_is_none():
    assert DataSet(np.zeros((3, 2))).k is None


def test_dataset_arrays_are_write_protected():
    data = DataSet(np.zeros((2, 2)), np.array([0, 1]))
    with pytest.raises(ValueError):
        data.points[0, 0] = 1.0
    with pytest.raises(ValueError):
        data.labels[0] = 1


@pytest.mark.parametrize(
    "points", [np.zeros((0, 2)), np.zeros((2, 0)), np.zeros(3), np.array([[np.nan, 0.0]])]
)
def test_dataset_rejects_bad_points(points):
    with pytest.raises(InvalidSpecError):
        DataSet(points)


@pytest.mark.parametrize("labels", [[0], [0, 2], [-1, 0], [1, 1]])
def test_dataset_rejects_bad_labels(labels):
    with pytest.raises(InvalidSpecError):
        DataSet(np.zeros((2, 2)), np.array(labels))


def test_spec_rejects_unknown_shape_and_counts():
    with pytest.raises(InvalidSpecError):
        SyntheticSpec("spiral", (10, 10))
    with pytest.raises(InvalidSpecError):
        SyntheticSpec("two_moon", (10, 0))
    with pytest.raises(InvalidSpecError):
        SyntheticSpec("two_moon", (10, 10), noise_count=-1)


# ---------- generators ----------

@pytest.mark.parametrize("shape", SHAPES)
def test_generate_counts_labels_and_box(shape):
    counts = (12, 9) if shape in ("two_moon", "rings") else (12, 9, 7)
    spec = SyntheticSpec(shape, counts, noise_count=5, rng_seed=11)
    data = generate(spec)
    assert data.n == sum(counts) + 5
    # Each cluster keeps its requested count; noise is one extra label.
    binc = np.bincount(data.labels)
    assert tuple(binc[: len(counts)]) == counts
    assert binc[len(counts)] == 5
    assert data.k == len(counts) + 1
    assert data.points.min() >= 0.0 and data.points.max() <= 1.0


@pytest.mark.parametrize("shape", SHAPES)
def test_generate_is_deterministic(shape):
    counts = (8, 8) if shape in ("two_moon", "rings") else (8, 8, 8)
    a = generate(SyntheticSpec(shape, counts, rng_seed=5))
    b = generate(SyntheticSpec(shape, counts, rng_seed=5))
    c = generate(SyntheticSpec(shape, counts, rng_seed=6))
    assert np.array_equal(a.points, b.points)
    assert np.array_equal(a.labels, b.labels)
    assert not np.array_equal(a.points, c.points)


def test_two_moon_halves_are_vertically_offset():
    data = generate(SyntheticSpec("two_moon", (40, 40), rng_seed=1))
    upper = data.points[data.labels == 0]
    lower = data.points[data.labels == 1]
    assert upper[:, 1].mean() != lower[:, 1].mean()


def test_rings_are_concentric():
    data = generate(SyntheticSpec("rings", (30, 60), rng_seed=2))
    r = np.linalg.norm(data.points - np.array([0.5, 0.5]), axis=1)
    inner = r[data.labels == 0]
    outer = r[data.labels == 1]
    assert inner.max() < outer.min()


def test_multi_scale_has_one_sparse_and_two_tight_clusters():
    data = generate(SyntheticSpec("multi_scale", (14, 40, 40), rng_seed=0))
    spreads = [data.points[data.labels == c].std(axis=0).mean() for c in range(3)]
    assert spreads[0] > 4 * max(spreads[1], spreads[2])


def test_gaussian_mixture_respects_overrides():
    spec = SyntheticSpec(
        "gaussian_mixture",
        (20, 20),
        rng_seed=3,
        centers=((0.2, 0.2), (0.8, 0.8)),
        cluster_std=0.01,
    )
    data = generate(spec)
    mean0 = data.points[data.labels == 0].mean(axis=0)
    mean1 = data.points[data.labels == 1].mean(axis=0)
    assert np.allclose(mean0, (0.2, 0.2), atol=0.02)
    assert np.allclose(mean1, (0.8, 0.8), atol=0.02)


@given(st.integers(min_value=0, max_value=10_000))
def test_generate_stays_in_unit_box(seed):
    data = generate(SyntheticSpec("gaussian_mixture", (5, 5, 5), noise_count=3, rng_seed=seed))
    assert data.points.min() >= 0.0 and data.points.max() <= 1.0


# ---------- CSV round trips ----------

def test_csv_round_trip_is_exact(tmp_path):
    data = generate(SyntheticSpec("two_moon", (10, 10), rng_seed=9))
    path = tmp_path / "moon.csv"
    write_csv(data, path)
    back = load_csv(path, label_column=-1)
    assert np.array_equal(back.points, data.points)
    assert np.array_equal(back.labels, data.labels)


def test_load_csv_header_detection(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("x,y,label\n0.5,0.25,0\n0.75,0.125,1\n")
    data = load_csv(path, label_column=2)
    assert data.n == 2
    assert np.array_equal(data.labels, [0, 1])
    # A numeric first row must NOT be eaten as a header.
    path.write_text("0.5,0.25,0\n0.75,0.125,1\n")
    assert load_csv(path, label_column=2).n == 2


def test_load_csv_string_labels_first_appearance(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("1.0,2.0,versicolor\n3.0,4.0,setosa\n5.0,6.0,versicolor\n")
    data = load_csv(path, label_column=-1)
    assert np.array_equal(data.labels, [0, 1, 0])


def test_load_csv_remaps_noncontiguous_numeric_labels(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("1.0,2.0,1\n3.0,4.0,3\n5.0,6.0,1\n")
    with pytest.warns(UserWarning, match="remapping"):
        data = load_csv(path, label_column=2)
    assert np.array_equal(data.labels, [0, 1, 0])


def test_load_csv_negative_label_column(tmp_path):
    path = tmp_path / "n.csv"
    path.write_text("1.0,2.0,0\n3.0,4.0,1\n")
    data = load_csv(path, label_column=-1)
    assert data.dim == 2 and data.k == 2


def test_load_csv_rejects_ragged_and_bad_cells(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,2.0\n3.0\n")
    with pytest.raises(CsvFormatError, match="expected 2 cells"):
        load_csv(path)
    path.write_text("1.0,abc\n")
    with pytest.raises(CsvFormatError, match="not a finite number"):
        load_csv(path)
    path.write_text("x,y\n")
    with pytest.raises(CsvFormatError, match="no data rows"):
        load_csv(path)


def test_load_csv_label_column_out_of_range(tmp_path):
    path = tmp_path / "rng.csv"
    path.write_text("1.0,2.0\n")
    with pytest.raises(CsvFormatError, match="out of range"):
        load_csv(path, label_column=5)


def test_load_csv_skips_blank_lines(tmp_path):
    path = tmp_path / "blank.csv"
    path.write_text("1.0,2.0\n\n3.0,4.0\n\n")
    assert load_csv(path).n == 2
