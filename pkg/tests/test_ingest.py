import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aggbench.errors import EmptyDatasetError, ParseError
from aggbench.ingest import Dataset, DatasetConfig, load_csv, minmax_scale


def test_drops_named_and_textual_columns(write_csv):
    path = write_csv(
        """
        id,a,b,label
        1,0.5,2.0,red
        2,0.7,3.0,blue
        3,0.9,4.0,red
        """
    )
    d = load_csv(DatasetConfig(path=path, drop_columns=("id",)))
    assert d.k == 2
    assert d.column_names == ("a", "b")
    assert d.n == 3


def test_row_with_missing_response_removed(write_csv):
    path = write_csv(
        """
        a,b,y
        1,2,10
        3,4,
        5,6,30
        """
    )
    d = load_csv(DatasetConfig(path=path, response_column="y"))
    assert d.n == 2
    assert list(d.response) == [10.0, 30.0]


def test_all_textual_inputs_is_empty_dataset(write_csv):
    path = write_csv(
        """
        a,b,y
        x,u,1
        y,v,2
        """
    )
    with pytest.raises(EmptyDatasetError):
        load_csv(DatasetConfig(path=path, response_column="y"))


@pytest.mark.parametrize("marker", ["", "NA", "NaN", "?"])
def test_missing_markers(write_csv, marker):
    path = write_csv(
        f"""
        a,b
        1,2
        {marker},3
        4,5
        """
    )
    d = load_csv(DatasetConfig(path=path))
    assert d.n == 2


def test_nonfinite_cells_treated_as_missing(write_csv):
    path = write_csv(
        """
        a,b
        1,2
        inf,3
        4,5
        """
    )
    d = load_csv(DatasetConfig(path=path))
    assert d.n == 2
    assert np.all(np.isfinite(d.inputs))


def test_missing_file_raises():
    with pytest.raises(FileNotFoundError):
        load_csv(DatasetConfig(path="/nonexistent/file.csv"))


def test_ragged_row_is_parse_error(write_csv):
    path = write_csv(
        """
        a,b,c
        1,2,3
        4,5
        """
    )
    with pytest.raises(ParseError):
        load_csv(DatasetConfig(path=path))


def test_named_response_must_exist(write_csv):
    path = write_csv("a,b\n1,2\n3,4")
    with pytest.raises(ParseError):
        load_csv(DatasetConfig(path=path, response_column="y"))


def test_response_by_index_and_no_header(write_csv):
    path = write_csv(
        """
        1,2,30
        4,5,60
        """
    )
    d = load_csv(DatasetConfig(path=path, response_column=2, has_header=False))
    assert d.column_names == ("c0", "c1")
    assert list(d.response) == [30.0, 60.0]


def test_semicolon_delimiter(write_csv):
    path = write_csv(
        """
        a;b
        1;2
        3;4
        """
    )
    d = load_csv(DatasetConfig(path=path, delimiter=";"))
    assert d.k == 2 and d.n == 2


def test_response_in_drop_list_rejected():
    with pytest.raises(ValueError):
        DatasetConfig(path="x.csv", response_column="y", drop_columns=("y",))


def test_load_is_deterministic(write_csv):
    path = write_csv("a,b\n1,2\n3,4\n5,6")
    cfg = DatasetConfig(path=path)
    d1, d2 = load_csv(cfg), load_csv(cfg)
    assert np.array_equal(d1.inputs, d2.inputs)
    assert d1.column_names == d2.column_names


def test_row_count_accounting(write_csv):
    path = write_csv(
        """
        a,b,y
        1,2,1
        NA,2,1
        3,?,1
        4,5,
        6,7,2
        """
    )
    d = load_csv(DatasetConfig(path=path, response_column="y"))
    assert d.n == 5 - 3


def test_minmax_basic():
    d = Dataset(
        inputs=np.array([[2.0, 0.0], [4.0, 1.0], [6.0, 0.0]]),
        response=np.array([5.0, 6.0, 7.0]),
        column_names=("a", "b"),
    )
    scaled = minmax_scale(d)
    assert np.allclose(scaled.inputs[:, 0], [0.0, 0.5, 1.0])
    # a column already in {0,1} is unchanged
    assert np.array_equal(scaled.inputs[:, 1], d.inputs[:, 1])
    # response untouched
    assert np.array_equal(scaled.response, d.response)


def test_minmax_drops_constant_column():
    d = Dataset(
        inputs=np.array([[5.0, 1.0, 0.0], [5.0, 2.0, 1.0], [5.0, 3.0, 0.5]]),
        response=None,
        column_names=("const", "a", "b"),
    )
    scaled = minmax_scale(d)
    assert scaled.column_names == ("a", "b")
    assert any("const" in w for w in scaled.warnings)


def test_minmax_empty_after_constant_drop():
    d = Dataset(
        inputs=np.array([[5.0, 1.0], [5.0, 1.0]]),
        response=None,
        column_names=("a", "b"),
    )
    with pytest.raises(EmptyDatasetError):
        minmax_scale(d)


@given(
    st.lists(
        st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=2),
        min_size=2,
        max_size=30,
    )
)
def test_minmax_range_property(rows):
    inputs = np.array(rows, dtype=np.float64)
    d = Dataset(inputs=inputs, response=None, column_names=("a", "b"))
    try:
        scaled = minmax_scale(d)
    except EmptyDatasetError:
        return
    assert scaled.inputs.min() >= 0.0
    assert scaled.inputs.max() <= 1.0
    for i in range(scaled.k):
        assert scaled.inputs[:, i].min() == 0.0
        assert scaled.inputs[:, i].max() == 1.0


def test_without_response_strips_everything(write_csv):
    path = write_csv("a,b,y\n1,2,3\n4,5,6")
    d = load_csv(DatasetConfig(path=path, response_column="y"))
    bare = d.without_response()
    assert bare.response is None
    assert bare.response_name is None
    assert np.array_equal(bare.inputs, d.inputs)
