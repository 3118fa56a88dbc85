import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from centralnet import (
    WeightedMatrix,
    apply_threshold,
    arithmetic_returns,
    correlation_matrix,
    correlation_to_distance,
    from_point_cloud,
    log_returns,
    pruned_fraction,
)
from centralnet.errors import (
    DegenerateColumnError,
    InvalidInputError,
    ParseError,
    ThresholdOutOfRangeError,
)
from centralnet.graph import read_matrix_csv, read_price_csv, write_matrix_csv

from graphs import from_edges


# --- WeightedMatrix ------------------------------------------------------------

def test_weighted_matrix_normalizes_absent_edges():
    w = WeightedMatrix(np.array([[0, 1, np.inf], [1, 0, 7], [np.inf, 7, 0]]), cap=2.0)
    assert w.sentinel == 3.0
    assert w.entries[0, 2] == 3.0 and w.entries[1, 2] == 3.0
    assert w.n_edges() == 1
    assert w.max_weight() == 1.0


@pytest.mark.parametrize("bad", [
    np.array([[0, 1], [2, 0]]),             # asymmetric
    np.array([[1, 1], [1, 0]]),             # nonzero diagonal
    np.array([[0, -1], [-1, 0]]),           # negative weight
    np.array([[0, np.nan], [np.nan, 0]]),
    np.zeros((2, 3)),
])
def test_weighted_matrix_rejects(bad):
    with pytest.raises(InvalidInputError):
        WeightedMatrix(bad, cap=2.0)


def test_weighted_matrix_is_read_only():
    w = WeightedMatrix(np.zeros((2, 2)), cap=1.0)
    with pytest.raises(ValueError):
        w.entries[0, 1] = 1.0


# --- returns -------------------------------------------------------------------

def test_arithmetic_returns_examples():
    assert arithmetic_returns([100, 110]).series[0, 0] == pytest.approx(0.1, abs=1e-15)
    np.testing.assert_array_equal(arithmetic_returns([100, 100, 100]).series[:, 0], [0, 0])
    np.testing.assert_allclose(arithmetic_returns([2, 1, 2]).series[:, 0], [-0.5, 1.0])


def test_log_returns_examples():
    assert log_returns([1, math.e]).series[0, 0] == pytest.approx(1.0, abs=1e-15)
    assert log_returns([5, 5]).series[0, 0] == 0.0
    np.testing.assert_allclose(log_returns([1, 2, 4]).series[:, 0], [math.log(2)] * 2)


def test_nonpositive_price_names_row_and_column():
    prices = np.array([[1.0, 2.0], [1.5, 0.0], [2.0, 3.0]])
    with pytest.raises(InvalidInputError, match="row 1, column 1"):
        arithmetic_returns(prices)
    with pytest.raises(InvalidInputError):
        log_returns(prices)


def test_returns_shape():
    r = arithmetic_returns(np.ones((7, 3)))
    assert r.series.shape == (6, 3) and r.kind == "arithmetic"


# --- correlation / distance ------------------------------------------------------

def test_correlation_examples():
    x = np.array([1.0, 2.0, 3.0])
    assert correlation_matrix(np.column_stack([x, x]))[0, 1] == pytest.approx(1.0)
    assert correlation_matrix(np.column_stack([x, -x]))[0, 1] == pytest.approx(-1.0)
    assert correlation_matrix(np.column_stack([x, [1, 3, 2]]))[0, 1] == pytest.approx(0.5, abs=1e-12)


def test_zero_variance_column_is_named():
    x = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    with pytest.raises(DegenerateColumnError) as ei:
        correlation_matrix(x)
    assert ei.value.column == 1


def test_distance_examples():
    d = correlation_to_distance(np.array([[1, 1, -1], [1, 1, 0], [-1, 0, 1]]))
    assert d.entries[0, 1] == 0.0
    assert d.entries[0, 2] == 2.0
    assert d.entries[1, 2] == pytest.approx(math.sqrt(2), abs=1e-12)
    assert d.cap == 2.0


def test_distance_rejects_out_of_range():
    with pytest.raises(InvalidInputError):
        correlation_to_distance(np.array([[1, 1.5], [1.5, 1]]))


@given(st.floats(-1, 1))
def test_distance_round_trip(c):
    d = correlation_to_distance(np.array([[1.0, c], [c, 1.0]])).entries[0, 1]
    assert abs(1 - d * d / 2 - c) <= 1e-12


@given(arrays(float, (8, 4), elements=st.floats(-1e3, 1e3)))
def test_correlation_is_valid(x):
    try:
        c = correlation_matrix(x)
    except DegenerateColumnError:
        return
    assert np.array_equal(c, c.T)
    assert np.all(np.diag(c) == 1.0)
    assert np.all(np.abs(c) <= 1.0)


def test_point_cloud_examples():
    assert from_point_cloud([[0, 0], [3, 4]]).entries[0, 1] == 5.0
    single = from_point_cloud([[1.0, 2.0]])
    assert single.entries.shape == (1, 1) and single.entries[0, 0] == 0.0
    tri = from_point_cloud([[0, 0], [1, 0], [0, 1]])
    iu = np.triu_indices(3, 1)
    np.testing.assert_allclose(sorted(tri.entries[iu]), [1, 1, math.sqrt(2)])
    assert tri.cap == pytest.approx(math.sqrt(2))


# --- thresholding ---------------------------------------------------------------

def test_threshold_examples():
    w = from_edges(3, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 3.0)], cap=3.0)
    t = apply_threshold(w, 2.0)
    assert t.entries[0, 1] == 1.0
    assert t.entries[0, 2] == t.sentinel and t.entries[1, 2] == t.sentinel
    assert apply_threshold(w, 3.0) == from_edges(3, [(0, 1, 1.0), (0, 2, 2.0)], cap=3.0)
    low = from_edges(3, [(0, 1, 0.5), (0, 2, 1.0)], cap=3.0)
    assert apply_threshold(low, 2.0) == low
    assert apply_threshold(low, 3.0) == low


@pytest.mark.parametrize("s", [0.0, -1.0, 3.5])
def test_threshold_out_of_range(s):
    with pytest.raises(ThresholdOutOfRangeError):
        apply_threshold(from_edges(2, [(0, 1, 1.0)], cap=3.0), s)


def _random_matrix(rng, n=7, cap=2.0):
    a = rng.uniform(0, cap, (n, n))
    a = np.triu(a, 1)
    a[rng.random((n, n)) < 0.2] = cap + 1
    a = np.triu(a, 1)
    a = a + a.T
    return WeightedMatrix(a, cap)


@given(st.integers(0, 2**31), st.floats(0.01, 2.0), st.floats(0.01, 2.0))
def test_threshold_idempotent_and_monotone(seed, s, t):
    w = _random_matrix(np.random.default_rng(seed))
    once = apply_threshold(w, s)
    assert apply_threshold(once, s) == once
    lo, hi = sorted((s, t))
    kept_lo = apply_threshold(w, lo).entries <= w.cap
    kept_hi = apply_threshold(w, hi).entries <= w.cap
    assert np.all(kept_hi | ~kept_lo)  # edges kept at lo are kept at hi


def test_pruned_fraction_examples():
    w = from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 2.0)], cap=3.0)
    assert pruned_fraction(w, w) == 0.0
    assert pruned_fraction(w, apply_threshold(w, 2.0)) == 0.25
    assert pruned_fraction(w, apply_threshold(w, 0.5)) == 1.0


# --- CSV -------------------------------------------------------------------------

def test_matrix_csv_round_trip(tmp_path, rng):
    w = _random_matrix(rng)
    write_matrix_csv(w, tmp_path / "m.csv")
    assert read_matrix_csv(tmp_path / "m.csv", cap=w.cap) == w


def test_matrix_csv_header_and_inf(tmp_path):
    (tmp_path / "m.csv").write_text("a,b,c\n0,1,inf\n1,0,2\ninf,2,0\n")
    w = read_matrix_csv(tmp_path / "m.csv")
    assert w.cap == 2.0 and w.entries[0, 2] == w.sentinel


def test_matrix_csv_parse_error(tmp_path):
    (tmp_path / "m.csv").write_text("0,1\n1,x\n")
    with pytest.raises(ParseError) as ei:
        read_matrix_csv(tmp_path / "m.csv")
    assert (ei.value.line, ei.value.column) == (2, 2)


def test_price_csv(tmp_path):
    (tmp_path / "p.csv").write_text("date,A,B\n2020-01-01,1,2\n2020-01-02,1.5,2.5\n")
    dates, names, prices = read_price_csv(tmp_path / "p.csv")
    assert names == ["A", "B"] and len(dates) == 2
    np.testing.assert_array_equal(prices, [[1, 2], [1.5, 2.5]])


def test_price_csv_non_numeric_cell(tmp_path):
    (tmp_path / "p.csv").write_text("date,A,B\n2020-01-01,1,2\n2020-01-02,1.5,oops\n")
    with pytest.raises(ParseError) as ei:
        read_price_csv(tmp_path / "p.csv")
    assert (ei.value.line, ei.value.column) == (3, 3)
    assert "oops" in str(ei.value)


def test_price_csv_unsorted_dates(tmp_path):
    (tmp_path / "p.csv").write_text("date,A\n2020-01-02,1\n2020-01-01,2\n")
    with pytest.raises(InvalidInputError):
        read_price_csv(tmp_path / "p.csv")
