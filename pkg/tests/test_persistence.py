import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from centralnet import (
    FiltrationConfig,
    PersistenceDiagram,
    WeightedMatrix,
    betti_at,
    h0_diagram,
    rips_diagrams,
)
from centralnet.errors import ConfigError, InvalidInputError

from graphs import example_graph, four_cycle, from_edges
from oracles import h0_bruteforce, h1_bruteforce, random_weighted_graph


def _pairs(dg):
    return sorted(map(tuple, dg.pairs.tolist()))


# --- examples ------------------------------------------------------------------------

def test_h0_triangle():
    w = from_edges(3, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 3.0)], cap=3.0)
    assert _pairs(h0_diagram(w, FiltrationConfig(max_scale=3.0))) == [(0, 1), (0, 2), (0, 3)]


def test_h0_isolated_vertices():
    w = WeightedMatrix(np.full((4, 4), 3.0) - 3.0 * np.eye(4), cap=2.0)
    dg = h0_diagram(w)
    assert _pairs(dg) == [(0, 2.0)] * 4
    assert dg.essential.all()


def test_example_graph_components():
    w = example_graph()
    dg = h0_diagram(w)
    assert len(dg) == 12
    assert int(dg.essential.sum()) == 3
    assert betti_at(w, w.max_weight(), 0) == 3
    assert betti_at(w, 0.0, 0) == 12


@pytest.mark.parametrize("max_scale", [None, "cap"])
def test_example_graph_one_hole(max_scale):
    w = example_graph()
    cfg = FiltrationConfig(max_dim=1, max_scale=max_scale)
    h1 = rips_diagrams(w, cfg)[1]
    assert len(h1) == 1
    assert h1.pairs[0, 0] == 4.0  # born when the open square closes
    m = cfg.resolve(w)
    assert betti_at(w, m, 1, cfg) == 1


def test_filled_triangle_has_no_hole():
    w = from_edges(3, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 3.0)], cap=3.0)
    assert len(rips_diagrams(w)[1]) == 0


def test_four_cycle():
    h1 = rips_diagrams(four_cycle(), FiltrationConfig(max_dim=1, max_scale=2.0))[1]
    assert _pairs(h1) == [(1.0, 2.0)]
    assert h1.essential.tolist() == [True]


def test_square_killed_by_diagonal():
    edges = [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0), (0, 2, 2.0)]
    h1 = rips_diagrams(from_edges(4, edges, 3.0), FiltrationConfig(1, 3.0))[1]
    assert _pairs(h1) == [(1.0, 2.0)]
    assert not h1.essential.any()


def test_max_scale_policies():
    w = from_edges(3, [(0, 1, 0.5)], cap=2.0)
    assert FiltrationConfig().resolve(w) == 0.5
    assert FiltrationConfig(max_scale="cap").resolve(w) == 2.0
    assert FiltrationConfig(max_scale=1.5).resolve(w) == 1.5
    empty = WeightedMatrix(np.full((2, 2), 3.0) - 3.0 * np.eye(2), 2.0)
    assert FiltrationConfig().resolve(empty) == 2.0
    with pytest.raises(ConfigError):
        FiltrationConfig(max_dim=2)
    with pytest.raises(ConfigError):
        FiltrationConfig(max_scale=0)


def test_betti_out_of_range():
    with pytest.raises(InvalidInputError):
        betti_at(four_cycle(), 5.0, 0)


def test_diagram_json_round_trip():
    dg = rips_diagrams(example_graph())[1]
    back = PersistenceDiagram.from_dict(dg.to_dict())
    assert back == dg
    assert np.array_equal(back.essential, dg.essential)


# --- oracle equivalence ---------------------------------------------------------------

@given(seed=st.integers(0, 2**31), n=st.integers(1, 12), p=st.floats(0.1, 1.0),
       explicit=st.booleans())
def test_h0_matches_flood_fill(seed, n, p, explicit):
    a, cap = random_weighted_graph(np.random.default_rng(seed), n, p_edge=p)
    w = WeightedMatrix(a, cap)
    cfg = FiltrationConfig(max_scale=2.0 if explicit else None)
    m = cfg.resolve(w)
    assert _pairs(h0_diagram(w, cfg)) == h0_bruteforce(a, cap, m)


@given(seed=st.integers(0, 2**31), n=st.integers(3, 8), p=st.floats(0.3, 1.0))
def test_h1_matches_rank_oracle(seed, n, p):
    a, cap = random_weighted_graph(np.random.default_rng(seed), n, p_edge=p)
    w = WeightedMatrix(a, cap)
    cfg = FiltrationConfig(max_dim=1, max_scale="cap")
    h1 = rips_diagrams(w, cfg)[1]
    finite, essential = h1_bruteforce(a, cap, cap)
    got_finite = sorted(map(tuple, h1.pairs[~h1.essential].tolist()))
    got_ess = sorted(h1.pairs[h1.essential, 0].tolist())
    # a class killed exactly at max-scale and one that is essential share coordinates
    assert sorted(got_finite + [(b, cap) for b in got_ess]) == sorted(finite + [(b, cap) for b in essential])
    assert got_ess == essential


# --- invariants -------------------------------------------------------------------------

@given(seed=st.integers(0, 2**31), n=st.integers(2, 9))
def test_permutation_invariance(seed, n):
    rng = np.random.default_rng(seed)
    a, cap = random_weighted_graph(rng, n)
    perm = rng.permutation(n)
    w, wp = WeightedMatrix(a, cap), WeightedMatrix(a[np.ix_(perm, perm)], cap)
    for d1, d2 in zip(rips_diagrams(w), rips_diagrams(wp)):
        assert d1 == d2


@given(seed=st.integers(0, 2**31), n=st.integers(2, 10))
def test_h0_pair_count_and_bounds(seed, n):
    a, cap = random_weighted_graph(np.random.default_rng(seed), n)
    dg = h0_diagram(WeightedMatrix(a, cap), FiltrationConfig(max_scale="cap"))
    assert len(dg) == n
    assert np.all(dg.pairs[:, 0] == 0) and np.all(dg.pairs[:, 1] <= cap)
    assert dg.essential.sum() >= 1


def test_tie_order_is_deterministic():
    a = np.ones((5, 5)) - np.eye(5)
    w = WeightedMatrix(a, 2.0)
    assert rips_diagrams(w) == rips_diagrams(w)
    assert _pairs(rips_diagrams(w)[0]) == [(0, 1)] * 5
