import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from resetorbit import (
    HorizonExceeded,
    OriginInput,
    Piece,
    in_C0,
    in_flow_set,
    make_params,
    propagate,
    time_back_to_C0,
    time_to_D,
)
from resetorbit.dynamics import flow_samples
from resetorbit.events import ATOL_EVENT, time_to_guard

from oracles import dense_first_root

P = make_params(1.0, 0.3, 1.0, 0.2)

# frozen from oracles.dense_first_root (dense sampling at 1e-5 s + brentq on the eigen form)
TAU_D_FROM_CORNER = 1.7410629920716152
TAU_BACK_X2_ZERO = 0.49642328262319696

flow_states = (
    st.tuples(st.floats(-2, 2), st.floats(-2, 2))
    .filter(lambda x: math.hypot(*x) > 0.05)
    .filter(lambda x: in_flow_set(P, x))
)


def test_on_D_already():
    r = time_to_D(P, (0.0, -0.3))
    assert r.tau == 0.0 and r.state == (0.0, -0.3) and r.piece is Piece.D


def test_time_to_D_from_corner_matches_dense_oracle():
    r = time_to_D(P, (0.2, 0.0))
    assert abs(r.tau - TAU_D_FROM_CORNER) <= 1e-8
    assert dense_first_root(1.0, 0.3, 1.0, (0.2, 0.0), 0) == pytest.approx(TAU_D_FROM_CORNER, abs=1e-12)
    assert r.state.x1 == 0.0
    assert r.state.x2 == pytest.approx(propagate(P, (0.2, 0.0), r.tau).x2, abs=1e-14)


def test_origin_rejected():
    with pytest.raises(OriginInput):
        time_to_D(P, (0.0, 0.0))
    with pytest.raises(OriginInput):
        time_back_to_C0(P, (0.0, 0.0))


def test_horizon():
    with pytest.raises(HorizonExceeded):
        time_to_D(P, (0.2, 0.0), horizon=0.5)


def test_back_on_C0_is_zero():
    for x in [(0.2, 0.4), (0.2, 0.0), (-0.2, -0.1), (0.05, 0.0)]:
        assert time_back_to_C0(P, x).tau == 0.0
    assert time_back_to_C0(P, (0.2, 0.0)).piece is Piece.C0_VERTICAL_PLUS
    assert time_back_to_C0(P, (-0.2, 0.0)).piece is Piece.C0_VERTICAL_MINUS
    assert time_back_to_C0(P, (0.05, 0.0)).piece is Piece.C0_HORIZONTAL


def test_back_horizontal_piece():
    x = (0.1, -0.05)
    r = time_back_to_C0(P, x)
    assert r.piece is Piece.C0_HORIZONTAL
    assert 0.0 < r.state.x1 < 0.2
    assert abs(r.tau - TAU_BACK_X2_ZERO) <= 1e-8
    assert np.allclose(propagate(P, r.state, r.tau), x, atol=1e-9, rtol=0)


def test_back_vertical_pieces():
    r = time_back_to_C0(P, (0.0, -0.5))
    assert r.piece is Piece.C0_VERTICAL_PLUS and r.state.x1 == 0.2 and r.state.x2 > 0
    r = time_back_to_C0(P, (-0.3, -0.05))
    assert r.piece is Piece.C0_VERTICAL_MINUS and r.state.x2 < 0


def test_back_search_past_outer_turn():
    # turning point beyond theta_hat: the arc has to be followed past x2 = 0
    x = (0.5, 0.0)
    r = time_back_to_C0(P, x)
    assert r.piece is Piece.C0_VERTICAL_PLUS and r.tau > 0
    t_dense = dense_first_root(1.0, 0.3, 1.0, x, 0, target=0.2, direction=-1.0)
    assert r.tau == pytest.approx(t_dense, abs=1e-8)


def test_grazing_corner():
    # the arc that leaves the corner: its backward search must land exactly on the corner
    y = propagate(P, (0.2, 0.0), 0.7)
    r = time_back_to_C0(P, y)
    assert r.tau == pytest.approx(0.7, abs=1e-9)
    assert r.state == pytest.approx((0.2, 0.0), abs=1e-10)


@settings(max_examples=150, deadline=None)
@given(flow_states)
def test_forward_round_trip_and_minimality(x):
    r = time_to_D(P, x)
    scale = 1 + math.hypot(*x)
    y = propagate(P, x, r.tau)
    assert abs(y.x1 - r.state.x1) <= 1e-9 * scale and abs(y.x2 - r.state.x2) <= 1e-9 * scale
    if abs(x[0]) > 1e-12:
        samples = flow_samples(P, x, np.linspace(0.0, r.tau, 1001)[1:-1])
        assert np.all(np.sign(samples[:, 0]) == np.sign(x[0]))
    if x[0] * x[1] < 0 and abs(x[0]) > 1e-6:
        assert r.tau > 0.0


@settings(max_examples=150, deadline=None)
@given(flow_states)
def test_backward_round_trip_and_membership(x):
    r = time_back_to_C0(P, x)
    scale = 1 + math.hypot(*x)
    assert np.max(np.abs(np.subtract(propagate(P, r.state, r.tau), x))) <= 1e-9 * scale
    assert in_C0(P, r.state)
    y = propagate(P, x, -r.tau)
    assert np.max(np.abs(np.subtract(y, r.state))) <= max(ATOL_EVENT, 1e-12 * scale) * 10
    # nothing on C0 earlier along the backward arc (dense check on the sampled pieces)
    ts = np.linspace(0.0, r.tau, 1001)[1:-1]
    back = flow_samples(P, x, -ts)
    on_vertical = (np.abs(np.abs(back[:, 0]) - 0.2) < 1e-12) & (back[:, 0] * back[:, 1] >= 0)
    assert not on_vertical.any()


@settings(max_examples=100, deadline=None)
@given(flow_states)
def test_symmetry_of_crossing_times(x):
    neg = (-x[0], -x[1])
    assert time_to_D(P, neg).tau == time_to_D(P, x).tau
    assert time_back_to_C0(P, neg).tau == time_back_to_C0(P, x).tau


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 3.0))
def test_post_jump_states_lie_on_C0(v):
    assert time_back_to_C0(P, (0.2, v)).tau == 0.0
    assert time_back_to_C0(P, (-0.2, -v)).tau == 0.0


def test_guard_crossing_in_motion_direction():
    p = make_params(1.0, 0.3, 1.0, 0.6)
    r = time_to_guard(p, (0.4, 0.5), 0.2)
    assert r.state.x1 == 0.2 and r.state.x2 < 0
    assert np.allclose(propagate(p, (0.4, 0.5), r.tau), r.state, atol=1e-10)
    # state sitting on its own guard line
    assert time_to_guard(p, (0.2, -0.3), 0.2).tau == 0.0
    # not the line for the opposite direction of motion
    assert time_to_guard(p, (0.2, 0.3), 0.2).tau > 0.0
    with pytest.raises(HorizonExceeded):
        time_to_guard(p, (0.05, -0.05), 0.2)


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_time_to_D_matches_dense_oracle(x1, x2):
    assume(math.hypot(x1, x2) > 0.05 and in_flow_set(P, (x1, x2)) and abs(x1) > 1e-6)
    r = time_to_D(P, (x1, x2))
    assume(r.tau < 9.0)
    assert r.tau == pytest.approx(dense_first_root(1.0, 0.3, 1.0, (x1, x2), 0), abs=1e-8)
