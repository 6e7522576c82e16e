import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from accord import casestudy
from accord.errors import ThresholdOrderViolation, ValidationFailed
from accord.matrix import build_matrix
from accord.promethee import (
    FlowTable,
    PrometheeParams,
    flows,
    net_flow_ranking,
    preference,
    preference_index,
)

# frozen by scripts/compute_oracles.py
D1_NET = (
    -2.3262033333333334, -1.307833333333333, -0.6334633333333319, 0.22653666666666838,
    -0.15380999999999911, 3.1414500000000016, -0.8924333333333325, -1.4869633333333327,
    -1.1877666666666649, -1.4499699999999982, 6.1530499999999995, -0.9132266666666657,
    0.7476933333333342, 0.1388699999999985, 0.654869999999999, -0.5809333333333337,
    -0.23693333333333344, 0.10706666666666687,
)
D1_PLUS_FIRST = 1.9250966666666662
D1_MINUS_FIRST = 4.2513
PI_729_OVER_732 = 0.0
PI_732_OVER_729 = 0.17199999999999996
PROMETHEE_RANKS = (
    (18, 15, 11, 5, 8, 2, 12, 17, 14, 16, 1, 13, 3, 6, 4, 10, 9, 7),
    (18, 17, 16, 7, 9, 2, 15, 11, 13, 10, 1, 14, 3, 5, 4, 12, 8, 6),
    (13, 12, 9, 7, 10, 2, 15, 16, 17, 18, 1, 14, 11, 6, 4, 8, 5, 3),
    (10, 9, 7, 5, 13, 2, 15, 17, 14, 18, 1, 16, 8, 12, 11, 6, 4, 3),
)


# -- preference function


def test_ramp_midpoint():
    assert preference(0.45, 0.3, 0.6) == pytest.approx(0.5, abs=1e-12)


def test_below_indifference_is_zero():
    assert preference(-1.0, 0.3, 0.6) == 0.0
    assert preference(0.3, 0.3, 0.6) == 0.0


def test_saturation_is_one():
    assert preference(10.6, 0.3, 0.6) == 1.0
    assert preference(0.6, 0.3, 0.6) == 1.0


def test_zero_thresholds_act_as_step():
    assert preference(1e-12, 0.0, 0.0) == 1.0
    assert preference(0.0, 0.0, 0.0) == 0.0
    assert preference(-1e-12, 0.0, 0.0) == 0.0


def test_swapped_thresholds_rejected():
    with pytest.raises(ThresholdOrderViolation):
        preference(0.5, 0.6, 0.3)
    with pytest.raises(ThresholdOrderViolation):
        PrometheeParams((1.0,), (0.6,), (0.3,))
    with pytest.raises(ThresholdOrderViolation):
        PrometheeParams((1.0,), (0.5,), (0.5,))


def test_zero_threshold_pair_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="accord.promethee"):
        PrometheeParams((1.0, 2.0), (0.0, 0.1), (0.0, 0.2))
    assert any("q = p = 0" in rec.message for rec in caplog.records)


def test_nonpositive_weight_rejected():
    with pytest.raises(ValidationFailed):
        PrometheeParams((0.0,), (0.1,), (0.2,))


@given(
    d=st.floats(min_value=-100, max_value=100),
    q=st.floats(min_value=0, max_value=10),
    span=st.floats(min_value=1e-6, max_value=10),
)
def test_preference_bounded_and_monotone(d, q, span):
    p = q + span
    value = preference(d, q, p)
    assert 0.0 <= value <= 1.0
    assert preference(d + 0.5, q, p) >= value


@given(q=st.floats(min_value=0, max_value=10), span=st.floats(min_value=0.01, max_value=10))
def test_preference_continuous_at_thresholds(q, span):
    p = q + span
    eps = 1e-9
    assert preference(q + eps, q, p) <= 1e-6
    assert preference(p - eps, q, p) >= 1.0 - 1e-6


# -- pairwise index


def two_action_matrix(row_a, row_b, directions=None):
    n = len(row_a)
    directions = directions or ["max"] * n
    return build_matrix(["a", "b"], [(f"c{j}", directions[j]) for j in range(n)], [row_a, row_b])


def test_identical_rows_yield_zero_both_ways():
    m = two_action_matrix([1.0, 2.0], [1.0, 2.0])
    params = PrometheeParams((1.0, 3.0), (0.1, 0.1), (0.5, 0.5 + 0.4))
    assert preference_index(0, 1, m, params) == 0.0
    assert preference_index(1, 0, m, params) == 0.0


def test_total_dominance_yields_one():
    m = two_action_matrix([10.0, 10.0], [1.0, 1.0])
    params = PrometheeParams((2.0, 1.0), (0.5, 0.5), (1.0, 1.0))
    assert preference_index(0, 1, m, params) == 1.0
    assert preference_index(1, 0, m, params) == 0.0


def test_minimize_direction_flips_difference():
    m = two_action_matrix([1.0], [5.0], directions=["min"])
    params = PrometheeParams((1.0,), (0.0,), (1.0,))
    assert preference_index(0, 1, m, params) == 1.0


def test_case_study_index_frozen(case_matrix):
    params = casestudy.promethee_params(0)
    assert preference_index(0, 1, case_matrix, params) == pytest.approx(PI_729_OVER_732, abs=1e-12)
    assert preference_index(1, 0, case_matrix, params) == pytest.approx(PI_732_OVER_729, abs=1e-12)


def test_same_action_rejected(case_matrix):
    with pytest.raises(ValidationFailed):
        preference_index(2, 2, case_matrix, casestudy.promethee_params(0))


# -- flows


def test_identical_actions_have_zero_flows():
    m = two_action_matrix([1.0, 2.0], [1.0, 2.0])
    params = PrometheeParams((1.0, 1.0), (0.0, 0.0), (1.0, 1.0))
    table = flows(m, params)
    assert table.plus == (0.0, 0.0)
    assert table.minus == (0.0, 0.0)
    assert table.net == (0.0, 0.0)


def test_dominance_chain_flows():
    m = build_matrix(["a", "b", "c"], [("c0", "max")], [[30.0], [20.0], [10.0]])
    params = PrometheeParams((1.0,), (1.0,), (2.0,))
    table = flows(m, params)
    assert table.plus == (2.0, 1.0, 0.0)
    assert table.minus == (0.0, 1.0, 2.0)
    assert table.net == (2.0, 0.0, -2.0)
    assert net_flow_ranking(table).ranks == (1, 2, 3)


def test_decider1_flows_frozen(case_matrix):
    table = flows(case_matrix, casestudy.promethee_params(0))
    assert table.net == pytest.approx(D1_NET, abs=1e-12)
    assert table.plus[0] == pytest.approx(D1_PLUS_FIRST, abs=1e-12)
    assert table.minus[0] == pytest.approx(D1_MINUS_FIRST, abs=1e-12)


def test_all_decider_flows_match_bruteforce(case_matrix):
    values = [list(row) for row in casestudy.PERFORMANCE]
    directions = [1.0] * 7
    for k in range(4):
        params = casestudy.promethee_params(k)
        table = flows(case_matrix, params)
        plus, minus, net = oracles.outranking_flows_ref(
            values, directions, params.weights, params.indifference, params.preference
        )
        assert table.plus == pytest.approx(plus, abs=1e-9)
        assert table.minus == pytest.approx(minus, abs=1e-9)
        assert table.net == pytest.approx(net, abs=1e-9)
        assert net_flow_ranking(table).ranks == PROMETHEE_RANKS[k]


def test_ranking_tie_breaks():
    table = FlowTable(plus=(1.0, 2.0, 2.0), minus=(1.0, 2.0, 2.0), net=(0.0, 0.0, 0.0))
    # all nets tie: higher plus first, then lower index
    assert net_flow_ranking(table).ranks == (3, 1, 2)


@st.composite
def matrix_and_params(draw):
    n_actions = draw(st.integers(min_value=2, max_value=6))
    n_criteria = draw(st.integers(min_value=1, max_value=4))
    cell = st.floats(min_value=-50, max_value=50)
    rows = [
        draw(st.lists(cell, min_size=n_criteria, max_size=n_criteria)) for _ in range(n_actions)
    ]
    directions = [draw(st.sampled_from(["max", "min"])) for _ in range(n_criteria)]
    m = build_matrix(
        [f"a{i}" for i in range(n_actions)],
        [(f"c{j}", directions[j]) for j in range(n_criteria)],
        rows,
    )
    weights = tuple(draw(st.floats(min_value=0.1, max_value=10)) for _ in range(n_criteria))
    q = tuple(draw(st.floats(min_value=0, max_value=5)) for _ in range(n_criteria))
    p = tuple(qj + draw(st.floats(min_value=1e-3, max_value=10)) for qj in q)
    return m, PrometheeParams(weights, q, p)


@given(matrix_and_params())
def test_flow_conservation(mp):
    m, params = mp
    assert abs(sum(flows(m, params).net)) <= 1e-9


# power-of-two scales keep every product exact (see test_protocol for why)
@given(matrix_and_params(), st.integers(min_value=-12, max_value=12))
def test_weight_scaling_leaves_ranking_unchanged(mp, scale_exp):
    m, params = mp
    scale = 2.0 ** scale_exp
    scaled = PrometheeParams(
        tuple(w * scale for w in params.weights), params.indifference, params.preference
    )
    assert net_flow_ranking(flows(m, params)) == net_flow_ranking(flows(m, scaled))


@given(matrix_and_params())
def test_index_bounds_and_one_sided(mp):
    m, params = mp
    for a in range(m.n_actions):
        for b in range(a + 1, m.n_actions):
            ab = preference_index(a, b, m, params)
            ba = preference_index(b, a, m, params)
            assert 0.0 <= ab <= 1.0
            assert 0.0 <= ba <= 1.0
            for j in range(m.n_criteria):
                d = m.value(a, j) - m.value(b, j)
                if m.criteria[j].direction.value == "min":
                    d = -d
                fwd = preference(d, params.indifference[j], params.preference[j])
                rev = preference(-d, params.indifference[j], params.preference[j])
                assert fwd == 0.0 or rev == 0.0
