from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from junglegame.core_model import InteractionParams, random_params
from junglegame.stability import (
    NEG_INF,
    POS_INF,
    ZERO,
    Classification,
    Cycle,
    DispatchError,
    ExtendedReal,
    UnclassifiedError,
    classify_b3_one_negative,
    classify_b3_two_negative,
    classify_cycle,
    classify_network,
    closed_form_products,
    delta_cliques,
    f_index,
    f_plus,
    network_graph,
    network_stability,
    parse_cycle_id,
    rho_rule,
    simple_cycles,
    stability_report,
)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
fracs = st.fractions(min_value=-100, max_value=100, max_denominator=1000)


# -- extended reals ---------------------------------------------------------


def test_extended_real_arithmetic():
    assert POS_INF > 1e300 and NEG_INF < -1e300
    assert -POS_INF == NEG_INF
    assert POS_INF + 3 == POS_INF
    assert ExtendedReal(2.0) - 0.5 == ExtendedReal(1.5)
    with pytest.raises(ArithmeticError):
        POS_INF - POS_INF
    assert ExtendedReal.from_json(POS_INF.to_json()) == POS_INF
    assert POS_INF.to_json() == "+inf" and NEG_INF.to_json() == "-inf"


# -- f_plus / f_index -------------------------------------------------------


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (0, 0, ZERO),
        (1, 2, POS_INF),
        (0, 3, POS_INF),
        (-1, -2, ZERO),
        (-1, 2, ExtendedReal(1.0)),
        (2, -1, ExtendedReal(1.0)),
        (-2, 1, ZERO),
        (-1, 1, ZERO),
        (1, -1, ZERO),
    ],
)
def test_f_plus_branches(a, b, expected):
    assert f_plus(Fraction(a), Fraction(b)) == expected


@settings(max_examples=500, deadline=None)
@given(finite, finite)
def test_f_plus_total(a, b):
    v = f_plus(a, b)
    assert isinstance(v, ExtendedReal)
    assert v == POS_INF or (v.is_finite and v.value >= 0)


@settings(max_examples=500, deadline=None)
@given(fracs, fracs)
def test_f_index_antisymmetric_exact(a, b):
    assert f_index(-a, -b) == -f_index(a, b)


@settings(max_examples=200, deadline=None)
@given(fracs)
def test_f_index_against_one(b):
    v = f_index(b, 1)
    if b >= 0:
        assert v == POS_INF
    elif b > -1:
        assert v == ExtendedReal(float(-1 / b - 1)) or math.isclose(v.value, float(-1 / b - 1))
    else:
        assert v == ZERO or v.value <= 0


# -- graph structure --------------------------------------------------------


def test_network_graph_and_cycles(ref):
    g = network_graph(ref)
    assert g == {1: {4}, 2: {1}, 3: {1, 2}, 4: {2, 3}}
    assert simple_cycles(g) == [(1, 4, 2), (1, 4, 3), (1, 4, 3, 2)]


def test_delta_cliques(ref):
    names = sorted(d.name for d in delta_cliques(network_graph(ref)))
    assert names == ["Delta321", "Delta432"]
    assert delta_cliques({1: {2}, 2: {3}, 3: {1}}) == []


def test_parse_cycle_id():
    assert parse_cycle_id("Σ142") == parse_cycle_id("142") == parse_cycle_id((1, 4, 2)) == (1, 4, 2)
    with pytest.raises(ValueError):
        parse_cycle_id("15")


# -- lemmas -----------------------------------------------------------------


def test_one_negative_lemma_eas():
    cyc = Cycle.from_ab((1, 2, 3), (2, 2, 2), (Fraction(-1, 2), 1, 1))
    r = classify_b3_one_negative(cyc)
    assert r.classification is Classification.EAS
    assert r.sigma_at(3, 1) == ExtendedReal(1.0)


def test_one_negative_lemma_cu():
    cyc = Cycle.from_ab((1, 2, 3), (Fraction(1, 2), 1, 1), (Fraction(-1, 2), 1, 1))
    assert classify_b3_one_negative(cyc).classification is Classification.CU


def test_boundary_a_product_is_unclassified():
    cyc = Cycle.from_ab((1, 2, 3), (2, Fraction(1, 2), 1), (Fraction(-1, 2), 1, 1))
    r = classify_b3_one_negative(cyc)
    assert r.classification is Classification.UNCLASSIFIED
    assert "a_product == 1" in r.reasons[0]
    cyc2 = Cycle.from_ab((1, 2, 3), (2, Fraction(1, 2), 1), (Fraction(-1, 10), Fraction(-1, 10), 5))
    assert classify_b3_two_negative(cyc2).classification is Classification.UNCLASSIFIED


def test_lemma_dispatch_errors():
    cyc = Cycle.from_ab((1, 2, 3), (2, 2, 2), (1, 1, 1))
    with pytest.raises(DispatchError):
        classify_b3_one_negative(cyc)
    with pytest.raises(DispatchError):
        classify_b3_two_negative(cyc)


# -- reference classification -------------------------------------------------


def test_reference_classification(ref):
    reps = classify_network(ref)
    r142 = reps["142"]
    assert r142.classification is Classification.EAS
    assert r142.sigma_at(4, 2) == POS_INF
    assert r142.sigma_at(2, 1) == POS_INF
    assert abs(r142.sigma_at(1, 4).value - (ref.e_A / ref.e_B - 1)) <= 1e-12
    assert reps["143"].classification is Classification.CU
    assert reps["1432"].classification is Classification.CU
    assert classify_cycle("Σ143", ref).classification is Classification.CU


def test_violated_assumptions_are_unclassified(ref):
    bad = InteractionParams(**{**ref.to_dict(), "e_A": 1.5})
    for r in classify_network(bad).values():
        assert r.classification is Classification.UNCLASSIFIED
        assert r.reasons


def test_classification_parameter_free():
    rng = np.random.default_rng(11)
    for _ in range(100):
        p = random_params(rng)
        got = {k: r.classification for k, r in classify_network(p).items()}
        assert got == {"142": Classification.EAS, "143": Classification.CU, "1432": Classification.CU}


# -- rho and network ----------------------------------------------------------


def test_rho_rules_reference(ref):
    value, rule = rho_rule(2, (1, 4, 2), ref)
    assert value == 1.0
    net = network_stability(ref)
    assert net.consistent and net.sufficient_condition and net.asymptotically_stable
    closed = closed_form_products(ref)
    for cid, v in net.rho_products.items():
        assert math.isclose(v, closed[cid], rel_tol=1e-12)


def test_rho_rule_rejects_nodes_off_cycle(ref):
    with pytest.raises((UnclassifiedError, ValueError)):
        rho_rule(3, (1, 4, 2), ref)


def test_rho_closed_forms_random():
    rng = np.random.default_rng(5)
    for _ in range(100):
        p = random_params(rng)
        net = network_stability(p)
        assert net.consistent
        assert net.all_products_exceed_one


def test_report_is_json_ready(ref):
    import json

    doc = stability_report(ref)
    text = json.dumps(doc, allow_nan=False)
    assert '"+inf"' in text
