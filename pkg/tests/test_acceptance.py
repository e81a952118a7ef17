"""Acceptance criteria 1-8.  Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``.
"""
from __future__ import annotations

import contextlib
import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from junglegame.cli import main
from junglegame.core_model import (
    REFERENCE_IC,
    REFERENCE_PARAMS,
    InteractionParams,
    analytic_spectrum,
    axis_point,
    check_invariant_sphere,
    numerical_jacobian,
    random_params,
)
from junglegame.invasion import build_scenario, predict_outcome, simulated_survivors, weakest_prey_rule
from junglegame.simulate import dwell_growth, run
from junglegame.stability import (
    Classification,
    Cycle,
    ExtendedReal,
    POS_INF,
    classify_b3_one_negative,
    classify_b3_two_negative,
    classify_network,
    closed_form_products,
    f_index,
    f_plus,
    network_stability,
)

EXPECTED = {"142": Classification.EAS, "143": Classification.CU, "1432": Classification.CU}


@pytest.fixture
def criterion(capsys):
    """Print one PASS/FAIL line for the criterion, bypassing output capture."""

    @contextlib.contextmanager
    def _run(number: int, label: str):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            with capsys.disabled():
                print(f"\n[FAIL] criterion {number}: {label} ({type(exc).__name__}: {exc})")
            raise
        with capsys.disabled():
            print(f"\n[PASS] criterion {number}: {label} ({time.perf_counter() - start:.2f} s)")

    return _run


def test_criterion_1_reference_classification(criterion, capsys):
    with criterion(1, "reference classification via analyze"):
        start = time.perf_counter()
        code = main(["analyze"])
        elapsed = time.perf_counter() - start
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        cycles = {c["id"]: c for c in doc["cycles"]}
        assert {k: c["class"] for k, c in cycles.items()} == {k: v.value for k, v in EXPECTED.items()}
        sigma = {(s["from"], s["to"]): s["value"] for s in cycles["142"]["sigma"]}
        assert sigma[(4, 2)] == "+inf" and sigma[(2, 1)] == "+inf"
        p = REFERENCE_PARAMS
        assert abs(sigma[(1, 4)] - (p.e_A / p.e_B - 1)) <= 1e-12
        assert round(sigma[(1, 4)], 10) == 0.0769230769
        assert doc["network"]["sufficient_condition"] is True
        lhs = Fraction(p.c_B) ** 2 * Fraction(p.c_D)
        rhs = (Fraction(p.c_B) + Fraction(p.e_A)) * Fraction(p.e_B) * Fraction(p.e_D)
        assert lhs > rhs and lhs == Fraction(p.c_D) and math.isclose(float(rhs), 0.7956, abs_tol=1e-12)
        assert elapsed < 1.0, f"took {elapsed:.2f} s"


def test_criterion_2_parameter_independence(criterion):
    with criterion(2, "classifications identical over 100 random valid draws"):
        start = time.perf_counter()
        rng = np.random.default_rng(2024)
        for _ in range(100):
            p = random_params(rng)
            assert p.standing_assumptions and p.sufficient_condition()
            got = {k: r.classification for k, r in classify_network(p).items()}
            assert got == EXPECTED, (p, got)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"took {elapsed:.2f} s"


def test_criterion_3_oracle_equivalence(criterion):
    with criterion(3, "finite-difference spectra and rho closed forms"):
        rng = np.random.default_rng(3)
        sets = [REFERENCE_PARAMS] + [random_params(rng) for _ in range(100)]
        for p in sets:
            for j in range(1, 5):
                fd = np.sort(np.linalg.eigvals(numerical_jacobian(axis_point(j), p)).real)
                exact = np.sort(analytic_spectrum(j, p).eigenvalues())
                assert np.max(np.abs(fd - exact)) <= 1e-8, (p, j)
            net = network_stability(p)
            closed = closed_form_products(p)
            assert set(net.rho_products) == set(closed) == {"142", "143", "1432"}
            for cid, v in net.rho_products.items():
                assert abs(v - closed[cid]) <= 1e-12 * abs(closed[cid]), (p, cid)


def test_criterion_4_simulation(criterion):
    with criterion(4, "reference run locks onto 1-4-2 with S3 extinct"):
        start = time.perf_counter()
        res = run(REFERENCE_PARAMS, REFERENCE_IC, 3000.0)
        elapsed = time.perf_counter() - start
        itin = res.itinerary
        tail = itin.tail()
        assert tail is not None
        word, lock_in = tail
        assert word == (1, 4, 2)
        last6 = itin.word[-6:]
        k = last6.index(1)
        assert all(last6[i] == (1, 4, 2)[(i - k) % 3] for i in range(6))
        assert len(itin) - lock_in >= 6
        traj = res.trajectory
        final_third = traj.t >= traj.t[-1] * 2 / 3
        assert traj.x[final_third, 2].max() < 1e-8
        assert 3 in itin.word[:lock_in + 1], itin.word
        ratios = dwell_growth(itin)
        assert ratios and all(r > 1 for rs in ratios.values() for r in rs), ratios
        assert elapsed < 30.0, f"took {elapsed:.2f} s"


def test_criterion_5_invariant_sphere(criterion):
    with criterion(5, "attracting sphere condition"):
        start = time.perf_counter()
        chk = check_invariant_sphere(REFERENCE_PARAMS, 10_000, seed=0)
        assert chk.holds and chk.max_value < 0
        big = InteractionParams(**{**REFERENCE_PARAMS.to_dict(), "e_A": 1.5})
        assert check_invariant_sphere(big, 10_000, seed=0).holds is False
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"took {elapsed:.2f} s"


def test_criterion_6_invasion(criterion):
    with criterion(6, "weak and strong alien outcomes"):
        weak = build_scenario("weak")
        pw = predict_outcome(weak)
        assert set(pw.survivors) == {"S1", "S2", "S3"} and pw.alien_suppressed
        strong = build_scenario("strong")
        ps = predict_outcome(strong)
        assert set(ps.survivors) == {"S2", "S3", "A_s"} and ps.replaced == "S1"
        for labels in [("S1", "S2", "S3"), ("S2", "S3", "S1"), ("S3", "S1", "S2")]:
            scn = build_scenario("strong", labels)
            assert weakest_prey_rule(scn) == predict_outcome(scn).replaced
        for scn, pred in ((weak, pw), (strong, ps)):
            assert set(simulated_survivors(scn, REFERENCE_PARAMS, t_max=3000.0)) == set(pred.survivors)


def test_criterion_7_index_calculus(criterion):
    with criterion(7, "f_index antisymmetry, f_plus totality, boundary cases"):
        rng = np.random.default_rng(7)
        pts = rng.standard_normal((100_000, 2)) * rng.choice([1e-6, 1.0, 1e6], size=(100_000, 1))
        for a, b in pts.tolist():
            assert f_index(-a, -b) == -f_index(a, b), (a, b)
        samples = [0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 1e-300, -1e-300]
        for a in samples:
            for b in samples:
                v = f_plus(a, b)
                assert isinstance(v, ExtendedReal)
                assert v == POS_INF or (v.is_finite and v.value >= 0)
        one = Cycle.from_ab((1, 2, 3), (2, Fraction(1, 2), 1), (Fraction(-1, 2), 1, 1))
        two = Cycle.from_ab((1, 2, 3), (2, Fraction(1, 2), 1), (Fraction(-1, 10), Fraction(-1, 10), 5))
        for rep in (classify_b3_one_negative(one), classify_b3_two_negative(two)):
            assert rep.quantities["a_product"] == 1.0
            assert rep.classification is Classification.UNCLASSIFIED


def test_criterion_8_determinism(criterion, tmp_path, capsys):
    with criterion(8, "byte-identical simulate and sweep outputs"):
        for run_dir in ("a", "b"):
            assert main(["simulate", "--seed", "1", "--out", str(tmp_path / run_dir)]) == 0
            assert main(["sweep", "--seed", "1", "--grid", "c_D=0.73:1.5:20,e_B=0.3:0.69:5",
                         "--out", str(tmp_path / run_dir)]) == 0
        capsys.readouterr()
        for name in ("trajectory.csv", "itinerary.json", "run.json", "sweep.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name
