from __future__ import annotations

import numpy as np
import pytest

from junglegame.core_model import REFERENCE_PARAMS, PreconditionError
from junglegame.simulate import (
    Itinerary,
    Trajectory,
    Visit,
    detect_extinction,
    dwell_growth,
    extract_itinerary,
    integrate,
    itinerary_json,
    load_trajectory_csv,
    run,
    trajectory_csv,
)


def _traj(points):
    pts = np.array(points, dtype=float)
    return Trajectory(np.arange(len(pts), dtype=float), pts)


def test_reference_run_shape(reference_run):
    traj = reference_run.trajectory
    assert traj.t[0] == 0.0 and traj.t[-1] == 3000.0
    assert np.max(np.diff(traj.t)) <= 0.1 + 1e-12
    assert traj.x.min() >= 0.0


def test_reference_itinerary(reference_run):
    itin = reference_run.itinerary
    word, lock_in = itin.tail()
    assert word == (1, 4, 2)
    assert 3 in itin.word[:lock_in + 1]
    assert len(itin) - lock_in >= 6
    assert reference_run.extinct == {3}
    assert reference_run.summary() == "extinct: S3; tail cycle: 1→4→2"


def test_reference_dwell_growth(reference_run):
    ratios = dwell_growth(reference_run.itinerary)
    assert set(ratios) == {1, 2, 4}
    assert all(r > 1 for rs in ratios.values() for r in rs)


def test_zero_coordinates_stay_zero():
    traj = integrate(REFERENCE_PARAMS, (0.3, 0.3, 0.0, 0.4), 200.0)
    assert np.all(traj.x[:, 2] == 0.0)


def test_fixed_point_run():
    res = run(REFERENCE_PARAMS, (1, 0, 0, 0), 10.0)
    assert res.summary() == "fixed at ξ1"


@pytest.mark.parametrize("kwargs", [{"t_max": 0}, {"t_max": float("inf")}, {"rel_tol": 0}, {"max_gap": -1}])
def test_integrate_rejects_bad_settings(kwargs):
    with pytest.raises(PreconditionError):
        integrate(REFERENCE_PARAMS, (0.1, 0.1, 0.1, 0.1), **{"t_max": 1.0, **kwargs})


def test_integrate_rejects_bad_ic():
    with pytest.raises(PreconditionError):
        integrate(REFERENCE_PARAMS, (0.1, -0.1, 0.1, 0.1), 1.0)


def test_hysteresis_prevents_chatter():
    # distance to xi1 oscillates between 0.04 and 0.08: a single visit
    pts = [[0.5, 0.5, 0, 0]] + [[1 - d, d, 0, 0] for d in (0.04, 0.08, 0.04, 0.08)] + [[0.5, 0.5, 0, 0]]
    itin = extract_itinerary(_traj(pts))
    assert itin.word == (1,)
    assert itin.visits[0] == Visit(1, 1.0, 5.0)


def test_itinerary_censored_and_start_inside():
    itin = extract_itinerary(_traj([[0, 0, 0.95, 0.05], [0, 0, 0.97, 0.03]]))
    assert itin.visits == [Visit(3, 0.0, 1.0, censored=True)]


def test_itinerary_threshold_validation():
    with pytest.raises(PreconditionError):
        extract_itinerary(_traj([[1, 0, 0, 0]]), 0.2, 0.1)


def test_empty_trajectory():
    assert len(extract_itinerary(Trajectory.empty())) == 0
    with pytest.raises(PreconditionError):
        detect_extinction(Trajectory.empty())


def test_tail_detection():
    itin = Itinerary([Visit(n, i, i + 1) for i, n in enumerate((3, 2, 4, 2, 1, 4, 2, 1, 4, 2, 1))])
    assert itin.tail() == ((1, 4, 2), 2)
    assert Itinerary([Visit(1, 0, 1)]).tail() is None


def test_csv_roundtrip(reference_run):
    data = trajectory_csv(reference_run.trajectory, comment="config_hash=abc")
    assert data.startswith(b"# config_hash=abc\nt,x1,x2,x3,x4\n")
    back = load_trajectory_csv(data)
    assert np.array_equal(back.t, reference_run.trajectory.t)
    assert np.array_equal(back.x, reference_run.trajectory.x)


def test_itinerary_json_deterministic(reference_run):
    a = itinerary_json(reference_run.itinerary, {"seed": 0})
    assert a == itinerary_json(reference_run.itinerary, {"seed": 0})
