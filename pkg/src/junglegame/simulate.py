"""Trajectory integration, itinerary extraction and extinction detection."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .core_model import NODES, InteractionParams, PreconditionError, as_state, interaction_matrix

DEFAULT_RTOL = 1e-10
# effectively pure relative control: coordinates decay to 1e-300 near the cycle
DEFAULT_ATOL = 1e-300
DEFAULT_TMAX = 3000.0
DEFAULT_MAX_GAP = 0.1
DEFAULT_ENTER = 0.05
DEFAULT_EXIT = 0.10
DEFAULT_EXTINCTION_THRESHOLD = 1e-8
DEFAULT_TAIL_FRACTION = 0.5

CSV_HEADER = "t,x1,x2,x3,x4"


class IntegrationError(RuntimeError):
    def __init__(self, message: str, last_time: float):
        super().__init__(f"{message} (last good time {last_time!r})")
        self.last_time = last_time


@dataclass
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    @classmethod
    def empty(cls) -> Trajectory:
        return cls(np.zeros(0), np.zeros((0, 4)))


def integrate(
    p: InteractionParams | np.ndarray,
    ic,
    t_max: float = DEFAULT_TMAX,
    rel_tol: float = DEFAULT_RTOL,
    abs_tol: float = DEFAULT_ATOL,
    *,
    max_gap: float = DEFAULT_MAX_GAP,
    method: str = "DOP853",
    box: float = 10.0,
) -> Trajectory:
    """Integrate from ``ic`` over ``[0, t_max]`` with an adaptive embedded Runge-Kutta pair.

    ``p`` may also be a 4x4 interaction matrix (used for relabeled systems).
    Samples are taken from the dense output on a uniform grid with spacing
    at most ``max_gap``.  Components that start at exactly zero stay exactly
    zero.  Negative samples can only come from rounding in the subnormal
    range and are flushed to zero.
    """
    x0 = as_state(ic)
    if not (t_max > 0 and math.isfinite(t_max)):
        raise PreconditionError(f"t_max must be finite and > 0, got {t_max!r}")
    if not (rel_tol > 0 and abs_tol > 0 and max_gap > 0):
        raise PreconditionError("tolerances and max_gap must be > 0")
    m = p if isinstance(p, np.ndarray) else interaction_matrix(p)

    def field_(_t, x):
        return x * (1.0 - x.sum() + m @ x)

    n = max(1, math.ceil(t_max / max_gap))
    grid = np.linspace(0.0, t_max, n + 1)
    sol = solve_ivp(field_, (0.0, t_max), x0, method=method, t_eval=grid, rtol=rel_tol, atol=abs_tol)
    last = float(sol.t[-1]) if sol.t.size else 0.0
    if sol.status != 0:
        raise IntegrationError(f"integration failed: {sol.message}", last)
    x = sol.y.T
    if not np.all(np.isfinite(x)):
        bad = int(np.argmax(~np.all(np.isfinite(x), axis=1)))
        raise IntegrationError("non-finite state", float(sol.t[bad - 1]) if bad else 0.0)
    x = np.maximum(x, 0.0) + 0.0  # also turns -0.0 into 0.0
    if np.any(x > box):
        bad = int(np.argmax(np.any(x > box, axis=1)))
        raise IntegrationError(f"state left the box [0, {box}]", float(sol.t[bad - 1]) if bad else 0.0)
    meta = {"method": method, "rel_tol": rel_tol, "abs_tol": abs_tol, "t_max": t_max,
            "max_gap": float(grid[1] - grid[0]), "nfev": int(sol.nfev)}
    return Trajectory(sol.t.copy(), x, meta)


@dataclass(frozen=True)
class Visit:
    node: int
    entry: float
    exit: float
    censored: bool = False

    @property
    def dwell(self) -> float:
        return self.exit - self.entry


@dataclass
class Itinerary:
    visits: list[Visit]

    def __len__(self):
        return len(self.visits)

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(v.node for v in self.visits)

    def tail(self, min_repeats: int = 2) -> tuple[tuple[int, ...], int] | None:
        """Shortest word repeated at the end of the itinerary, and where the repetition starts.

        The word is rotated to begin with its smallest node.  Returns ``None``
        when no word of length >= 2 repeats ``min_repeats`` times.
        """
        w = self.word
        n = len(w)
        for period in range(2, len(NODES) + 1):
            run = 0
            for i in range(n - period - 1, -1, -1):
                if w[i] != w[i + period]:
                    break
                run += 1
            length = run + period
            if n >= period * min_repeats and length >= period * min_repeats:
                last = w[n - period:]
                k = last.index(min(last))
                return last[k:] + last[:k], n - length
        return None

    def to_dict(self) -> dict:
        tail = self.tail()
        return {
            "visits": [
                {"node": v.node, "entry": v.entry, "exit": v.exit, "dwell": v.dwell, "censored": v.censored}
                for v in self.visits
            ],
            "tail_word": list(tail[0]) if tail else None,
            "lock_in_index": tail[1] if tail else None,
        }


def _distances(x: np.ndarray) -> np.ndarray:
    """Sup-norm distance of every sample to each unit equilibrium, shape (n, 4)."""
    eye = np.eye(4)
    return np.abs(x[:, None, :] - eye[None, :, :]).max(axis=2)


def extract_itinerary(traj: Trajectory, epsilon_enter: float = DEFAULT_ENTER,
                      epsilon_exit: float = DEFAULT_EXIT) -> Itinerary:
    """Visits to the single-species equilibria, with hysteresis.

    A visit opens when the sup-norm distance to xi_j drops below
    ``epsilon_enter`` and closes at the first sample farther than
    ``epsilon_exit``.  A run whose first sample is already within
    ``epsilon_exit`` of a node starts inside a visit.  A visit still open at
    the end is marked censored.
    """
    if not (0 < epsilon_enter < epsilon_exit < 0.5):
        raise PreconditionError(
            f"need 0 < epsilon_enter < epsilon_exit < 0.5, got {epsilon_enter!r}, {epsilon_exit!r}"
        )
    if len(traj) == 0:
        return Itinerary([])
    d = _distances(traj.x)
    t = traj.t
    visits = []
    current, start = None, 0.0
    near0 = np.flatnonzero(d[0] <= epsilon_exit)
    if near0.size:
        current, start = int(near0[0]) + 1, float(t[0])
    for i in range(1, len(t)):
        if current is not None:
            if d[i, current - 1] > epsilon_exit:
                visits.append(Visit(current, start, float(t[i])))
                current = None
        if current is None:
            inside = np.flatnonzero(d[i] < epsilon_enter)
            if inside.size:
                current, start = int(inside[0]) + 1, float(t[i])
    if current is not None:
        visits.append(Visit(current, start, float(t[-1]), censored=True))
    return Itinerary(visits)


def detect_extinction(traj: Trajectory, threshold: float = DEFAULT_EXTINCTION_THRESHOLD,
                      tail_fraction: float = DEFAULT_TAIL_FRACTION) -> set[int]:
    """Species whose density stays below ``threshold`` over the trailing part of the run."""
    if len(traj) == 0:
        raise PreconditionError("empty trajectory")
    if not threshold > 0 or not 0 < tail_fraction <= 1:
        raise PreconditionError("need threshold > 0 and 0 < tail_fraction <= 1")
    t0, t1 = traj.t[0], traj.t[-1]
    window = traj.t >= t1 - tail_fraction * (t1 - t0)
    peak = traj.x[window].max(axis=0)
    return {i + 1 for i in range(4) if peak[i] < threshold}


def dwell_growth(itin: Itinerary) -> dict[int, list[float]]:
    """Ratios of successive completed dwell times per node, over the repeating tail."""
    tail = itin.tail()
    visits = itin.visits[tail[1]:] if tail else itin.visits
    per_node: dict[int, list[float]] = {}
    for v in visits:
        if not v.censored:
            per_node.setdefault(v.node, []).append(v.dwell)
    return {
        node: [b / a for a, b in zip(d, d[1:])]
        for node, d in sorted(per_node.items())
        if len(d) >= 2
    }


# -- export -----------------------------------------------------------------


def trajectory_csv(traj: Trajectory, comment: str | None = None) -> bytes:
    """CSV with header ``t,x1,x2,x3,x4`` and shortest round-trip float formatting."""
    buf = io.StringIO()
    if comment is not None:
        buf.write(f"# {comment}\n")
    buf.write(CSV_HEADER + "\n")
    for ti, xi in zip(traj.t.tolist(), traj.x.tolist()):
        buf.write(",".join(repr(v) for v in [ti, *xi]) + "\n")
    return buf.getvalue().encode()


def load_trajectory_csv(data: bytes | str) -> Trajectory:
    text = data.decode() if isinstance(data, bytes) else data
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("not a trajectory CSV")
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    if not rows:
        return Trajectory.empty()
    arr = np.array(rows)
    return Trajectory(arr[:, 0], arr[:, 1:])


def to_json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n").encode()


def itinerary_json(itin: Itinerary, extra: dict | None = None) -> bytes:
    return to_json_bytes({**(extra or {}), **itin.to_dict()})


# -- one-shot runs ----------------------------------------------------------


@dataclass
class RunResult:
    trajectory: Trajectory
    itinerary: Itinerary
    extinct: set[int]

    @property
    def tail_word(self) -> tuple[int, ...] | None:
        tail = self.itinerary.tail()
        return tail[0] if tail else None

    @property
    def fixed_node(self) -> int | None:
        """Node the whole run sits at, if it never leaves one equilibrium."""
        v = self.itinerary.visits
        if len(v) == 1 and v[0].censored and v[0].entry == self.trajectory.t[0]:
            return v[0].node
        return None

    def summary(self) -> str:
        if self.fixed_node is not None:
            return f"fixed at ξ{self.fixed_node}"
        extinct = ", ".join(f"S{i}" for i in sorted(self.extinct)) or "none"
        tail = "→".join(str(n) for n in self.tail_word) if self.tail_word else "none"
        return f"extinct: {extinct}; tail cycle: {tail}"


def run(p: InteractionParams | np.ndarray, ic, t_max: float = DEFAULT_TMAX, rel_tol: float = DEFAULT_RTOL,
        abs_tol: float = DEFAULT_ATOL, **kwargs) -> RunResult:
    traj = integrate(p, ic, t_max, rel_tol, abs_tol, **kwargs)
    return RunResult(traj, extract_itinerary(traj), detect_extinction(traj))
