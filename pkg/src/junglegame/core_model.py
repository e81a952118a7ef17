"""Four-species Jungle Game Lotka-Volterra vector field.

Species S1..S4 interact hierarchically: S1 beats S2 and S3, S2 beats S3 and
S4, S3 beats S4, and S4 beats S1.  Each species grows logistically against the
total population ``R = x1 + x2 + x3 + x4`` and gains (loses) at rate ``e``
(``c``) per unit of prey (predator)::

    dx1/dt = x1 (1 - R + e_B x2 + e_A x3 - c_D x4)
    dx2/dt = x2 (1 - R - c_B x1 + e_B x3 + e_A x4)
    dx3/dt = x3 (1 - R - c_A x1 - c_B x2 + e_B x4)
    dx4/dt = x4 (1 - R + e_D x1 - c_A x2 - c_B x3)

The coefficients are grouped by edge type: ``A`` links S_i and S_{i+2}, ``B``
links neighbours S_i and S_{i+1}, ``D`` is the bottom-to-top link S4 -> S1.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

NODES = (1, 2, 3, 4)
PARAM_NAMES = ("e_A", "e_B", "e_D", "c_A", "c_B", "c_D")


class PreconditionError(ValueError):
    """Raised when an input violates an operation's precondition."""


class InteriorEquilibriumWarning(RuntimeWarning):
    """An admissible equilibrium with all four species present was found."""


@dataclass(frozen=True)
class InteractionParams:
    """The six positive interaction rates of the model."""

    e_A: float
    e_B: float
    e_D: float
    c_A: float
    c_B: float
    c_D: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise PreconditionError(f"{f.name} must be a real number, got {v!r}")
            if not math.isfinite(v) or v <= 0:
                raise PreconditionError(f"{f.name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, f.name, float(v))

    @classmethod
    def from_dict(cls, data: dict) -> InteractionParams:
        missing = [k for k in PARAM_NAMES if k not in data]
        extra = [k for k in data if k not in PARAM_NAMES]
        if missing or extra:
            raise PreconditionError(
                f"parameter document must have exactly {PARAM_NAMES}; "
                f"missing={missing} unexpected={extra}"
            )
        return cls(**{k: data[k] for k in PARAM_NAMES})

    @classmethod
    def from_json(cls, path: str | Path) -> InteractionParams:
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise PreconditionError("parameter document must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def scaled(self, factor: float) -> InteractionParams:
        return InteractionParams(**{k: v * factor for k, v in self.to_dict().items()})

    @property
    def max_e(self) -> float:
        return max(self.e_A, self.e_B, self.e_D)

    @property
    def min_c(self) -> float:
        return min(self.c_A, self.c_B, self.c_D)

    def assumption_flags(self) -> dict[str, bool]:
        """Strict standing inequalities; equality counts as a violation."""
        return {
            "min_c_gt_max_e": self.min_c > self.max_e,
            "e_A_gt_e_B": self.e_A > self.e_B,
            "c_A_gt_c_B": self.c_A > self.c_B,
        }

    def assumption_reasons(self) -> list[str]:
        flags = self.assumption_flags()
        reasons = []
        if not flags["min_c_gt_max_e"]:
            reasons.append(f"min c = {self.min_c!r} is not > max e = {self.max_e!r}")
        if not flags["e_A_gt_e_B"]:
            reasons.append(f"e_A = {self.e_A!r} is not > e_B = {self.e_B!r}")
        if not flags["c_A_gt_c_B"]:
            reasons.append(f"c_A = {self.c_A!r} is not > c_B = {self.c_B!r}")
        return reasons

    @property
    def standing_assumptions(self) -> bool:
        return all(self.assumption_flags().values())

    @property
    def sphere_hypothesis(self) -> bool:
        """All expanding rates below one (attracting invariant sphere)."""
        return self.max_e < 1.0

    def sufficient_condition(self) -> bool:
        """``c_B^2 c_D > (c_B + e_A) e_B e_D``, decided exactly on the stored doubles."""
        cB, cD, eA, eB, eD = (Fraction(v) for v in (self.c_B, self.c_D, self.e_A, self.e_B, self.e_D))
        return cB * cB * cD > (cB + eA) * eB * eD


#: Reference parameter set used throughout the examples and tests.
REFERENCE_PARAMS = InteractionParams(e_A=0.7, e_B=0.65, e_D=0.72, c_A=1.2, c_B=1.0, c_D=1.1)
#: Initial condition paired with :data:`REFERENCE_PARAMS`.
REFERENCE_IC = (0.1, 0.1, 1.0, 0.1)


def interaction_matrix(p: InteractionParams) -> np.ndarray:
    """Matrix ``M`` with ``dx_i/dt = x_i (1 - R + (M x)_i)``.

    ``M[i, j]`` is the eigenvalue at equilibrium i+1 in the direction of x_{j+1}.
    """
    return np.array(
        [
            [0.0, p.e_B, p.e_A, -p.c_D],
            [-p.c_B, 0.0, p.e_B, p.e_A],
            [-p.c_A, -p.c_B, 0.0, p.e_B],
            [p.e_D, -p.c_A, -p.c_B, 0.0],
        ]
    )


def _field(x: np.ndarray, m: np.ndarray) -> np.ndarray:
    # no validation: finite differences evaluate slightly negative states
    return x * (1.0 - x.sum() + m @ x)


def as_state(state) -> np.ndarray:
    x = np.asarray(state, dtype=float)
    if x.shape != (4,):
        raise PreconditionError(f"state must have 4 coordinates, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise PreconditionError(f"state must be finite, got {x.tolist()}")
    if np.any(x < 0):
        raise PreconditionError(f"state must be nonnegative, got {x.tolist()}")
    return x


def rhs(state, p: InteractionParams) -> np.ndarray:
    """Time derivative of the population vector."""
    return _field(as_state(state), interaction_matrix(p))


def axis_point(j: int) -> np.ndarray:
    _check_node(j)
    x = np.zeros(4)
    x[j - 1] = 1.0
    return x


def equilibria(p: InteractionParams) -> list[tuple[str, np.ndarray]]:
    """The origin and the four single-species equilibria xi_1..xi_4.

    Warns with :class:`InteriorEquilibriumWarning` if the 4x4 linear system
    for a coexistence equilibrium has a strictly positive solution.
    """
    found = interior_equilibrium(p)
    if found is not None:
        warnings.warn(
            f"admissible interior equilibrium {found.tolist()} for {p}",
            InteriorEquilibriumWarning,
            stacklevel=2,
        )
    return [("origin", np.zeros(4))] + [(f"xi{j}", axis_point(j)) for j in NODES]


def _face_solution(m: np.ndarray, support: tuple[int, ...]) -> np.ndarray | None:
    idx = np.array(support)
    k = len(idx)
    a = np.ones((k, k)) - m[np.ix_(idx, idx)]
    try:
        sol = np.linalg.solve(a, np.ones(k))
    except np.linalg.LinAlgError:
        return None
    x = np.zeros(4)
    x[idx] = sol
    return x


def interior_equilibrium(p: InteractionParams) -> np.ndarray | None:
    """Solve ``1 - R + (M x)_i = 0`` for all i; return it only if strictly positive."""
    x = _face_solution(interaction_matrix(p), (0, 1, 2, 3))
    if x is not None and np.all(x > 0):
        return x
    return None


def face_equilibria(p: InteractionParams) -> dict[tuple[int, ...], np.ndarray]:
    """Equilibria with two or three species present and strictly positive.

    These live inside invariant coordinate faces and are not part of the
    heteroclinic network; reported for diagnostics only.
    """
    m = interaction_matrix(p)
    out = {}
    for k in (2, 3):
        for support in combinations(range(4), k):
            x = _face_solution(m, support)
            if x is not None and np.all(x[list(support)] > 0):
                out[tuple(i + 1 for i in support)] = x
    return out


def _check_node(j) -> None:
    if j not in NODES or isinstance(j, bool):
        raise PreconditionError(f"node id must be one of {NODES}, got {j!r}")


@dataclass(frozen=True)
class NodeSpectrum:
    """Jacobian eigenvalues at xi_j.

    ``offaxis`` maps each direction ``k != j`` (the axis of x_k) to its
    eigenvalue.  Labels relative to a particular cycle come from
    :meth:`labels`.
    """

    node: int
    radial: float
    offaxis: dict[int, float]

    @property
    def expanding_directions(self) -> tuple[int, ...]:
        return tuple(k for k, v in sorted(self.offaxis.items()) if v > 0)

    @property
    def contracting_directions(self) -> tuple[int, ...]:
        return tuple(k for k, v in sorted(self.offaxis.items()) if v < 0)

    def eigenvalues(self) -> list[float]:
        return [self.radial] + [self.offaxis[k] for k in sorted(self.offaxis)]

    def labels(self, incoming: int, outgoing: int) -> dict[int, tuple[float, str]]:
        """Label the off-axis directions for a cycle passing incoming -> node -> outgoing."""
        if incoming == outgoing or self.node in (incoming, outgoing):
            raise PreconditionError(f"bad neighbours {incoming}->{self.node}->{outgoing}")
        out = {}
        for k, v in self.offaxis.items():
            if k == incoming:
                label = "contracting"
            elif k == outgoing:
                label = "expanding"
            else:
                label = "transverse"
            out[k] = (v, label)
        return out


def analytic_spectrum(j: int, p: InteractionParams) -> NodeSpectrum:
    _check_node(j)
    m = interaction_matrix(p)
    # at xi_j the Jacobian is triangular: row k != j has only the diagonal m[k, j]
    offaxis = {k: float(m[k - 1, j - 1]) for k in NODES if k != j}
    return NodeSpectrum(node=j, radial=-1.0, offaxis=offaxis)


def numerical_jacobian(state, p: InteractionParams | np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central finite-difference Jacobian of the vector field."""
    if not h > 0:
        raise PreconditionError(f"step must be > 0, got {h!r}")
    x = np.asarray(state, dtype=float)
    if x.shape != (4,) or not np.all(np.isfinite(x)):
        raise PreconditionError(f"state must be 4 finite numbers, got {state!r}")
    m = p if isinstance(p, np.ndarray) else interaction_matrix(p)
    jac = np.empty((4, 4))
    for k in range(4):
        dx = np.zeros(4)
        dx[k] = h
        jac[:, k] = (_field(x + dx, m) - _field(x - dx, m)) / (2 * h)
    if not np.all(np.isfinite(jac)):
        raise FloatingPointError(f"non-finite Jacobian at {x.tolist()}")
    return jac


def sphere_form(points: np.ndarray, p: InteractionParams) -> np.ndarray:
    """Evaluate the quartic form <Q(X), X> in the square-root coordinates X_i^2 = x_i.

    ``points`` has shape (n, 4).  With ``K[i, j] = 1 - M[i, j]`` off the
    diagonal and 1 on it, the form is ``-1/2 * sum_ij X_i^2 K_ij X_j^2``.
    """
    y = np.asarray(points, dtype=float) ** 2
    k = 1.0 - interaction_matrix(p)
    np.fill_diagonal(k, 1.0)
    return -0.5 * np.einsum("ni,ij,nj->n", y, k, y)


@dataclass(frozen=True)
class SphereCheck:
    holds: bool
    hypothesis: bool
    n_samples: int
    max_value: float
    witness: tuple[float, ...] | None
    seed: int


def check_invariant_sphere(p: InteractionParams, n_samples: int = 10_000, seed: int = 0) -> SphereCheck:
    """Test the attracting-sphere hypothesis and sample the quartic form.

    ``holds`` is true iff every ``e`` is below one and no sampled unit vector
    gives a nonnegative value; the first nonnegative sample is returned as a
    witness.
    """
    if n_samples < 1:
        raise PreconditionError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n_samples, 4))
    norms = np.linalg.norm(pts, axis=1)
    while np.any(norms == 0):  # pragma: no cover - probability zero
        bad = norms == 0
        pts[bad] = rng.standard_normal((int(bad.sum()), 4))
        norms = np.linalg.norm(pts, axis=1)
    pts /= norms[:, None]
    vals = sphere_form(pts, p)
    nonneg = np.flatnonzero(vals >= 0)
    witness = tuple(pts[nonneg[0]].tolist()) if nonneg.size else None
    hyp = p.sphere_hypothesis
    return SphereCheck(
        holds=hyp and witness is None,
        hypothesis=hyp,
        n_samples=n_samples,
        max_value=float(vals.max()),
        witness=witness,
        seed=seed,
    )


def random_params(rng: np.random.Generator, require_sufficient: bool = True) -> InteractionParams:
    """Draw parameters satisfying the standing assumptions.

    Expanding rates are uniform on (0.05, 0.95) and contracting rates on
    (max e, 2); draws are rejected until the orderings (and optionally the
    network sufficient condition) hold.
    """
    while True:
        e = rng.uniform(0.05, 0.95, size=3)
        c = rng.uniform(e.max(), 2.0, size=3)
        p = InteractionParams(e_A=e[0], e_B=e[1], e_D=e[2], c_A=c[0], c_B=c[1], c_D=c[2])
        if not p.standing_assumptions:
            continue
        if require_sufficient and not p.sufficient_condition():
            continue
        return p
