"""Independent cross-checks run by ``junglegame verify``."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .core_model import NODES, InteractionParams, analytic_spectrum, axis_point, numerical_jacobian, random_params
from .stability import f_index, network_stability

CHECKS = ("jacobian", "rho", "antisymmetry")

JACOBIAN_TOL = 1e-8
RHO_RTOL = 1e-12


@dataclass
class OracleResult:
    name: str
    passed: bool
    n_checks: int
    max_error: float
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["failures"] = d["failures"][:10]
        return d


def jacobian_oracle(params: list[InteractionParams], h: float = 1e-5, tol: float = JACOBIAN_TOL,
                    perturb: float = 0.0) -> OracleResult:
    """Finite-difference spectra at each axis equilibrium against the analytic table.

    ``perturb`` is added to the largest analytic eigenvalue, to confirm the
    check can fail.
    """
    worst, failures, n = 0.0, [], 0
    for p in params:
        for j in NODES:
            analytic = sorted(analytic_spectrum(j, p).eigenvalues())
            analytic[-1] += perturb
            fd = np.sort(np.linalg.eigvals(numerical_jacobian(axis_point(j), p, h)).real)
            err = float(np.max(np.abs(fd - np.array(analytic))))
            worst = max(worst, err)
            n += 1
            if err > tol:
                failures.append(f"xi{j} {p}: error {err:.3e}")
    return OracleResult("jacobian", not failures, n, worst, failures)


def rho_oracle(params: list[InteractionParams], rtol: float = RHO_RTOL) -> OracleResult:
    """Per-node rho products against the closed-form cycle products."""
    worst, failures, n = 0.0, [], 0
    for p in params:
        rep = network_stability(p)
        for cid, closed in rep.closed_forms.items():
            err = abs(rep.rho_products[cid] - closed) / abs(closed)
            worst = max(worst, err)
            n += 1
            if err > rtol:
                failures.append(f"{cid} {p}: relative error {err:.3e}")
    return OracleResult("rho", not failures, n, worst, failures)


def antisymmetry_oracle(n: int = 100_000, seed: int = 0) -> OracleResult:
    """``f_index(-a, -b) == -f_index(a, b)`` exactly on random and axis-aligned inputs."""
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n, 2)) * rng.choice([1e-3, 1.0, 1e3], size=(n, 1))
    special = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (1.0, -1.0), (-2.0, 1.0)]
    failures = []
    for a, b in list(map(tuple, pts.tolist())) + special:
        if f_index(-a, -b) != -f_index(a, b):
            failures.append(f"({a!r}, {b!r})")
    return OracleResult("antisymmetry", not failures, n + len(special), float(len(failures)), failures)


def run_suite(checks, p: InteractionParams, draws: int = 100, seed: int = 0,
              perturb: float = 0.0, n_antisymmetry: int = 100_000) -> list[OracleResult]:
    checks = list(checks)
    if not checks:
        raise ValueError("no checks selected")
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {CHECKS}")
    rng = np.random.default_rng(seed)
    params = [p] + [random_params(rng) for _ in range(draws)]
    out = []
    for c in checks:
        if c == "jacobian":
            out.append(jacobian_oracle(params, perturb=perturb))
        elif c == "rho":
            out.append(rho_oracle(params))
        else:
            out.append(antisymmetry_oracle(n_antisymmetry, seed))
    return out
