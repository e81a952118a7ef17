"""Stability of the heteroclinic cycles and of the whole network.

Cycle stability uses local stability indices computed with ``f_index`` for
three-node cycles of type B3^- (one or two negative ``b`` values).  The
four-node cycle is settled by the shared-connection rule.  Network stability
uses per-node contraction factors ``rho`` whose product over every cycle must
exceed one.

Sign decisions (lemma branches, boundary cases) are made in exact rational
arithmetic on the stored doubles; index values are reported as floats.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from numbers import Real

from .core_model import NODES, InteractionParams, NodeSpectrum, PreconditionError, analytic_spectrum

log = logging.getLogger(__name__)

Graph = dict[int, frozenset[int]]
Connection = tuple[int, int]


class DispatchError(ValueError):
    """A cycle's sign pattern does not match the requested lemma."""


class StructuralError(ValueError):
    """A cycle is inconsistent with the spectra (wrong eigenvalue signs, missing edge)."""


class UnclassifiedError(ValueError):
    """A node configuration is not covered by any of the rho rules."""


@functools.total_ordering
class ExtendedReal:
    """A real number or one of +inf, -inf.

    Infinite values never enter float arithmetic; ``inf - inf`` raises.
    """

    __slots__ = ("_value", "_inf")

    def __init__(self, value: float = 0.0, inf: int = 0):
        if inf not in (-1, 0, 1):
            raise ValueError("inf must be -1, 0 or 1")
        if not inf and not math.isfinite(value):
            raise ValueError(f"finite ExtendedReal needs a finite value, got {value!r}")
        self._value = 0.0 if inf else float(value)
        self._inf = inf

    @classmethod
    def coerce(cls, x) -> ExtendedReal:
        if isinstance(x, ExtendedReal):
            return x
        x = float(x)
        if math.isinf(x):
            return cls(inf=1 if x > 0 else -1)
        return cls(x)

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def value(self) -> float:
        if self._inf:
            raise ValueError(f"{self} has no finite value")
        return self._value

    def __float__(self) -> float:
        return math.inf * self._inf if self._inf else self._value

    def __neg__(self) -> ExtendedReal:
        return ExtendedReal(-self._value, -self._inf)

    def __add__(self, other) -> ExtendedReal:
        other = ExtendedReal.coerce(other)
        if self._inf and other._inf and self._inf != other._inf:
            raise ArithmeticError("undefined: +inf + -inf")
        if self._inf or other._inf:
            return ExtendedReal(inf=self._inf or other._inf)
        return ExtendedReal(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other) -> ExtendedReal:
        return self + (-ExtendedReal.coerce(other))

    def __rsub__(self, other) -> ExtendedReal:
        return ExtendedReal.coerce(other) - self

    def _key(self):
        return (self._inf, self._value)

    def __eq__(self, other):
        if not isinstance(other, (ExtendedReal, Real)):
            return NotImplemented
        return self._key() == ExtendedReal.coerce(other)._key()

    def __lt__(self, other):
        if not isinstance(other, (ExtendedReal, Real)):
            return NotImplemented
        return self._key() < ExtendedReal.coerce(other)._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ExtendedReal({self.to_json()!r})"

    def __str__(self):
        return str(self.to_json())

    def to_json(self) -> float | str:
        if self._inf:
            return "+inf" if self._inf > 0 else "-inf"
        return self._value

    @classmethod
    def from_json(cls, v) -> ExtendedReal:
        if v == "+inf":
            return POS_INF
        if v == "-inf":
            return NEG_INF
        return cls(float(v))


POS_INF = ExtendedReal(inf=1)
NEG_INF = ExtendedReal(inf=-1)
ZERO = ExtendedReal(0.0)


class Classification(str, Enum):
    EAS = "EAS"
    CU = "CU"
    UNCLASSIFIED = "Unclassified"

    def __str__(self):
        return self.value


# -- index calculus ---------------------------------------------------------


def f_plus(alpha, beta) -> ExtendedReal:
    """Six-branch helper of the stability-index formula.

    ``(0, 0)`` satisfies two branches; it is mapped to 0 (degenerate input).
    On the rays ``beta/alpha == -1`` with opposite signs, where no branch
    applies, the continuous value 0 is used.  Exact for ``Fraction`` inputs;
    float inputs whose ratio overflows give +inf.
    """
    if alpha == 0 and beta == 0:
        log.debug("f_plus: degenerate input (0, 0)")
        return ZERO
    if alpha >= 0 and beta >= 0:
        return POS_INF
    if alpha <= 0 and beta <= 0:
        return ZERO
    ratio = beta / alpha if alpha < 0 else alpha / beta
    # tiny denominators can overflow a float ratio; saturate to +inf
    return ExtendedReal.coerce(float(-ratio - 1)) if ratio < -1 else ZERO


def f_index(alpha, beta) -> ExtendedReal:
    return f_plus(alpha, beta) - f_plus(-alpha, -beta)


def is_degenerate(alpha, beta) -> bool:
    return alpha == 0 and beta == 0


# -- network structure ------------------------------------------------------


def network_graph(p: InteractionParams) -> Graph:
    """Connections xi_j -> xi_k for every positive eigenvalue at xi_j along x_k."""
    return {
        j: frozenset(analytic_spectrum(j, p).expanding_directions) for j in NODES
    }


def subgraph(graph: Graph, removed) -> Graph:
    removed = set(removed)
    return {j: frozenset(graph[j] - removed) for j in graph if j not in removed}


def _canonical(nodes) -> tuple[int, ...]:
    nodes = tuple(nodes)
    i = nodes.index(min(nodes))
    return nodes[i:] + nodes[:i]


def simple_cycles(graph: Graph) -> list[tuple[int, ...]]:
    """All simple directed cycles, each rotated to start at its smallest node."""
    found = set()
    nodes = sorted(graph)
    for k in range(2, len(nodes) + 1):
        for perm in permutations(nodes, k):
            if perm[0] != min(perm):
                continue
            if all(perm[(i + 1) % k] in graph[perm[i]] for i in range(k)):
                found.add(perm)
    return sorted(found, key=lambda c: (len(c), c))


def cycle_connections(nodes: tuple[int, ...]) -> list[Connection]:
    k = len(nodes)
    return [(nodes[i], nodes[(i + 1) % k]) for i in range(k)]


def cycle_id(nodes) -> str:
    return "".join(str(n) for n in _canonical(nodes))


def parse_cycle_id(cid) -> tuple[int, ...]:
    if isinstance(cid, str):
        s = cid.strip().lstrip("Σ").replace("Sigma", "").replace("_", "")
        if not s.isdigit():
            raise PreconditionError(f"bad cycle id {cid!r}")
        nodes = tuple(int(ch) for ch in s)
    else:
        nodes = tuple(int(n) for n in cid)
    if len(set(nodes)) != len(nodes) or any(n not in NODES for n in nodes):
        raise PreconditionError(f"bad cycle id {cid!r}")
    return _canonical(nodes)


@dataclass(frozen=True)
class DeltaClique:
    """Three nodes b -> m -> e with a direct (short) connection b -> e."""

    b: int
    m: int
    e: int

    @property
    def short(self) -> Connection:
        return (self.b, self.e)

    @property
    def first_long(self) -> Connection:
        return (self.b, self.m)

    @property
    def second_long(self) -> Connection:
        return (self.m, self.e)

    @property
    def name(self) -> str:
        return f"Delta{self.b}{self.m}{self.e}"


def delta_cliques(graph: Graph) -> list[DeltaClique]:
    """Transitive triangles b -> m -> e with short connection b -> e.

    Inside the triangle's coordinate subspace the b-point expands toward both
    m and e, so the short connection is 2-dimensional while the two long
    ones are 1-dimensional.  A triangle containing a cycle is not a clique.
    """
    out = []
    for b, m, e in permutations(sorted(graph), 3):
        if not ({m, e} <= graph[b] and e in graph[m]):
            continue
        if b in graph[m] or b in graph[e] or m in graph[e]:
            continue  # contains a cycle: not a clique
        out.append(DeltaClique(b, m, e))
    return sorted(out, key=lambda d: (d.b, d.m, d.e), reverse=True)


# -- cycles and the B3^- lemmas ---------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """A cycle with per-node ratios ``a_j = c_j / e_j`` and ``b_j = -t_j / e_j``.

    ``a`` and ``b`` are stored as exact fractions, aligned with ``nodes``.
    ``roles`` (optional) holds ``(c_j, e_j, t_j)`` as read from the spectra.
    """

    nodes: tuple[int, ...]
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    roles: tuple[tuple[float, float, float], ...] | None = None

    def __post_init__(self):
        n = len(self.nodes)
        if len(self.a) != n or len(self.b) != n:
            raise PreconditionError("a and b must align with nodes")
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        if any(x <= 0 for x in self.a):
            raise PreconditionError(f"a values must be positive, got {self.a}")

    @classmethod
    def from_ab(cls, nodes, a, b) -> Cycle:
        return cls(tuple(nodes), tuple(a), tuple(b))

    @property
    def id(self) -> str:
        return cycle_id(self.nodes)

    def predecessor(self, j: int) -> int:
        i = self.nodes.index(j)
        return self.nodes[i - 1]

    def a_of(self, j: int) -> Fraction:
        return self.a[self.nodes.index(j)]

    def b_of(self, j: int) -> Fraction:
        return self.b[self.nodes.index(j)]


def assign_roles(nodes, spectra: dict[int, NodeSpectrum]) -> Cycle:
    """Read contracting/expanding/transverse eigenvalues for each node on the cycle.

    Three-node cycles in four dimensions have exactly one transverse
    direction per node; for longer cycles ``t`` and ``b`` are zero.
    """
    nodes = tuple(nodes)
    k = len(nodes)
    a, b, roles = [], [], []
    for i, j in enumerate(nodes):
        pred, succ = nodes[i - 1], nodes[(i + 1) % k]
        spec = spectra[j]
        lab = spec.labels(pred, succ)
        c_val, e_val = -lab[pred][0], lab[succ][0]
        if c_val <= 0:
            raise StructuralError(f"node {j}: eigenvalue toward {pred} is {-c_val!r}, must be < 0")
        if e_val <= 0:
            raise StructuralError(f"node {j}: eigenvalue toward {succ} is {e_val!r}, must be > 0")
        trans = [v for v, label in lab.values() if label == "transverse"]
        t_val = trans[0] if len(trans) == 1 else 0.0
        roles.append((c_val, e_val, t_val))
        a.append(Fraction(c_val) / Fraction(e_val))
        b.append(-Fraction(t_val) / Fraction(e_val))
    return Cycle(nodes, tuple(a), tuple(b), tuple(roles))


@dataclass
class CycleStabilityReport:
    cycle_id: str
    nodes: tuple[int, ...]
    classification: Classification
    sigma: dict[Connection, ExtendedReal | None] = field(default_factory=dict)
    rule: str | None = None
    quantities: dict[str, float] = field(default_factory=dict)
    reasons: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def sigma_at(self, i: int, k: int) -> ExtendedReal | None:
        return self.sigma[(i, k)]

    def to_dict(self) -> dict:
        return {
            "id": self.cycle_id,
            "nodes": list(self.nodes),
            "class": self.classification.value,
            "sigma": [
                {"from": i, "to": k, "value": None if v is None else v.to_json()}
                for (i, k), v in self.sigma.items()
            ],
            "rule": self.rule,
            "quantities": self.quantities,
            "reasons": self.reasons,
            "notes": self.notes,
        }


def _rotate(cycle: Cycle, start: int) -> tuple[list[int], list[Fraction], list[Fraction]]:
    n = len(cycle.nodes)
    order = [(start + i) % n for i in range(n)]
    return (
        [cycle.nodes[i] for i in order],
        [cycle.a[i] for i in order],
        [cycle.b[i] for i in order],
    )


def _incoming(nodes: list[int]) -> list[Connection]:
    # index of the connection arriving at each node
    return [(nodes[i - 1], nodes[i]) for i in range(len(nodes))]


def _finish(cycle, rotated, sigmas, checks, rule, quantities) -> CycleStabilityReport:
    """Shared branch logic: CU on any strict failure, formulas on strict success."""
    conns = _incoming(rotated)
    report = CycleStabilityReport(cycle.id, cycle.nodes, Classification.UNCLASSIFIED, rule=rule,
                                  quantities={k: float(v) for k, v in quantities.items()})
    if any(value < 0 for _, value in checks) or quantities["a_product"] < 1:
        failed = [name for name, value in checks if value < 0]
        if quantities["a_product"] < 1:
            failed.insert(0, "a_product < 1")
        report.classification = Classification.CU
        report.sigma = {c: NEG_INF for c in conns}
        report.reasons = [f"not an attractor: {', '.join(failed)}"]
        return report
    boundary = [name for name, value in checks if value == 0]
    if quantities["a_product"] == 1:
        boundary.insert(0, "a_product == 1")
    if boundary:
        report.sigma = {c: None for c in conns}
        report.reasons = [f"boundary case not covered: {', '.join(boundary)}"]
        return report
    report.sigma = dict(zip(conns, sigmas()))
    if all(s > 0 for s in report.sigma.values()):
        report.classification = Classification.EAS
    else:
        report.reasons = ["indices are not all positive"]
    return report


def classify_b3_one_negative(cycle: Cycle) -> CycleStabilityReport:
    """Three-node cycle with exactly one negative ``b``."""
    if len(cycle.nodes) != 3:
        raise DispatchError("B3 lemma needs a three-node cycle")
    neg = [i for i, b in enumerate(cycle.b) if b < 0]
    if len(neg) != 1 or any(b == 0 for b in cycle.b):
        raise DispatchError(f"expected exactly one negative b, got {cycle.b}")
    nodes, (a1, a2, a3), (b1, b2, b3) = _rotate(cycle, neg[0])
    quantities = {"a_product": a1 * a2 * a3, "b1a2a3+b3a2+b2": b1 * a2 * a3 + b3 * a2 + b2}
    checks = [("b1a2a3+b3a2+b2", quantities["b1a2a3+b3a2+b2"])]

    def sigmas():
        return [f_index(b1, 1), POS_INF, f_index(b3 + b1 * a3, 1)]

    return _finish(cycle, nodes, sigmas, checks, "B3- one negative b", quantities)


def classify_b3_two_negative(cycle: Cycle) -> CycleStabilityReport:
    """Three-node cycle with exactly two negative ``b`` values."""
    if len(cycle.nodes) != 3:
        raise DispatchError("B3 lemma needs a three-node cycle")
    neg = [i for i, b in enumerate(cycle.b) if b < 0]
    if len(neg) != 2 or any(b == 0 for b in cycle.b):
        raise DispatchError(f"expected exactly two negative b, got {cycle.b}")
    start = next(i for i in neg if (i + 1) % 3 in neg)
    nodes, (a1, a2, a3), (b1, b2, b3) = _rotate(cycle, start)
    quantities = {
        "a_product": a1 * a2 * a3,
        "b2a1a3+b1a3+b3": b2 * a1 * a3 + b1 * a3 + b3,
        "b1a2a3+a2b3+b2": b1 * a2 * a3 + a2 * b3 + b2,
    }
    checks = [(k, v) for k, v in quantities.items() if k != "a_product"]

    def sigmas():
        return [
            min(f_index(b1, 1), f_index(b1 + b2 * a1, 1)),
            f_index(b2, 1),
            f_index(b3 + b1 * a3, 1),
        ]

    return _finish(cycle, nodes, sigmas, checks, "B3- two negative b", quantities)


def _spectra(p: InteractionParams) -> dict[int, NodeSpectrum]:
    return {j: analytic_spectrum(j, p) for j in NODES}


def _shared_connection_report(nodes, others: list[CycleStabilityReport]) -> CycleStabilityReport:
    conns = cycle_connections(nodes)
    report = CycleStabilityReport(cycle_id(nodes), nodes, Classification.UNCLASSIFIED,
                                  rule="shared connection")
    for conn in conns:
        for other in others:
            if other.sigma.get(conn) == POS_INF:
                report.classification = Classification.CU
                report.sigma = {c: NEG_INF for c in conns}
                report.reasons = [
                    f"connection {conn[0]}->{conn[1]} has index +inf in cycle {other.cycle_id}; "
                    "every index of this cycle is -inf"
                ]
                return report
    report.sigma = {c: None for c in conns}
    report.reasons = ["no shared connection with index +inf in another cycle"]
    return report


def classify_network(p: InteractionParams) -> dict[str, CycleStabilityReport]:
    """Classify every cycle of the network, keyed by cycle id."""
    graph = network_graph(p)
    cycles = simple_cycles(graph)
    reports: dict[str, CycleStabilityReport] = {}
    if not p.standing_assumptions:
        for nodes in cycles:
            reports[cycle_id(nodes)] = CycleStabilityReport(
                cycle_id(nodes), nodes, Classification.UNCLASSIFIED,
                sigma={c: None for c in cycle_connections(nodes)},
                reasons=["standing assumptions violated: " + "; ".join(p.assumption_reasons())],
            )
        return reports
    spectra = _spectra(p)
    for nodes in (c for c in cycles if len(c) == 3):
        cyc = assign_roles(nodes, spectra)
        n_neg = sum(b < 0 for b in cyc.b)
        if n_neg == 1:
            reports[cyc.id] = classify_b3_one_negative(cyc)
        elif n_neg == 2:
            reports[cyc.id] = classify_b3_two_negative(cyc)
        else:
            reports[cyc.id] = CycleStabilityReport(
                cyc.id, nodes, Classification.UNCLASSIFIED,
                sigma={c: None for c in cycle_connections(nodes)},
                reasons=[f"{n_neg} negative b values: no index formula available"],
            )
    three = list(reports.values())
    for nodes in (c for c in cycles if len(c) != 3):
        reports[cycle_id(nodes)] = _shared_connection_report(nodes, three)
    if not p.sufficient_condition():
        for r in reports.values():
            r.notes.append("network sufficient condition fails; network attraction not certified")
    if "142" in reports and reports["142"].sigma.get((1, 4)) not in (None, NEG_INF):
        alt = 1 - p.e_B / p.e_A
        reports["142"].quantities["alt_closed_form_sigma_14"] = alt
        reports["142"].notes.append(
            f"index at 1->4 equals e_A/e_B - 1 = {p.e_A / p.e_B - 1!r}; "
            f"the alternative closed form 1 - e_B/e_A = {alt!r} differs but has the same sign"
        )
    return dict(sorted(reports.items(), key=lambda kv: (len(kv[0]), kv[0])))


def classify_cycle(cid, p: InteractionParams) -> CycleStabilityReport:
    nodes = parse_cycle_id(cid)
    reports = classify_network(p)
    key = cycle_id(nodes)
    if key not in reports:
        raise PreconditionError(f"{key} is not a cycle of the network")
    return reports[key]


# -- network stability ------------------------------------------------------


def _global_transverse(node: int, cycles, spectrum: NodeSpectrum) -> list[float]:
    used = set()
    for nodes in cycles:
        if node in nodes:
            i = nodes.index(node)
            used.add(nodes[i - 1])
            used.add(nodes[(i + 1) % len(nodes)])
    return [v for k, v in spectrum.offaxis.items() if k not in used]


def rho_rule(node: int, cycle, p: InteractionParams) -> tuple[float, str]:
    """Contraction factor of ``node`` along ``cycle`` and the rule that produced it."""
    nodes = parse_cycle_id(cycle) if isinstance(cycle, str) else tuple(cycle)
    if node not in nodes:
        raise PreconditionError(f"node {node} is not on cycle {nodes}")
    graph = network_graph(p)
    cycles = simple_cycles(graph)
    spectrum = analytic_spectrum(node, p)
    i = nodes.index(node)
    pred, succ = nodes[i - 1], nodes[(i + 1) % len(nodes)]
    c, e = -spectrum.offaxis[pred], spectrum.offaxis[succ]
    if c <= 0 or e <= 0:
        raise StructuralError(f"node {node}: {pred}->{node}->{succ} is not a connection pair")
    as_m = [d for d in delta_cliques(graph) if d.m == node]
    n_exp = len(spectrum.expanding_directions)
    if not as_m:
        trans = _global_transverse(node, cycles, spectrum)
        if trans:
            return min([c / e] + [1 - t / e for t in trans]), "not an m-point"
        return c / e, "not an m-point"
    if n_exp == 1:
        return min(c / e, 1.0), "m-point, one expanding direction"
    contracting = spectrum.contracting_directions
    if len(as_m) == 1 and n_exp == 2 and len(contracting) == 1:
        clique = as_m[0]
        if contracting[0] == clique.b:
            e2_dir = [k for k in spectrum.expanding_directions if k != clique.e]
            if len(e2_dir) == 1:
                c_m = -spectrum.offaxis[clique.b]
                e2 = spectrum.offaxis[e2_dir[0]]
                return c_m / (c_m + e2), "m-point of one clique, two expanding directions"
    raise UnclassifiedError(f"node {node} on cycle {cycle_id(nodes)}: no rho rule applies")


def rho_node(node: int, cycle, p: InteractionParams) -> float:
    return rho_rule(node, cycle, p)[0]


def closed_form_products(p: InteractionParams) -> dict[str, float]:
    eA, eB, eD, cA, cB, cD = (p.e_A, p.e_B, p.e_D, p.c_A, p.c_B, p.c_D)
    return {
        "142": (cB / eD) * (cD / eA),
        "143": (cA / eD) * (cD / eB) * (cB / (cB + eA)),
        "1432": (cB / eD) * (cD / eB) * (cB / (cB + eA)),
    }


@dataclass
class NetworkReport:
    assumption_flags: dict[str, bool]
    assumptions_hold: bool
    reasons: list[str]
    rho: dict[str, dict[int, float]]
    rules: dict[str, dict[int, str]]
    rho_products: dict[str, float]
    closed_forms: dict[str, float]
    consistent: bool
    all_products_exceed_one: bool
    sufficient_condition: bool
    notes: list[str] = field(default_factory=list)

    @property
    def asymptotically_stable(self) -> bool:
        return self.assumptions_hold and self.all_products_exceed_one

    def to_dict(self) -> dict:
        return {
            "assumptions": {**self.assumption_flags, "hold": self.assumptions_hold},
            "reasons": self.reasons,
            "rho": {cid: {str(k): v for k, v in r.items()} for cid, r in self.rho.items()},
            "rules": {cid: {str(k): v for k, v in r.items()} for cid, r in self.rules.items()},
            "rho_products": [
                {"cycle": cid, "value": v, "closed_form": self.closed_forms.get(cid)}
                for cid, v in self.rho_products.items()
            ],
            "consistent": self.consistent,
            "all_products_exceed_one": self.all_products_exceed_one,
            "sufficient_condition": self.sufficient_condition,
            "asymptotically_stable": self.asymptotically_stable,
            "notes": self.notes,
        }


CONSISTENCY_RTOL = 1e-12


def network_stability(p: InteractionParams) -> NetworkReport:
    cycles = simple_cycles(network_graph(p))
    rho, rules, products = {}, {}, {}
    for nodes in cycles:
        cid = cycle_id(nodes)
        rho[cid], rules[cid] = {}, {}
        for j in nodes:
            rho[cid][j], rules[cid][j] = rho_rule(j, nodes, p)
        products[cid] = math.prod(rho[cid].values())
    closed = closed_form_products(p)
    notes = []
    consistent = set(products) == set(closed)
    for cid in products:
        if cid in closed and abs(products[cid] - closed[cid]) > CONSISTENCY_RTOL * abs(closed[cid]):
            consistent = False
            notes.append(f"rho product for {cid} = {products[cid]!r} differs from closed form {closed[cid]!r}")
    if "142" in rho and rho["142"].get(2) != 1.0:
        notes.append(f"rho at node 2 on cycle 142 is {rho['142'].get(2)!r}, not 1")
    return NetworkReport(
        assumption_flags=p.assumption_flags(),
        assumptions_hold=p.standing_assumptions,
        reasons=p.assumption_reasons(),
        rho=rho,
        rules=rules,
        rho_products=products,
        closed_forms=closed,
        consistent=consistent,
        all_products_exceed_one=all(v > 1 for v in products.values()),
        sufficient_condition=p.sufficient_condition(),
        notes=notes,
    )


def stability_report(p: InteractionParams) -> dict:
    """JSON-ready combination of the cycle classifications and the network report."""
    cycles = classify_network(p)
    net = network_stability(p)
    return {
        "assumptions": {**p.assumption_flags(), "hold": p.standing_assumptions,
                        "reasons": p.assumption_reasons()},
        "cycles": [r.to_dict() for r in cycles.values()],
        "network": net.to_dict(),
    }
