"""An alien species invading three rock-paper-scissors players.

The base species ``L1, L2, L3`` play RSP with ``L(i-1)`` beating ``L(i)``
(indices mod 3).  A weak alien beats only ``L3`` and loses to the other two.
A strong alien beats ``L1`` and ``L2`` and loses to ``L3``.  Either
tournament is isomorphic to the four-species Jungle Game, so survivors are
read off the stable cycle after relabeling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .core_model import NODES, REFERENCE_PARAMS, InteractionParams, PreconditionError, interaction_matrix
from .simulate import DEFAULT_TMAX, run
from .stability import Classification, classify_network, network_graph

STRENGTHS = ("weak", "strong")


class ScenarioError(ValueError):
    """The scenario tournament cannot be mapped onto the Jungle Game."""


def jungle_beats(p: InteractionParams = REFERENCE_PARAMS) -> frozenset[tuple[int, int]]:
    """Winner -> loser pairs among S1..S4.

    Connections run from the loser's equilibrium to the winner's, so this is
    the network graph reversed.
    """
    graph = network_graph(p)
    return frozenset((k, j) for j, succ in graph.items() for k in succ)


def _find_mapping(species: tuple[str, ...], beats: frozenset) -> dict[str, int]:
    target = jungle_beats()
    found = []
    for perm in permutations(NODES):
        mapping = dict(zip(species, perm))
        if {(mapping[w], mapping[l]) for w, l in beats} == target:
            found.append(mapping)
    if not found:
        raise ScenarioError("tournament is not isomorphic to the Jungle Game")
    if len(found) > 1:
        raise ScenarioError("mapping onto the Jungle Game is not unique")
    return found[0]


@dataclass(frozen=True)
class InvasionScenario:
    strength: str
    base: tuple[str, str, str]
    alien: str
    beats: frozenset[tuple[str, str]]
    mapping: dict[str, int] = field(hash=False, compare=False)
    params: InteractionParams | None = None

    @property
    def species(self) -> tuple[str, ...]:
        return (*self.base, self.alien)

    @property
    def node_to_species(self) -> dict[int, str]:
        return {n: s for s, n in self.mapping.items()}

    def prey(self, s: str) -> set[str]:
        return {l for w, l in self.beats if w == s}

    def predators(self, s: str) -> set[str]:
        return {w for w, l in self.beats if l == s}

    def scenario_matrix(self, p: InteractionParams) -> np.ndarray:
        """Interaction matrix in scenario order (base species, then alien)."""
        idx = [self.mapping[s] - 1 for s in self.species]
        return interaction_matrix(p)[np.ix_(idx, idx)]

    def to_dict(self) -> dict:
        return {
            "alien": self.strength,
            "base": list(self.base),
            "alien_label": self.alien,
            "beats": sorted([w, l] for w, l in self.beats),
            "mapping": {s: self.mapping[s] for s in self.species},
        }


def scenario_from_beats(strength: str, base, alien: str, beats, params=None) -> InvasionScenario:
    """Build a scenario from an explicit winner -> loser list."""
    if strength not in STRENGTHS:
        raise ScenarioError(f"alien strength must be one of {STRENGTHS}, got {strength!r}")
    base = tuple(base)
    beats = frozenset(tuple(e) for e in beats)
    species = (*base, alien)
    if len(set(species)) != 4:
        raise ScenarioError(f"species labels must be distinct, got {species}")
    for w, l in beats:
        if w not in species or l not in species or w == l:
            raise ScenarioError(f"bad edge {w}->{l}")
    for s, r in permutations(species, 2):
        if ((s, r) in beats) == ((r, s) in beats):
            raise ScenarioError(f"exactly one of {s}, {r} must beat the other")
    wins = sum(1 for w, _ in beats if w == alien)
    if wins != (1 if strength == "weak" else 2):
        raise ScenarioError(f"a {strength} alien cannot beat {wins} base species")
    mapping = _find_mapping(species, beats)
    return InvasionScenario(strength, base, alien, beats, mapping, params)


def build_scenario(strength: str, base_labels=("S1", "S2", "S3"), alien: str | None = None,
                   params: InteractionParams | None = None) -> InvasionScenario:
    if strength not in STRENGTHS:
        raise ScenarioError(f"alien strength must be one of {STRENGTHS}, got {strength!r}")
    base = tuple(base_labels)
    if len(base) != 3:
        raise ScenarioError("need exactly three base species")
    alien = alien or ("A_w" if strength == "weak" else "A_s")
    l1, l2, l3 = base
    beats = {(l3, l1), (l1, l2), (l2, l3)}
    if strength == "weak":
        beats |= {(alien, l3), (l1, alien), (l2, alien)}
    else:
        beats |= {(alien, l1), (alien, l2), (l3, alien)}
    return scenario_from_beats(strength, base, alien, beats, params)


@dataclass
class OutcomePrediction:
    survivors: tuple[str, ...]
    extinct: tuple[str, ...]
    replaced: str | None
    alien_suppressed: bool
    stable_cycle: str

    def to_dict(self) -> dict:
        return {
            "survivors": list(self.survivors),
            "extinct": list(self.extinct),
            "replaced": self.replaced,
            "alien_suppressed": self.alien_suppressed,
            "stable_cycle": self.stable_cycle,
        }


class PredictionError(ValueError):
    """No unique essentially asymptotically stable cycle to read survivors from."""


def _ordered(scn: InvasionScenario, labels) -> tuple[str, ...]:
    keep = set(labels)
    return tuple(s for s in scn.species if s in keep)


def predict_outcome(scn: InvasionScenario, p: InteractionParams | None = None) -> OutcomePrediction:
    p = p or scn.params or REFERENCE_PARAMS
    if not p.standing_assumptions:
        raise PredictionError("standing assumptions violated: " + "; ".join(p.assumption_reasons()))
    if not p.sufficient_condition():
        raise PredictionError("network sufficient condition fails")
    reports = classify_network(p)
    unclassified = [cid for cid, r in reports.items() if r.classification is Classification.UNCLASSIFIED]
    if unclassified:
        raise PredictionError(f"unclassified cycles: {unclassified}")
    eas = [r for r in reports.values() if r.classification is Classification.EAS]
    if len(eas) != 1:
        raise PredictionError(f"expected one stable cycle, found {[r.cycle_id for r in eas]}")
    names = scn.node_to_species
    survivors = _ordered(scn, (names[n] for n in eas[0].nodes))
    extinct = _ordered(scn, set(scn.species) - set(survivors))
    alien_lost = scn.alien in extinct
    replaced = None if alien_lost else next(s for s in extinct if s != scn.alien)
    return OutcomePrediction(survivors, extinct, replaced, alien_lost, eas[0].cycle_id)


def weakest_prey_rule(scn: InvasionScenario) -> str:
    """The original species predicted to be replaced by a strong alien.

    The weakest species are those beaten by two others.  Among them, the one
    that is the prey of the prey of a weakest species does not survive.
    """
    if scn.strength != "strong":
        raise ScenarioError("rule applies to strong aliens only")
    weakest = {s for s in scn.species if len(scn.predators(s)) == 2}
    two_steps = {q for w in weakest for r in scn.prey(w) for q in scn.prey(r)}
    hit = sorted(weakest & two_steps)
    if len(hit) != 1:
        raise ScenarioError(f"rule is ambiguous: candidates {hit}")
    return hit[0]


def simulated_survivors(scn: InvasionScenario, p: InteractionParams | None = None, ic=None,
                        t_max: float = DEFAULT_TMAX, **kwargs) -> tuple[str, ...]:
    """Survivors read from the repeating tail of a run in scenario coordinates."""
    p = p or scn.params or REFERENCE_PARAMS
    ic = (0.2, 0.25, 0.3, 0.15) if ic is None else ic
    res = run(scn.scenario_matrix(p), ic, t_max, **kwargs)
    word = res.tail_word
    if word is None:
        raise PredictionError("simulation did not settle on a repeating tail")
    return _ordered(scn, (scn.species[i - 1] for i in word))


def scenario_from_dict(data: dict) -> InvasionScenario:
    if not isinstance(data, dict) or "alien" not in data:
        raise ScenarioError('scenario must be an object with an "alien" field')
    params = InteractionParams.from_dict(data["params"]) if "params" in data else None
    if "beats" in data:
        return scenario_from_beats(data["alien"], data.get("base", ("S1", "S2", "S3")),
                                   data.get("alien_label", "A"), data["beats"], params)
    try:
        return build_scenario(data["alien"], data.get("base", ("S1", "S2", "S3")),
                              data.get("alien_label"), params)
    except PreconditionError as exc:
        raise ScenarioError(str(exc)) from exc
