"""Four-species Jungle Game: heteroclinic cycle stability, simulation and invasion outcomes."""
from __future__ import annotations

from .core_model import REFERENCE_IC, REFERENCE_PARAMS, InteractionParams, PreconditionError
from .invasion import build_scenario, predict_outcome
from .simulate import integrate, run
from .stability import Classification, classify_network, network_stability, stability_report

__all__ = [
    "REFERENCE_IC",
    "REFERENCE_PARAMS",
    "Classification",
    "InteractionParams",
    "PreconditionError",
    "build_scenario",
    "classify_network",
    "integrate",
    "network_stability",
    "predict_outcome",
    "run",
    "stability_report",
]
__version__ = "0.1.0"
