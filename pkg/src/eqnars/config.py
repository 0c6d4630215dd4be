"""Engine configuration: resource bounds and inference parameters."""

from __future__ import annotations

from dataclasses import dataclass, field

from .truth import TruthValue

# Channel/category labels that variable introduction must never abstract.
RESERVED_ATOMS = frozenset({"loc", "ocr", "color", "yolo", "sound"})


@dataclass
class Config:
    evidential_horizon: float = 1.0
    decision_threshold: float = 0.51
    temporal_window: int = 10
    max_precondition_events: int = 2
    max_candidates_per_outcome: int = 8
    min_pair_confidence: float = 0.3
    fifo_capacity: int = 20
    contingency_capacity: int = 256
    equivalence_capacity: int = 64
    stamp_capacity: int = 16
    default_truth: TruthValue = field(default_factory=lambda: TruthValue(1.0, 0.9))
    volume: int = 100
    seed: int = 0
    reserved_atoms: frozenset[str] = RESERVED_ATOMS
