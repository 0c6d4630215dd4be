"""Two-component truth values and the evidence functions of the engine.

frequency f in [0, 1], confidence c in [0, 1).  Confidence converts to
evidential weight via w = k*c/(1-c) and back via c = w/(w+k), where k is
the evidential horizon (default 1).
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_HORIZON = 1.0


@dataclass(frozen=True)
class TruthValue:
    frequency: float
    confidence: float

    def __post_init__(self):
        if not (0.0 <= self.frequency <= 1.0):
            raise ValueError(f"frequency out of range: {self.frequency}")
        if not (0.0 <= self.confidence < 1.0):
            raise ValueError(f"confidence out of range: {self.confidence}")


@dataclass(frozen=True)
class Evidence:
    """Positive and total evidence counts, w+ <= w."""

    positive: float
    total: float

    def __post_init__(self):
        if self.positive < 0 or self.total < self.positive:
            raise ValueError(f"bad evidence counts: w+={self.positive} w={self.total}")

    def combined(self, other: "Evidence") -> "Evidence":
        return Evidence(self.positive + other.positive, self.total + other.total)


def w2c(w: float, k: float = DEFAULT_HORIZON) -> float:
    return w / (w + k)


def c2w(c: float, k: float = DEFAULT_HORIZON) -> float:
    return k * c / (1.0 - c)


def expectation(t: TruthValue) -> float:
    """Decision scalar c*(f - 1/2) + 1/2, in [0, 1]."""
    return t.confidence * (t.frequency - 0.5) + 0.5


def induction_from_counts(e: Evidence, k: float = DEFAULT_HORIZON) -> TruthValue:
    """Truth of a statement with w+ positive out of w total observations."""
    if e.total <= 0:
        raise ValueError("induction requires total evidence > 0")
    return TruthValue(e.positive / e.total, w2c(e.total, k))


def revise(a: TruthValue, b: TruthValue, k: float = DEFAULT_HORIZON) -> TruthValue:
    """Pool two truths from disjoint evidential bases (w-addition).

    Callers are responsible for the disjointness check via stamps.
    """
    w1 = c2w(a.confidence, k)
    w2 = c2w(b.confidence, k)
    w = w1 + w2
    if w == 0.0:
        return TruthValue((a.frequency + b.frequency) / 2.0, 0.0)
    f = (w1 * a.frequency + w2 * b.frequency) / w
    return TruthValue(f, w2c(w, k))


def deduction(a: TruthValue, b: TruthValue) -> TruthValue:
    f = a.frequency * b.frequency
    return TruthValue(f, f * a.confidence * b.confidence)


def comparison(a: TruthValue, b: TruthValue, k: float = DEFAULT_HORIZON) -> TruthValue:
    """Truth of a derived equivalence between two statements with truths a, b."""
    f0 = a.frequency * b.frequency
    denom = a.frequency + b.frequency - f0
    f = 0.0 if denom == 0.0 else f0 / denom
    return TruthValue(f, w2c(denom * a.confidence * b.confidence, k))


def analogy(event: TruthValue, equivalence: TruthValue) -> TruthValue:
    """Truth of an event mapped through an equivalence."""
    return TruthValue(
        event.frequency * equivalence.frequency,
        event.confidence * equivalence.confidence * equivalence.frequency,
    )
