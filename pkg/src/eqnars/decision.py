"""Goal processing: match contingency preconditions against recent events,
compute operation desire, and pick the best candidate above threshold,
falling back to motor babbling."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .config import Config
from .memory import Contingency, ContingencyTable, Event, EventFifo
from .term import (
    Bindings,
    OperatorAtom,
    Term,
    contains_variables,
    is_operation,
    make_operation,
    substitute,
    unify,
)
from .truth import TruthValue, deduction, expectation


class OperatorRegistry:
    """Numbered operator slots; the first ``babbling_count`` participate in
    motor babbling."""

    def __init__(self):
        self.slots: dict[int, OperatorAtom] = {}
        self.babbling_count: int = 0
        self.babbling_rate: float = 0.0

    def register(self, slot: int, name: str) -> None:
        if slot < 1:
            raise ValueError(f"operator slot must be >= 1, got {slot}")
        self.slots[slot] = OperatorAtom(name)

    def lookup(self, slot: int) -> Optional[OperatorAtom]:
        return self.slots.get(slot)

    def babbling_ops(self) -> list[OperatorAtom]:
        eligible = sorted(self.slots)[: self.babbling_count]
        return [self.slots[s] for s in eligible]


@dataclass
class Decision:
    operation: Term
    desire: TruthValue
    contingency: Contingency
    matched: tuple[Event, ...]

    @property
    def expectation(self) -> float:
        return expectation(self.desire)


def _assignments(
    patterns: tuple[Term, ...],
    pool: list[Event],
    bindings: Bindings,
    start_occurrence: int,
    used: tuple[Event, ...],
) -> list[tuple[Bindings, tuple[Event, ...]]]:
    if not patterns:
        return [(bindings, used)]
    head, rest = patterns[0], patterns[1:]
    out = []
    for e in pool:
        if e.occurrence < start_occurrence or any(e is u for u in used):
            continue
        b = unify(substitute(head, bindings), e.term)
        if b is None:
            continue
        merged = dict(bindings)
        merged.update(b)
        out.extend(_assignments(rest, pool, merged, e.occurrence, used + (e,)))
    return out


def find_decisions(
    goal: Event,
    fifo: EventFifo,
    contingencies: ContingencyTable,
    cfg: Config,
    now: int,
) -> list[Decision]:
    """All executable candidates for a goal: contingencies whose consequent
    unifies with the goal and whose precondition events are satisfied by
    recent belief events (input or substitution-derived) in nondecreasing
    occurrence order."""
    pool = [
        e
        for e in fifo.snapshot()
        if e.is_belief
        and not is_operation(e.term)
        and now - e.occurrence <= cfg.temporal_window
    ]
    decisions: list[Decision] = []
    for cont, goal_bindings in contingencies.query(goal.term):
        options = _assignments(cont.pre_events, pool, goal_bindings, 0, ())
        if not options:
            continue
        # prefer the most recent satisfying events
        bindings, matched = max(
            options, key=lambda bm: tuple(e.occurrence for e in reversed(bm[1]))
        )
        op_term = substitute(cont.operation, bindings)
        if contains_variables(op_term):
            continue
        weakest = min((e.truth for e in matched), key=lambda t: (t.confidence, t.frequency))
        desire = deduction(deduction(goal.truth, cont.truth), weakest)
        decisions.append(Decision(op_term, desire, cont, matched))
    return decisions


def select_best(decisions: list[Decision]) -> Optional[Decision]:
    """Maximum-expectation candidate; ties break toward higher contingency
    confidence, then more recently confirmed, then term text."""
    if not decisions:
        return None
    return max(
        decisions,
        key=lambda d: (
            d.expectation,
            d.contingency.truth.confidence,
            d.contingency.last_confirmed,
            str(d.operation),
        ),
    )


def babble(registry: OperatorRegistry, rng: random.Random) -> Optional[Term]:
    """With probability ``babbling_rate``, a random argument-free operation
    from the babbling slots; deterministic under a fixed seed."""
    ops = registry.babbling_ops()
    if not ops or registry.babbling_rate <= 0.0:
        return None
    if rng.random() >= registry.babbling_rate:
        return None
    return make_operation(ops[rng.randrange(len(ops))])
