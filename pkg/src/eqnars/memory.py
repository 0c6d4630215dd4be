"""Bounded event and rule storage.

Three stores, all with hard capacity limits: a FIFO of recent events, a
contingency table keyed by the normalized implication, and an equivalence
table keyed by the canonical term pair.  Revision pools evidence only when
stamps are disjoint; overlapping stamps fall back to choice (keep the
higher-confidence record) to avoid double counting.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .term import (
    Bindings,
    Equivalence,
    Implication,
    Sequence,
    Term,
    contains_variables,
    normalize,
    unify,
)
from .truth import Evidence, TruthValue, expectation, induction_from_counts, revise

BELIEF = "."
GOAL = "!"

Stamp = frozenset  # of input ids


def merge_stamps(a: Stamp, b: Stamp, cap: int) -> Stamp:
    merged = a | b
    if len(merged) > cap:
        merged = frozenset(sorted(merged)[-cap:])  # keep the newest ids
    return merged


@dataclass(frozen=True)
class Event:
    term: Term
    truth: TruthValue
    occurrence: int
    punctuation: str = BELIEF
    stamp: Stamp = frozenset()
    derived: bool = False

    @property
    def is_belief(self) -> bool:
        return self.punctuation == BELIEF


@dataclass(frozen=True)
class Contingency:
    """(P1 [&/ P2]) &/ Op =/> consequent, with counted evidence."""

    pre_events: tuple[Term, ...]
    operation: Term
    consequent: Term
    evidence: Evidence
    truth: TruthValue
    stamp: Stamp
    last_confirmed: int

    @property
    def condition(self) -> Term:
        seq: Term = self.pre_events[0]
        for p in self.pre_events[1:]:
            seq = Sequence(seq, p)
        return Sequence(seq, self.operation)

    @property
    def term(self) -> Term:
        return Implication(self.condition, self.consequent)

    @property
    def is_ground(self) -> bool:
        return not contains_variables(self.term)


@dataclass(frozen=True)
class EquivalenceRecord:
    left: Term  # canonical order: term_key(left) <= term_key(right)
    right: Term
    truth: TruthValue
    trigger_op: Term
    created_at: int
    stamp: Stamp

    @property
    def term(self) -> Term:
        return Equivalence(self.left, self.right)


class EventFifo:
    """Recent-event window; pushing beyond capacity drops the oldest."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._events: deque[Event] = deque(maxlen=capacity)

    def push(self, e: Event) -> None:
        self._events.append(e)

    def snapshot(self) -> list[Event]:
        return list(self._events)

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self):
        return iter(self._events)


class ContingencyTable:
    def __init__(self, capacity: int, horizon: float = 1.0, stamp_cap: int = 16):
        self.capacity = capacity
        self.horizon = horizon
        self.stamp_cap = stamp_cap
        self._by_key: dict[Term, Contingency] = {}

    def __len__(self) -> int:
        return len(self._by_key)

    def __iter__(self) -> Iterable[Contingency]:
        return iter(list(self._by_key.values()))

    def store(self, c: Contingency) -> tuple[Contingency, bool]:
        """Insert or revise; returns (stored record, was_new)."""
        key = normalize(c.term)
        existing = self._by_key.get(key)
        if existing is None:
            self._by_key[key] = c
            self._evict()
            return c, True
        if existing.stamp & c.stamp:
            # overlapping evidence: choice, not revision
            if c.truth.confidence > existing.truth.confidence:
                self._by_key[key] = c
                return c, False
            return existing, False
        evidence = existing.evidence.combined(c.evidence)
        merged = replace(
            existing,
            evidence=evidence,
            truth=induction_from_counts(evidence, self.horizon),
            stamp=merge_stamps(existing.stamp, c.stamp, self.stamp_cap),
            last_confirmed=max(existing.last_confirmed, c.last_confirmed),
        )
        self._by_key[key] = merged
        return merged, False

    def _evict(self) -> None:
        while len(self._by_key) > self.capacity:
            key = min(
                self._by_key,
                key=lambda k: (expectation(self._by_key[k].truth), self._by_key[k].last_confirmed),
            )
            del self._by_key[key]

    def query(self, goal: Term) -> list[tuple[Contingency, Bindings]]:
        """All contingencies whose consequent unifies with the goal term."""
        out = []
        for c in self._by_key.values():
            b = unify(c.consequent, goal)
            if b is not None:
                out.append((c, b))
        return out

    def matching(self, operation: Term, consequent: Term) -> list[Contingency]:
        op = normalize(operation)
        cons = normalize(consequent)
        return [
            c
            for c in self._by_key.values()
            if c.is_ground and normalize(c.operation) == op and normalize(c.consequent) == cons
        ]


class EquivalenceTable:
    def __init__(self, capacity: int, horizon: float = 1.0, stamp_cap: int = 16):
        self.capacity = capacity
        self.horizon = horizon
        self.stamp_cap = stamp_cap
        self._by_pair: dict[tuple[Term, Term], EquivalenceRecord] = {}

    def __len__(self) -> int:
        return len(self._by_pair)

    def __iter__(self) -> Iterable[EquivalenceRecord]:
        return iter(list(self._by_pair.values()))

    def store(self, r: EquivalenceRecord) -> tuple[EquivalenceRecord, bool]:
        key = (r.left, r.right)
        existing = self._by_pair.get(key)
        if existing is None:
            self._by_pair[key] = r
            self._evict()
            return r, True
        if existing.stamp & r.stamp:
            if r.truth.confidence > existing.truth.confidence:
                self._by_pair[key] = r
                return r, False
            return existing, False
        merged = replace(
            existing,
            truth=revise(existing.truth, r.truth, self.horizon),
            stamp=merge_stamps(existing.stamp, r.stamp, self.stamp_cap),
        )
        self._by_pair[key] = merged
        return merged, False

    def _evict(self) -> None:
        while len(self._by_pair) > self.capacity:
            key = min(
                self._by_pair,
                key=lambda k: (self._by_pair[k].truth.confidence, self._by_pair[k].created_at),
            )
            del self._by_pair[key]

    def query(self, t: Term) -> list[tuple[EquivalenceRecord, str, Bindings]]:
        """Records where either side unifies with ``t``; side is 'left'/'right'."""
        out = []
        for r in self._by_pair.values():
            b = unify(r.left, t)
            if b is not None:
                out.append((r, "left", b))
            b = unify(r.right, t)
            if b is not None:
                out.append((r, "right", b))
        return out
