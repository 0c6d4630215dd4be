"""Event-driven inference engine.

One engine owns the clock, the bounded stores, the operator registry and
the RNG.  Each arriving event is stamped with the current time, pushed
into the recent-event FIFO, and drives one inference cycle:

  belief event   -> substitution through stored equivalences,
                    temporal induction on the outcome,
                    equivalence derivation when an operation was involved
  goal event     -> decision making, execution or motor babbling
  idle cycles    -> goal reprocessing while still inside the window

Output lines are pushed to a sink callable; the volume setting controls
which lines are produced (0: executions only; >=50: inputs, derivations,
substitutions; >=100: decision debug).
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .config import Config
from .decision import Decision, OperatorRegistry, babble, find_decisions, select_best
from .equivalence import derive_on_execution, substitute_event
from .induction import on_outcome
from .memory import (
    BELIEF,
    GOAL,
    Contingency,
    ContingencyTable,
    EquivalenceTable,
    Event,
    EventFifo,
)
from .narsese import format_statement, format_truth
from .term import Term, format_term, is_operation, normalize
from .truth import Evidence, TruthValue, expectation, induction_from_counts


class Engine:
    def __init__(self, cfg: Optional[Config] = None, sink: Optional[Callable[[str], None]] = None):
        self.cfg = cfg or Config()
        self.time = 0
        self.fifo = EventFifo(self.cfg.fifo_capacity)
        self.contingencies = ContingencyTable(
            self.cfg.contingency_capacity, self.cfg.evidential_horizon, self.cfg.stamp_capacity
        )
        self.equivalences = EquivalenceTable(
            self.cfg.equivalence_capacity, self.cfg.evidential_horizon, self.cfg.stamp_capacity
        )
        self.registry = OperatorRegistry()
        self.rng = random.Random(self.cfg.seed)
        self._sink = sink or (lambda line: None)
        self._next_stamp_id = 1
        self._active_goal: Optional[Event] = None
        self._goal_done = False

    # -- plumbing ------------------------------------------------------------

    def _emit(self, line: str, min_volume: int = 0) -> None:
        if self.cfg.volume >= min_volume:
            self._sink(line)

    def _fresh_stamp(self) -> frozenset:
        sid = self._next_stamp_id
        self._next_stamp_id += 1
        return frozenset((sid,))

    # -- inputs ----------------------------------------------------------------

    def input_belief(self, term: Term, truth: Optional[TruthValue] = None) -> None:
        e = Event(
            term=normalize(term),
            truth=truth or self.cfg.default_truth,
            occurrence=self.time,
            punctuation=BELIEF,
            stamp=self._fresh_stamp(),
        )
        self.fifo.push(e)
        self._emit(f"Input: {format_statement(e.term, BELIEF)}", min_volume=50)
        if not is_operation(e.term):
            for twin in substitute_event(e, self.equivalences, self.cfg):
                self.fifo.push(twin)
                self._emit(
                    f"Substituted: {format_statement(twin.term, BELIEF)} {format_truth(twin.truth)}",
                    min_volume=50,
                )
            self._learn_from_outcome(e)
        self.time += 1

    def input_goal(self, term: Term, truth: Optional[TruthValue] = None) -> None:
        g = Event(
            term=normalize(term),
            truth=truth or self.cfg.default_truth,
            occurrence=self.time,
            punctuation=GOAL,
            stamp=self._fresh_stamp(),
        )
        self.fifo.push(g)
        self._emit(f"Input: {format_statement(g.term, GOAL)}", min_volume=50)
        self._active_goal = g
        self._goal_done = False
        self._process_goal()
        self.time += 1

    def cycles(self, n: int) -> None:
        """Idle inference steps; an unsatisfied goal is retried while the
        temporal window still covers it."""
        for _ in range(n):
            self.time += 1
            if (
                self._active_goal is not None
                and not self._goal_done
                and self.time - self._active_goal.occurrence <= self.cfg.temporal_window
            ):
                self._process_goal()

    # -- cycle pieces ----------------------------------------------------------

    def _learn_from_outcome(self, outcome: Event) -> None:
        stored, op_event = on_outcome(outcome, self.fifo, self.time, self.cfg, self.contingencies)
        for cont, was_new in stored:
            if was_new:
                self._emit(
                    f"Derived: {format_term(cont.term)}. {format_truth(cont.truth)}",
                    min_volume=50,
                )
        if op_event is None or not stored:
            return
        derived = derive_on_execution(
            op_event.term,
            outcome.term,
            self.contingencies,
            self.equivalences,
            self.cfg,
            self.time,
        )
        for record, was_new in derived:
            if was_new:
                self._emit(
                    f"Derived: {format_term(record.term)}. {format_truth(record.truth)}",
                    min_volume=50,
                )

    def _process_goal(self) -> None:
        goal = self._active_goal
        assert goal is not None
        decisions = find_decisions(goal, self.fifo, self.contingencies, self.cfg, self.time)
        best = select_best(decisions)
        if best is not None and best.expectation > self.cfg.decision_threshold:
            self._emit(
                f"Decision: {format_term(best.operation)}. "
                f"desire=({best.desire.frequency:.6f}, {best.desire.confidence:.6f}) "
                f"expectation={best.expectation:.6f}",
                min_volume=100,
            )
            self._execute(best.operation)
            return
        babbled = babble(self.registry, self.rng)
        if babbled is not None:
            self._execute(babbled)

    def _execute(self, op_term: Term) -> None:
        e = Event(
            term=normalize(op_term),
            truth=self.cfg.default_truth,
            occurrence=self.time,
            punctuation=BELIEF,
            stamp=self._fresh_stamp(),
        )
        self.fifo.push(e)
        self._goal_done = True
        self._emit(f"Executed: {format_term(e.term)}")

    # -- commands and hooks ------------------------------------------------------

    def register_operator(self, slot: int, name: str) -> None:
        self.registry.register(slot, name)

    def apply_command(self, name: str, args: tuple) -> None:
        if name == "setopname":
            self.register_operator(args[0], args[1])
        elif name == "babblingops":
            self.registry.babbling_count = args[0]
        elif name == "motorbabbling":
            self.registry.babbling_rate = args[0]
        elif name == "volume":
            self.cfg.volume = args[0]
        else:
            raise ValueError(f"unknown command: {name}")

    def seed_contingency(
        self,
        pre_events: tuple[Term, ...],
        operation: Term,
        consequent: Term,
        positive: float = 1.0,
        total: float = 1.0,
    ) -> Contingency:
        """Test hook: place a contingency directly into the table without any
        event ever having occurred."""
        if not pre_events:
            raise ValueError("a contingency needs at least one precondition event")
        evidence = Evidence(positive, total)
        cont = Contingency(
            pre_events=tuple(normalize(p) for p in pre_events),
            operation=normalize(operation),
            consequent=normalize(consequent),
            evidence=evidence,
            truth=induction_from_counts(evidence, self.cfg.evidential_horizon),
            stamp=self._fresh_stamp(),
            last_confirmed=self.time,
        )
        self.contingencies.store(cont)
        return cont

    def dump_memory(self) -> list[str]:
        """One line per stored contingency and equivalence, for inspection."""
        lines = []
        for c in self.contingencies:
            lines.append(f"Contingency: {format_term(c.term)}. {format_truth(c.truth)}")
        for r in self.equivalences:
            lines.append(f"Equivalence: {format_term(r.term)}. {format_truth(r.truth)}")
        return lines
