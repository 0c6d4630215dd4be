"""Temporal induction: build (preconditions &/ operation) =/> outcome rules.

When a non-operation belief event arrives, look back through the recent
event window for the most recent executed operation, gather the belief
events that preceded that operation, and store one contingency per
selection of precondition events, together with a variable-introduced
generalization of each.

Only maximal-size selections are formed (all available precondition
events up to the configured limit).  Forming every smaller selection as
well floods the table with under-specified rules whose preconditions
match almost any later situation; those rules then outcompete the
intended transfer behavior at decision time.
"""

from __future__ import annotations

from dataclasses import replace
from itertools import combinations
from typing import Optional

from .config import Config
from .memory import Contingency, ContingencyTable, Event, EventFifo, merge_stamps
from .term import (
    Atom,
    DEPENDENT,
    INDEPENDENT,
    Term,
    Variable,
    _rebuild,
    atoms_of,
    children,
    is_operation,
    operation_args,
)
from .truth import Evidence, induction_from_counts


def _substitute_atoms(t: Term, mapping: dict[str, Variable]) -> Term:
    if isinstance(t, Atom):
        return mapping.get(t.name, t)
    kids = children(t)
    if not kids:
        return t
    a, b = kids
    return _rebuild(t, _substitute_atoms(a, mapping), _substitute_atoms(b, mapping))


def shared_atom_mapping(
    components: list[tuple[Term, bool]], reserved: frozenset[str]
) -> dict[str, Variable]:
    """Map each non-reserved atom occurring in >= 2 components to a fresh
    variable: independent if any occurrence is in a consequent-flagged
    component, dependent otherwise.  Numbering follows first occurrence in
    component order, separately per kind, so results come out already
    contiguous."""
    seen: dict[str, set[int]] = {}
    in_consequent: set[str] = set()
    for idx, (comp, is_consequent) in enumerate(components):
        for a in atoms_of(comp):
            if a.name in reserved:
                continue
            seen.setdefault(a.name, set()).add(idx)
            if is_consequent:
                in_consequent.add(a.name)

    shared = {name for name, comps in seen.items() if len(comps) >= 2}
    if not shared:
        return {}

    mapping: dict[str, Variable] = {}
    counters = {INDEPENDENT: 0, DEPENDENT: 0}
    for comp, _ in components:
        for a in atoms_of(comp):
            if a.name in shared and a.name not in mapping:
                kind = INDEPENDENT if a.name in in_consequent else DEPENDENT
                counters[kind] += 1
                mapping[a.name] = Variable(kind, counters[kind])
    return mapping


def introduce_variables(c: Contingency, reserved: frozenset[str]) -> Contingency:
    """Generalize a ground contingency.  Components are the precondition
    event terms, the operation's argument product, and the consequent;
    unchanged when no atom spans two of them."""
    op_args = operation_args(c.operation)
    components: list[tuple[Term, bool]] = [(p, False) for p in c.pre_events]
    if op_args is not None:
        components.append((op_args, False))
    components.append((c.consequent, True))

    mapping = shared_atom_mapping(components, reserved)
    if not mapping:
        return c
    return replace(
        c,
        pre_events=tuple(_substitute_atoms(p, mapping) for p in c.pre_events),
        operation=_substitute_atoms(c.operation, mapping),
        consequent=_substitute_atoms(c.consequent, mapping),
    )


def on_outcome(
    outcome: Event,
    fifo: EventFifo,
    now: int,
    cfg: Config,
    table: ContingencyTable,
) -> tuple[list[tuple[Contingency, bool]], Optional[Event]]:
    """Form and store contingencies ending in ``outcome``.

    Returns (stored records with their was-new flags, the operation event
    that anchored them).  No operation in the window means no learning.
    """
    if not outcome.is_belief or outcome.derived or is_operation(outcome.term):
        return [], None

    events = fifo.snapshot()
    op_event: Optional[Event] = None
    for e in reversed(events):
        if e is outcome or e.occurrence >= outcome.occurrence:
            continue
        if outcome.occurrence - e.occurrence > cfg.temporal_window:
            break
        if e.is_belief and not e.derived and is_operation(e.term):
            op_event = e
            break
    if op_event is None:
        return [], None

    preceding = [
        e
        for e in events
        if e.is_belief
        and not e.derived
        and not is_operation(e.term)
        and e.occurrence < op_event.occurrence
        and op_event.occurrence - e.occurrence <= cfg.temporal_window
    ]
    if not preceding:
        return [], None
    preceding.sort(key=lambda e: e.occurrence)

    size = min(len(preceding), cfg.max_precondition_events)
    selections = list(combinations(preceding, size))
    # AIKR cap: prefer the selections built from the most recent events
    selections.sort(key=lambda sel: tuple(-e.occurrence for e in reversed(sel)))
    selections = selections[: cfg.max_candidates_per_outcome]

    stored: list[tuple[Contingency, bool]] = []
    for sel in selections:
        stamp = outcome.stamp | op_event.stamp
        for e in sel:
            stamp |= e.stamp
        stamp = merge_stamps(stamp, frozenset(), cfg.stamp_capacity)
        evidence = Evidence(1.0, 1.0)
        ground = Contingency(
            pre_events=tuple(e.term for e in sel),
            operation=op_event.term,
            consequent=outcome.term,
            evidence=evidence,
            truth=induction_from_counts(evidence, cfg.evidential_horizon),
            stamp=stamp,
            last_confirmed=now,
        )
        stored.append(table.store(ground))
        generalized = introduce_variables(ground, cfg.reserved_atoms)
        if generalized.term != ground.term:
            stored.append(table.store(generalized))
    return stored, op_event
