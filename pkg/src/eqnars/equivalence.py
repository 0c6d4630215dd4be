"""Functional equivalence: derive <A <=> B> from co-stored contingencies.

Two stimuli are functionally equivalent when each is a precondition of
the same operation leading to the same outcome.  Derivation is gated on
execution: it runs only when an operation event has just occurred and a
contingency involving it received positive evidence.  Derived records
are simplified by cancelling a shared conjunct and generalized by
variable introduction, and every stored equivalence can map incoming
events onto their equivalent counterparts (single hop).
"""

from __future__ import annotations

from typing import Optional

from .config import Config
from .induction import shared_atom_mapping, _substitute_atoms
from .memory import (
    BELIEF,
    Contingency,
    ContingencyTable,
    EquivalenceRecord,
    EquivalenceTable,
    Event,
    merge_stamps,
)
from .term import (
    Equivalence,
    Sequence,
    Term,
    contains_variables,
    normalize,
    substitute,
    term_key,
    unify,
)
from .truth import analogy, comparison


def _condition_without_op(c: Contingency) -> Term:
    seq: Term = c.pre_events[0]
    for p in c.pre_events[1:]:
        seq = Sequence(seq, p)
    return seq


def _make_record(
    a: Term, b: Term, truth, trigger_op: Term, now: int, stamp
) -> Optional[EquivalenceRecord]:
    a, b = normalize(a), normalize(b)
    if a == b:
        return None
    if term_key(b) < term_key(a):
        a, b = b, a
    return EquivalenceRecord(
        left=a, right=b, truth=truth, trigger_op=trigger_op, created_at=now, stamp=stamp
    )


def cancel_common_conjunct(r: EquivalenceRecord) -> Optional[EquivalenceRecord]:
    """<(X &/ A) <=> (X &/ B)>  ->  <A <=> B>, and symmetrically for a
    shared right conjunct.  None when the sides share nothing."""
    left, right = r.left, r.right
    if not (isinstance(left, Sequence) and isinstance(right, Sequence)):
        return None
    if normalize(left.left) == normalize(right.left):
        return _make_record(
            left.right, right.right, r.truth, r.trigger_op, r.created_at, r.stamp
        )
    if normalize(left.right) == normalize(right.right):
        return _make_record(
            left.left, right.left, r.truth, r.trigger_op, r.created_at, r.stamp
        )
    return None


def introduce_variables_equiv(
    r: EquivalenceRecord, reserved: frozenset[str]
) -> EquivalenceRecord:
    """Replace every non-reserved atom occurring on both sides with a fresh
    independent variable; truth unchanged."""
    mapping = shared_atom_mapping([(r.left, True), (r.right, True)], reserved)
    if not mapping:
        return r
    t = normalize(
        Equivalence(
            _substitute_atoms(r.left, mapping), _substitute_atoms(r.right, mapping)
        )
    )
    assert isinstance(t, Equivalence)
    return EquivalenceRecord(
        left=t.left,
        right=t.right,
        truth=r.truth,
        trigger_op=r.trigger_op,
        created_at=r.created_at,
        stamp=r.stamp,
    )


def derive_on_execution(
    executed_op: Term,
    consequent: Term,
    contingencies: ContingencyTable,
    equivalences: EquivalenceTable,
    cfg: Config,
    now: int,
) -> list[tuple[EquivalenceRecord, bool]]:
    """Pair every two ground contingencies that share the executed operation
    and the confirmed consequent but differ in their preconditions, and
    store the resulting equivalences (raw, conjunct-cancelled, and
    variable-introduced forms).

    Pairs with overlapping stamps are skipped: contingencies induced from
    the same trial would otherwise manufacture equivalences out of a single
    observation.
    """
    candidates = [
        c
        for c in contingencies.matching(executed_op, consequent)
        if c.truth.confidence >= cfg.min_pair_confidence
    ]
    stored: list[tuple[EquivalenceRecord, bool]] = []
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            c1, c2 = candidates[i], candidates[j]
            if c1.stamp & c2.stamp:
                continue
            a = _condition_without_op(c1)
            b = _condition_without_op(c2)
            stamp = merge_stamps(c1.stamp, c2.stamp, cfg.stamp_capacity)
            base = _make_record(
                a,
                b,
                comparison(c1.truth, c2.truth, cfg.evidential_horizon),
                normalize(executed_op),
                now,
                stamp,
            )
            if base is None:
                continue
            records = [base]
            cancelled = cancel_common_conjunct(base)
            if cancelled is not None:
                records.append(cancelled)
            for r in list(records):
                generalized = introduce_variables_equiv(r, cfg.reserved_atoms)
                if (generalized.left, generalized.right) != (r.left, r.right):
                    records.append(generalized)
            for r in records:
                stored.append(equivalences.store(r))
    return stored


def substitute_event(
    e: Event, equivalences: EquivalenceTable, cfg: Config
) -> list[Event]:
    """Map a belief event through every stored equivalence whose one side
    unifies with it; the derived twins carry analogy-weakened truth and the
    same occurrence time.  Derived events are never re-substituted."""
    if not e.is_belief or e.derived:
        return []
    out: list[Event] = []
    seen_terms: set[Term] = set()
    for record, side, bindings in equivalences.query(e.term):
        other = record.right if side == "left" else record.left
        mapped = substitute(other, bindings)
        if contains_variables(mapped):
            continue
        mapped = normalize(mapped)
        if mapped == e.term or mapped in seen_terms:
            continue
        seen_terms.add(mapped)
        out.append(
            Event(
                term=mapped,
                truth=analogy(e.truth, record.truth),
                occurrence=e.occurrence,
                punctuation=BELIEF,
                stamp=merge_stamps(e.stamp, record.stamp, cfg.stamp_capacity),
                derived=True,
            )
        )
    return out
