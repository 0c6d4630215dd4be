"""Recursive term language for sensorimotor Narsese (NAL 6-8 subset).

Terms are immutable values: atoms, variables, the executor marker
``{SELF}``, operator atoms, and the binary compounds product ``(a * b)``,
sequence ``(a &/ b)``, inheritance ``<s --> p>``, predictive implication
``<a =/> c>`` and equivalence ``<a <=> b>``.  All connectives are binary;
longer sequences are nested left-associatively.

The module also provides the structural operations everything else is
built on: normalization (canonical variable numbering plus canonical
equivalence side order), one-way unification of a pattern against a
ground term, and substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

INDEPENDENT = "$"
DEPENDENT = "#"

# Variables are keyed by (kind, index) in binding maps.
VarKey = tuple[str, int]
Bindings = dict[VarKey, "Term"]


class Term:
    """Base class; concrete node types below hold the data."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_term(self)!r})"


@dataclass(frozen=True, repr=False)
class Atom(Term):
    name: str


@dataclass(frozen=True, repr=False)
class Variable(Term):
    kind: str  # INDEPENDENT or DEPENDENT
    index: int


@dataclass(frozen=True, repr=False)
class SelfMarker(Term):
    pass


SELF = SelfMarker()


@dataclass(frozen=True, repr=False)
class OperatorAtom(Term):
    name: str


@dataclass(frozen=True, repr=False)
class Product(Term):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Inheritance(Term):
    subject: Term
    predicate: Term


@dataclass(frozen=True, repr=False)
class Sequence(Term):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Implication(Term):
    antecedent: Term
    consequent: Term


@dataclass(frozen=True, repr=False)
class Equivalence(Term):
    left: Term
    right: Term


_BINARY_TYPES = (Product, Inheritance, Sequence, Implication, Equivalence)

_INFIX = {
    Product: " * ",
    Sequence: " &/ ",
    Inheritance: " --> ",
    Implication: " =/> ",
    Equivalence: " <=> ",
}


def children(t: Term) -> tuple[Term, Term] | tuple[()]:
    if isinstance(t, _BINARY_TYPES):
        return _fields(t)
    return ()


def _fields(t: Term) -> tuple[Term, Term]:
    if isinstance(t, Product):
        return t.left, t.right
    if isinstance(t, Inheritance):
        return t.subject, t.predicate
    if isinstance(t, Sequence):
        return t.left, t.right
    if isinstance(t, Implication):
        return t.antecedent, t.consequent
    if isinstance(t, Equivalence):
        return t.left, t.right
    raise TypeError(f"not a compound: {t!r}")


def _rebuild(t: Term, a: Term, b: Term) -> Term:
    return type(t)(a, b)


def format_term(t: Term) -> str:
    """Render a term in the standard textual syntax (see narsese module)."""
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, Variable):
        return f"{t.kind}{t.index}"
    if isinstance(t, SelfMarker):
        return "{SELF}"
    if isinstance(t, OperatorAtom):
        return f"^{t.name}"
    if isinstance(t, (Product, Sequence)):
        a, b = _fields(t)
        return f"({format_term(a)}{_INFIX[type(t)]}{format_term(b)})"
    if isinstance(t, (Inheritance, Implication, Equivalence)):
        a, b = _fields(t)
        return f"<{format_term(a)}{_INFIX[type(t)]}{format_term(b)}>"
    raise TypeError(f"unknown term node: {t!r}")


def subterms(t: Term) -> Iterator[Term]:
    """Depth-first, left-to-right traversal including ``t`` itself."""
    yield t
    kids = children(t)
    for k in kids:
        yield from subterms(k)


def atoms_of(t: Term) -> Iterator[Atom]:
    for s in subterms(t):
        if isinstance(s, Atom):
            yield s


def contains_variables(t: Term) -> bool:
    return any(isinstance(s, Variable) for s in subterms(t))


def is_operation(t: Term) -> bool:
    """True for executable event terms: an inheritance whose predicate is an
    operator atom, i.e. ``<({SELF} * args) --> ^op>`` or ``<{SELF} --> ^op>``."""
    return isinstance(t, Inheritance) and isinstance(t.predicate, OperatorAtom)


def operation_args(t: Term) -> Optional[Term]:
    """Argument subterm of an operation event, or None for argument-free ops."""
    if not is_operation(t):
        return None
    if isinstance(t.subject, Product) and isinstance(t.subject.left, SelfMarker):
        return t.subject.right
    return None


def make_operation(op: OperatorAtom, args: Optional[Term] = None) -> Inheritance:
    if args is None:
        return Inheritance(SELF, op)
    return Inheritance(Product(SELF, args), op)


# --- total order -----------------------------------------------------------

_TAG_RANK = {
    Atom: 0,
    Variable: 1,
    SelfMarker: 2,
    OperatorAtom: 3,
    Product: 4,
    Inheritance: 5,
    Sequence: 6,
    Implication: 7,
    Equivalence: 8,
}


def term_key(t: Term):
    """Sort key establishing a total order on terms: tag rank first, then
    children recursively, then the atom payload.  Used to store equivalences
    with a deterministic side order."""
    rank = _TAG_RANK[type(t)]
    if isinstance(t, Atom):
        return (rank, t.name)
    if isinstance(t, Variable):
        return (rank, t.kind, t.index)
    if isinstance(t, SelfMarker):
        return (rank,)
    if isinstance(t, OperatorAtom):
        return (rank, t.name)
    a, b = _fields(t)
    return (rank, term_key(a), term_key(b))


# --- normalization ---------------------------------------------------------


def _order_equivalences(t: Term) -> Term:
    kids = children(t)
    if not kids:
        return t
    a, b = (_order_equivalences(k) for k in kids)
    if isinstance(t, Equivalence) and term_key(b) < term_key(a):
        a, b = b, a
    return _rebuild(t, a, b)


def _renumber(t: Term) -> Term:
    mapping: dict[VarKey, Variable] = {}
    counters = {INDEPENDENT: 0, DEPENDENT: 0}

    def walk(s: Term) -> Term:
        if isinstance(s, Variable):
            key = (s.kind, s.index)
            if key not in mapping:
                counters[s.kind] += 1
                mapping[key] = Variable(s.kind, counters[s.kind])
            return mapping[key]
        kids = children(s)
        if not kids:
            return s
        a, b = kids
        return _rebuild(s, walk(a), walk(b))

    return walk(t)


def normalize(t: Term) -> Term:
    """Canonical form: equivalence sides in total order, variable indices
    renumbered per kind by first occurrence (depth-first, left-to-right).

    Side ordering and renumbering interact, so iterate to a fixpoint; in
    practice this converges in one or two rounds.
    """
    for _ in range(8):
        t2 = _renumber(_order_equivalences(t))
        if t2 == t:
            return t
        t = t2
    raise RuntimeError(f"normalize did not converge on {t}")


# --- unification and substitution ------------------------------------------


def unify(pattern: Term, ground: Term, bindings: Optional[Bindings] = None) -> Optional[Bindings]:
    """Match ``pattern`` (may contain variables) against a variable-free
    ``ground`` term.  Returns the extended bindings on success, None on
    mismatch.  Both variable kinds match any subterm; a variable seen twice
    must take the same value each time."""
    b = dict(bindings) if bindings else {}

    def walk(p: Term, g: Term) -> bool:
        if isinstance(p, Variable):
            key = (p.kind, p.index)
            if key in b:
                return b[key] == g
            b[key] = g
            return True
        if type(p) is not type(g):
            return False
        if isinstance(p, (Atom, OperatorAtom)):
            return p.name == g.name
        if isinstance(p, SelfMarker):
            return True
        pa, pb = _fields(p)
        ga, gb = _fields(g)
        return walk(pa, ga) and walk(pb, gb)

    return b if walk(pattern, ground) else None


def substitute(t: Term, bindings: Bindings) -> Term:
    """Replace every bound variable occurrence; unbound variables stay."""
    if not bindings:
        return t
    if isinstance(t, Variable):
        return bindings.get((t.kind, t.index), t)
    kids = children(t)
    if not kids:
        return t
    a, b = kids
    return _rebuild(t, substitute(a, bindings), substitute(b, bindings))
