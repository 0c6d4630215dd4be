"""Line-oriented Narsese subset: parsing and printing.

Accepted grammar (one line at a time):

    line      := blank | comment | command | cycles | statement
    statement := term ('.' | '!') [':|:'] ['{' freq conf '}']
    term      := '<' term copula term '>'
               | '(' term connector term { connector term } ')'
               | '{SELF}' | '^'name | '$'var | '#'var | atom
    copula    := '-->' | '=/>' | '<=>'
    connector := '*' | '&/'            (chains associate to the left)
    cycles    := positive integer      (idle inference steps)
    command   := '*setopname' slot '^'name
               | '*babblingops' '=' int
               | '*motorbabbling' '=' float
               | '*volume' '=' int

Atom names may contain single hyphens (``r-e-d``).  Variables are written
``$1``/``#1``; named variables (``$x``) are accepted and numbered by order
of appearance, which is convenient for hand-written match patterns.
``//`` starts a comment, also after a statement.

Printing is the exact inverse: ``parse_term(format_term(t))`` reproduces
``t`` structurally for every term this module can print.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .term import (
    Atom,
    DEPENDENT,
    Equivalence,
    INDEPENDENT,
    Implication,
    Inheritance,
    OperatorAtom,
    Product,
    SELF,
    Sequence,
    Term,
    Variable,
    format_term,
)
from .truth import TruthValue

MAX_NUMBER = 10**9


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[str] = None, column: Optional[int] = None):
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}" + (f": {line!r}" if line else ""))


# --- input line variants ----------------------------------------------------


@dataclass(frozen=True)
class BeliefInput:
    term: Term
    truth: Optional[TruthValue] = None


@dataclass(frozen=True)
class GoalInput:
    term: Term
    truth: Optional[TruthValue] = None


@dataclass(frozen=True)
class CycleInput:
    count: int


@dataclass(frozen=True)
class CommandInput:
    name: str
    args: tuple


@dataclass(frozen=True)
class CommentInput:
    text: str


@dataclass(frozen=True)
class BlankInput:
    pass


InputLine = Union[BeliefInput, GoalInput, CycleInput, CommandInput, CommentInput, BlankInput]


# --- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<tense>:\|:)
    | (?P<copula><=>|=/>|-->)
    | (?P<seq>&/)
    | (?P<comment>//.*)
    | (?P<self>\{SELF\})
    | (?P<operator>\^[A-Za-z_][A-Za-z0-9_]*)
    | (?P<ivar>\$[A-Za-z0-9_]+)
    | (?P<dvar>\#[A-Za-z0-9_]+)
    | (?P<number>\d+\.\d+|\d+)
    | (?P<atom>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)
    | (?P<punct>[<>()*.!{}=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(line: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            raise ParseError(f"unexpected character {line[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        assert kind is not None
        if kind == "comment":
            break
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos + 1))
        pos = m.end()
    return tokens


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], line: str):
        self.tokens = tokens
        self.line = line
        self.pos = 0
        self._named_vars: dict[tuple[str, str], int] = {}

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.line, len(self.line) + 1)
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", self.line, tok.column)
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    # terms

    def term(self) -> Term:
        tok = self.next()
        if tok.text == "<":
            left = self.term()
            cop = self.next()
            if cop.kind != "copula":
                raise ParseError(f"expected copula, found {cop.text!r}", self.line, cop.column)
            right = self.term()
            self.expect(">")
            if cop.text == "-->":
                return Inheritance(left, right)
            if cop.text == "=/>":
                return Implication(left, right)
            return Equivalence(left, right)
        if tok.text == "(":
            result = self.term()
            connector = None
            while True:
                tok2 = self.next()
                if tok2.text == ")":
                    if connector is None:
                        raise ParseError("expected connector inside parentheses", self.line, tok2.column)
                    return result
                if tok2.text == "*" or tok2.kind == "seq":
                    if connector is not None and connector != tok2.text:
                        raise ParseError("mixed connectors need parentheses", self.line, tok2.column)
                    connector = tok2.text
                    rhs = self.term()
                    result = Product(result, rhs) if tok2.text == "*" else Sequence(result, rhs)
                else:
                    raise ParseError(f"expected connector or ')', found {tok2.text!r}", self.line, tok2.column)
        if tok.kind == "self":
            return SELF
        if tok.kind == "operator":
            return OperatorAtom(tok.text[1:])
        if tok.kind in ("ivar", "dvar"):
            kind = INDEPENDENT if tok.kind == "ivar" else DEPENDENT
            return Variable(kind, self._var_index(kind, tok.text[1:]))
        if tok.kind == "atom":
            return Atom(tok.text)
        raise ParseError(f"unexpected token {tok.text!r}", self.line, tok.column)

    def _var_index(self, kind: str, name: str) -> int:
        if name.isdigit():
            index = int(name)
            if index < 1:
                raise ParseError(f"variable index must be positive: {kind}{name}", self.line)
            if index > MAX_NUMBER:
                raise ParseError(f"number overflow: {name}", self.line)
            return index
        key = (kind, name)
        if key not in self._named_vars:
            used = [i for (k, _), i in self._named_vars.items() if k == kind]
            self._named_vars[key] = max(used, default=0) + 1
        return self._named_vars[key]

    # statements

    def statement(self) -> tuple[Term, str, Optional[TruthValue]]:
        t = self.term()
        punct = self.next()
        if punct.text not in (".", "!"):
            raise ParseError(f"expected '.' or '!', found {punct.text!r}", self.line, punct.column)
        if self.peek() is not None and self.peek().kind == "tense":
            self.next()
        truth = None
        if self.peek() is not None and self.peek().text == "{":
            self.next()
            f = self._number(float)
            c = self._number(float)
            self.expect("}")
            truth = TruthValue(f, c)
        if not self.at_end():
            tok = self.peek()
            raise ParseError(f"trailing input {tok.text!r}", self.line, tok.column)
        return t, punct.text, truth

    def _number(self, conv):
        tok = self.next()
        if tok.kind != "number":
            raise ParseError(f"expected number, found {tok.text!r}", self.line, tok.column)
        value = conv(tok.text)
        if value > MAX_NUMBER:
            raise ParseError(f"number overflow: {tok.text}", self.line, tok.column)
        return value


_COMMANDS = ("setopname", "babblingops", "motorbabbling", "volume")


def _parse_command(p: _Parser, line: str) -> CommandInput:
    p.expect("*")
    name_tok = p.next()
    name = name_tok.text
    if name not in _COMMANDS:
        raise ParseError(f"unknown command *{name}", line, name_tok.column)
    if name == "setopname":
        slot = p._number(int)
        op = p.next()
        if op.kind != "operator":
            raise ParseError(f"expected ^operator, found {op.text!r}", line, op.column)
        args = (slot, op.text[1:])
    else:
        p.expect("=")
        if name == "motorbabbling":
            value = p._number(float)
            if not 0.0 <= value <= 1.0:
                raise ParseError(f"motorbabbling rate out of [0,1]: {value}", line)
        else:
            value = p._number(int)
            if name == "volume" and not 0 <= value <= 100:
                raise ParseError(f"volume out of [0,100]: {value}", line)
        args = (value,)
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input {tok.text!r}", line, tok.column)
    return CommandInput(name, args)


def parse_line(text: str) -> InputLine:
    """Classify and parse one input line.  Raises ParseError with column
    information on malformed input."""
    stripped = text.strip()
    if not stripped:
        return BlankInput()
    if stripped.startswith("//"):
        return CommentInput(stripped[2:].strip())
    tokens = _tokenize(text)
    if not tokens:
        return BlankInput()
    p = _Parser(tokens, text)
    first = tokens[0]
    if first.text == "*":
        return _parse_command(p, text)
    if first.kind == "number" and len(tokens) == 1:
        if "." in first.text:
            raise ParseError(f"cycle count must be an integer: {first.text}", text, first.column)
        count = int(first.text)
        if count < 1:
            raise ParseError(f"cycle count must be positive: {count}", text, first.column)
        if count > MAX_NUMBER:
            raise ParseError(f"number overflow: {first.text}", text, first.column)
        return CycleInput(count)
    t, punct, truth = p.statement()
    if punct == ".":
        return BeliefInput(t, truth)
    return GoalInput(t, truth)


def parse_term(text: str) -> Term:
    """Parse a bare term (no punctuation), e.g. for match patterns."""
    tokens = _tokenize(text)
    p = _Parser(tokens, text)
    t = p.term()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input {tok.text!r}", text, tok.column)
    return t


def format_statement(t: Term, punct: str = ".", tense: bool = True) -> str:
    out = f"{format_term(t)}{punct}"
    return f"{out} :|:" if tense else out


def format_truth(truth: TruthValue) -> str:
    return f"Truth: frequency={truth.frequency:.6f} confidence={truth.confidence:.6f}"
