"""Propositional formulas over named atoms with ¬, ∧, ∨.

Grammar (precedence NOT > AND > OR, binary connectives left-associative)::

    Or    := And ('|' And)*
    And   := Unary ('&' Unary)*
    Unary := '!' Unary | Atom | '(' Or ')'
    Atom  := [A-Za-z][A-Za-z0-9_+-]*

``¬``, ``∧`` and ``∨`` are accepted as aliases of ``!``, ``&`` and ``|``.
The parser is table driven with explicit stacks, so input nesting depth is
bounded only by memory.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

import numpy as np

from .errors import CapacityError, QHLError, ShapeError, UnboundAtomError
from .subspace import Projector, complement, join, meet

MAX_TRUTH_TABLE_ATOMS = 20


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or]


class ParseError(QHLError, ValueError):
    """Malformed formula text.

    ``position`` is the 0-based character offset of the offending lexeme
    (``len(text)`` for unexpected end of input).
    """

    def __init__(self, text: str, position: int, expected: tuple[str, ...], found: str):
        self.text = text
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(
            f"at offset {position}: expected {' or '.join(expected)}, found {found}"
        )


# --- lexing ---------------------------------------------------------------

_ALIASES = {"¬": "!", "∧": "&", "∨": "|"}
_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_+\-]*")
_OPERAND = ("atom", "'!'", "'('")
_OPERATOR = ("'&'", "'|'", "')'", "end of input")


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    """Yield (kind, lexeme, offset); kind is 'atom', an operator char, or 'end'."""
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        c = _ALIASES.get(c, c)
        if c in "!&|()":
            yield c, text[i], i
            i += 1
            continue
        m = _ATOM_RE.match(text, i)
        if m is None:
            yield "bad", text[i], i
            return
        yield "atom", m.group(), i
        i = m.end()
    yield "end", "", n


def _describe(kind: str, lexeme: str) -> str:
    if kind == "end":
        return "end of input"
    if kind == "atom":
        return f"atom {lexeme!r}"
    return repr(lexeme)


# --- parsing --------------------------------------------------------------

_BINARY = {"&": (2, And), "|": (1, Or)}


def parse(text: str) -> Formula:
    """Parse formula text, raising ParseError with a position on bad input."""
    operands: list[Formula] = []
    # Operator stack entries: '!', '&', '|' or '(' paired with its offset.
    ops: list[tuple[str, int]] = []
    expect_operand = True

    def reduce_top():
        op, _ = ops.pop()
        if op == "!":
            operands.append(Not(operands.pop()))
        else:
            right = operands.pop()
            left = operands.pop()
            operands.append(_BINARY[op][1](left, right))

    def reduce_unary():
        while ops and ops[-1][0] == "!":
            reduce_top()

    for kind, lexeme, pos in _tokens(text):
        if expect_operand:
            if kind == "atom":
                operands.append(Atom(lexeme))
                reduce_unary()
                expect_operand = False
            elif kind in ("!", "("):
                ops.append((kind, pos))
            else:
                raise ParseError(text, pos, _OPERAND, _describe(kind, lexeme))
            continue
        if kind in _BINARY:
            prec = _BINARY[kind][0]
            while ops and ops[-1][0] in _BINARY and _BINARY[ops[-1][0]][0] >= prec:
                reduce_top()
            ops.append((kind, pos))
            expect_operand = True
        elif kind == ")":
            while ops and ops[-1][0] != "(":
                reduce_top()
            if not ops:
                raise ParseError(text, pos, ("'&'", "'|'", "end of input"), "')'")
            ops.pop()
            reduce_unary()
        elif kind == "end":
            while ops:
                if ops[-1][0] == "(":
                    raise ParseError(text, pos, ("'&'", "'|'", "')'"), "end of input")
                reduce_top()
        else:
            raise ParseError(text, pos, _OPERATOR, _describe(kind, lexeme))
    return operands[0]


def parse_argument(text: str) -> tuple[list[Formula], Formula]:
    """Parse ``"P1; P2 |- C"`` (``⊢`` also accepted) into premises and conclusion.

    An empty premise list (``"|- C"``) is allowed.
    """
    normalized = text.replace("⊢", "|-")
    if normalized.count("|-") != 1:
        raise ParseError(text, len(text), ("exactly one '|-'",), "none" if "|-" not in normalized else "several")
    left, right = normalized.split("|-")
    offset = len(left) + 2
    premises = []
    start = 0
    for chunk in left.split(";"):
        if chunk.strip():
            premises.append(_parse_at(chunk, text, start))
        elif left.strip():
            raise ParseError(text, start, ("premise formula",), "empty premise")
        start += len(chunk) + 1
    return premises, _parse_at(right, text, offset)


def _parse_at(chunk: str, whole: str, offset: int) -> Formula:
    try:
        return parse(chunk)
    except ParseError as e:
        raise ParseError(whole, e.position + offset, e.expected, e.found) from None


# --- rendering ------------------------------------------------------------

def _prec(f: Formula) -> int:
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    return 3


def render(f: Formula) -> str:
    """Canonical ASCII text that reparses to the same tree."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = render(f.child)
        return f"!{inner}" if _prec(f.child) == 3 else f"!({inner})"
    op = " & " if isinstance(f, And) else " | "
    p = _prec(f)
    left = render(f.left)
    right = render(f.right)
    if _prec(f.left) < p:
        left = f"({left})"
    if _prec(f.right) <= p:
        right = f"({right})"
    return left + op + right


def atoms(f: Formula) -> list[str]:
    """Atom names in order of first appearance (left to right)."""
    seen: dict[str, None] = {}
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            seen.setdefault(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return list(seen)


def conjunction(formulas) -> Formula | None:
    """Left-nested AND of the formulas, or None for an empty list."""
    out = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return out


# --- semantics ------------------------------------------------------------

def classical_eval(f: Formula, assignment: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return bool(assignment[f.name])
        except KeyError:
            raise UnboundAtomError(f.name) from None
    if isinstance(f, Not):
        return not classical_eval(f.child, assignment)
    if isinstance(f, And):
        return classical_eval(f.left, assignment) and classical_eval(f.right, assignment)
    return classical_eval(f.left, assignment) or classical_eval(f.right, assignment)


def truth_table(f: Formula) -> list[tuple[dict[str, bool], bool]]:
    """All 2^n rows, atoms sorted by name, False before True in each column."""
    names = sorted(atoms(f))
    if len(names) > MAX_TRUTH_TABLE_ATOMS:
        raise CapacityError(
            f"truth table over {len(names)} atoms exceeds the cap of {MAX_TRUTH_TABLE_ATOMS}"
        )
    rows = []
    for values in itertools.product((False, True), repeat=len(names)):
        a = dict(zip(names, values))
        rows.append((a, classical_eval(f, a)))
    return rows


def check_binding(binding: Mapping[str, Projector]) -> int | None:
    """Common dimension of the bound projectors (None if the binding is empty)."""
    dims = {name: p.dim for name, p in binding.items()}
    if len(set(dims.values())) > 1:
        raise ShapeError(f"bound projectors have differing dimensions: {dims}")
    return next(iter(dims.values()), None)


def quantum_eval(f: Formula, binding: Mapping[str, Projector]) -> Projector:
    """Evaluate with ¬ → complement, ∧ → meet, ∨ → join."""
    check_binding({n: binding[n] for n in atoms(f) if n in binding})
    return _qeval(f, binding)


def _qeval(f: Formula, binding: Mapping[str, Projector]) -> Projector:
    if isinstance(f, Atom):
        try:
            return binding[f.name]
        except KeyError:
            raise UnboundAtomError(f.name) from None
    if isinstance(f, Not):
        return complement(_qeval(f.child, binding))
    left = _qeval(f.left, binding)
    right = _qeval(f.right, binding)
    return meet(left, right) if isinstance(f, And) else join(left, right)


def random_formula(rng: np.random.Generator, names, max_depth: int) -> Formula:
    """Random formula tree of depth at most ``max_depth`` (an atom has depth 0)."""
    names = list(names)
    if max_depth <= 0 or rng.random() < 0.3:
        return Atom(names[rng.integers(len(names))])
    kind = rng.integers(3)
    if kind == 0:
        return Not(random_formula(rng, names, max_depth - 1))
    cls = And if kind == 1 else Or
    return cls(random_formula(rng, names, max_depth - 1), random_formula(rng, names, max_depth - 1))
