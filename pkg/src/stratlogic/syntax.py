"""Abstract syntax for the strategy logic: terms, vectors, formulas, programs.

Derived connectives (Or, Implies, Iff, Diamond) are real nodes, evaluated by
their defining clauses; they are never rewritten away, so parse/render round
trips preserve structure.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union, TYPE_CHECKING

from .games import GameError, to_fraction

if TYPE_CHECKING:
    from .games import GameForm, StrategicGame


# --------------------------------------------------------------------------
# strategy terms and vectors


@dataclass(frozen=True)
class Concrete:
    """A named strategy; denotes {name} where available, else the empty set."""

    name: str


@dataclass(frozen=True)
class Adversary:
    """The wildcard term ``??``: denotes the player's whole strategy set."""


@dataclass(frozen=True)
class Current:
    """The term ``!!``: denotes whatever the player plays at the source state."""


Term = Union[Concrete, Adversary, Current]

ADV = Adversary()
CUR = Current()


@dataclass(frozen=True)
class Vector:
    """One strategy term per player; doubles as an atom and as a program."""

    terms: tuple[Term, ...]

    def __init__(self, terms: Iterable[Term]):
        terms = tuple(terms)
        if len(terms) < 2:
            raise GameError("a strategy vector needs at least two positions")
        for t in terms:
            if not isinstance(t, (Concrete, Adversary, Current)):
                raise GameError(f"not a strategy term: {t!r}")
        object.__setattr__(self, "terms", terms)

    @property
    def n(self) -> int:
        return len(self.terms)

    def determined(self) -> bool:
        """True iff no position is the Adversary wildcard."""
        return all(not isinstance(t, Adversary) for t in self.terms)


# --------------------------------------------------------------------------
# formulas


class Formula:
    """Base class; supplies connective sugar for building test formulas."""

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class VectorAtom(Formula):
    """True at s iff every Concrete position of the vector matches s."""

    vector: Vector


@dataclass(frozen=True)
class Winner(Formula):
    name: str


@dataclass(frozen=True)
class UtilEq(Formula):
    """``u<player> = value``; the value must be in the game's utility range
    at evaluation time."""

    player: int
    value: Fraction

    def __init__(self, player: int, value: int | str | float | Fraction):
        object.__setattr__(self, "player", player)
        object.__setattr__(self, "value", to_fraction(value))


@dataclass(frozen=True)
class Label(Formula):
    text: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    program: "Program"
    body: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    program: "Program"
    body: Formula


TOP = Top()
BOT = Not(TOP)


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; empty conjunction is T."""
    out: Formula | None = None
    for part in parts:
        out = part if out is None else And(out, part)
    return TOP if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; empty disjunction is ~T."""
    out: Formula | None = None
    for part in parts:
        out = part if out is None else Or(out, part)
    return BOT if out is None else out


# --------------------------------------------------------------------------
# programs


class Program:
    def __add__(self, other: Program) -> Program:
        return Choice(self, other)


@dataclass(frozen=True)
class Vec(Program):
    vector: Vector


@dataclass(frozen=True)
class Test(Program):
    body: Formula


@dataclass(frozen=True)
class Seq(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Choice(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Star(Program):
    body: Program


@dataclass(frozen=True)
class Agent(Program):
    """Epistemic accessibility for one agent (intensional models only)."""

    player: int


@dataclass(frozen=True)
class AgentConv(Program):
    """The converse of an agent's accessibility relation."""

    player: int


def seq(first: Program, *rest: Program) -> Program:
    out = first
    for p in rest:
        out = Seq(out, p)
    return out


def choice(first: Program, *rest: Program) -> Program:
    out = first
    for p in rest:
        out = Choice(out, p)
    return out


# --------------------------------------------------------------------------
# signatures: what the parser and the property builders need to know


@dataclass(frozen=True)
class Signature:
    """Strategy vocabulary plus, when known, the utility range and the
    alternative set used by payoff and winner atoms."""

    strategy_sets: tuple[tuple[str, ...], ...]
    util_range: tuple[Fraction, ...] | None = None
    alternatives: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.strategy_sets)

    @property
    def players(self) -> range:
        return range(1, self.n + 1)

    def strategies(self, player: int) -> tuple[str, ...]:
        if not 1 <= player <= self.n:
            raise GameError(f"no player {player} in a {self.n}-player signature")
        return self.strategy_sets[player - 1]

    @classmethod
    def from_form(cls, form: "GameForm") -> Signature:
        return cls(form.strategy_sets)

    @classmethod
    def from_game(cls, game: "StrategicGame") -> Signature:
        alts: tuple[str, ...] | None = None
        if game.has_winner_data:
            seen = {w for rec in game.records if rec.winners for w in rec.winners}
            alts = tuple(sorted(seen))
        return cls(game.form.strategy_sets, game.utility_range, alts)


# --------------------------------------------------------------------------
# rendering

_BARE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Formula binding strength, loosest first:  <-> , -> , | , & , unary/atomic.
_IFF, _IMPLIES, _OR, _AND, _UNARY = range(5)
# Program binding strength, loosest first:  + , ; , unary/atomic.
_CHOICE, _SEQ, _PUNARY = range(3)


def render(node: Formula | Program | Vector) -> str:
    """Canonical concrete syntax with minimal parentheses."""
    if isinstance(node, Vector):
        return _render_vector(node)
    if isinstance(node, Formula):
        return _render_formula(node, _IFF)
    if isinstance(node, Program):
        return _render_program(node, _CHOICE)
    raise TypeError(f"cannot render {node!r}")


def _render_term(t: Term) -> str:
    if isinstance(t, Concrete):
        return t.name
    if isinstance(t, Adversary):
        return "??"
    return "!!"


def _render_vector(v: Vector) -> str:
    return "(" + ",".join(_render_term(t) for t in v.terms) + ")"


def _render_rational(q: Fraction) -> str:
    return str(q)


def _render_label_arg(text: str) -> str:
    if _BARE_NAME.match(text):
        return text
    if '"' in text:
        raise GameError(f"label text {text!r} cannot be rendered")
    return f'"{text}"'


def _formula_level(f: Formula) -> int:
    if isinstance(f, Iff):
        return _IFF
    if isinstance(f, Implies):
        return _IMPLIES
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _UNARY


def _render_formula(f: Formula, context: int) -> str:
    level = _formula_level(f)
    if isinstance(f, Top):
        text = "T"
    elif isinstance(f, VectorAtom):
        text = _render_vector(f.vector)
    elif isinstance(f, Winner):
        text = f"win({_render_label_arg(f.name)})"
    elif isinstance(f, UtilEq):
        text = f"u{f.player}={_render_rational(f.value)}"
    elif isinstance(f, Label):
        text = f"label({_render_label_arg(f.text)})"
    elif isinstance(f, Not):
        text = "~" + _render_formula(f.body, _UNARY)
    elif isinstance(f, Box):
        text = f"[{_render_program(f.program, _CHOICE)}] " + _render_formula(
            f.body, _UNARY
        )
    elif isinstance(f, Diamond):
        text = f"<{_render_program(f.program, _CHOICE)}> " + _render_formula(
            f.body, _UNARY
        )
    elif isinstance(f, And):
        # Left-associative: the right child needs strictly tighter binding.
        text = (
            _render_formula(f.left, _AND) + " & " + _render_formula(f.right, _AND + 1)
        )
    elif isinstance(f, Or):
        text = _render_formula(f.left, _OR) + " | " + _render_formula(f.right, _OR + 1)
    elif isinstance(f, Implies):
        # Right-associative: the left child needs strictly tighter binding.
        text = (
            _render_formula(f.left, _IMPLIES + 1)
            + " -> "
            + _render_formula(f.right, _IMPLIES)
        )
    elif isinstance(f, Iff):
        text = (
            _render_formula(f.left, _IFF + 1) + " <-> " + _render_formula(f.right, _IFF)
        )
    else:
        raise TypeError(f"cannot render formula {f!r}")
    if level < context:
        return "(" + text + ")"
    return text


def _program_level(p: Program) -> int:
    if isinstance(p, Choice):
        return _CHOICE
    if isinstance(p, Seq):
        return _SEQ
    return _PUNARY


def _render_program(p: Program, context: int) -> str:
    level = _program_level(p)
    if isinstance(p, Vec):
        text = _render_vector(p.vector)
    elif isinstance(p, Test):
        text = "?" + _render_formula(p.body, _UNARY)
    elif isinstance(p, Star):
        text = _render_program(p.body, _PUNARY) + "*"
    elif isinstance(p, Agent):
        text = f"ag{p.player}"
    elif isinstance(p, AgentConv):
        text = f"ag{p.player}^"
    elif isinstance(p, Seq):
        text = _render_program(p.left, _SEQ) + ";" + _render_program(p.right, _SEQ + 1)
    elif isinstance(p, Choice):
        text = (
            _render_program(p.left, _CHOICE)
            + "+"
            + _render_program(p.right, _CHOICE + 1)
        )
    else:
        raise TypeError(f"cannot render program {p!r}")
    if level < context:
        return "(" + text + ")"
    return text
