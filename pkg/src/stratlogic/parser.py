"""Concrete syntax for the strategy logic.

Formula connectives, loosest first: ``<->``, ``->`` (right-associative),
``|``, ``&``, then unary (``~``, ``[p]``, ``<p>``) and atoms.  Program
operators, loosest first: ``+``, ``;``, then postfix ``*`` and primaries.
Tests and modal operators bind to the following unary formula.

A parenthesized comma-free expression is a grouped formula/program; with
commas it is a strategy vector such as ``(c,??,!!)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coalition import CLAnd, CLAtom, CLBox, CLFormula, CLNot, CLTop, cl_disj
from .syntax import (
    ADV,
    CUR,
    Agent,
    AgentConv,
    And,
    Box,
    Choice,
    Concrete,
    Diamond,
    Formula,
    Iff,
    Implies,
    Label,
    Not,
    Or,
    Program,
    Seq,
    Signature,
    Star,
    Test,
    Top,
    UtilEq,
    Vec,
    Vector,
    VectorAtom,
    Winner,
)
from .properties import payoff_geq, payoff_gt


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")
_PAYOFF_NAME = re.compile(r"u([0-9]+)\Z")
_AGENT_NAME = re.compile(r"ag([0-9]+)\Z")

_MULTI = ("<->", "??", "!!", "->", ">=")
_SINGLE = "()[]{}<>,;+*?~&|=^/-"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise ParseError("unterminated string", line, col)
            tokens.append(_Token("STRING", text[i + 1 : end], line, col))
            col += end + 1 - i
            i = end + 1
            continue
        for op in _MULTI:
            if text.startswith(op, i):
                tokens.append(_Token(op, op, line, col))
                i += len(op)
                col += len(op)
                break
        else:
            m = _NAME.match(text, i)
            if m:
                tokens.append(_Token("NAME", m.group(), line, col))
                col += len(m.group())
                i = m.end()
                continue
            m = _INT.match(text, i)
            if m:
                tokens.append(_Token("INT", m.group(), line, col))
                col += len(m.group())
                i = m.end()
                continue
            if ch in _SINGLE:
                tokens.append(_Token(ch, ch, line, col))
                i += 1
                col += 1
                continue
            raise ParseError(f"stray character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, signature: Signature):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.sig = signature

    # -- token plumbing ----------------------------------------------------

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _accept(self, kind: str) -> _Token | None:
        if self._peek().kind == kind:
            return self._next()
        return None

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {what}, found {found!r}", tok.line, tok.col)
        return self._next()

    def _fail(self, message: str):
        tok = self._peek()
        raise ParseError(message, tok.line, tok.col)

    def _finish(self, result):
        tok = self._peek()
        if tok.kind != "EOF":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.line, tok.col)
        return result

    # -- shared pieces -----------------------------------------------------

    def _rational(self) -> Fraction:
        negative = self._accept("-") is not None
        num = int(self._expect("INT", "a number").text)
        den = 1
        if self._accept("/"):
            tok = self._expect("INT", "a denominator")
            den = int(tok.text)
            if den == 0:
                raise ParseError("zero denominator", tok.line, tok.col)
        value = Fraction(num, den)
        return -value if negative else value

    def _name_or_string(self, what: str) -> str:
        tok = self._peek()
        if tok.kind in ("NAME", "STRING"):
            return self._next().text
        self._fail(f"expected {what}")

    def _vector_ahead(self) -> bool:
        # A vector is "(" term ("," term)+ ")" with terms that are names,
        # ??, or !!; anything else after "(" is a grouped expression.
        i = self.pos
        if self.tokens[i].kind != "(":
            return False
        i += 1
        commas = 0
        while True:
            if self.tokens[i].kind not in ("NAME", "??", "!!"):
                return False
            i += 1
            if self.tokens[i].kind == ",":
                commas += 1
                i += 1
                continue
            return self.tokens[i].kind == ")" and commas >= 1

    def _vector(self) -> Vector:
        open_tok = self._expect("(", "a vector")
        terms = []
        while True:
            tok = self._next()
            pos = len(terms)
            if pos >= self.sig.n:
                raise ParseError(
                    f"vector has more than {self.sig.n} positions", tok.line, tok.col
                )
            if tok.kind == "??":
                terms.append(ADV)
            elif tok.kind == "!!":
                terms.append(CUR)
            elif tok.kind == "NAME":
                if tok.text not in self.sig.strategy_sets[pos]:
                    raise ParseError(
                        f"player {pos + 1} has no strategy named {tok.text!r}",
                        tok.line,
                        tok.col,
                    )
                terms.append(Concrete(tok.text))
            else:
                raise ParseError(
                    f"expected a strategy term, found {tok.text!r}", tok.line, tok.col
                )
            if self._accept(","):
                continue
            self._expect(")", "',' or ')' in a vector")
            break
        if len(terms) != self.sig.n:
            raise ParseError(
                f"vector has {len(terms)} positions for {self.sig.n} players",
                open_tok.line,
                open_tok.col,
            )
        return Vector(terms)

    def _player_number(self, digits: str, tok: _Token) -> int:
        player = int(digits)
        if not 1 <= player <= self.sig.n:
            raise ParseError(f"no player {player} in scope", tok.line, tok.col)
        return player

    def _winner_name(self) -> str:
        self._expect("(", "'('")
        tok = self._peek()
        name = self._name_or_string("an alternative name")
        if self.sig.alternatives is None:
            raise ParseError("this game has no winner vocabulary", tok.line, tok.col)
        if name not in self.sig.alternatives:
            raise ParseError(f"unknown alternative {name!r}", tok.line, tok.col)
        self._expect(")", "')'")
        return name

    # -- formulas ----------------------------------------------------------

    def formula(self) -> Formula:
        left = self._formula_implies()
        if self._accept("<->"):
            return Iff(left, self.formula())
        return left

    def _formula_implies(self) -> Formula:
        left = self._formula_or()
        if self._accept("->"):
            return Implies(left, self._formula_implies())
        return left

    def _formula_or(self) -> Formula:
        left = self._formula_and()
        while self._accept("|"):
            left = Or(left, self._formula_and())
        return left

    def _formula_and(self) -> Formula:
        left = self._formula_unary()
        while self._accept("&"):
            left = And(left, self._formula_unary())
        return left

    def _formula_unary(self) -> Formula:
        if self._accept("~"):
            return Not(self._formula_unary())
        if self._accept("["):
            program = self.program()
            self._expect("]", "']'")
            return Box(program, self._formula_unary())
        if self._accept("<"):
            program = self.program()
            self._expect(">", "'>'")
            return Diamond(program, self._formula_unary())
        return self._formula_primary()

    def _formula_primary(self) -> Formula:
        tok = self._peek()
        if tok.kind == "NAME":
            if tok.text == "T":
                self._next()
                return Top()
            if tok.text == "win":
                self._next()
                return Winner(self._winner_name())
            if tok.text == "label":
                self._next()
                self._expect("(", "'('")
                text = self._name_or_string("a label")
                self._expect(")", "')'")
                return Label(text)
            m = _PAYOFF_NAME.match(tok.text)
            if m:
                self._next()
                player = self._player_number(m.group(1), tok)
                return self._payoff_tail(player, tok)
            self._fail(f"unexpected name {tok.text!r} in a formula")
        if tok.kind == "(":
            if self._vector_ahead():
                return VectorAtom(self._vector())
            self._next()
            inner = self.formula()
            self._expect(")", "')'")
            return inner
        self._fail("expected a formula")

    def _payoff_tail(self, player: int, start: _Token) -> Formula:
        op = self._peek()
        if op.kind == "=":
            self._next()
            return UtilEq(player, self._rational())
        if op.kind in (">=", ">"):
            self._next()
            if self.sig.util_range is None:
                raise ParseError(
                    "utility comparisons need a known utility range",
                    start.line,
                    start.col,
                )
            value = self._rational()
            build = payoff_geq if op.kind == ">=" else payoff_gt
            return build(self.sig, player, value)
        self._fail("expected '=', '>=' or '>' after a payoff atom")

    # -- programs ----------------------------------------------------------

    def program(self) -> Program:
        left = self._program_seq()
        while self._accept("+"):
            left = Choice(left, self._program_seq())
        return left

    def _program_seq(self) -> Program:
        left = self._program_unary()
        while self._accept(";"):
            left = Seq(left, self._program_unary())
        return left

    def _program_unary(self) -> Program:
        out = self._program_primary()
        while self._accept("*"):
            out = Star(out)
        return out

    def _program_primary(self) -> Program:
        tok = self._peek()
        if tok.kind == "?":
            self._next()
            return Test(self._formula_unary())
        if tok.kind == "(":
            if self._vector_ahead():
                return Vec(self._vector())
            self._next()
            inner = self.program()
            self._expect(")", "')'")
            return inner
        if tok.kind == "NAME":
            m = _AGENT_NAME.match(tok.text)
            if m:
                self._next()
                player = self._player_number(m.group(1), tok)
                if self._accept("^"):
                    return AgentConv(player)
                return Agent(player)
            self._fail(f"unexpected name {tok.text!r} in a program")
        self._fail("expected a program")

    # -- coalition logic ---------------------------------------------------

    def cl_formula(self) -> CLFormula:
        left = self._cl_and()
        while self._accept("|"):
            right = self._cl_and()
            left = cl_disj([left, right])
        return left

    def _cl_and(self) -> CLFormula:
        left = self._cl_unary()
        while self._accept("&"):
            left = CLAnd(left, self._cl_unary())
        return left

    def _cl_unary(self) -> CLFormula:
        if self._accept("~"):
            return CLNot(self._cl_unary())
        if self._accept("["):
            name = self._expect("NAME", "'C'")
            if name.text != "C":
                raise ParseError("expected 'C' to open a coalition", name.line, name.col)
            self._expect("{", "'{'")
            members: list[int] = []
            if self._peek().kind != "}":
                while True:
                    tok = self._expect("INT", "a player number")
                    player = self._player_number(tok.text, tok)
                    if player in members:
                        raise ParseError(
                            f"duplicate coalition member {player}", tok.line, tok.col
                        )
                    members.append(player)
                    if self._accept(","):
                        continue
                    break
            self._expect("}", "'}'")
            self._expect("]", "']'")
            return CLBox(frozenset(members), self._cl_unary())
        return self._cl_primary()

    def _cl_primary(self) -> CLFormula:
        tok = self._peek()
        if tok.kind == "NAME":
            if tok.text == "T":
                self._next()
                return CLTop()
            if tok.text == "win":
                self._next()
                return CLAtom(Winner(self._winner_name()))
            if tok.text == "label":
                self._next()
                self._expect("(", "'('")
                text = self._name_or_string("a label")
                self._expect(")", "')'")
                return CLAtom(Label(text))
            m = _PAYOFF_NAME.match(tok.text)
            if m:
                self._next()
                player = self._player_number(m.group(1), tok)
                return self._cl_payoff_tail(player, tok)
            self._fail(f"unexpected name {tok.text!r} in a coalition formula")
        if tok.kind == "(":
            self._next()
            inner = self.cl_formula()
            self._expect(")", "')'")
            return inner
        self._fail("expected a coalition formula")

    def _cl_payoff_tail(self, player: int, start: _Token) -> CLFormula:
        op = self._peek()
        if op.kind == "=":
            self._next()
            return CLAtom(UtilEq(player, self._rational()))
        if op.kind in (">=", ">"):
            self._next()
            if self.sig.util_range is None:
                raise ParseError(
                    "utility comparisons need a known utility range",
                    start.line,
                    start.col,
                )
            value = self._rational()
            if op.kind == ">=":
                keep = [w for w in self.sig.util_range if w >= value]
            else:
                keep = [w for w in self.sig.util_range if w > value]
            return cl_disj([CLAtom(UtilEq(player, w)) for w in keep])
        self._fail("expected '=', '>=' or '>' after a payoff atom")


def parse(text: str, signature: Signature, kind: str = "formula"):
    """Parse concrete syntax; `kind` is 'formula', 'program', or 'cl'."""
    parser = _Parser(text, signature)
    if kind == "formula":
        return parser._finish(parser.formula())
    if kind == "program":
        return parser._finish(parser.program())
    if kind == "cl":
        return parser._finish(parser.cl_formula())
    raise ValueError(f"unknown parse kind {kind!r}")


def parse_formula(text: str, signature: Signature) -> Formula:
    return parse(text, signature, "formula")


def parse_program(text: str, signature: Signature) -> Program:
    return parse(text, signature, "program")


def parse_cl(text: str, signature: Signature) -> CLFormula:
    return parse(text, signature, "cl")
