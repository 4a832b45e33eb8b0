"""Coalition logic over strategic games.

The direct semantics of the coalition box ("the coalition has a joint
strategy forcing the body whatever the others do") is evaluated straight
from the game grid; independently, `translate` compiles coalition formulas
into the strategy logic, where the box becomes a disjunction over the
coalition's concrete commitment vectors.  The two routes are kept separate
so they can check each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence
from weakref import WeakKeyDictionary

import numpy as np

from .games import Coalition, GameError
from .models import EvalError, MaslModel
from .syntax import (
    ADV,
    And,
    Box,
    Concrete,
    Formula,
    Label,
    Not,
    Top,
    UtilEq,
    Vec,
    Vector,
    Winner,
    disj,
    render,
)


class CLFormula:
    """Base class for coalition-logic formulas."""


@dataclass(frozen=True)
class CLTop(CLFormula):
    pass


@dataclass(frozen=True)
class CLAtom(CLFormula):
    """An atomic fact, shared vocabulary with the strategy logic."""

    atom: Formula

    def __post_init__(self) -> None:
        if not isinstance(self.atom, (Winner, UtilEq, Label)):
            raise GameError(f"not an atomic formula: {self.atom!r}")


@dataclass(frozen=True)
class CLNot(CLFormula):
    body: CLFormula


@dataclass(frozen=True)
class CLAnd(CLFormula):
    left: CLFormula
    right: CLFormula


@dataclass(frozen=True)
class CLBox(CLFormula):
    """``[C]body``: coalition C can force `body`."""

    coalition: Coalition
    body: CLFormula

    def __post_init__(self) -> None:
        object.__setattr__(self, "coalition", frozenset(self.coalition))


def cl_disj(parts: Sequence[CLFormula]) -> CLFormula:
    """Disjunction, spelled with the primitive connectives."""
    if not parts:
        return CLNot(CLTop())
    negated = [CLNot(p) for p in parts]
    out: CLFormula = negated[0]
    for part in negated[1:]:
        out = CLAnd(out, part)
    return CLNot(out)


# --------------------------------------------------------------------------
# rendering

_CL_AND, _CL_UNARY = range(2)


def render_cl(formula: CLFormula) -> str:
    return _render_cl(formula, _CL_AND)


def _render_cl(f: CLFormula, context: int) -> str:
    if isinstance(f, CLAnd):
        level = _CL_AND
        text = _render_cl(f.left, _CL_AND) + " & " + _render_cl(f.right, _CL_AND + 1)
    elif isinstance(f, CLTop):
        level = _CL_UNARY
        text = "T"
    elif isinstance(f, CLAtom):
        level = _CL_UNARY
        text = render(f.atom)
    elif isinstance(f, CLNot):
        level = _CL_UNARY
        text = "~" + _render_cl(f.body, _CL_UNARY)
    elif isinstance(f, CLBox):
        level = _CL_UNARY
        members = ",".join(str(i) for i in sorted(f.coalition))
        text = f"[C {{{members}}}] " + _render_cl(f.body, _CL_UNARY)
    else:
        raise TypeError(f"cannot render {f!r}")
    if level < context:
        return "(" + text + ")"
    return text


# --------------------------------------------------------------------------
# direct semantics

_caches: "WeakKeyDictionary[MaslModel, dict]" = WeakKeyDictionary()


def cl_extension(model: MaslModel, formula: CLFormula) -> np.ndarray:
    """States satisfying a coalition formula, computed from the game grid
    (no relation matrices involved)."""
    cache = _caches.setdefault(model, {})
    if formula in cache:
        return cache[formula]
    if isinstance(formula, CLTop):
        mask = np.ones(model.size, dtype=bool)
    elif isinstance(formula, CLAtom):
        mask = _cl_atom_mask(model, formula.atom)
    elif isinstance(formula, CLNot):
        mask = ~cl_extension(model, formula.body)
    elif isinstance(formula, CLAnd):
        mask = cl_extension(model, formula.left) & cl_extension(model, formula.right)
    elif isinstance(formula, CLBox):
        mask = _cl_box_mask(model, formula)
    else:
        raise EvalError(f"not a coalition formula: {formula!r}")
    mask.flags.writeable = False
    cache[formula] = mask
    return mask


def _cl_atom_mask(model: MaslModel, atom: Formula) -> np.ndarray:
    records = model.game.records
    if isinstance(atom, Winner):
        if not model.game.has_winner_data:
            raise EvalError("model has no winner labelling for win(...) atoms")
        return np.array(
            [r.winners is not None and atom.name in r.winners for r in records],
            dtype=bool,
        )
    if isinstance(atom, UtilEq):
        if not 1 <= atom.player <= model.n:
            raise EvalError(f"no player {atom.player} in this model")
        if atom.value not in model.game.utility_range:
            raise EvalError(f"utility value {atom.value} is not in the model's range")
        return np.array(
            [r.utils[atom.player - 1] == atom.value for r in records], dtype=bool
        )
    if isinstance(atom, Label):
        return np.array([r.label == atom.text for r in records], dtype=bool)
    raise EvalError(f"not an atomic formula: {atom!r}")


def _cl_box_mask(model: MaslModel, formula: CLBox) -> np.ndarray:
    for player in formula.coalition:
        if not 1 <= player <= model.n:
            raise EvalError(f"coalition mentions unknown player {player}")
    body = cl_extension(model, formula.body)
    sizes = [len(names) for names in model.game.form.strategy_sets]
    grid = body.reshape(sizes)
    complement_axes = tuple(
        pos for pos in range(model.n) if (pos + 1) not in formula.coalition
    )
    if complement_axes:
        forced = np.all(grid, axis=complement_axes)
    else:
        forced = grid
    # The box is state-independent: the coalition either has a forcing
    # commitment or it does not.
    value = bool(np.any(forced))
    return np.full(model.size, value, dtype=bool)


def cl_check(model: MaslModel, state, formula: CLFormula) -> bool:
    """Truth of a coalition formula at one state."""
    return bool(cl_extension(model, formula)[model.index(state)])


# --------------------------------------------------------------------------
# translation into the strategy logic


def coalition_vectors(coalition: Iterable[int], form) -> list[Vector]:
    """Every way the coalition can commit: Concrete strategies for members,
    the wildcard for everyone else.  `form` is a GameForm or Signature."""
    members = sorted(set(coalition))
    n = len(form.strategy_sets)
    for player in members:
        if not 1 <= player <= n:
            raise GameError(f"coalition mentions unknown player {player}")
    member_sets = [form.strategy_sets[player - 1] for player in members]
    out = []
    for choice in product(*member_sets):
        by_player = dict(zip(members, choice))
        out.append(
            Vector(
                Concrete(by_player[p]) if p in by_player else ADV
                for p in range(1, n + 1)
            )
        )
    return out


def translate(formula: CLFormula, form) -> Formula:
    """Compile into the strategy logic: the coalition box becomes a
    disjunction of boxes over the coalition's commitment vectors."""
    if isinstance(formula, CLTop):
        return Top()
    if isinstance(formula, CLAtom):
        return formula.atom
    if isinstance(formula, CLNot):
        return Not(translate(formula.body, form))
    if isinstance(formula, CLAnd):
        return And(translate(formula.left, form), translate(formula.right, form))
    if isinstance(formula, CLBox):
        return disj(
            Box(Vec(c), translate(formula.body, form))
            for c in coalition_vectors(formula.coalition, form)
        )
    raise GameError(f"not a coalition formula: {formula!r}")
