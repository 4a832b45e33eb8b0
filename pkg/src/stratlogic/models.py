"""Model checking for the strategy logic.

A flat model is a strategic game whose states are the strategy profiles; an
intensional model is a set of (form, profile) worlds with per-agent
accessibility relations on top.  All relations are dense boolean matrices:
sequential composition is boolean matrix multiplication, iteration is
reflexive-transitive closure by repeated squaring, and formula extensions are
boolean vectors computed bottom-up with per-model caching.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .games import (
    GameError,
    GameForm,
    OutcomeRecord,
    Profile,
    StrategicGame,
    all_profiles,
)
from .syntax import (
    Adversary,
    Agent,
    AgentConv,
    And,
    Box,
    Choice,
    Concrete,
    Current,
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
    Term,
    Test,
    Top,
    UtilEq,
    Vec,
    Vector,
    VectorAtom,
    Winner,
)


class EvalError(ValueError):
    """Raised when a formula cannot be evaluated on the given model."""


def interpret_term(term: Term, strategies: Sequence[str], current: str) -> frozenset[str]:
    """The set of strategies a term denotes for one player.

    ``strategies`` is the player's strategy set in the relevant form and
    ``current`` is what the player plays at the source state.  A Concrete
    term naming an unavailable strategy denotes the empty set.
    """
    available = frozenset(strategies)
    if isinstance(term, Concrete):
        return available & {term.name}
    if isinstance(term, Adversary):
        return available
    if isinstance(term, Current):
        return available & {current}
    raise EvalError(f"not a strategy term: {term!r}")


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Relational composition of boolean matrices."""
    return a @ b


def rtc(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated squaring to a fixpoint."""
    closure = rel | np.eye(len(rel), dtype=bool)
    while True:
        squared = compose(closure, closure)
        if np.array_equal(squared, closure):
            return closure
        closure = squared


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class _ModelBase:
    """Shared state-indexing, valuation, and cache plumbing."""

    # Subclasses set: _coords (m, n) int array of ambient strategy indices,
    # _records (one OutcomeRecord per state), n, and the ambient form.

    def __init__(self) -> None:
        self._rel_cache: dict[Program, np.ndarray] = {}
        self._ext_cache: dict[Formula, np.ndarray] = {}

    @property
    def size(self) -> int:
        return len(self._records)

    @property
    def util_range(self) -> tuple:
        return self._util_range

    def _finish_init(self, records: Sequence[OutcomeRecord]) -> None:
        self._records = tuple(records)
        self._util_range = tuple(sorted({u for r in self._records for u in r.utils}))
        self._util_values = frozenset(self._util_range)
        self._has_winner_data = any(r.winners is not None for r in self._records)

    def _atom_mask(self, f: Formula) -> np.ndarray:
        if isinstance(f, Winner):
            if not self._has_winner_data:
                raise EvalError("model has no winner labelling for win(...) atoms")
            return np.array(
                [r.winners is not None and f.name in r.winners for r in self._records],
                dtype=bool,
            )
        if isinstance(f, UtilEq):
            if not 1 <= f.player <= self.n:
                raise EvalError(f"no player {f.player} in this model")
            if f.value not in self._util_values:
                raise EvalError(
                    f"utility value {f.value} is not in the model's range"
                )
            return np.array(
                [r.utils[f.player - 1] == f.value for r in self._records], dtype=bool
            )
        if isinstance(f, Label):
            return np.array([r.label == f.text for r in self._records], dtype=bool)
        raise EvalError(f"not an atomic formula: {f!r}")

    def _check_arity(self, vector: Vector) -> None:
        if vector.n != self.n:
            raise EvalError(
                f"vector {vector!r} has {vector.n} positions for {self.n} players"
            )

    def _concrete_column(self, pos: int, name: str) -> np.ndarray | None:
        """Mask of states whose coordinate at `pos` is the named strategy,
        or None when the name is foreign to the ambient form."""
        names = self._ambient.strategy_sets[pos]
        if name not in names:
            return None
        return self._coords[:, pos] == names.index(name)

    def _vector_atom_mask(self, vector: Vector) -> np.ndarray:
        self._check_arity(vector)
        mask = np.ones(self.size, dtype=bool)
        for pos, term in enumerate(vector.terms):
            if isinstance(term, Concrete):
                col = self._concrete_column(pos, term.name)
                if col is None:
                    return np.zeros(self.size, dtype=bool)
                mask &= col
        return mask


class MaslModel(_ModelBase):
    """A strategic game read as a Kripke model over its profiles."""

    def __init__(self, game: StrategicGame):
        super().__init__()
        self.game = game
        self._ambient = game.form
        self.n = game.form.n
        self.states: list[Profile] = all_profiles(game.form)
        self._coords = np.array(self.states, dtype=np.int64)
        self._finish_init(game.records)

    def index(self, where: Union[Profile, str, int]) -> int:
        if isinstance(where, str):
            where = self._ambient.profile_from_key(where)
        if isinstance(where, tuple):
            return self.game.profile_index(where)
        if isinstance(where, int) and 0 <= where < self.size:
            return where
        raise EvalError(f"no state {where!r} in this model")

    def state_key(self, idx: int) -> str:
        return self._ambient.profile_key(self.states[idx])

    def _vector_relation(self, vector: Vector) -> np.ndarray:
        self._check_arity(vector)
        rel = np.ones((self.size, self.size), dtype=bool)
        for pos, term in enumerate(vector.terms):
            if isinstance(term, Adversary):
                continue
            if isinstance(term, Current):
                col = self._coords[:, pos]
                rel &= col[:, None] == col[None, :]
            else:
                col = self._concrete_column(pos, term.name)
                if col is None:
                    return np.zeros((self.size, self.size), dtype=bool)
                rel &= col[None, :]
        return rel

    def agent_relation(self, player: int) -> np.ndarray:
        raise EvalError("agent programs need an intensional model, not a flat one")


class IntensionalModel(_ModelBase):
    """Worlds are (form, profile) pairs; agents get accessibility relations.

    Profiles are stored with ambient strategy indices, so vector machinery
    is shared with flat models; vector relations additionally never cross
    between forms.
    """

    def __init__(
        self,
        ambient: GameForm,
        forms: Sequence[tuple[str, GameForm]],
        worlds: Sequence[tuple[int, Profile]],
        records: Sequence[OutcomeRecord],
        agent_edges: Mapping[int, Iterable[tuple[int, int]]] | None = None,
    ):
        super().__init__()
        self._ambient = ambient
        self.n = ambient.n
        self.forms = tuple(forms)
        if not self.forms:
            raise GameError("an intensional model needs at least one form")
        ids = [fid for fid, _ in self.forms]
        if len(set(ids)) != len(ids):
            raise GameError("form ids must be distinct")
        for fid, form in self.forms:
            if form.n != ambient.n:
                raise GameError(f"form {fid!r} has a different player count")
            for pos in range(ambient.n):
                ambient_names = ambient.strategy_sets[pos]
                kept = [n for n in ambient_names if n in form.strategy_sets[pos]]
                if tuple(kept) != form.strategy_sets[pos]:
                    raise GameError(
                        f"form {fid!r} is not an order-preserving restriction "
                        f"of the ambient form at player {pos + 1}"
                    )
        self.worlds: list[tuple[int, Profile]] = []
        seen: set[tuple[int, Profile]] = set()
        for form_idx, profile in worlds:
            if not 0 <= form_idx < len(self.forms):
                raise GameError(f"world references unknown form index {form_idx}")
            ambient.validate_profile(profile)
            _, form = self.forms[form_idx]
            for pos, name in enumerate(ambient.names(profile)):
                if name not in form.strategy_sets[pos]:
                    raise GameError(
                        f"world profile {ambient.profile_key(profile)!r} is not "
                        f"available in form {self.forms[form_idx][0]!r}"
                    )
            key = (form_idx, tuple(profile))
            if key in seen:
                raise GameError(f"duplicate world {key!r}")
            seen.add(key)
            self.worlds.append(key)
        if not self.worlds:
            raise GameError("an intensional model needs at least one world")
        if len(records) != len(self.worlds):
            raise GameError("need exactly one outcome record per world")
        for rec in records:
            if len(rec.utils) != self.n:
                raise GameError(
                    f"outcome {rec.label!r} has wrong utility count for {self.n} players"
                )
        self._form_idx = np.array([fi for fi, _ in self.worlds], dtype=np.int64)
        self._coords = np.array([s for _, s in self.worlds], dtype=np.int64)
        self._world_index = {w: i for i, w in enumerate(self.worlds)}
        self._finish_init(records)
        self._agent: dict[int, np.ndarray] = {}
        m = len(self.worlds)
        for player, edges in (agent_edges or {}).items():
            if not 1 <= player <= self.n:
                raise GameError(f"accessibility given for unknown player {player}")
            rel = np.zeros((m, m), dtype=bool)
            for i, j in edges:
                if not (0 <= i < m and 0 <= j < m):
                    raise GameError(f"accessibility edge ({i}, {j}) out of range")
                rel[i, j] = True
            self._agent[player] = _frozen(rel)

    @property
    def ambient(self) -> GameForm:
        return self._ambient

    def form_id(self, form_idx: int) -> str:
        return self.forms[form_idx][0]

    def world_key(self, idx: int) -> str:
        form_idx, profile = self.worlds[idx]
        return f"{self.form_id(form_idx)}:{self._ambient.profile_key(profile)}"

    def index(self, where: Union[str, int, tuple[int, Profile]]) -> int:
        if isinstance(where, int):
            if 0 <= where < self.size:
                return where
            raise EvalError(f"world index {where} out of range")
        if isinstance(where, str):
            form_id, _, key = where.partition(":")
            if not key:
                raise EvalError(f"world key {where!r} is not of the form 'id:profile'")
            for form_idx, (fid, _) in enumerate(self.forms):
                if fid == form_id:
                    profile = self._ambient.profile_from_key(key)
                    where = (form_idx, profile)
                    break
            else:
                raise EvalError(f"no form named {form_id!r} in this model")
        if isinstance(where, tuple) and where in self._world_index:
            return self._world_index[where]
        raise EvalError(f"no world {where!r} in this model")

    def _vector_relation(self, vector: Vector) -> np.ndarray:
        self._check_arity(vector)
        rel = self._form_idx[:, None] == self._form_idx[None, :]
        for pos, term in enumerate(vector.terms):
            if isinstance(term, Adversary):
                continue
            if isinstance(term, Current):
                col = self._coords[:, pos]
                rel &= col[:, None] == col[None, :]
            else:
                col = self._concrete_column(pos, term.name)
                if col is None:
                    return np.zeros((self.size, self.size), dtype=bool)
                rel &= col[None, :]
        return rel

    def agent_relation(self, player: int) -> np.ndarray:
        if not 1 <= player <= self.n:
            raise EvalError(f"no player {player} in this model")
        if player not in self._agent:
            return np.zeros((self.size, self.size), dtype=bool)
        return self._agent[player]


Model = Union[MaslModel, IntensionalModel]


def model_signature(model: Model) -> Signature:
    """The parsing/building vocabulary a model supports."""
    if isinstance(model, MaslModel):
        return Signature.from_game(model.game)
    alternatives = None
    if model._has_winner_data:
        seen = {w for r in model._records if r.winners for w in r.winners}
        alternatives = tuple(sorted(seen))
    return Signature(model.ambient.strategy_sets, model.util_range, alternatives)


def program_relation(model: Model, program: Program) -> np.ndarray:
    """The binary relation a program denotes, as a boolean matrix."""
    cache = model._rel_cache
    if program in cache:
        return cache[program]
    if isinstance(program, Vec):
        rel = model._vector_relation(program.vector)
    elif isinstance(program, Test):
        rel = np.diag(extension(model, program.body))
    elif isinstance(program, Seq):
        rel = compose(
            program_relation(model, program.left),
            program_relation(model, program.right),
        )
    elif isinstance(program, Choice):
        rel = program_relation(model, program.left) | program_relation(
            model, program.right
        )
    elif isinstance(program, Star):
        rel = rtc(program_relation(model, program.body))
    elif isinstance(program, Agent):
        rel = model.agent_relation(program.player)
    elif isinstance(program, AgentConv):
        rel = model.agent_relation(program.player).T
    else:
        raise EvalError(f"not a program: {program!r}")
    cache[program] = _frozen(np.asarray(rel, dtype=bool))
    return cache[program]


def extension(model: Model, formula: Formula) -> np.ndarray:
    """The set of states where the formula holds, as a boolean mask.

    The result is cached on the model and read-only; copy before mutating.
    """
    cache = model._ext_cache
    if formula in cache:
        return cache[formula]
    if isinstance(formula, Top):
        mask = np.ones(model.size, dtype=bool)
    elif isinstance(formula, VectorAtom):
        mask = model._vector_atom_mask(formula.vector)
    elif isinstance(formula, (Winner, UtilEq, Label)):
        mask = model._atom_mask(formula)
    elif isinstance(formula, Not):
        mask = ~extension(model, formula.body)
    elif isinstance(formula, And):
        mask = extension(model, formula.left) & extension(model, formula.right)
    elif isinstance(formula, Or):
        mask = extension(model, formula.left) | extension(model, formula.right)
    elif isinstance(formula, Implies):
        mask = ~extension(model, formula.left) | extension(model, formula.right)
    elif isinstance(formula, Iff):
        mask = extension(model, formula.left) == extension(model, formula.right)
    elif isinstance(formula, Diamond):
        rel = program_relation(model, formula.program)
        mask = compose(rel, extension(model, formula.body))
    elif isinstance(formula, Box):
        rel = program_relation(model, formula.program)
        mask = ~compose(rel, ~extension(model, formula.body))
    else:
        raise EvalError(f"not a formula: {formula!r}")
    cache[formula] = _frozen(np.asarray(mask, dtype=bool))
    return cache[formula]


def satisfies(model: Model, where, formula: Formula) -> bool:
    """Truth at one state (flat: a profile or profile key; intensional: a
    world index or ``form:profile`` key)."""
    return bool(extension(model, formula)[model.index(where)])


def valid_in_model(model: Model, formula: Formula) -> bool:
    return bool(extension(model, formula).all())


def counterexample(model: Model, formula: Formula) -> str | None:
    """The first state (in enumeration order) falsifying the formula."""
    mask = extension(model, formula)
    bad = np.flatnonzero(~mask)
    if len(bad) == 0:
        return None
    idx = int(bad[0])
    if isinstance(model, IntensionalModel):
        return model.world_key(idx)
    return model.state_key(idx)


# --------------------------------------------------------------------------
# epistemic constructions


def epistemic_lift(game: StrategicGame) -> IntensionalModel:
    """All profiles as worlds; each player can tell worlds apart exactly by
    their own coordinate."""
    states = all_profiles(game.form)
    position = {s: i for i, s in enumerate(states)}
    edges: dict[int, list[tuple[int, int]]] = {}
    for player in game.form.players:
        pos = player - 1
        edges[player] = [
            (position[s], position[t])
            for s in states
            for t in states
            if s[pos] == t[pos]
        ]
    return IntensionalModel(
        ambient=game.form,
        forms=(("G", game.form),),
        worlds=[(0, s) for s in states],
        records=game.records,
        agent_edges=edges,
    )


def restrict(form: GameForm, subsets: Mapping[int, Iterable[str]]) -> GameForm:
    """Shrink some players' strategy sets, preserving the ambient order.

    Players absent from `subsets` keep their full strategy set.
    """
    new_sets: list[tuple[str, ...]] = []
    for player in form.players:
        names = form.strategy_sets[player - 1]
        if player not in subsets:
            new_sets.append(names)
            continue
        keep = set(subsets[player])
        unknown = keep - set(names)
        if unknown:
            raise GameError(
                f"player {player} cannot be restricted to unknown "
                f"strategies {sorted(unknown)}"
            )
        if not keep:
            raise GameError(f"player {player} would have no strategies left")
        new_sets.append(tuple(n for n in names if n in keep))
    extra = set(subsets) - set(form.players)
    if extra:
        raise GameError(f"restriction mentions unknown players {sorted(extra)}")
    return GameForm(new_sets)


def confusion_model(
    game: StrategicGame, restricted: GameForm, confused: Iterable[int]
) -> IntensionalModel:
    """Join a restricted copy of the game onto the full one.

    Worlds are all profiles of the restricted form (named ``Gr``) followed by
    all profiles of the full form (named ``G``); every world keeps the
    outcome the full game assigns to its profile.  A confused player cannot
    tell the two forms apart and identifies worlds by their own coordinate
    alone; everyone else additionally distinguishes the forms.
    """
    ambient = game.form
    confused_set = frozenset(confused)
    for player in confused_set:
        ambient._check_player(player)
    restricted_worlds = [
        (0, ambient.profile_from_names(restricted.names(s)))
        for s in all_profiles(restricted)
    ]
    full_worlds = [(1, s) for s in all_profiles(ambient)]
    worlds = restricted_worlds + full_worlds
    records = [game.outcome(profile) for _, profile in worlds]
    edges: dict[int, list[tuple[int, int]]] = {}
    for player in ambient.players:
        pos = player - 1
        pairs = []
        for i, (fi, s) in enumerate(worlds):
            for j, (fj, t) in enumerate(worlds):
                if s[pos] != t[pos]:
                    continue
                if player not in confused_set and fi != fj:
                    continue
                pairs.append((i, j))
        edges[player] = pairs
    return IntensionalModel(
        ambient=ambient,
        forms=(("Gr", restricted), ("G", ambient)),
        worlds=worlds,
        records=records,
        agent_edges=edges,
    )
