"""JSON formats: games, voting specs, intensional models, reports, ASTs."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .coalition import CLAnd, CLAtom, CLBox, CLFormula, CLNot, CLTop
from .games import (
    GameError,
    GameForm,
    OutcomeRecord,
    StrategicGame,
    all_profiles,
    to_fraction,
)
from .models import IntensionalModel
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
    Star,
    Test,
    Top,
    UtilEq,
    Vec,
    Vector,
    VectorAtom,
    Winner,
)
from .voting import (
    AbsoluteMajority,
    AuditReport,
    Ballot,
    BallotProfile,
    ConstantRule,
    DictatorRule,
    Manipulation,
    Plurality,
    ResoluteWrap,
    VotingError,
    VotingRule,
)


class FormatError(ValueError):
    """Raised when a JSON document does not match the expected format."""


def _no_duplicate_keys(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise FormatError(f"duplicate key {key!r}")
        seen.add(key)
    return dict(pairs)


def loads(text: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc


def load_path(path: str | Path) -> Any:
    return loads(Path(path).read_text())


def _need(data: Mapping, key: str, what: str):
    if not isinstance(data, Mapping):
        raise FormatError(f"{what} must be a JSON object")
    if key not in data:
        raise FormatError(f"{what} is missing {key!r}")
    return data[key]


def util_to_json(value: Fraction) -> int | str:
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


# --------------------------------------------------------------------------
# games


def game_to_dict(game: StrategicGame) -> dict:
    outcomes = {}
    for s in all_profiles(game.form):
        rec = game.outcome(s)
        entry: dict[str, Any] = {
            "label": rec.label,
            "utils": [util_to_json(u) for u in rec.utils],
        }
        if rec.winners is not None:
            entry["winners"] = sorted(rec.winners)
        outcomes[game.form.profile_key(s)] = entry
    return {
        "players": game.form.n,
        "strategies": [list(names) for names in game.form.strategy_sets],
        "outcomes": outcomes,
    }


def _outcome_from_dict(entry, n: int, where: str) -> OutcomeRecord:
    label = _need(entry, "label", where)
    if not isinstance(label, str):
        raise FormatError(f"{where}: label must be a string")
    utils = _need(entry, "utils", where)
    if not isinstance(utils, list) or len(utils) != n:
        raise FormatError(f"{where}: need a list of {n} utilities")
    winners = entry.get("winners")
    if winners is not None:
        if not isinstance(winners, list) or not all(
            isinstance(w, str) for w in winners
        ):
            raise FormatError(f"{where}: winners must be a list of names")
    try:
        return OutcomeRecord(label, [to_fraction(u) for u in utils], winners)
    except GameError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def _form_from_dict(data: Mapping, what: str) -> GameForm:
    players = _need(data, "players", what)
    strategies = _need(data, "strategies", what)
    if not isinstance(strategies, list) or not all(
        isinstance(names, list) and all(isinstance(n, str) for n in names)
        for names in strategies
    ):
        raise FormatError(f"{what}: strategies must be a list of name lists")
    if players != len(strategies):
        raise FormatError(
            f"{what}: 'players' is {players} but {len(strategies)} strategy "
            f"sets are given"
        )
    try:
        return GameForm(strategies)
    except GameError as exc:
        raise FormatError(f"{what}: {exc}") from exc


def game_from_dict(data: Mapping) -> StrategicGame:
    form = _form_from_dict(data, "game")
    outcomes = _need(data, "outcomes", "game")
    if not isinstance(outcomes, Mapping):
        raise FormatError("game: outcomes must be an object")
    table: dict = {}
    for key, entry in outcomes.items():
        try:
            profile = form.profile_from_key(key)
        except GameError as exc:
            raise FormatError(f"outcome key {key!r}: {exc}") from exc
        table[profile] = _outcome_from_dict(entry, form.n, f"outcome {key!r}")
    try:
        return StrategicGame.from_outcomes(form, table)
    except GameError as exc:
        raise FormatError(str(exc)) from exc


def load_game(path: str | Path) -> StrategicGame:
    return game_from_dict(load_path(path))


# --------------------------------------------------------------------------
# voting specs


def voting_spec_from_dict(data: Mapping) -> tuple[VotingRule, BallotProfile]:
    alternatives = _need(data, "alternatives", "voting spec")
    if not isinstance(alternatives, list) or not all(
        isinstance(a, str) for a in alternatives
    ):
        raise FormatError("voting spec: alternatives must be a list of names")
    alternatives = tuple(alternatives)
    ballots_raw = _need(data, "ballots", "voting spec")
    if not isinstance(ballots_raw, list) or not ballots_raw:
        raise FormatError("voting spec: ballots must be a non-empty list")
    try:
        ballots = tuple(Ballot.parse(b, alternatives) for b in ballots_raw)
        rule = _rule_from_name(_need(data, "rule", "voting spec"), alternatives)
        if "tiebreak" in data and data["tiebreak"] is not None:
            rule = ResoluteWrap(rule, Ballot.parse(data["tiebreak"], alternatives))
    except VotingError as exc:
        raise FormatError(f"voting spec: {exc}") from exc
    return rule, ballots


def _rule_from_name(name, alternatives: tuple[str, ...]) -> VotingRule:
    if not isinstance(name, str):
        raise FormatError("voting spec: rule must be a string")
    if name == "plurality":
        return Plurality(alternatives)
    if name == "absolute_majority":
        return AbsoluteMajority(alternatives)
    kind, _, arg = name.partition(":")
    if kind == "dictator" and arg:
        try:
            return DictatorRule(alternatives, int(arg))
        except ValueError:
            raise FormatError(f"voting spec: bad voter number {arg!r}") from None
    if kind == "constant" and arg:
        return ConstantRule(alternatives, arg)
    raise FormatError(f"voting spec: unknown rule {name!r}")


def load_voting_spec(path: str | Path) -> tuple[VotingRule, BallotProfile]:
    return voting_spec_from_dict(load_path(path))


# --------------------------------------------------------------------------
# intensional models


def intensional_to_dict(model: IntensionalModel) -> dict:
    forms = []
    for form_idx, (fid, form) in enumerate(model.forms):
        outcomes = {}
        for world_idx, (wf, profile) in enumerate(model.worlds):
            if wf != form_idx:
                continue
            rec = model._records[world_idx]
            entry: dict[str, Any] = {
                "label": rec.label,
                "utils": [util_to_json(u) for u in rec.utils],
            }
            if rec.winners is not None:
                entry["winners"] = sorted(rec.winners)
            outcomes[model.ambient.profile_key(profile)] = entry
        forms.append(
            {
                "id": fid,
                "players": form.n,
                "strategies": [list(names) for names in form.strategy_sets],
                "outcomes": outcomes,
            }
        )
    relations = {}
    for player in model.ambient.players:
        rel = model.agent_relation(player)
        pairs = [[int(i), int(j)] for i, j in zip(*rel.nonzero())]
        relations[str(player)] = pairs
    return {
        "forms": forms,
        "worlds": [
            [model.form_id(fi), model.ambient.profile_key(profile)]
            for fi, profile in model.worlds
        ],
        "relations": relations,
    }


def intensional_from_dict(data: Mapping) -> IntensionalModel:
    forms_raw = _need(data, "forms", "model")
    if not isinstance(forms_raw, list) or not forms_raw:
        raise FormatError("model: forms must be a non-empty list")
    forms: list[tuple[str, GameForm]] = []
    form_outcomes: list[Mapping] = []
    for entry in forms_raw:
        fid = _need(entry, "id", "form")
        if not isinstance(fid, str):
            raise FormatError("form: id must be a string")
        form = _form_from_dict(entry, f"form {fid!r}")
        outcomes = _need(entry, "outcomes", f"form {fid!r}")
        if not isinstance(outcomes, Mapping):
            raise FormatError(f"form {fid!r}: outcomes must be an object")
        forms.append((fid, form))
        form_outcomes.append(outcomes)
    n = forms[0][1].n
    # Ambient strategy sets: per-position ordered union over the forms.
    ambient_sets: list[list[str]] = [[] for _ in range(n)]
    for _, form in forms:
        if form.n != n:
            raise FormatError("model: forms disagree on the player count")
        for pos in range(n):
            for name in form.strategy_sets[pos]:
                if name not in ambient_sets[pos]:
                    ambient_sets[pos].append(name)
    try:
        ambient = GameForm(ambient_sets)
    except GameError as exc:
        raise FormatError(f"model: {exc}") from exc
    by_id = {fid: idx for idx, (fid, _) in enumerate(forms)}
    worlds_raw = _need(data, "worlds", "model")
    if not isinstance(worlds_raw, list) or not worlds_raw:
        raise FormatError("model: worlds must be a non-empty list")
    worlds: list[tuple[int, tuple[int, ...]]] = []
    records: list[OutcomeRecord] = []
    for entry in worlds_raw:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise FormatError(f"model: world {entry!r} must be [form, profile]")
        fid, key = entry
        if fid not in by_id:
            raise FormatError(f"model: world references unknown form {fid!r}")
        form_idx = by_id[fid]
        try:
            profile = ambient.profile_from_key(key)
        except GameError as exc:
            raise FormatError(f"world {entry!r}: {exc}") from exc
        outcomes = form_outcomes[form_idx]
        if key not in outcomes:
            raise FormatError(f"form {fid!r} has no outcome for world {key!r}")
        worlds.append((form_idx, profile))
        records.append(_outcome_from_dict(outcomes[key], n, f"outcome {key!r}"))
    relations_raw = data.get("relations", {})
    if not isinstance(relations_raw, Mapping):
        raise FormatError("model: relations must be an object")
    edges: dict[int, list[tuple[int, int]]] = {}
    for key, pairs in relations_raw.items():
        try:
            player = int(key)
        except ValueError:
            raise FormatError(f"model: bad agent key {key!r}") from None
        if not isinstance(pairs, list):
            raise FormatError(f"model: relation for agent {key} must be a list")
        cleaned = []
        for pair in pairs:
            if not (
                isinstance(pair, list)
                and len(pair) == 2
                and all(isinstance(x, int) for x in pair)
            ):
                raise FormatError(f"model: bad relation pair {pair!r}")
            cleaned.append((pair[0], pair[1]))
        edges[player] = cleaned
    try:
        return IntensionalModel(ambient, forms, worlds, records, edges)
    except GameError as exc:
        raise FormatError(str(exc)) from exc


def load_intensional(path: str | Path) -> IntensionalModel:
    return intensional_from_dict(load_path(path))


# --------------------------------------------------------------------------
# audit reports


def manipulation_to_dict(m: Manipulation) -> dict:
    return {
        "profile": [str(b) for b in m.profile],
        "voter": m.voter,
        "deviation": str(m.deviation),
        "before": sorted(m.before),
        "after": sorted(m.after),
    }


def audit_report_to_dict(report: AuditReport) -> dict:
    return {
        "rule": report.rule,
        "resolute": report.resolute,
        "strategyProof": report.strategy_proof,
        "manipulation": (
            None
            if report.manipulation is None
            else manipulation_to_dict(report.manipulation)
        ),
        "nonImposed": report.non_imposed,
        "distinctWinnerSets": report.distinct_winner_sets,
        "dictators": sorted(report.dictators),
        "gsConsistent": report.gs_consistent,
        "notes": list(report.notes),
    }


# --------------------------------------------------------------------------
# ASTs


def ast_to_dict(node) -> dict:
    """Type-tagged JSON view of a formula, program, vector, or term."""
    if isinstance(node, Vector):
        return {"node": "Vector", "terms": [ast_to_dict(t) for t in node.terms]}
    if isinstance(node, Concrete):
        return {"node": "Concrete", "name": node.name}
    if isinstance(node, Adversary):
        return {"node": "Adversary"}
    if isinstance(node, Current):
        return {"node": "Current"}
    if isinstance(node, Top):
        return {"node": "Top"}
    if isinstance(node, VectorAtom):
        return {"node": "VectorAtom", "vector": ast_to_dict(node.vector)}
    if isinstance(node, Winner):
        return {"node": "Winner", "name": node.name}
    if isinstance(node, UtilEq):
        return {"node": "UtilEq", "player": node.player, "value": util_to_json(node.value)}
    if isinstance(node, Label):
        return {"node": "Label", "text": node.text}
    if isinstance(node, Not):
        return {"node": "Not", "body": ast_to_dict(node.body)}
    if isinstance(node, (And, Or, Implies, Iff)):
        return {
            "node": type(node).__name__,
            "left": ast_to_dict(node.left),
            "right": ast_to_dict(node.right),
        }
    if isinstance(node, (Box, Diamond)):
        return {
            "node": type(node).__name__,
            "program": ast_to_dict(node.program),
            "body": ast_to_dict(node.body),
        }
    if isinstance(node, Vec):
        return {"node": "Vec", "vector": ast_to_dict(node.vector)}
    if isinstance(node, Test):
        return {"node": "Test", "body": ast_to_dict(node.body)}
    if isinstance(node, (Seq, Choice)):
        return {
            "node": type(node).__name__,
            "left": ast_to_dict(node.left),
            "right": ast_to_dict(node.right),
        }
    if isinstance(node, Star):
        return {"node": "Star", "body": ast_to_dict(node.body)}
    if isinstance(node, (Agent, AgentConv)):
        return {"node": type(node).__name__, "player": node.player}
    if isinstance(node, CLTop):
        return {"node": "CLTop"}
    if isinstance(node, CLAtom):
        return {"node": "CLAtom", "atom": ast_to_dict(node.atom)}
    if isinstance(node, CLNot):
        return {"node": "CLNot", "body": ast_to_dict(node.body)}
    if isinstance(node, CLAnd):
        return {
            "node": "CLAnd",
            "left": ast_to_dict(node.left),
            "right": ast_to_dict(node.right),
        }
    if isinstance(node, CLBox):
        return {
            "node": "CLBox",
            "coalition": sorted(node.coalition),
            "body": ast_to_dict(node.body),
        }
    raise TypeError(f"cannot serialize {node!r}")
