"""Voting rules on ranked ballots, the strategic games they induce, and a
brute-force manipulability audit.

Outcomes of a vote are non-empty sets of alternatives.  A voter compares
outcome sets two ways, which the audit keeps carefully apart: the
qualitative order `set_better` (every element of one set at least as good
as every element of the other, somewhere strictly), used as the oracle for
manipulations, and the exact mean-rank score `outcome_payoff`, used to put
numbers into induced games.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .games import GameForm, OutcomeRecord, StrategicGame
from .models import MaslModel, extension
from .properties import dictator
from .syntax import Signature


class VotingError(ValueError):
    """Raised when ballots or rule data are malformed."""


@dataclass(frozen=True)
class Ballot:
    """A strict ranking of the alternatives, best first."""

    order: tuple[str, ...]

    def __init__(self, order: Iterable[str]):
        order = tuple(order)
        if not order:
            raise VotingError("a ballot cannot be empty")
        if len(set(order)) != len(order):
            raise VotingError(f"ballot {order!r} ranks an alternative twice")
        object.__setattr__(self, "order", order)

    @classmethod
    def parse(cls, text: str, alternatives: Sequence[str]) -> Ballot:
        """Read "abc" (single-character alternatives) or "a,b,c"."""
        if "," in text:
            parts = text.split(",")
        elif all(len(a) == 1 for a in alternatives):
            parts = list(text)
        else:
            raise VotingError(
                f"ballot {text!r} needs commas with multi-character alternatives"
            )
        ballot = cls(parts)
        if set(ballot.order) != set(alternatives) or len(ballot.order) != len(
            set(alternatives)
        ):
            raise VotingError(
                f"ballot {text!r} is not a permutation of the alternatives"
            )
        return ballot

    @property
    def top(self) -> str:
        return self.order[0]

    def position(self, alternative: str) -> int:
        """Rank from the top, 0 being best."""
        try:
            return self.order.index(alternative)
        except ValueError:
            raise VotingError(
                f"ballot {self} does not rank {alternative!r}"
            ) from None

    def prefers(self, x: str, y: str) -> bool:
        """Strict preference of x over y."""
        return self.position(x) < self.position(y)

    def __str__(self) -> str:
        if all(len(a) == 1 for a in self.order):
            return "".join(self.order)
        return ",".join(self.order)


BallotProfile = tuple[Ballot, ...]


def set_better(xs: Iterable[str], ys: Iterable[str], ballot: Ballot) -> bool:
    """Weak-dominance comparison of outcome sets under one ballot: every
    cross pair is equal or improves, and at least one strictly improves."""
    xset, yset = frozenset(xs), frozenset(ys)
    if not xset or not yset:
        raise VotingError("cannot compare empty outcome sets")
    strict = False
    for x in xset:
        for y in yset:
            if x == y:
                continue
            if not ballot.prefers(x, y):
                return False
            strict = True
    return strict


def outcome_payoff(xs: Iterable[str], ballot: Ballot) -> Fraction:
    """Mean rank-score of an outcome set: |A|-1 points for the ballot's top
    alternative down to 0 for its last, averaged over the set."""
    xset = frozenset(xs)
    if not xset:
        raise VotingError("cannot score an empty outcome set")
    best = len(ballot.order) - 1
    total = sum(best - ballot.position(x) for x in xset)
    return Fraction(total, len(xset))


# --------------------------------------------------------------------------
# rules


class VotingRule:
    """Maps a vector of cast votes (top choices) to a non-empty winner set."""

    alternatives: tuple[str, ...]

    def winners(self, tops: Sequence[str]) -> frozenset[str]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def _check_tops(self, tops: Sequence[str]) -> None:
        for name in tops:
            if name not in self.alternatives:
                raise VotingError(f"vote for unknown alternative {name!r}")


def _check_alternatives(alternatives: tuple[str, ...]) -> None:
    if not alternatives:
        raise VotingError("need at least one alternative")
    if len(set(alternatives)) != len(alternatives):
        raise VotingError("alternatives must be distinct")


@dataclass(frozen=True)
class Plurality(VotingRule):
    alternatives: tuple[str, ...]

    def __post_init__(self) -> None:
        _check_alternatives(self.alternatives)

    def winners(self, tops: Sequence[str]) -> frozenset[str]:
        self._check_tops(tops)
        counts = {a: 0 for a in self.alternatives}
        for name in tops:
            counts[name] += 1
        most = max(counts.values())
        return frozenset(a for a, c in counts.items() if c == most)

    def describe(self) -> str:
        return "plurality"


@dataclass(frozen=True)
class AbsoluteMajority(VotingRule):
    """An alternative with more than half the votes wins; otherwise everyone
    ties."""

    alternatives: tuple[str, ...]

    def __post_init__(self) -> None:
        _check_alternatives(self.alternatives)

    def winners(self, tops: Sequence[str]) -> frozenset[str]:
        self._check_tops(tops)
        for a in self.alternatives:
            if 2 * sum(1 for name in tops if name == a) > len(tops):
                return frozenset({a})
        return frozenset(self.alternatives)

    def describe(self) -> str:
        return "absolute_majority"


@dataclass(frozen=True)
class DictatorRule(VotingRule):
    alternatives: tuple[str, ...]
    voter: int

    def __post_init__(self) -> None:
        _check_alternatives(self.alternatives)
        if self.voter < 1:
            raise VotingError("voter numbers start at 1")

    def winners(self, tops: Sequence[str]) -> frozenset[str]:
        self._check_tops(tops)
        if self.voter > len(tops):
            raise VotingError(f"no voter {self.voter} among {len(tops)} votes")
        return frozenset({tops[self.voter - 1]})

    def describe(self) -> str:
        return f"dictator:{self.voter}"


@dataclass(frozen=True)
class ConstantRule(VotingRule):
    alternatives: tuple[str, ...]
    choice: str

    def __post_init__(self) -> None:
        _check_alternatives(self.alternatives)
        if self.choice not in self.alternatives:
            raise VotingError(f"constant winner {self.choice!r} is not an alternative")

    def winners(self, tops: Sequence[str]) -> frozenset[str]:
        self._check_tops(tops)
        return frozenset({self.choice})

    def describe(self) -> str:
        return f"constant:{self.choice}"


@dataclass(frozen=True)
class ResoluteWrap(VotingRule):
    """Break a base rule's ties in favour of a fixed ranking."""

    base: VotingRule
    tiebreak: Ballot

    def __post_init__(self) -> None:
        if set(self.tiebreak.order) != set(self.base.alternatives):
            raise VotingError("tie-break ballot must rank exactly the alternatives")

    @property
    def alternatives(self) -> tuple[str, ...]:  # type: ignore[override]
        return self.base.alternatives

    def winners(self, tops: Sequence[str]) -> frozenset[str]:
        tied = self.base.winners(tops)
        return frozenset({min(tied, key=self.tiebreak.position)})

    def describe(self) -> str:
        return f"{self.base.describe()}+tiebreak:{self.tiebreak}"


def apply_rule(
    rule: VotingRule, votes: Sequence[Ballot] | Sequence[str]
) -> frozenset[str]:
    """Winners for cast votes, given either full ballots or top choices."""
    if votes and isinstance(votes[0], Ballot):
        tops = [b.top for b in votes]
    else:
        tops = list(votes)
    winners = rule.winners(tops)
    if not winners or not winners <= set(rule.alternatives):
        raise VotingError(f"rule returned a bad winner set {winners!r}")
    return winners


def winners_label(rule: VotingRule, winners: frozenset[str]) -> str:
    """Canonical outcome label: winning alternatives in declared order."""
    return ",".join(a for a in rule.alternatives if a in winners)


# --------------------------------------------------------------------------
# ballot enumeration and induced games


def all_ballots(alternatives: Sequence[str]) -> list[Ballot]:
    return [Ballot(p) for p in permutations(alternatives)]


def all_ballot_profiles(
    alternatives: Sequence[str], n_voters: int
) -> Iterator[BallotProfile]:
    yield from product(all_ballots(alternatives), repeat=n_voters)


@lru_cache(maxsize=None)
def _winner_table(
    rule: VotingRule, n_voters: int
) -> tuple[dict[tuple[str, ...], frozenset[str]], GameForm]:
    """Winner sets for every vector of cast votes, plus the voting form."""
    form = GameForm([rule.alternatives] * n_voters)
    table = {
        names: apply_rule(rule, names)
        for names in product(rule.alternatives, repeat=n_voters)
    }
    return table, form


def induced_game(rule: VotingRule, true_ballots: Sequence[Ballot]) -> StrategicGame:
    """The voting game: every voter picks an alternative to cast, utilities
    score the winner set against each voter's true ballot."""
    true_ballots = tuple(true_ballots)
    for ballot in true_ballots:
        if set(ballot.order) != set(rule.alternatives):
            raise VotingError(f"ballot {ballot} does not rank the alternatives")
    table, form = _winner_table(rule, len(true_ballots))
    records = []
    for names in product(rule.alternatives, repeat=len(true_ballots)):
        winners = table[names]
        records.append(
            OutcomeRecord(
                label=winners_label(rule, winners),
                utils=[outcome_payoff(winners, b) for b in true_ballots],
                winners=winners,
            )
        )
    return StrategicGame(form, tuple(records))


# --------------------------------------------------------------------------
# audit


@dataclass(frozen=True)
class Manipulation:
    """A successful strategic lie: `voter` swaps their ballot in `profile`
    for `deviation` and prefers the new outcome on their true ballot."""

    profile: BallotProfile
    voter: int
    deviation: Ballot
    before: frozenset[str]
    after: frozenset[str]


@dataclass(frozen=True)
class AuditReport:
    rule: str
    resolute: bool
    strategy_proof: bool
    manipulation: Manipulation | None
    non_imposed: bool
    distinct_winner_sets: int
    dictators: frozenset[int]
    notes: tuple[str, ...] = ()

    @property
    def gs_consistent(self) -> bool:
        """No rule is simultaneously resolute, strategy-proof, non-imposed,
        and dictator-free."""
        return not (
            self.resolute and self.strategy_proof and self.non_imposed
        ) or bool(self.dictators)


def find_manipulation(rule: VotingRule, n_voters: int) -> Manipulation | None:
    """First (profile, voter, deviation) in enumeration order where lying
    yields a set_better outcome, or None."""
    table, _ = _winner_table(rule, n_voters)
    ballots = all_ballots(rule.alternatives)
    for profile in all_ballot_profiles(rule.alternatives, n_voters):
        tops = tuple(b.top for b in profile)
        before = table[tops]
        for voter in range(1, n_voters + 1):
            truth = profile[voter - 1]
            for deviation in ballots:
                if deviation == truth:
                    continue
                cast = tops[: voter - 1] + (deviation.top,) + tops[voter:]
                after = table[cast]
                if set_better(after, before, truth):
                    return Manipulation(profile, voter, deviation, before, after)
    return None


def rule_dictators(rule: VotingRule, n_voters: int) -> frozenset[int]:
    """Voters whose dictatorship formula holds in every induced game."""
    candidates = set(range(1, n_voters + 1))
    for profile in all_ballot_profiles(rule.alternatives, n_voters):
        if not candidates:
            break
        game = induced_game(rule, profile)
        model = MaslModel(game)
        sig = Signature.from_game(game)
        for voter in sorted(candidates):
            if not extension(model, dictator(sig, voter)).all():
                candidates.discard(voter)
    return frozenset(candidates)


def audit_rule(rule: VotingRule, n_voters: int) -> AuditReport:
    """Brute-force audit over all full-ballot profiles."""
    if n_voters < 2:
        raise VotingError("the audit needs at least two voters")
    table, _ = _winner_table(rule, n_voters)
    winner_sets = set(table.values())
    notes: list[str] = []
    if len(rule.alternatives) < 3:
        notes.append(
            "fewer than three alternatives: non-imposition is counted over "
            "winner sets only"
        )
    manipulation = find_manipulation(rule, n_voters)
    return AuditReport(
        rule=rule.describe(),
        resolute=all(len(w) == 1 for w in table.values()),
        strategy_proof=manipulation is None,
        manipulation=manipulation,
        non_imposed=len(winner_sets) >= 3,
        distinct_winner_sets=len(winner_sets),
        dictators=rule_dictators(rule, n_voters),
        notes=tuple(notes),
    )
