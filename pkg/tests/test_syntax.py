"""AST constructors, operator sugar, and the renderer's minimal parentheses."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from stratlogic import (
    ADV,
    CUR,
    And,
    Box,
    Concrete,
    Diamond,
    Iff,
    Implies,
    Label,
    Not,
    Or,
    Signature,
    Top,
    UtilEq,
    Vector,
    VectorAtom,
    Winner,
    render,
)
from stratlogic.syntax import (
    BOT,
    TOP,
    Agent,
    AgentConv,
    Choice,
    Seq,
    Star,
    Test as ProgTest,
    Vec,
    choice,
    conj,
    disj,
    seq,
)
from stratlogic.catalog import prisoners_dilemma, vote3_game


def _pd_sig() -> Signature:
    return Signature.from_game(prisoners_dilemma())


# --------------------------------------------------------------------------
# Construction and validation


def test_vector_needs_two_positions():
    with pytest.raises(ValueError):
        Vector([Concrete("a")])
    Vector([Concrete("a"), ADV])  # fine


def test_vector_determined():
    assert Vector([Concrete("a"), CUR]).determined()
    assert not Vector([Concrete("a"), ADV]).determined()


def test_utileq_coerces_to_fraction():
    f = UtilEq(1, 0.5)
    assert f.value == Fraction(1, 2)
    assert UtilEq(2, "3/4").value == Fraction(3, 4)


def test_operator_sugar():
    p, q = Label("p"), Label("q")
    assert ~p == Not(p)
    assert (p & q) == And(p, q)
    assert (p | q) == Or(p, q)
    assert (p >> q) == Implies(p, q)
    a, b = Agent(1), Agent(2)
    assert (a + b) == Choice(a, b)


def test_conj_disj_conventions():
    p, q, r = Label("p"), Label("q"), Label("r")
    assert conj([]) == TOP
    assert disj([]) == BOT
    assert conj([p]) == p
    assert disj([p]) == p
    assert conj([p, q, r]) == And(And(p, q), r)
    assert disj([p, q]) == Or(p, q)


def test_seq_choice_helpers():
    a, b, c = Agent(1), Agent(2), AgentConv(1)
    assert seq(a) == a
    assert seq(a, b, c) == Seq(Seq(a, b), c)
    assert choice(a, b) == Choice(a, b)


def test_asts_are_hashable_and_comparable():
    x = Box(Star(Agent(1)), UtilEq(1, 2))
    y = Box(Star(Agent(1)), UtilEq(1, 2))
    assert x == y
    assert hash(x) == hash(y)
    assert x != Diamond(Star(Agent(1)), UtilEq(1, 2))


# --------------------------------------------------------------------------
# Signatures


def test_signature_from_pd():
    sig = _pd_sig()
    assert sig.strategy_sets == (("c", "d"), ("c", "d"))
    assert sig.util_range == (Fraction(0), Fraction(1), Fraction(2), Fraction(3))
    assert sig.alternatives is None


def test_signature_from_voting_game():
    sig = Signature.from_game(vote3_game())
    assert sig.alternatives == ("a", "b", "c")
    assert sig.util_range == (Fraction(0), Fraction(1), Fraction(2))


def test_signature_from_form_has_no_valuation_data():
    sig = Signature.from_form(prisoners_dilemma().form)
    assert sig.util_range is None and sig.alternatives is None


# --------------------------------------------------------------------------
# Rendering: hand cases


def test_render_vector_atom():
    assert render(VectorAtom(Vector([Concrete("c"), Concrete("d")]))) == "(c,d)"
    assert render(VectorAtom(Vector([ADV, CUR, Concrete("b")]))) == "(??,!!,b)"


def test_render_box_choice():
    f = Box(
        Choice(
            Vec(Vector([Concrete("c"), ADV])),
            Vec(Vector([Concrete("d"), ADV])),
        ),
        Winner("a"),
    )
    assert render(f) == "[(c,??)+(d,??)] win(a)"


def test_render_negated_conjunction():
    assert render(Not(And(TOP, TOP))) == "~(T & T)"


def test_render_payoff_atoms():
    assert render(UtilEq(2, 3)) == "u2=3"
    assert render(UtilEq(1, Fraction(-2, 3))) == "u1=-2/3"


def test_render_label_and_winner_quoting():
    assert render(Label("ok")) == "label(ok)"
    assert render(Label("a,b")) == 'label("a,b")'
    assert render(Winner("x_1")) == "win(x_1)"
    assert render(Winner("two words")) == 'win("two words")'
    with pytest.raises(ValueError):
        render(Label('has"quote'))


# --------------------------------------------------------------------------
# Rendering: minimal parentheses


def test_and_binds_tighter_than_or():
    p, q, r = Label("p"), Label("q"), Label("r")
    assert render(Or(And(p, q), r)) == "label(p) & label(q) | label(r)"
    assert render(And(Or(p, q), r)) == "(label(p) | label(q)) & label(r)"


def test_implies_is_right_associative():
    p, q, r = Label("p"), Label("q"), Label("r")
    assert render(Implies(p, Implies(q, r))) == "label(p) -> label(q) -> label(r)"
    assert render(Implies(Implies(p, q), r)) == "(label(p) -> label(q)) -> label(r)"


def test_iff_is_loosest():
    p, q, r = Label("p"), Label("q"), Label("r")
    assert render(Iff(p, Iff(q, r))) == "label(p) <-> label(q) <-> label(r)"
    assert render(Iff(Implies(p, q), r)) == "label(p) -> label(q) <-> label(r)"
    assert render(Implies(Iff(p, q), r)) == "(label(p) <-> label(q)) -> label(r)"


def test_negation_parenthesizes_binaries_only():
    p, q = Label("p"), Label("q")
    assert render(Not(Not(p))) == "~~label(p)"
    assert render(Not(Or(p, q))) == "~(label(p) | label(q))"
    assert render(Not(Box(Agent(1), p))) == "~[ag1] label(p)"


def test_box_body_is_unary_context():
    p, q = Label("p"), Label("q")
    assert render(Box(Agent(1), And(p, q))) == "[ag1] (label(p) & label(q))"
    assert render(Box(Agent(1), Not(p))) == "[ag1] ~label(p)"
    assert render(Diamond(Agent(2), p)) == "<ag2> label(p)"


def test_program_precedence_rendering():
    u, v = Vec(Vector([Concrete("c"), CUR])), Vec(Vector([Concrete("d"), ADV]))
    w = Agent(1)
    assert render(Choice(Seq(u, v), w)) == "(c,!!);(d,??)+ag1"
    assert render(Seq(Choice(u, v), w)) == "((c,!!)+(d,??));ag1"
    assert render(Star(Seq(u, w))) == "((c,!!);ag1)*"
    assert render(Star(w)) == "ag1*"
    assert render(Star(Star(w))) == "ag1**"
    assert render(AgentConv(2)) == "ag2^"


def test_test_program_rendering():
    p, q = Label("p"), Label("q")
    assert render(ProgTest(p)) == "?label(p)"
    assert render(ProgTest(And(p, q))) == "?(label(p) & label(q))"
    assert render(Seq(ProgTest(UtilEq(1, 0)), Vec(Vector([Concrete("c"), CUR])))) == (
        "?u1=0;(c,!!)"
    )


# --------------------------------------------------------------------------
# Vectors double as atoms and as programs without notation clashes


def test_vector_as_formula_and_program_render_alike():
    vec = Vector([Concrete("c"), ADV])
    assert render(VectorAtom(vec)) == render(Vec(vec)) == "(c,??)"


def test_render_is_deterministic():
    rng = random.Random(3)
    from gens import random_formula

    sig = Signature.from_game(vote3_game())
    for _ in range(50):
        f = random_formula(rng, sig, 4)
        assert render(f) == render(f)
