import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itopsys.errors import FormulaSyntaxError
from itopsys.formula import (
    BOT,
    TOP,
    And,
    Atom,
    Imp,
    Neg,
    Or,
    atoms,
    depth,
    parse_formula,
    pretty,
    subformulas,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize("text,expected", [
    ("p", p),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("(p -> q) -> r", Imp(Imp(p, q), r)),
    ("p & q | r", Or(And(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("p & q -> r", Imp(And(p, q), r)),
    ("~p | p", Or(Neg(p), p)),
    ("~~p -> p", Imp(Neg(Neg(p)), p)),
    ("0", BOT),
    ("false -> true", Imp(BOT, TOP)),
    ("1", Imp(BOT, BOT)),
    ("p&q&r", And(And(p, q), r)),
    ("  ( p )  ", p),
    ("x_1 -> Y2", Imp(Atom("x_1"), Atom("Y2"))),
])
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text,position", [
    ("", 0),
    ("p ->", 4),
    ("p q", 2),
    ("(p", 2),
    ("p & $", 4),
    ("-> p", 0),
    ("p)", 1),
])
def test_syntax_error_positions(text, position):
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula(text)
    assert exc.value.position == position


@pytest.mark.parametrize("f,text", [
    (Imp(p, Imp(q, r)), "p -> q -> r"),
    (Imp(Imp(p, q), r), "(p -> q) -> r"),
    (Or(And(p, q), r), "p & q | r"),
    (And(Or(p, q), r), "(p | q) & r"),
    (Neg(Or(p, q)), "~(p | q)"),
    (Neg(Neg(p)), "~~p"),
    (TOP, "1"),
    (Or(p, Or(q, r)), "p | (q | r)"),
])
def test_pretty(f, text):
    assert pretty(f) == text


def test_atoms_depth_subformulas():
    f = parse_formula("(p -> q) & ~r")
    assert atoms(f) == ["p", "q", "r"]
    assert depth(f) == 2
    assert list(subformulas(f))[-1] == f
    assert len(list(subformulas(f))) == 7


ATOM_NAMES = st.sampled_from(["p", "q", "r", "s1"]).map(Atom)


def formulas():
    return st.recursive(
        st.one_of(ATOM_NAMES, st.just(BOT)),
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Imp, sub, sub),
        ),
        max_leaves=12,
    )


@given(formulas())
@settings(max_examples=300)
def test_pretty_roundtrip(f):
    assert parse_formula(pretty(f)) == f


@given(formulas())
@settings(max_examples=100)
def test_pretty_is_a_fixed_point(f):
    s = pretty(f)
    assert pretty(parse_formula(s)) == s
