import pytest
from hypothesis import given, strategies as st

from bdmodal.formula import (
    L_BBOX_IGN, L_BOX, And, BBox, Box, Ign, Neg, Or, ParseError, Sequent, Tri, Var,
    atoms, in_fragment, modal_depth, parse, parse_formula, parse_sequent, size, subformulas,
    to_text, to_unicode,
)

atom = st.sampled_from([Var("p"), Var("q"), Var("r1")])
formulas = st.recursive(
    atom,
    lambda sub: st.one_of(
        st.builds(Neg, sub), st.builds(Box, sub), st.builds(BBox, sub),
        st.builds(Ign, sub), st.builds(Tri, sub),
        st.builds(And, sub, sub), st.builds(Or, sub, sub),
    ),
    max_leaves=12,
)


@given(formulas)
def test_ascii_round_trip(phi):
    assert parse_formula(to_text(phi)) == phi


@given(formulas)
def test_unicode_round_trip(phi):
    assert parse_formula(to_unicode(phi)) == phi


@given(formulas, formulas)
def test_sequent_round_trip(a, b):
    seq = Sequent(a, b)
    assert parse_sequent(to_text(seq)) == seq
    assert parse_sequent(to_unicode(seq)) == seq


@given(formulas)
def test_subformula_invariants(phi):
    subs = subformulas(phi)
    assert phi in subs
    assert len(set(subs)) == len(subs)
    for s in subs:
        assert set(atoms(s)) <= set(atoms(phi))
        assert size(s) <= size(phi)
        assert modal_depth(s) <= modal_depth(phi)
        for c in s.children:
            assert c in subs


def test_precedence_and_associativity():
    assert parse_formula("p | q & r") == Or(Var("p"), And(Var("q"), Var("r")))
    assert parse_formula("~p & q") == And(Neg(Var("p")), Var("q"))
    assert parse_formula("[*]p & Iq") == And(BBox(Var("p")), Ign(Var("q")))
    assert parse_formula("p & q & r") == And(And(Var("p"), Var("q")), Var("r"))


def test_derived_operators_expand():
    p = Var("p")
    assert parse_formula("<>p") == Neg(Box(Neg(p)))
    assert parse_formula("<*>p") == Neg(BBox(Neg(p)))
    assert parse_formula("♦p") == Neg(BBox(Neg(p)))
    assert parse_formula("Acc p") == And(p, Neg(BBox(p)))
    assert parse_formula("•p") == parse_formula("Acc p")
    assert parse_formula("▼p") == Neg(Tri(p))
    assert parse_formula("NTri p") == Neg(Tri(p))


def test_unicode_aliases_match_ascii():
    assert parse_sequent("Ip ∧ Iq ⊢ I(p ∨ q)") == parse_sequent("Ip & Iq |- I(p | q)")
    assert parse_formula("¬□■▲p") == parse_formula("~[][*]Tri p")


def test_metrics():
    phi = parse_formula("[*](p & ~q) | Ip")
    assert size(phi) == 8
    assert modal_depth(phi) == 1
    assert modal_depth(parse_formula("I[*][]p")) == 3
    assert atoms(phi) == ["p", "q"]
    assert atoms(parse_sequent("r |- p")) == ["p", "r"]


def test_fragments():
    assert in_fragment(parse_formula("[*]Ip"), L_BBOX_IGN)
    assert not in_fragment(parse_formula("[]p"), L_BBOX_IGN)
    assert in_fragment(parse_formula("<>p"), L_BOX)


def test_parse_dispatches_on_turnstile():
    assert isinstance(parse("p |- q"), Sequent)
    assert parse("p") == Var("p")


@pytest.mark.parametrize("text, offset", [
    ("p &", 3), ("(p", 2), ("p q", 2), ("", 0), ("p |- q |- r", 7), ("p $ q", 2),
])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.offset == offset


def test_parse_error_offset_is_in_bytes():
    with pytest.raises(ParseError) as err:
        parse_formula("■p ∧")
    assert err.value.offset == len("■p ∧".encode())


def test_sequent_requires_turnstile():
    with pytest.raises(ParseError):
        parse_sequent("p & q")
    with pytest.raises(ParseError):
        parse_formula("p |- q")
