import pytest
from hypothesis import given, settings, strategies as st

from bdmodal.formula import Sequent, parse_formula
from bdmodal.harness import random_formula, random_model
from bdmodal.semantics import (
    Frame, FrameClass, Model, ModelFormatError, TruthState, UnknownWorld, dual_model, dump_model,
    eval_formula, frame_has, holds_sequent_at, parse_model,
)


def model(text):
    return parse_model(text)


def value(m, w, text, strict=False):
    return eval_formula(m, w, parse_formula(text), strict=strict).value


def test_truth_state_encoding():
    assert [TruthState.of(c).value for c in "NTFB"] == list("NTFB")
    assert TruthState.of("B").dual() == TruthState.of("N")
    assert TruthState.of("T").dual() == TruthState.of("T")


def test_propositional_clauses():
    m = model("worlds: a\nval p: a=B\nval q: a=F\n")
    assert value(m, "a", "~p") == "B"
    assert value(m, "a", "p & q") == "F"
    assert value(m, "a", "p | q") == "B"
    assert value(m, "a", "~q | r") == "T"
    assert value(m, "a", "r") == "N"


def test_box_clause():
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=T c=F\n")
    assert value(m, "a", "[]p") == "F"
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=T c=B\n")
    assert value(m, "a", "[]p") == "B"
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=T c=T\n")
    assert value(m, "a", "[]p") == "T"


def test_knowledge_needs_a_uniform_value():
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=T c=B\n")
    assert value(m, "a", "[*]p") == "F"
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=B c=B\n")
    assert value(m, "a", "[*]p") == "B"
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=N c=N\n")
    assert value(m, "a", "[*]p") == "N"


def test_ignorance_uses_strict_successors():
    m = model("worlds: a b\nedges: a->a a->b\nval p: a=T b=F\n")
    assert value(m, "a", "Ip") == "T"
    m = model("worlds: a b\nedges: a->a a->b\nval p: a=T b=B\n")
    assert value(m, "a", "Ip") == "B"
    m = model("worlds: a b\nedges: a->b\nval p: a=T b=T\n")
    assert value(m, "a", "Ip") == "F"


def test_knowing_whether():
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=T c=T\n")
    assert value(m, "a", "Tri p") == "T"
    m = model("worlds: a b c\nedges: a->b a->c\nval p: b=T c=F\n")
    assert value(m, "a", "Tri p") == "F"


def test_dead_end_makes_boxes_vacuously_true():
    m = model("worlds: a\nval p: a=T\n")
    for text in ("[]p", "[*]p", "[*]~p", "Tri p", "Ip"):
        assert value(m, "a", text) == "T", text


def test_strict_flag_reads_knowledge_over_strict_successors():
    m = model("worlds: a b\nedges: a->a a->b\nval p: a=F b=T\n")
    assert value(m, "a", "[*]p") == "F"
    assert value(m, "a", "[*]p", strict=True) == "T"


def test_unknown_world():
    m = model("worlds: a\n")
    with pytest.raises(UnknownWorld):
        eval_formula(m, "zz", parse_formula("p"))


def test_holds_sequent_at():
    m = model("worlds: a\nval p: a=B\n")
    assert holds_sequent_at(m, "a", Sequent(parse_formula("p"), parse_formula("~p")))
    assert not holds_sequent_at(m, "a", Sequent(parse_formula("p"), parse_formula("q")))


@settings(max_examples=200)
@given(st.randoms(use_true_random=False))
def test_dual_model_swaps_gluts_and_gaps(rng):
    m = random_model(rng, 3)
    phi = random_formula(rng, max_size=7)
    d = dual_model(m)
    assert dual_model(d) == m
    for w in m.frame.worlds:
        assert eval_formula(d, w, phi) == eval_formula(m, w, phi).dual()


@pytest.mark.parametrize("edges, expect", [
    ("a->a b->b", {FrameClass.REFLEXIVE, FrameClass.SERIAL, FrameClass.S5, FrameClass.S4,
                   FrameClass.PARTIAL_FUNCTIONAL, FrameClass.DENSE}),
    ("a->b", {FrameClass.PARTIAL_FUNCTIONAL, FrameClass.TRANSITIVE}),
    ("a->b b->a", {FrameClass.SERIAL, FrameClass.SYMMETRIC, FrameClass.PARTIAL_FUNCTIONAL}),
])
def test_frame_classes(edges, expect):
    frame = model(f"worlds: a b\nedges: {edges}\n").frame
    for cls in expect:
        assert frame_has(frame, cls), cls
    assert not frame_has(model("worlds: a b\nedges: a->b\n").frame, FrameClass.SERIAL)


def test_model_format_round_trip():
    text = "# two worlds\nworlds: a b'\nedges: a->b' b'->b'\nval p: a=t\nval q: b'=B\n"
    m = parse_model(text)
    assert m.value("p", 1).value == "N"
    assert m.value("p", 0).value == "T"
    again = parse_model(dump_model(m))
    assert again == m
    assert again.frame.names == ("a", "b'")


@pytest.mark.parametrize("text, line", [
    ("worlds: a\nedges: a-b\n", 2),
    ("worlds: a\nedges: a->c\n", 2),
    ("worlds: a\nval p: a=X\n", 2),
    ("worlds: a a\n", 1),
    ("worlds: a\nval p: a=T a=F\n", 2),
    ("wrlds: a\n", 1),
    ("edges: a->a\n", None),
])
def test_model_format_errors(text, line):
    with pytest.raises(ModelFormatError) as err:
        parse_model(text)
    assert err.value.line == line


def test_frame_mask_round_trip():
    frame = Frame.from_mask(3, 0b100010001)
    assert frame.rel == frozenset({(0, 0), (1, 1), (2, 2)})
    assert Frame.from_mask(3, frame.mask).rel == frame.rel
    assert Model.from_values(frame, {"p": "TFB"}).value("p", 2).value == "B"
