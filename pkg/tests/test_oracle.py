import random

import pytest
from hypothesis import given, settings, strategies as st

from bdmodal.formula import L_ALL, L_BBOX, L_IGN, PROP, Sequent, Tri, parse_formula, parse_sequent
from bdmodal.harness import random_formula
from bdmodal.oracle import (
    BudgetExceeded, EnumerationBudget, FrameEvaluator, definability_check, find_countermodel,
    formulas_by_size, formulas_up_to, frames_of_size, frames_up_to, model_from_index, random_frame,
    refutation_matrix, separation_check, valid_on_frame, valuation_count, valuations_on,
)
from bdmodal.semantics import Frame, PointedModel, eval_formula, holds_sequent_at, parse_model


def test_valuations_are_exhaustive_and_distinct():
    frame = Frame.from_mask(2, 0b0110)
    models = list(valuations_on(frame, ["p", "q"]))
    assert len(models) == valuation_count(frame, ["p", "q"]) == 4 ** 4
    assert len(set(models)) == len(models)


def test_valuation_digit_order():
    frame = Frame.from_mask(2, 0)
    m = model_from_index(frame, ["p", "q"], 1 + 3 * 4 + 2 * 4 ** 3)
    assert [m.value("p", w).value for w in (0, 1)] == ["T", "B"]
    assert [m.value("q", w).value for w in (0, 1)] == ["N", "F"]


def test_valuation_cap():
    with pytest.raises(BudgetExceeded):
        list(valuations_on(Frame.from_mask(3, 0), ["p", "q"], cap=4 ** 5))


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_vectorised_evaluator_matches_set_semantics(rng):
    frame = random_frame(rng, rng.randint(1, 3))
    ev = FrameEvaluator(frame, ["p", "q"])
    indices = [rng.randrange(ev.count) for _ in range(20)]
    for _ in range(4):
        phi = random_formula(rng, L_ALL | {Tri}, max_size=9)
        t, f = ev.ext(phi)
        for i in indices:
            m = model_from_index(frame, ["p", "q"], i)
            for w in frame.worlds:
                v = eval_formula(m, w, phi)
                assert (bool(t[i, w]), bool(f[i, w])) == (v.sup_t, v.sup_f), (phi, i, w)


def test_first_refutation_is_first_in_enumeration_order():
    seq = parse_sequent("Tri p |- [*]p")
    frame = Frame.from_mask(2, 0b1011)
    naive = next(PointedModel(m, w) for m in valuations_on(frame, ["p"])
                 for w in frame.worlds if not holds_sequent_at(m, w, seq))
    assert FrameEvaluator(frame, ["p"]).first_refutation(seq) == naive


@pytest.mark.parametrize("size, labelled, classes", [(1, 2, 2), (2, 16, 10), (3, 512, 104)])
def test_frame_counts(size, labelled, classes):
    assert len(list(frames_of_size(size))) == labelled
    assert len(list(frames_of_size(size, modulo_iso=True))) == classes


def test_four_world_iso_classes():
    assert len(list(frames_of_size(4, modulo_iso=True))) == 3044


def test_frames_are_ordered_by_size_then_mask():
    frames = list(frames_up_to(2))
    assert [f.size for f in frames] == [1, 1] + [2] * 16
    assert [f.mask for f in frames[2:]] == list(range(16))


def test_frame_cap():
    with pytest.raises(BudgetExceeded):
        list(frames_of_size(5))


def test_formula_enumeration_counts():
    levels = formulas_by_size(PROP, ["p"], 4)
    assert [len(level) for level in levels] == [0, 1, 1, 3, 7]
    ign = list(formulas_up_to(L_IGN, ["p"], 3))
    assert len(ign) == len(set(ign)) == 1 + 2 + 6
    assert ign[:3] == [parse_formula(t) for t in ("p", "~p", "Ip")]


def test_countermodel_search():
    pm = find_countermodel(parse_sequent("[*]p |- p"))
    assert pm is not None and pm.model.frame.size == 1
    assert holds_sequent_at(pm.model, pm.point, parse_sequent("[*]p |- p")) is False
    assert find_countermodel(parse_sequent("p & q |- q | r")) is None
    assert find_countermodel(parse_sequent("Ip |- p")) is None


def test_countermodel_search_budget():
    with pytest.raises(BudgetExceeded):
        find_countermodel(parse_sequent("p & q & r & s |- Ip"),
                          EnumerationBudget(max_worlds=3, max_valuations=4 ** 6))


def test_refutation_matrix_agrees_with_single_searches():
    pool = list(formulas_up_to(L_BBOX, ["p"], 3))
    budget = EnumerationBudget(max_worlds=2)
    matrix = refutation_matrix(pool, budget, atoms=("p",))
    for i, a in enumerate(pool):
        for j, b in enumerate(pool):
            assert matrix[i, j] == (find_countermodel(Sequent(a, b), budget) is not None)


def test_valid_on_frame():
    refl = parse_model("worlds: a\nedges: a->a\n").frame
    assert valid_on_frame(refl, parse_sequent("[*]p |- p")) == (True, None)
    valid, wit = valid_on_frame(Frame.from_mask(1, 0), parse_sequent("[*]p |- p"))
    assert not valid and wit.model.frame.size == 1


def test_separation_and_definability():
    m = parse_model("worlds: a b c\nedges: a->a b->c\nval p: a=T b=T c=T\n")
    a, b = PointedModel(m, 0), PointedModel(m, 1)
    rep = separation_check(a, b, L_IGN, 3)
    assert rep.separated and rep.separating_formula == parse_formula("Ip")
    assert rep.values[0] != rep.values[1]
    same = separation_check(a, PointedModel(m, 0), L_IGN, 3)
    assert not same.separated and same.verdict == "indistinguishable-up-to-bound"
    points = [PointedModel(m, w) for w in m.frame.worlds]
    found = definability_check(points, parse_formula("~~p"), PROP, 2)
    assert found.candidate == parse_formula("p")
    missing = definability_check(points, parse_formula("Ip"), PROP, 4)
    assert missing.undefinable and missing.candidate is None


def test_random_frame_is_reproducible():
    assert random_frame(random.Random(3), 4) == random_frame(random.Random(3), 4)
