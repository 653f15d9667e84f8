import math

import pytest
from hypothesis import given

from sullivan_inv.homology import CapRequiredError, NotPoincareError
from sullivan_inv.invariants import (
    RefusedError,
    cat_lower_bound_report,
    ghorbal_jessup_check,
    r_formula_pure,
    r_via_dk,
    toomer_e0_fundamental,
    toomer_e0_projection,
)
from sullivan_inv.model import SullivanModel

from conftest import CORPUS, ELLIPTIC
from strategies import elliptic_pure_models


@pytest.mark.parametrize("name,e0", [("s2", 1), ("pure_k3", 4), ("cp3", 3), ("s2xs2", 2), ("s3", 1)])
def test_e0_two_ways(name, e0):
    m = CORPUS[name]
    assert toomer_e0_projection(m) == e0
    assert toomer_e0_fundamental(m) == e0


def test_e0_refusals():
    with pytest.raises(CapRequiredError):
        toomer_e0_projection(CORPUS["poly_x2"])
    with pytest.raises(NotPoincareError):
        toomer_e0_fundamental(CORPUS["poly_x2"])
    # with a cap the projection still runs; Q[x] injects nowhere past word length 0
    assert toomer_e0_projection(CORPUS["poly_x2"], 6) == 3


@pytest.mark.parametrize("name,r", [("s2", 1), ("pure_k3", 3), ("cp3", 1), ("s2xs2", 2)])
def test_formula_values(name, r):
    assert r_formula_pure(CORPUS[name]).value == r


def test_formula_edge_cases():
    v = r_formula_pure(CORPUS["s3"])
    assert v.value == 1 and v.convention_dependent
    with pytest.raises(RefusedError):
        r_formula_pure(CORPUS["heisenberg"])


@pytest.mark.parametrize("name", ["mixed_a", "mixed_b", "mixed_c", "s2"])
def test_r_via_dk(name):
    from sullivan_inv.ext import r_invariant_computed

    m = CORPUS[name]
    assert r_via_dk(m) == r_invariant_computed(m)


@pytest.mark.parametrize("name", ["cp3", "pure_k3", "s2xs2", "s2"])
def test_ghorbal_jessup_margin_zero(name):
    assert ghorbal_jessup_check(CORPUS[name]) == 0


@given(elliptic_pure_models())
def test_ghorbal_jessup_on_random_elliptic(model):
    assert ghorbal_jessup_check(model) >= 0


@given(elliptic_pure_models())
def test_e0_routes_agree_on_random_elliptic(model):
    from sullivan_inv.spectral import e0_from_ss

    assert toomer_e0_projection(model) == toomer_e0_fundamental(model) == e0_from_ss(model)


def test_report_fields():
    rep = cat_lower_bound_report(CORPUS["cp3"])
    d = rep.to_dict()
    assert (d["k"], d["m"], d["n"], d["N"]) == (4, 1, 1, 6)
    assert d["r_computed"] == 1 and d["e0_fundamental"] == 3
    assert d["verdicts"]["r_le_e0"] == "pass"
    assert d["gorenstein_bidegree"] == [1, 5]


def test_report_surfaces_open_question_without_asserting():
    rep = cat_lower_bound_report(CORPUS["heisenberg"])
    assert rep.question_bound == 3 and "question" not in " ".join(rep.verdicts)


def test_report_non_elliptic():
    rep = cat_lower_bound_report(CORPUS["poly_x2"], 6)
    assert rep.e0_fundamental is None and rep.notes
