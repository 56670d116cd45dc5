import pytest

from conftest import models_upto
from modalg.algebra import SignatureError, check_law, make_algebra
from modalg.builtins import boolean2_modal, chain, example_2_7, t4, t4_modal
from modalg.catalog import (LAWS, PARAMETERIZED, UnknownSystem, catalog_reference, check_membership,
                            diagnose, find_law, get_system, least_element, prepare)


def render_failures(report):
    return [f"{lid} {w.render(report.algebra)}" for lid, w in report.failures]


def test_t4_diagnosis():
    got = dict(diagnose(t4()))
    for sid in ("G", "G0", "DG0", "G4", "G4_0", "DG4_0", "MDG4_0", "C",
                "G_{n+1}[n=2]", "G_{n+1}[n=3]"):
        assert got[sid] is True, sid
    for sid in ("W", "I", "I0", "G_{n+1}[n=1]"):
        assert got[sid] is False, sid
    for sid in ("BCK", "CBCK", "M4", "L3"):
        assert got[sid] is None, sid


def test_t4_is_not_an_i_algebra():
    report = check_membership(t4(), "I")
    assert report.notes == ["reading imp as succ"]
    assert render_failures(report) == ["I3 x=a y=0 z=b lhs=b rhs=1"]


def test_five_element_algebra_is_not_distributive():
    assert check_membership(example_2_7(), "G0").member
    report = check_membership(example_2_7(), "DG0")
    assert render_failures(report) == ["DG1 x=a y=b z=c lhs=1 rhs=c"]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chains(n):
    c = chain(n)
    assert check_membership(c, "G0").member
    assert not check_membership(c, "G4_0").member
    assert check_membership(c, PARAMETERIZED, n).member
    assert not check_membership(c, PARAMETERIZED, n - 1).member


def test_chain_witness():
    report = check_membership(chain(3), "G4_0")
    assert render_failures(report) == ["G'28 x=2/3 y=0 lhs=2/3 rhs=1"]


def test_modal_builtins():
    assert check_membership(t4_modal(), "M4").member
    assert not check_membership(t4_modal(), "L3").member
    assert not check_membership(t4_modal(), "Kleene").member
    assert check_membership(boolean2_modal(), "L3").member


def test_printed_b4_fails_on_truncated_difference():
    cb = make_algebra("cbck2", ["0", "1"], {"0": "0"}, star=[["0", "0"], ["1", "0"]])
    assert check_membership(cb, "CBCK").member
    assert check_law(cb, find_law("B4-as-printed")).valuation == {"x": 1}


def test_printed_m2_fails_in_t4():
    w = check_law(t4_modal(), find_law("M2-as-printed"))
    assert w.render(t4_modal()) == "x=0 y=a z=a lhs=0 rhs=a"


def test_printed_c8_fails_in_t4():
    alg, _ = prepare(t4(), get_system("C"))
    assert check_law(alg, find_law("C8")) is None
    assert check_law(alg, find_law("C8-as-printed")).render(alg) == "x=0 y=1 z=0 lhs=0 rhs=1"


def test_printed_g38_fails_in_t4():
    alg, _ = prepare(t4(), get_system("MDG4_0"))
    assert check_law(alg, find_law("G'38")) is None
    assert check_law(alg, find_law("G'38-as-printed")).render(alg) == "x=0 lhs=1 rhs=0"


def test_implicit_least_element():
    alg, notes = prepare(t4(), get_system("G0"))
    assert alg.constants["0"] == 0 and notes == ["0 bound to least element 0"]
    assert least_element(t4(), "succ") == 0


def test_no_least_element_is_reported_by_g17():
    # 1 and a, with a > 1 = 1 but 1 > a = a: no element below both
    alg = make_algebra("no-bottom", ["a", "b", "1"], {"1": "1"},
                       succ=[["1", "b", "1"], ["a", "1", "1"], ["a", "b", "1"]])
    report = check_membership(alg, "G0")
    assert "no least element" in report.notes[0]
    assert [lid for lid, _ in report.failures] == ["G17"]


def test_missing_symbol():
    with pytest.raises(SignatureError, match="succ"):
        check_membership(t4_modal(), "G")


def test_system_lookup():
    assert get_system("G40").id == "G4_0"
    assert get_system("C-system").id == "C"
    with pytest.raises(UnknownSystem):
        get_system("nope")
    with pytest.raises(ValueError):
        get_system(PARAMETERIZED)
    with pytest.raises(ValueError):
        get_system("G", 3)


def test_parent_laws_inlined_oldest_first():
    ids = [law.id for law in get_system("MDG4_0").laws]
    assert ids == ["G1", "G2", "G3", "G4", "G17", "G'28", "DG1", "G'35"]


def test_law_lookup_accepts_unprimed_ids():
    assert find_law("G28") is find_law("G'28")


def test_catalog_reference_lists_every_law():
    text = catalog_reference()
    for law_id in LAWS:
        assert law_id in text


@pytest.mark.parametrize("law_id", ["G'28", "G'29", "G'30"])
def test_g28_g29_g30_equivalent(law_id):
    # each of G'28, G'29, G'30 holds exactly on the G4 models
    for m in models_upto("G", 4):
        assert (check_law(m, find_law(law_id)) is None) == check_membership(m, "G4").member
