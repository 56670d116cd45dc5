import pytest

from conftest import models, models_upto
from modalg.algebra import FiniteAlgebra, SignatureError, direct_product, make_algebra
from modalg.bridge import (SPECS, apply_recipes, check_c_axioms, get_spec, homomorphisms,
                           m4_from_mdg, mdg_from_m4, represent_in_t4_power, translate,
                           verify_embedding)
from modalg.builtins import (T4_ELEMENTS, T4_SUCC, boolean2, boolean2_modal, chain, t4, t4_modal,
                             trivial)
from modalg.catalog import check_membership, get_system
from modalg.terms import symbols

TRUNCATED_DIFFERENCE = make_algebra("cbck2", ["0", "1"], {"0": "0"}, star=[["0", "0"], ["1", "0"]])


def test_recipes_use_only_source_symbols():
    for spec in SPECS.values():
        system = get_system(spec.source)
        allowed_ops = {op for op, _ in system.operations}
        for _, _, term in spec.recipes:
            ops, consts = symbols(term)
            assert set(ops) <= allowed_ops, spec.id
            assert set(consts) <= set(system.constants), spec.id


def test_t4_to_modal_reproduces_t4_modal():
    report = m4_from_mdg(t4())
    assert report.ok
    assert report.output.tables == t4_modal().tables
    assert report.output.arities == t4_modal().arities


def test_modal_to_succ_reproduces_t4_succ():
    report = mdg_from_m4(t4_modal())
    assert report.ok and report.round_trip == (True, None)
    golden = tuple(T4_ELEMENTS.index(v) for row in T4_SUCC for v in row)
    assert report.output.tables["succ"] == golden
    assert report.output.constants == {"1": 3, "0": 0}


def test_boolean_case():
    out = m4_from_mdg(boolean2()).output
    assert out.tables["nabla"] == (0, 1)
    assert check_membership(out, "M4").member


def test_g_from_cbck():
    report = translate(TRUNCATED_DIFFERENCE, "g_from_cbck")
    assert report.ok and report.source_report.member
    assert report.output.tables["succ"] == (0, 1, 0, 0)
    assert report.output.constants == {"1": 0}


def test_flipped_t4_is_not_cbck():
    report = translate(t4(), "cbck_from_i")
    assert not report.source_report.member
    assert [lid for lid, _ in report.target_report.failures][0] == "B1"


@pytest.mark.parametrize("spec_id", sorted(SPECS))
def test_one_element_algebra(spec_id):
    source = get_system(get_spec(spec_id).source)
    syms = [op for op, _ in source.operations]
    one = trivial(syms)
    consts = {c: 0 for c in source.constants}
    one = one.replace(constants=consts)
    report = translate(one, spec_id)
    assert report.output.size == 1 and report.target_report.member


def test_output_is_pointwise_recipe_evaluation():
    out = apply_recipes(t4(), get_spec("cbck_from_g"))
    for x in range(4):
        for y in range(4):
            assert out.op("star", x, y) == t4().op("succ", y, x)


def test_mdg_round_trips():
    for m in models_upto("MDG4_0", 4):
        report = m4_from_mdg(m)
        assert report.ok, report.verdict_lines()


def test_m4_round_trips():
    for m in models_upto("M4", 4):
        report = mdg_from_m4(m)
        assert report.ok, report.verdict_lines()


def test_i_to_cbck():
    for m in models_upto("I", 4):
        report = translate(m, "cbck_from_i")
        assert report.ok
        out = report.output
        zero = out.constants["0"]
        assert all(out.op("star", zero, x) == zero for x in range(out.size))


def test_cbck_with_ci_to_i():
    for m in models_upto("CBCK-CI", 4):
        assert translate(m, "i_from_cbck").ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wajsberg_chains(n):
    c = chain(n)
    assert translate(c.replace(tables={**c.tables, "imp": c.tables["succ"]},
                               arities={**c.arities, "imp": 2}), "i_from_w").ok
    assert translate(c, "w_from_i0").target_report.member


def test_errors():
    with pytest.raises(KeyError):
        translate(t4(), "nope")
    with pytest.raises(SignatureError):
        translate(t4_modal(), "m4_from_mdg")
    no_bottom = make_algebra("no-bottom", ["a", "b", "1"], {"1": "1"},
                             succ=[["1", "b", "1"], ["a", "1", "1"], ["a", "b", "1"]])
    with pytest.raises(ValueError, match="least element"):
        m4_from_mdg(no_bottom)


def test_c_axioms_on_t4():
    report = check_c_axioms(t4())
    assert report.c_verdict and report.m4_verdict and report.agree


def test_c_axioms_with_identity_negation():
    a = t4().replace(tables={**t4().tables, "neg": (0, 1, 2, 3)})
    report = check_c_axioms(a)
    lid, w = report.membership.failures[0]
    assert (lid, w.render(report.membership.algebra)) == ("C6", "x=0 lhs=0 rhs=1")
    assert report.agree


def test_c_axioms_on_chain():
    report = check_c_axioms(chain(3))
    lid, w = report.membership.failures[0]
    assert (lid, w.render(chain(3))) == ("C5", "x=2/3 y=0 lhs=2/3 rhs=1")
    assert report.agree


def test_c_axioms_need_symbols():
    with pytest.raises(SignatureError):
        check_c_axioms(t4().reduct(["succ", "1"]))


def test_embedding_of_t4_is_identity():
    emb = represent_in_t4_power(t4_modal(), 4)
    assert emb.k == 1 and emb.images == [(0,), (1,), (2,), (3,)]


def test_embedding_of_boolean():
    emb = represent_in_t4_power(boolean2_modal(), 4)
    assert emb.k == 1 and emb.images == [(0,), (3,)]


def test_embedding_of_square():
    square = direct_product(t4_modal(), t4_modal())
    emb = represent_in_t4_power(square, 4)
    assert emb.k == 2 and verify_embedding(square, emb)


def test_trivial_algebra_has_no_embedding():
    one = FiniteAlgebra("one", ("0",), {"1": 0}, {"join": (0,), "meet": (0,), "neg": (0,), "nabla": (0,)},
                        {"join": 2, "meet": 2, "neg": 1, "nabla": 1})
    assert list(homomorphisms(one, t4_modal())) == []
    assert represent_in_t4_power(one, 4) is None


def test_every_small_m4_model_embeds():
    for n in range(2, 5):
        for m in models("M4", n):
            emb = represent_in_t4_power(m, 4)
            assert emb is not None and emb.k <= n and verify_embedding(m, emb)
