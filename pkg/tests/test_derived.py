import pytest

from conftest import models_upto
from modalg.algebra import FiniteAlgebra, SignatureError, make_algebra
from modalg.builtins import (T4_ARROW, T4_DELTA, T4_ELEMENTS, T4_JOIN, T4_MAPSTO, T4_MEET, T4_NABLA,
                             T4_NEG, T4_SUCC, T4_SUPSET, chain, example_2_7, t4, t4_modal)
from modalg.derived import (derive_bounds, derive_order, derive_structure, format_binary, format_order,
                            format_unary, implication, iterate_implication, valued_check)


def idx_rows(rows):
    return [[T4_ELEMENTS.index(v) for v in row] for row in rows]


def idx_col(col):
    return [T4_ELEMENTS.index(v) for v in col]


def test_t4_structure_from_succ():
    ds = derive_structure(t4())
    assert ds.join == idx_rows(T4_JOIN)
    assert ds.meet == idx_rows(T4_MEET)
    assert ds.neg == idx_col(T4_NEG)
    assert ds.nabla == idx_col(T4_NABLA)
    assert ds.delta == idx_col(T4_DELTA)
    assert (ds.least, ds.greatest) == (0, 3)
    assert ds.flags == []


def test_t4_modal_implications():
    ds = derive_structure(t4_modal())
    assert ds.delta == idx_col(T4_DELTA)
    for which, golden in [("supset", T4_SUPSET), ("arrow", T4_ARROW), ("mapsto", T4_MAPSTO),
                          ("succ", T4_SUCC)]:
        assert ds.implications[which] == idx_rows(golden), which


def test_single_implication_value():
    a = t4_modal()
    assert implication(a, "succ", 1, 2) == 2
    with pytest.raises(ValueError):
        implication(a, "nope", 0, 0)
    with pytest.raises(SignatureError):
        implication(t4(), "succ", 0, 0)


def test_modal_order_from_join():
    order = derive_order(t4_modal())
    assert order.is_poset and not order.is_total()
    assert sorted(order.covers()) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_chain_order_is_total():
    c = chain(3)
    order = derive_order(c)
    assert order.is_total()
    assert format_order(c.labels, order).splitlines()[-1] == "total order: 0 < 1/3 < 2/3 < 1"


def test_example_with_three_atoms():
    ds = derive_structure(example_2_7())
    assert derive_bounds(ds.order) == (0, 4)
    assert sorted(j for i, j in ds.order.covers() if i == 0) == [1, 2, 3]


def test_non_poset_is_flagged():
    # x > y = 1 everywhere: every pair is related both ways
    a = FiniteAlgebra("flat", ("0", "1"), {"1": 1}, {"succ": (1, 1, 1, 1)}, {"succ": 2})
    ds = derive_structure(a)
    assert any("antisymmetry" in text for text, _ in ds.flags)


def test_missing_bottom_leaves_tables_empty():
    a = make_algebra("no-bottom", ["a", "b", "1"], {"1": "1"},
                     succ=[["1", "b", "1"], ["a", "1", "1"], ["a", "b", "1"]])
    ds = derive_structure(a)
    assert ds.neg is None and ds.meet is None
    assert ("no least element", None) in ds.flags


def test_iterated_implication():
    c = chain(3)
    # 1/3 =>_k 0 climbs 0, 2/3, 1
    assert [iterate_implication(c, k, 1, 0) for k in range(4)] == [0, 2, 3, 3]
    with pytest.raises(ValueError):
        iterate_implication(c, -1, 0, 0)


def test_valued_check():
    assert valued_check(chain(3), 3) is None
    assert valued_check(chain(3), 2) is not None


def test_rendering():
    text = format_binary(["0", "1"], "succ", [[1, 1], [0, 1]])
    assert text.splitlines() == ["succ | 0 1", "-----+----", "0    | 1 1", "1    | 0 1"]
    col = format_unary(["0", "1"], [("neg", [1, 0])])
    assert col.splitlines()[2] == "0   | 1"


def test_order_facts_on_g_models():
    # every G model is a poset in which (x > y) > y is the join
    for m in models_upto("G", 4):
        ds = derive_structure(m)
        assert ds.order.is_poset, m.name
        assert not [t for t, _ in ds.flags if "join" in t or "partial order" in t], m.name
