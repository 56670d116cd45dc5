import itertools

import pytest
from hypothesis import given, settings, strategies as st

from modalg.algebra import (EvaluationError, FiniteAlgebra, SignatureError, check_homomorphism,
                            check_law, direct_product, eval_term, find_isomorphism, holds_at,
                            make_algebra)
from modalg.builtins import boolean2, boolean2_modal, chain, t4, t4_modal
from modalg.catalog import find_law
from modalg.terms import parse_term


def test_table_layout_last_argument_fastest():
    a = t4()
    assert a.op("succ", a.index("a"), a.index("b")) == a.index("b")
    assert a.tables["succ"][1 * 4 + 2] == a.index("b")


@pytest.mark.parametrize("kwargs, exc", [
    (dict(labels=()), ValueError),
    (dict(labels=("0", "0")), ValueError),
    (dict(labels=("0", "1"), tables={"f": (0, 1)}, arities={}), SignatureError),
    (dict(labels=("0", "1"), tables={"f": (0,)}, arities={"f": 1}), ValueError),
    (dict(labels=("0", "1"), tables={"f": (0, 2)}, arities={"f": 1}), ValueError),
    (dict(labels=("0", "1"), constants={"1": 5}), ValueError),
    (dict(labels=("0", "1"), constants={"f": 0}, tables={"f": (0, 1)}, arities={"f": 1}), SignatureError),
])
def test_validation(kwargs, exc):
    with pytest.raises(exc):
        FiniteAlgebra("bad", **kwargs)


def test_eval_errors():
    a = t4()
    with pytest.raises(EvaluationError):
        eval_term(a, parse_term("x > y"), {"x": 0})
    with pytest.raises(SignatureError, match="unknown operation"):
        eval_term(a, parse_term("x | y"), {"x": 0, "y": 0})
    with pytest.raises(SignatureError, match="arity"):
        eval_term(a, parse_term("succ(x)"), {"x": 0})
    with pytest.raises(SignatureError, match="constant"):
        eval_term(a, parse_term("0"), {})


def _first_failure(alg, law):
    # independent oracle: plain evaluation at every valuation
    names = law.variables()
    for env in itertools.product(range(alg.size), repeat=len(names)):
        val = dict(zip(names, env))
        if not all(_holds(alg, p, val) for p in law.premises):
            continue
        if not _holds(alg, law.conclusion, val):
            return val
    return None


def _holds(alg, eq, val):
    lhs, rhs = eval_term(alg, eq.lhs, val), eval_term(alg, eq.rhs, val)
    if eq.order_op:
        return alg.op(eq.order_op, lhs, rhs) == alg.constants["1"]
    return lhs == rhs


LAWS = ["G3", "G4", "G'28", "I3", "G5", "G'29"]


@pytest.mark.parametrize("law_id", LAWS)
@pytest.mark.parametrize("alg", [t4(), chain(3), chain(4), boolean2()], ids=lambda a: a.name)
def test_witness_is_lexicographically_first(alg, law_id):
    law = find_law(law_id)
    alg = alg.with_operation("imp", 2, alg.tables["succ"])
    w = check_law(alg, law)
    expected = _first_failure(alg, law)
    assert (w.valuation if w else None) == expected
    if w is not None:
        assert not holds_at(alg, law, w.valuation)


def test_witness_values_for_inequality():
    # s <= t reports s and t, not the succ value
    w = check_law(chain(3), find_law("G'28"))
    assert w.render(chain(3)) == "x=2/3 y=0 lhs=2/3 rhs=1"


def test_identity_homomorphism_and_isomorphism():
    a = t4_modal()
    assert check_homomorphism(a, a, [0, 1, 2, 3])
    assert not check_homomorphism(a, a, [0, 0, 0, 3])
    # swapping the two incomparable atoms is an automorphism
    assert check_homomorphism(a, a, [0, 2, 1, 3])
    assert find_isomorphism(a, a) == [0, 1, 2, 3]


def test_boolean_subalgebra_inclusion():
    assert check_homomorphism(boolean2_modal(), t4_modal(), [0, 3])


def test_product_projections():
    a, b = t4_modal(), boolean2_modal()
    p = direct_product(a, b)
    assert p.size == 8 and p.labels[0] == "(0,0)"
    first = [i // 2 for i in range(8)]
    second = [i % 2 for i in range(8)]
    assert check_homomorphism(p, a, first)
    assert check_homomorphism(p, b, second)


def test_signature_mismatch():
    with pytest.raises(SignatureError):
        check_homomorphism(t4(), t4_modal(), [0, 1, 2, 3])


def test_make_algebra_unary_and_binary():
    a = make_algebra("m", ["p", "q"], {"1": "q"}, f=["q", "p"], g=[["p", "q"], ["q", "q"]])
    assert a.arities == {"f": 1, "g": 2} and a.constants == {"1": 1}


@st.composite
def succ_algebras(draw):
    n = draw(st.integers(1, 4))
    table = draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    return FiniteAlgebra("r", tuple(str(i) for i in range(n)), {"1": n - 1}, {"succ": table}, {"succ": 2})


@settings(max_examples=60, deadline=None)
@given(succ_algebras(), st.randoms())
def test_relabelling_preserves_laws(alg, rnd):
    perm = list(range(alg.size))
    rnd.shuffle(perm)
    other = alg.relabel(perm)
    assert check_homomorphism(alg, other, perm)
    assert find_isomorphism(alg, other) is not None
    for law_id in ("G1", "G2", "G3", "G4", "G5"):
        law = find_law(law_id)
        assert (check_law(alg, law) is None) == (check_law(other, law) is None)
