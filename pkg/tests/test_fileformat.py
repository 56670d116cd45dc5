import pytest
from hypothesis import given, settings, strategies as st

from conftest import models
from modalg.algebra import FiniteAlgebra, direct_product
from modalg.builtins import boolean2, chain, example_2_7, t4, t4_modal
from modalg.fileformat import (AlgebraFileError, format_algebra, format_algebras, parse_algebra,
                               parse_algebras, read_algebras, write_algebras)

SAMPLE = """\
# two-element implication algebra
algebra B2
size 2
elements 0 1
const 1 = 1   # top
op succ/2 = 1 1
            0 1
op neg/1 = 1 0
end
"""


def test_parse_sample():
    a = parse_algebra(SAMPLE)
    assert a == boolean2().replace(name="B2")


@pytest.mark.parametrize("alg", [t4(), t4_modal(), chain(3), example_2_7(),
                                 direct_product(boolean2(), boolean2())], ids=lambda a: a.name)
def test_round_trip(alg):
    assert parse_algebra(format_algebra(alg)) == alg


def test_multiple_algebras(tmp_path):
    algs = list(models("G", 4))
    path = tmp_path / "g4.alg"
    write_algebras(path, algs)
    assert read_algebras(path) == algs
    assert format_algebras(read_algebras(path)) == path.read_text()


@pytest.mark.parametrize("text, line, message", [
    ("size 2\n", 1, "outside an algebra"),
    ("algebra x\nsize 2\nelements 0 1\nop f/1 = 0\nend\n", 4, "expected 2 entries"),
    ("algebra x\nsize 2\nelements 0 1\nconst 1 = 1\nconst 1 = 0\nend\n", 5, "duplicate definition"),
    ("algebra x\nsize 2\nelements 0 1\nop f/1 = 0 1\nop f/1 = 1 0\nend\n", 5, "duplicate definition"),
    ("algebra x\nsize 2\nelements 0 1\nop f/1 = 0 2\nend\n", 4, "unknown element"),
    ("algebra x\nsize 2\nelements 0 0\nend\n", 3, "distinct"),
    ("algebra x\nsize 2\nelements 0\nend\n", 3, "expected 2 elements"),
    ("algebra x\nsize two\nend\n", 2, "size"),
    ("algebra x\nsize 2\nelements 0 1\nop f = 0 1\nend\n", 4, "op <sym>/<arity>"),
    ("algebra x\nsize 2\nelements 0 1\nfrob\nend\n", 4, "unknown directive"),
    ("algebra x\nsize 2\nelements 0 1\n", 3, "missing 'end'"),
    ("algebra x\nsize 1\nelements 0\nend\nalgebra x\nsize 1\nelements 0\nend\n", 5, "duplicate algebra"),
])
def test_errors_carry_line_numbers(text, line, message):
    with pytest.raises(AlgebraFileError, match=message) as info:
        parse_algebras(text)
    assert info.value.lineno == line
    assert str(info.value).startswith(f"line {line}:")


@pytest.mark.parametrize("label", ["end", "a b", "x#", ""])
def test_unwritable_labels(label):
    alg = FiniteAlgebra("bad", ("ok", label), {"1": 0})
    with pytest.raises(ValueError):
        format_algebra(alg)


def test_single_algebra_expected():
    with pytest.raises(AlgebraFileError):
        parse_algebra("")


@st.composite
def algebras(draw):
    n = draw(st.integers(1, 3))
    labels = draw(st.lists(st.text("abcxyz019/", min_size=1, max_size=3), min_size=n, max_size=n,
                           unique=True))
    ops = draw(st.dictionaries(st.sampled_from(["f", "g", "succ", "neg"]), st.integers(1, 3), max_size=3))
    tables = {op: draw(st.lists(st.integers(0, n - 1), min_size=n ** ar, max_size=n ** ar))
              for op, ar in ops.items()}
    consts = draw(st.dictionaries(st.sampled_from(["0", "1", "e"]), st.integers(0, n - 1), max_size=2))
    return FiniteAlgebra("h", tuple(labels), consts, tables, dict(ops))


@settings(max_examples=80, deadline=None)
@given(algebras())
def test_round_trip_property(alg):
    text = format_algebra(alg)
    assert parse_algebra(text) == alg
    assert format_algebra(parse_algebra(text)) == text
