"""Named example algebras."""

from __future__ import annotations

from fractions import Fraction

from .algebra import FiniteAlgebra, make_algebra

T4_ELEMENTS = ["0", "a", "b", "1"]

T4_SUCC = [
    ["1", "1", "1", "1"],
    ["a", "1", "b", "1"],
    ["b", "a", "1", "1"],
    ["0", "a", "b", "1"],
]
T4_NEG = ["1", "a", "b", "0"]
T4_NABLA = ["0", "1", "1", "1"]
# diamond 0 < a, b < 1 with a, b incomparable
T4_JOIN = [
    ["0", "a", "b", "1"],
    ["a", "a", "1", "1"],
    ["b", "1", "b", "1"],
    ["1", "1", "1", "1"],
]
T4_MEET = [
    ["0", "0", "0", "0"],
    ["0", "a", "0", "a"],
    ["0", "0", "b", "b"],
    ["0", "a", "b", "1"],
]

# printed derived tables of the modal T4, used as golden data
T4_DELTA = ["0", "0", "0", "1"]
T4_SUPSET = [
    ["1", "1", "1", "1"],
    ["a", "a", "1", "1"],
    ["b", "1", "b", "1"],
    ["0", "a", "b", "1"],
]
T4_ARROW = [
    ["1", "1", "1", "1"],
    ["1", "1", "1", "1"],
    ["1", "1", "1", "1"],
    ["0", "a", "b", "1"],
]
T4_MAPSTO = [
    ["1", "1", "1", "1"],
    ["a", "1", "1", "1"],
    ["b", "1", "1", "1"],
    ["0", "a", "b", "1"],
]

EXAMPLE_2_7_ELEMENTS = ["0", "a", "b", "c", "1"]
EXAMPLE_2_7_SUCC = [
    ["1", "1", "1", "1", "1"],
    ["a", "1", "b", "c", "1"],
    ["b", "a", "1", "c", "1"],
    ["c", "a", "b", "1", "1"],
    ["0", "a", "b", "c", "1"],
]


def t4():
    """T4 with succ, neg and 1."""
    return make_algebra("T4", T4_ELEMENTS, {"1": "1"}, succ=T4_SUCC, neg=T4_NEG)


def t4_modal():
    """T4 as a 4-valued modal algebra (join, meet, neg, nabla, 1)."""
    return make_algebra("T4_modal", T4_ELEMENTS, {"1": "1"},
                        join=T4_JOIN, meet=T4_MEET, neg=T4_NEG, nabla=T4_NABLA)


def chain_label(i, n):
    f = Fraction(i, n)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def chain(n):
    """The Lukasiewicz chain with n + 1 elements 0, 1/n, ..., 1.

    Elements are the indices 0..n and ``i > j = min(n, n - i + j)``; the
    negation is ``n - i``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"chain parameter must be a positive integer, got {n!r}")
    labels = tuple(chain_label(i, n) for i in range(n + 1))
    m = n + 1
    succ = tuple(min(n, n - i + j) for i in range(m) for j in range(m))
    neg = tuple(n - i for i in range(m))
    return FiniteAlgebra(f"C{m}", labels, {"1": n}, {"succ": succ, "neg": neg},
                         {"succ": 2, "neg": 1})


def example_2_7():
    """The five-element bounded G-algebra whose order has three atoms."""
    return make_algebra("example_2_7", EXAMPLE_2_7_ELEMENTS, {"1": "1"}, succ=EXAMPLE_2_7_SUCC)


def boolean2():
    return make_algebra("boolean2", ["0", "1"], {"1": "1"},
                        succ=[["1", "1"], ["0", "1"]], neg=["1", "0"])


def boolean2_modal():
    return make_algebra("boolean2_modal", ["0", "1"], {"1": "1"},
                        join=[["0", "1"], ["1", "1"]], meet=[["0", "0"], ["0", "1"]],
                        neg=["1", "0"], nabla=["0", "1"])


def trivial(symbols=("succ",)):
    """The one-element algebra for the given operation names (binary,
    except neg/nabla)."""
    tables, arities = {}, {}
    for s in symbols:
        arities[s] = 1 if s in ("neg", "nabla", "delta") else 2
        tables[s] = (0,)
    return FiniteAlgebra("trivial", ("0",), {"1": 0}, tables, arities)


BUILTINS = {
    "T4": t4,
    "T4_modal": t4_modal,
    "chain": chain,
    "example_2_7": example_2_7,
    "boolean2": boolean2,
    "boolean2_modal": boolean2_modal,
}


def make_builtin(which, param=None):
    try:
        factory = BUILTINS[which]
    except KeyError:
        raise ValueError(f"unknown builtin {which!r}; choose from {', '.join(BUILTINS)}") from None
    if which == "chain":
        if param is None:
            raise ValueError("builtin 'chain' needs a parameter n >= 1")
        return factory(param)
    if param is not None:
        raise ValueError(f"builtin {which!r} takes no parameter")
    return factory()
