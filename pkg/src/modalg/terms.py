"""Term syntax for identities and quasi-identities.

Terms are written in a small ASCII notation::

    x > y          succ    (the binary implication of G-algebras)
    x * y          star    (BCK difference)
    x -> y         imp     (I/W implication)
    x | y, x & y   join, meet
    ~x             neg
    nabla(x)       any operation in prefix form
    0, 1           constants

A binary operator takes exactly two operands; nested binary expressions
need explicit parentheses, so ``x > y > z`` is rejected.  Laws add
``s = t``, ``s <= t`` and ``p1, p2 => c`` for quasi-identities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    op: str
    args: tuple

    def __str__(self):
        sym = _OP_SYMBOL.get(self.op)
        if sym is not None and len(self.args) == 2:
            return f"({self.args[0]} {sym} {self.args[1]})"
        if self.op == "neg" and len(self.args) == 1:
            return f"~{self.args[0]}"
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


Term = Union[Var, Const, App]

INFIX = {"->": "imp", ">": "succ", "*": "star", "|": "join", "&": "meet"}
_OP_SYMBOL = {v: k for k, v in INFIX.items()}


class TermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Equation:
    """``lhs = rhs``, or ``lhs <= rhs`` when ``order_op`` is set.

    An inequality holds when ``order_op(lhs, rhs)`` evaluates to the
    constant ``1``.
    """

    lhs: Term
    rhs: Term
    order_op: str | None = None

    def __str__(self):
        rel = "<=" if self.order_op else "="
        return f"{_strip(self.lhs)} {rel} {_strip(self.rhs)}"


@dataclass(frozen=True)
class Law:
    id: str
    conclusion: Equation
    premises: tuple = ()
    source: str = ""
    note: str = ""

    @property
    def is_quasi(self):
        return bool(self.premises)

    def variables(self):
        names = set(variables(self.conclusion.lhs)) | set(variables(self.conclusion.rhs))
        for p in self.premises:
            names |= set(variables(p.lhs)) | set(variables(p.rhs))
        return sorted(names)

    def equations(self):
        return (*self.premises, self.conclusion)

    def __str__(self):
        if self.premises:
            return ", ".join(str(p) for p in self.premises) + " => " + str(self.conclusion)
        return str(self.conclusion)


def _strip(term):
    s = str(term)
    if isinstance(term, App) and s.startswith("(") and s.endswith(")"):
        return s[1:-1]
    return s


def variables(term):
    """Variable names of ``term`` in first-occurrence order."""
    out = []

    def walk(t):
        if isinstance(t, Var):
            if t.name not in out:
                out.append(t.name)
        elif isinstance(t, App):
            for a in t.args:
                walk(a)

    walk(term)
    return out


def symbols(term):
    """(operations with arities, constants) occurring in ``term``."""
    ops, consts = {}, set()

    def walk(t):
        if isinstance(t, Const):
            consts.add(t.name)
        elif isinstance(t, App):
            ops[t.op] = len(t.args)
            for a in t.args:
                walk(a)

    walk(term)
    return ops, consts


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(=>|<=|->|[A-Za-z_][A-Za-z0-9_']*|\d+|[()~,=>*|&])")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError(f"unexpected end of input in {self.text!r}")
        if expected is not None and tok != expected:
            raise TermSyntaxError(f"expected {expected!r}, got {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def term(self):
        left = self.unary()
        if self.peek() in INFIX:
            op = INFIX[self.take()]
            right = self.unary()
            if self.peek() in INFIX:
                raise TermSyntaxError(f"ambiguous chain of binary operators in {self.text!r}; add parentheses")
            return App(op, (left, right))
        return left

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return App("neg", (self.unary(),))
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if tok is None:
            raise TermSyntaxError(f"unexpected end of input in {self.text!r}")
        if tok.isdigit():
            self.take()
            return Const(tok)
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            self.take()
            if self.peek() == "(":
                self.take()
                args = [self.term()]
                while self.peek() == ",":
                    self.take()
                    args.append(self.term())
                self.take(")")
                return App(tok, tuple(args))
            return Var(tok)
        raise TermSyntaxError(f"unexpected token {tok!r} in {self.text!r}")

    def equation(self, order_op):
        lhs = self.term()
        rel = self.take()
        if rel == "=":
            return Equation(lhs, self.term())
        if rel == "<=":
            if order_op is None:
                raise TermSyntaxError("'<=' needs an order operation for this law family")
            return Equation(lhs, self.term(), order_op)
        raise TermSyntaxError(f"expected '=' or '<=', got {rel!r} in {self.text!r}")

    def done(self):
        if self.peek() is not None:
            raise TermSyntaxError(f"trailing input {self.peek()!r} in {self.text!r}")


def parse_term(text, macros=None):
    p = _Parser(text)
    t = p.term()
    p.done()
    return expand(t, macros) if macros else t


def parse_law(law_id, text, macros=None, order_op="succ", source="", note=""):
    """Parse ``"s = t"``, ``"s <= t"`` or ``"p1, p2 => c"`` into a Law."""
    p = _Parser(text)
    eqs = [p.equation(order_op)]
    premises = []
    while p.peek() == ",":
        p.take()
        eqs.append(p.equation(order_op))
    if p.peek() == "=>":
        p.take()
        premises = eqs
        eqs = [p.equation(order_op)]
    if len(eqs) != 1:
        raise TermSyntaxError(f"several equations without '=>' in {text!r}")
    p.done()
    law = Law(law_id, eqs[0], tuple(premises), source or text, note)
    return expand_law(law, macros) if macros else law


# -- macro expansion ---------------------------------------------------------

Macros = Mapping[str, Callable[..., Term]]


def expand(term, macros):
    """Rewrite every App whose op is a macro name, innermost first."""
    if not isinstance(term, App):
        return term
    args = tuple(expand(a, macros) for a in term.args)
    fn = macros.get(term.op)
    if fn is not None:
        return expand(fn(*args), macros)
    return App(term.op, args)


def expand_law(law, macros):
    def ex(eq):
        return Equation(expand(eq.lhs, macros), expand(eq.rhs, macros), eq.order_op)

    return Law(law.id, ex(law.conclusion), tuple(ex(p) for p in law.premises), law.source, law.note)


def substitute(term, mapping):
    """Replace variables by terms."""
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, App):
        return App(term.op, tuple(substitute(a, mapping) for a in term.args))
    return term
