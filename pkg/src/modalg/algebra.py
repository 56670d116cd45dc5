"""Finite algebras given by operation tables, and law checking over them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .terms import App, Const, Law, Var


class SignatureError(ValueError):
    """A symbol is missing, unknown, or used with the wrong arity."""


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    constants: tuple = ()
    operations: tuple = ()  # (name, arity) pairs

    def __post_init__(self):
        names = list(self.constants) + [name for name, _ in self.operations]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate symbol in signature {names}")
        for name, arity in self.operations:
            if arity < 1:
                raise SignatureError(f"operation {name!r} has arity {arity}; use a constant")

    def arity(self, op):
        return dict(self.operations).get(op)


@dataclass(frozen=True, eq=True)
class FiniteAlgebra:
    """A finite universe ``0..n-1`` with named constants and flat tables.

    Tables are row-major with the last argument varying fastest, so the
    binary entry ``x op y`` lives at ``x * n + y``.
    """

    name: str
    labels: tuple
    constants: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    arities: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "tables", {k: tuple(v) for k, v in self.tables.items()})
        n = len(self.labels)
        if n < 1:
            raise ValueError("an algebra needs at least one element")
        if len(set(self.labels)) != n:
            raise ValueError(f"duplicate element labels in {self.labels}")
        if set(self.tables) != set(self.arities):
            raise SignatureError("every table needs exactly one declared arity")
        if set(self.tables) & set(self.constants):
            raise SignatureError("a symbol is bound both as constant and as operation")
        Signature(tuple(self.constants), tuple(self.arities.items()))
        for name, idx in self.constants.items():
            if not 0 <= idx < n:
                raise ValueError(f"constant {name!r} = {idx} outside [0, {n})")
        for op, table in self.tables.items():
            arity = self.arities[op]
            if arity < 1:
                raise SignatureError(f"operation {op!r} has arity {arity}")
            if len(table) != n ** arity:
                raise ValueError(f"table {op!r} has {len(table)} entries, expected {n ** arity}")
            if any(not 0 <= v < n for v in table):
                raise ValueError(f"table {op!r} has an entry outside [0, {n})")

    __hash__ = None

    @property
    def size(self):
        return len(self.labels)

    @property
    def signature(self):
        return Signature(tuple(self.constants), tuple(self.arities.items()))

    def op(self, name, *args):
        n = self.size
        idx = 0
        for a in args:
            idx = idx * n + a
        return self.tables[name][idx]

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r} in {self.name}") from None

    def has(self, symbol):
        return symbol in self.tables or symbol in self.constants

    def binary(self, name):
        """The table of a binary operation as a list of rows."""
        n = self.size
        t = self.tables[name]
        return [list(t[i * n:(i + 1) * n]) for i in range(n)]

    def replace(self, **changes):
        data = dict(name=self.name, labels=self.labels, constants=dict(self.constants),
                    tables=dict(self.tables), arities=dict(self.arities))
        data.update(changes)
        return FiniteAlgebra(**data)

    def with_operation(self, name, arity, table):
        tables = dict(self.tables)
        arities = dict(self.arities)
        tables[name] = tuple(table)
        arities[name] = arity
        return self.replace(tables=tables, arities=arities)

    def with_constant(self, name, index):
        consts = dict(self.constants)
        consts[name] = index
        return self.replace(constants=consts)

    def reduct(self, symbols):
        """Keep only the listed symbols, in the algebra's own order."""
        keep = set(symbols)
        return self.replace(
            constants={k: v for k, v in self.constants.items() if k in keep},
            tables={k: v for k, v in self.tables.items() if k in keep},
            arities={k: v for k, v in self.arities.items() if k in keep},
        )

    def relabel(self, perm, name=None):
        """Transport the structure along the bijection ``i -> perm[i]``."""
        n = self.size
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        labels = [None] * n
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        tables = {}
        for op, table in self.tables.items():
            arity = self.arities[op]
            new = []
            for args in itertools.product(range(n), repeat=arity):
                idx = 0
                for a in args:
                    idx = idx * n + inv[a]
                new.append(perm[table[idx]])
            tables[op] = tuple(new)
        return self.replace(name=name or self.name, labels=tuple(labels),
                            constants={k: perm[v] for k, v in self.constants.items()},
                            tables=tables)

    def flat(self):
        """All tables concatenated in operation order."""
        out = []
        for op in self.arities:
            out.extend(self.tables[op])
        return tuple(out)


def make_algebra(name, labels, constants=None, **ops):
    """Build an algebra from labelled tables.

    Binary operations may be given as a list of rows, unary ones as a
    list; entries are labels.
    """
    labels = [str(x) for x in labels]
    index = {lab: i for i, lab in enumerate(labels)}
    tables, arities = {}, {}
    for op, table in ops.items():
        if table and isinstance(table[0], (list, tuple)):
            arities[op] = 2
            flat = [v for row in table for v in row]
        else:
            arities[op] = 1
            flat = list(table)
        tables[op] = tuple(index[str(v)] for v in flat)
    consts = {k: index[str(v)] for k, v in (constants or {}).items()}
    return FiniteAlgebra(name, tuple(labels), consts, tables, arities)


# -- evaluation --------------------------------------------------------------

def eval_term(algebra, term, valuation):
    """Evaluate ``term`` bottom-up through the operation tables."""
    if isinstance(term, Var):
        try:
            return valuation[term.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {term.name!r}") from None
    if isinstance(term, Const):
        try:
            return algebra.constants[term.name]
        except KeyError:
            raise SignatureError(f"unknown constant {term.name!r} in {algebra.name}") from None
    if isinstance(term, App):
        table = algebra.tables.get(term.op)
        if table is None:
            raise SignatureError(f"unknown operation {term.op!r} at {term} in {algebra.name}")
        if algebra.arities[term.op] != len(term.args):
            raise SignatureError(
                f"arity mismatch at {term}: {term.op!r} takes {algebra.arities[term.op]} arguments")
        n = algebra.size
        idx = 0
        for a in term.args:
            idx = idx * n + eval_term(algebra, a, valuation)
        return table[idx]
    raise TypeError(f"not a term: {term!r}")


def compile_term(algebra, term, var_pos):
    """Compile ``term`` into a function of a tuple of element indices.

    ``var_pos`` maps variable names to positions in that tuple.  Symbols
    are resolved once, so errors surface here rather than per call.
    """
    if isinstance(term, Var):
        if term.name not in var_pos:
            raise EvaluationError(f"unbound variable {term.name!r}")
        i = var_pos[term.name]
        return lambda env: env[i]
    if isinstance(term, Const):
        if term.name not in algebra.constants:
            raise SignatureError(f"unknown constant {term.name!r} in {algebra.name}")
        c = algebra.constants[term.name]
        return lambda env: c
    if isinstance(term, App):
        if term.op not in algebra.tables:
            raise SignatureError(f"unknown operation {term.op!r} at {term} in {algebra.name}")
        if algebra.arities[term.op] != len(term.args):
            raise SignatureError(
                f"arity mismatch at {term}: {term.op!r} takes {algebra.arities[term.op]} arguments")
        t = algebra.tables[term.op]
        n = algebra.size
        subs = [compile_term(algebra, a, var_pos) for a in term.args]
        if len(subs) == 1:
            (f,) = subs
            return lambda env: t[f(env)]
        if len(subs) == 2:
            f, g = subs
            return lambda env: t[f(env) * n + g(env)]

        def apply(env):
            idx = 0
            for s in subs:
                idx = idx * n + s(env)
            return t[idx]
        return apply
    raise TypeError(f"not a term: {term!r}")


@dataclass(frozen=True)
class Witness:
    """A valuation at which a law fails.

    ``lhs_value``/``rhs_value`` are the two sides of the law's conclusion
    (for an inequality ``s <= t``, the values of ``s`` and ``t``).
    """

    law_id: str
    valuation: dict
    lhs_value: int
    rhs_value: int

    def render(self, algebra):
        parts = [f"{v}={algebra.labels[i]}" for v, i in sorted(self.valuation.items())]
        return " ".join([*parts, f"lhs={algebra.labels[self.lhs_value]}",
                         f"rhs={algebra.labels[self.rhs_value]}"])


class _CompiledEquation:
    def __init__(self, algebra, eq, var_pos):
        self.lhs = compile_term(algebra, eq.lhs, var_pos)
        self.rhs = compile_term(algebra, eq.rhs, var_pos)
        self.order = None
        if eq.order_op is not None:
            if eq.order_op not in algebra.tables:
                raise SignatureError(f"unknown operation {eq.order_op!r} in {algebra.name}")
            if "1" not in algebra.constants:
                raise SignatureError(f"inequality needs the constant '1' in {algebra.name}")
            self.order = (algebra.tables[eq.order_op], algebra.size, algebra.constants["1"])

    def values(self, env):
        return self.lhs(env), self.rhs(env)

    def holds(self, env):
        a, b = self.lhs(env), self.rhs(env)
        if self.order is None:
            return a == b
        t, n, top = self.order
        return t[a * n + b] == top


def compile_law(algebra, law):
    """Return ``(names, test)`` where ``test(env)`` is True when the law
    holds at the valuation ``env`` (a tuple ordered like ``names``)."""
    names = law.variables()
    pos = {v: i for i, v in enumerate(names)}
    concl = _CompiledEquation(algebra, law.conclusion, pos)
    prems = [_CompiledEquation(algebra, p, pos) for p in law.premises]

    if not prems:
        return names, concl.holds, concl

    def test(env):
        for p in prems:
            if not p.holds(env):
                return True
        return concl.holds(env)

    return names, test, concl


def check_law(algebra, law):
    """Exhaustively check ``law``; return None if it holds, else the
    lexicographically first failing valuation (variables alphabetical)."""
    names, test, concl = compile_law(algebra, law)
    for env in itertools.product(range(algebra.size), repeat=len(names)):
        if not test(env):
            lhs, rhs = concl.values(env)
            return Witness(law.id, dict(zip(names, env)), lhs, rhs)
    return None


def holds_at(algebra, law, valuation):
    """Whether ``law`` holds at one valuation (premises included)."""
    names, test, _ = compile_law(algebra, law)
    return test(tuple(valuation[v] for v in names))


# -- homomorphisms -----------------------------------------------------------

def _check_shared(src, dst):
    if src.arities != dst.arities or set(src.constants) != set(dst.constants):
        raise SignatureError(f"signature mismatch between {src.name} and {dst.name}")


def check_homomorphism(src, dst, mapping):
    _check_shared(src, dst)
    if len(mapping) != src.size or any(not 0 <= m < dst.size for m in mapping):
        raise ValueError("map must send every element of the source into the target")
    for c, v in src.constants.items():
        if mapping[v] != dst.constants[c]:
            return False
    for op, arity in src.arities.items():
        if not _commutes(src, dst, op, arity, mapping):
            return False
    return True


def _commutes(src, dst, op, arity, mapping):
    n, m = src.size, dst.size
    st, dt = src.tables[op], dst.tables[op]
    for i, args in enumerate(itertools.product(range(n), repeat=arity)):
        idx = 0
        for a in args:
            idx = idx * m + mapping[a]
        if dt[idx] != mapping[st[i]]:
            return False
    return True


def find_isomorphism(a, b):
    """First constant-preserving bijection ``a -> b`` (lexicographic in
    permutation order) that is a homomorphism in both directions."""
    _check_shared(a, b)
    if a.size != b.size:
        return None
    n = a.size
    for perm in itertools.permutations(range(n)):
        if not check_homomorphism(a, b, perm):
            continue
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        if check_homomorphism(b, a, inv):
            return list(perm)
    return None


def direct_product(*algebras, name=None):
    """Componentwise product; element ``(i1, ..., ik)`` is indexed
    row-major with the last factor fastest."""
    first = algebras[0]
    for other in algebras[1:]:
        _check_shared(first, other)
    sizes = [alg.size for alg in algebras]
    elems = list(itertools.product(*[range(s) for s in sizes]))
    index = {e: i for i, e in enumerate(elems)}
    labels = tuple("(" + ",".join(alg.labels[c] for alg, c in zip(algebras, e)) + ")" for e in elems)
    consts = {c: index[tuple(alg.constants[c] for alg in algebras)] for c in first.constants}
    tables = {}
    for op, arity in first.arities.items():
        table = []
        for args in itertools.product(elems, repeat=arity):
            table.append(index[tuple(
                alg.op(op, *(arg[k] for arg in args)) for k, alg in enumerate(algebras))])
        tables[op] = tuple(table)
    return FiniteAlgebra(name or "x".join(alg.name for alg in algebras), labels, consts,
                         tables, dict(first.arities))
