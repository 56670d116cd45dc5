"""Order, lattice and modal structure induced by a base algebra."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import SignatureError, Witness, check_law, eval_term
from .catalog import M4_MACROS, least_element, valued_law
from .terms import App, Var, expand

IMPLICATIONS = ("supset", "arrow", "mapsto", "succ")
_MACRO_NAME = {"supset": "supset", "arrow": "arrow", "mapsto": "mapsto", "succ": "msucc"}


@dataclass
class DerivedOrder:
    size: int
    relation: list  # relation[i][j]: i <= j

    def leq(self, i, j):
        return self.relation[i][j]

    def violations(self):
        """Names of the partial-order axioms that fail, each with a sample."""
        n, r = self.size, self.relation
        out = []
        for i in range(n):
            if not r[i][i]:
                out.append(("reflexivity", (i,)))
                break
        for i in range(n):
            for j in range(n):
                if i != j and r[i][j] and r[j][i]:
                    out.append(("antisymmetry", (i, j)))
                    break
            else:
                continue
            break
        bad = _first_intransitive(r, n)
        if bad:
            out.append(("transitivity", bad))
        return out

    @property
    def is_poset(self):
        return not self.violations()

    def covers(self):
        """Hasse-diagram edges ``(i, j)`` with ``i < j`` and nothing between."""
        n, r = self.size, self.relation
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not r[i][j]:
                    continue
                if not any(k not in (i, j) and r[i][k] and r[k][j] for k in range(n)):
                    edges.append((i, j))
        return edges

    def is_total(self):
        n, r = self.size, self.relation
        return all(r[i][j] or r[j][i] for i in range(n) for j in range(n))


def _first_intransitive(r, n):
    for i in range(n):
        for j in range(n):
            if not r[i][j]:
                continue
            for k in range(n):
                if r[j][k] and not r[i][k]:
                    return (i, j, k)
    return None


def derive_order(algebra):
    """``x <= y`` iff ``x > y = 1``; lattice-only algebras use ``x | y = y``."""
    n = algebra.size
    if "succ" in algebra.tables:
        if "1" not in algebra.constants:
            raise SignatureError(f"{algebra.name} does not bind '1'")
        top, t = algebra.constants["1"], algebra.tables["succ"]
        rel = [[t[i * n + j] == top for j in range(n)] for i in range(n)]
    elif "join" in algebra.tables:
        t = algebra.tables["join"]
        rel = [[t[i * n + j] == j for j in range(n)] for i in range(n)]
    else:
        raise SignatureError(f"{algebra.name} binds neither 'succ' nor 'join'")
    return DerivedOrder(n, rel)


def derive_bounds(order):
    n, r = order.size, order.relation
    least = next((i for i in range(n) if all(r[i][j] for j in range(n))), None)
    greatest = next((i for i in range(n) if all(r[j][i] for j in range(n))), None)
    return least, greatest


@dataclass
class DerivedStructure:
    algebra: object
    order: DerivedOrder
    join: list | None = None
    least: int | None = None
    greatest: int | None = None
    meet: list | None = None
    neg: list | None = None
    nabla: list | None = None
    delta: list | None = None
    implications: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def table(self, name):
        if name in ("join", "meet", "neg", "nabla", "delta"):
            return getattr(self, name)
        return self.implications.get(name)


def _lub(order, i, j, v):
    n, r = order.size, order.relation
    if not (r[i][v] and r[j][v]):
        return False
    return all(r[v][u] for u in range(n) if r[i][u] and r[j][u])


def _glb(order, i, j, v):
    n, r = order.size, order.relation
    if not (r[v][i] and r[v][j]):
        return False
    return all(r[u][v] for u in range(n) if r[u][i] and r[u][j])


def semilattice_flags(order, join=None, meet=None):
    """Pairs at which ``join``/``meet`` fail to be the lub/glb."""
    n = order.size
    flags = []
    if join is not None:
        bad = [(i, j) for i in range(n) for j in range(n) if not _lub(order, i, j, join[i][j])]
        if bad:
            flags.append(("join is not the least upper bound", bad[0]))
    if meet is not None:
        bad = [(i, j) for i in range(n) for j in range(n) if not _glb(order, i, j, meet[i][j])]
        if bad:
            flags.append(("meet is not the greatest lower bound", bad[0]))
    return flags


def derive_structure(algebra):
    """Compute every table the signature and bounds permit.

    Works on non-G algebras too: violations are recorded in ``flags``.
    Tables needing a least element are left as None when there is none.
    """
    n = algebra.size
    rng = range(n)
    if "succ" in algebra.tables:
        order = derive_order(algebra)
        s = algebra.tables["succ"]
        join = [[s[s[i * n + j] * n + j] for j in rng] for i in rng]
        ds = DerivedStructure(algebra, order, join=join)
        ds.flags += [(f"not a partial order: {name}", at) for name, at in order.violations()]
        ds.least, ds.greatest = derive_bounds(order)
        bottom = algebra.constants.get("0", ds.least)
        if bottom is not None:
            neg = [s[i * n + bottom] for i in rng]
            ds.neg = neg
            # meet per the negated join of negations
            ds.meet = [[neg[join[neg[i]][neg[j]]] for j in rng] for i in rng]
            ds.nabla = [s[neg[i] * n + i] for i in rng]
            ds.delta = [neg[ds.nabla[neg[i]]] for i in rng]
        else:
            ds.flags.append(("no least element", None))
        ds.flags += semilattice_flags(order, ds.join, ds.meet)
        return ds
    needed = ("join", "meet", "neg", "nabla")
    if all(op in algebra.tables for op in needed) and "1" in algebra.constants:
        order = derive_order(algebra)
        ds = DerivedStructure(algebra, order, join=algebra.binary("join"),
                              meet=algebra.binary("meet"), neg=list(algebra.tables["neg"]),
                              nabla=list(algebra.tables["nabla"]))
        ds.least, ds.greatest = derive_bounds(order)
        ds.delta = [ds.neg[ds.nabla[ds.neg[i]]] for i in rng]
        for which in IMPLICATIONS:
            ds.implications[which] = implication_table(algebra, which)
        ds.flags += [(f"not a partial order: {name}", at) for name, at in order.violations()]
        ds.flags += semilattice_flags(order, ds.join, ds.meet)
        return ds
    raise SignatureError(f"{algebra.name} binds neither succ with 1 nor the modal signature")


def _implication_term(which):
    if which not in _MACRO_NAME:
        raise ValueError(f"unknown implication {which!r}; choose from {', '.join(IMPLICATIONS)}")
    return expand(App(_MACRO_NAME[which], (Var("x"), Var("y"))), M4_MACROS)


def implication(algebra, which, x, y):
    """One of the four modal implications, evaluated by its definition."""
    for op in ("join", "meet", "neg", "nabla"):
        if op not in algebra.tables:
            raise SignatureError(f"{algebra.name} does not bind {op!r}")
    return eval_term(algebra, _implication_term(which), {"x": x, "y": y})


def implication_table(algebra, which):
    n = algebra.size
    term = _implication_term(which)
    return [[eval_term(algebra, term, {"x": i, "y": j}) for j in range(n)] for i in range(n)]


def iterate_implication(algebra, i, x, y):
    """``x =>_0 y = y`` and ``x =>_{k+1} y = x > (x =>_k y)``."""
    if i < 0:
        raise ValueError("the iteration count must be non-negative")
    n, s = algebra.size, algebra.tables["succ"]
    v = y
    for _ in range(i):
        v = s[x * n + v]
    return v


def valued_check(algebra, n) -> Witness | None:
    """Check ``(x =>_n y) | x = 1``; None when it holds."""
    return check_law(algebra, valued_law(n))


# -- rendering ---------------------------------------------------------------

def format_binary(labels, name, rows):
    first = max(len(name), *(len(l) for l in labels))
    cell = max(len(l) for l in labels)
    head = f"{name:<{first}} | " + " ".join(f"{l:<{cell}}" for l in labels)
    lines = [head.rstrip(), "-" * (first + 1) + "+" + "-" * (len(head) - first - 2)]
    for lab, row in zip(labels, rows):
        lines.append((f"{lab:<{first}} | " + " ".join(f"{labels[v]:<{cell}}" for v in row)).rstrip())
    return "\n".join(lines)


def format_unary(labels, columns):
    """``columns`` is a list of (name, values); one row per element."""
    names = ["x", *(c for c, _ in columns)]
    width = max(*(len(s) for s in names), *(len(l) for l in labels))
    head = " | ".join(f"{s:<{width}}" for s in names)
    lines = [head.rstrip(), "-" * len(head)]
    for i, lab in enumerate(labels):
        cells = [lab, *(labels[vals[i]] for _, vals in columns)]
        lines.append(" | ".join(f"{c:<{width}}" for c in cells).rstrip())
    return "\n".join(lines)


def format_order(labels, order):
    lines = [f"{labels[i]} < {labels[j]}" for i, j in order.covers()]
    if order.is_poset and order.is_total() and order.size > 1:
        ranked = sorted(range(order.size), key=lambda i: sum(order.relation[j][i] for j in range(order.size)))
        lines.append("total order: " + " < ".join(labels[i] for i in ranked))
    if not lines:
        lines.append("(trivial order)")
    return "\n".join(lines)
