"""Isomorph-free enumeration of finite models and conjecture search.

The pruned enumerator fills operation tables cell by cell.  Every
ground instance of every identity is compiled to a small function that
evaluates both sides over the partial tables; an instance whose sides
disagree prunes the branch, and one whose only unknown is the root cell
of one side forces that cell.  Quasi-identities are checked on complete
tables.  A complete table is kept only when it is the lexicographically
least member of its orbit under permutations fixing the pinned
constants.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import FiniteAlgebra, check_law
from .catalog import C_MACROS, G_MACROS, M4_MACROS, check_membership, find_law, get_system
from .terms import App, Const, Var, parse_law

UNKNOWN, SATISFIED, VIOLATED = -1, -2, -3
DEFAULT_BUDGET = 10 ** 9


class BudgetExceeded(RuntimeError):
    """The node budget ran out before the search space was exhausted."""


@dataclass(frozen=True)
class EnumerationTask:
    system: str
    size: int
    parameter: int | None = None
    pin_constants: bool = True
    canonical_only: bool = True
    node_budget: int = DEFAULT_BUDGET
    use_implied: bool = True

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("model size must be at least 1")
        get_system(self.system, self.parameter)


@dataclass
class EnumerationResult:
    task: EnumerationTask
    models: list
    stats: dict = field(default_factory=dict)

    @property
    def count(self):
        return len(self.models)


# -- permutation utilities ---------------------------------------------------

def pinned_positions(system, n):
    """Where constants sit when pinned: 1 last, 0 first."""
    pins = {}
    for c in system.constants:
        if c == "1":
            pins[c] = n - 1
        elif c == "0":
            pins[c] = 0
        else:
            raise ValueError(f"no pinning rule for constant {c!r}")
    return pins


def _layout(system, n):
    offsets, off = [], 0
    for name, arity in system.operations:
        offsets.append((name, arity, off))
        off += n ** arity
    return offsets, off


def permuted_flat(flat, layout, n, perm, inv):
    """The flat tables transported along ``i -> perm[i]``."""
    out = []
    for _name, arity, off in layout:
        for args in itertools.product(range(n), repeat=arity):
            idx = 0
            for a in args:
                idx = idx * n + inv[a]
            out.append(perm[flat[off + idx]])
    return tuple(out)


def _perms_fixing(n, fixed):
    free = [i for i in range(n) if i not in fixed]
    for p in itertools.permutations(free):
        perm = list(range(n))
        for src, dst in zip(free, p):
            perm[src] = dst
        yield perm


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def canonical_key(algebra, system, pinned=True):
    """Least (constants, tables) key over the admissible relabelings."""
    n = algebra.size
    layout, _ = _layout(system, n)
    flat = tuple(v for name, _ in system.operations for v in algebra.tables[name])
    consts = [algebra.constants[c] for c in system.constants]
    fixed = set(consts) if pinned else set()
    best = None
    for perm in _perms_fixing(n, fixed):
        key = (tuple(perm[c] for c in consts), permuted_flat(flat, layout, n, perm, _inverse(perm)))
        if best is None or key < best:
            best = key
    return best


def is_canonical(algebra, system, pinned=True):
    n = algebra.size
    flat = tuple(v for name, _ in system.operations for v in algebra.tables[name])
    consts = tuple(algebra.constants[c] for c in system.constants)
    return canonical_key(algebra, system, pinned) == (consts, flat)


# -- compiled ground instances -----------------------------------------------

class _Codegen:
    def __init__(self, n, offsets, consts, var_pos):
        self.n = n
        self.offsets = offsets
        self.consts = consts
        self.var_pos = var_pos
        self.lines = []
        self.k = 0

    def fresh(self):
        self.k += 1
        return f"t{self.k}"

    def index_expr(self, op, args):
        off, arity = self.offsets[op]
        if arity != len(args):
            raise ValueError(f"arity mismatch for {op!r}")
        expr = args[0]
        for a in args[1:]:
            expr = f"({expr})*{self.n}+{a}"
        return f"{off}+{expr}" if off else expr

    def inner(self, term):
        """Emit code; return an expression that is >= 0 or -1 (unknown)."""
        if isinstance(term, Var):
            return f"e{self.var_pos[term.name]}"
        if isinstance(term, Const):
            return str(self.consts[term.name])
        args = [self.inner(a) for a in term.args]
        name = self.fresh()
        guards = " and ".join(f"{a} >= 0" for a in args if a.startswith("t"))
        idx = self.index_expr(term.op, args)
        if guards:
            self.lines.append(f"{name} = v[{idx}] if {guards} else -1")
        else:
            self.lines.append(f"{name} = v[{idx}]")
        return name

    def top(self, term):
        """Return (value expr, cell expr) for a side; cell is -1 unless the
        root cell alone is unknown."""
        if not isinstance(term, App):
            return self.inner(term), "-1"
        args = [self.inner(a) for a in term.args]
        val, cell = self.fresh(), self.fresh()
        guards = " and ".join(f"{a} >= 0" for a in args if a.startswith("t"))
        idx = self.index_expr(term.op, args)
        if guards:
            self.lines.append(f"if {guards}:")
            self.lines.append(f"    {cell} = {idx}")
            self.lines.append(f"    {val} = v[{cell}]")
            self.lines.append(f"    if {val} >= 0: {cell} = -1")
            self.lines.append("else:")
            self.lines.append(f"    {val} = -1; {cell} = -1")
        else:
            self.lines.append(f"{cell} = {idx}")
            self.lines.append(f"{val} = v[{cell}]")
            self.lines.append(f"if {val} >= 0: {cell} = -1")
        return val, cell


def _as_identity(eq):
    if eq.order_op is None:
        return eq.lhs, eq.rhs
    return App(eq.order_op, (eq.lhs, eq.rhs)), Const("1")


def compile_identity(law, n, offsets, consts):
    """Generated function ``f(v, e0, e1, ...)`` returning UNKNOWN,
    SATISFIED, VIOLATED, or a forcing code ``cell * n + value``."""
    names = law.variables()
    gen = _Codegen(n, offsets, consts, {v: i for i, v in enumerate(names)})
    lhs, rhs = _as_identity(law.conclusion)
    lv, lc = gen.top(lhs)
    rv, rc = gen.top(rhs)
    body = list(gen.lines)
    body += [
        f"if {lv} >= 0:",
        f"    if {rv} >= 0: return {SATISFIED} if {lv} == {rv} else {VIOLATED}",
        f"    if {rc} >= 0: return {rc} * {n} + {lv}",
        f"    return {UNKNOWN}",
        f"if {rv} >= 0 and {lc} >= 0: return {lc} * {n} + {rv}",
        f"return {UNKNOWN}",
    ]
    params = "".join(f", e{i}" for i in range(len(names)))
    src = f"def _inst(v{params}):\n" + "\n".join("    " + line for line in body) + "\n"
    scope = {}
    exec(compile(src, f"<law {law.id}>", "exec"), scope)
    return scope["_inst"], len(names)


# -- pruned enumerator -------------------------------------------------------

class _Search:
    def __init__(self, task, consts=None):
        self.task = task
        self.system = get_system(task.system, task.parameter)
        n = self.n = task.size
        self.layout, self.ncells = _layout(self.system, n)
        self.offsets = {name: (off, arity) for name, arity, off in self.layout}
        self.consts = consts if consts is not None else pinned_positions(self.system, n)
        self.identities = [l for l in self.system.laws if not l.is_quasi]
        self.quasi = [l for l in self.system.laws if l.is_quasi]
        pruning = list(self.identities)
        if task.use_implied:
            pruning += list(self.system.implied)
        self.instances = []
        for law in pruning:
            fn, k = compile_identity(law, n, self.offsets, self.consts)
            for env in itertools.product(range(n), repeat=k):
                self.instances.append((fn, env, law.id))
        self.order = self._cell_order()
        # a quasi-identity is checked once every table it mentions is full
        self.quasi_ready = []
        for law in self.quasi:
            ops = set()
            for eq in law.equations():
                ops |= _ops_in(eq.lhs) | _ops_in(eq.rhs) | ({eq.order_op} if eq.order_op else set())
            last = max(i for i, c in enumerate(self.order) if self._op_of(c) in ops)
            self.quasi_ready.append((last, law, ops))
        self.v = [-1] * self.ncells
        self.nodes = 0
        self.prunes = Counter()
        self.rejected = Counter()
        self.found = []
        self.completed = 0

    def propagate(self, pending, trail):
        v, n = self.v, self.n
        while True:
            forced = False
            keep = []
            for item in pending:
                fn, env, lid = item
                r = fn(v, *env)
                if r == UNKNOWN:
                    keep.append(item)
                elif r == VIOLATED:
                    self.prunes[lid] += 1
                    return None
                elif r >= 0:
                    cell, val = divmod(r, n)
                    v[cell] = val
                    trail.append(cell)
                    forced = True
            pending = keep
            if not forced:
                return pending

    def _cell_order(self):
        """Tables in signature order; within a table, cells whose
        arguments are all pinned constants come first."""
        n = self.n
        pinned = set(self.consts.values())
        order = []
        for _op, arity, off in self.layout:
            cells = list(itertools.product(range(n), repeat=arity))
            first = [a for a in cells if all(x in pinned for x in a)]
            rest = [a for a in cells if not all(x in pinned for x in a)]
            for args in first + rest:
                idx = 0
                for x in args:
                    idx = idx * n + x
                order.append(off + idx)
        return order

    def _op_of(self, cell):
        for op, arity, off in self.layout:
            if off <= cell < off + self.n ** arity:
                return op
        raise IndexError(cell)

    def next_cell(self):
        """Position in ``self.order`` of the first unassigned cell."""
        v = self.v
        for pos, c in enumerate(self.order):
            if v[c] < 0:
                return pos
        return None

    def quasi_ok(self, pos, checked):
        """Check quasi-identities whose tables became complete; return the
        extended ``checked`` tuple, or None on a violation."""
        bound = len(self.order) if pos is None else pos
        for i, (last, law, ops) in enumerate(self.quasi_ready):
            if i in checked or last >= bound:
                continue
            if check_law(self.partial_algebra(ops), law) is not None:
                self.rejected[law.id] += 1
                return None
            checked = (*checked, i)
        return checked

    def partial_algebra(self, ops):
        n = self.n
        tables, arities = {}, {}
        for op, arity, off in self.layout:
            if op in ops:
                tables[op] = tuple(self.v[off:off + n ** arity])
                arities[op] = arity
        return FiniteAlgebra("partial", tuple(str(i) for i in range(n)), dict(self.consts),
                             tables, arities)

    def search(self, pending, checked):
        self.nodes += 1
        if self.nodes > self.task.node_budget:
            raise BudgetExceeded(f"node budget {self.task.node_budget} exhausted")
        trail = []
        pending = self.propagate(pending, trail)
        if pending is not None:
            pos = self.next_cell()
            checked = self.quasi_ok(pos, checked)
            if checked is None:
                pass
            elif pos is None:
                self.complete()
            else:
                cell = self.order[pos]
                for val in range(self.n):
                    self.v[cell] = val
                    self.search(pending, checked)
                self.v[cell] = -1
        for c in trail:
            self.v[c] = -1

    def root(self):
        """Count and propagate the root; return (pending, checked, first
        free cell).  ``pending`` is None when the root is refuted."""
        self.nodes += 1
        trail = []
        pending = self.propagate(list(self.instances), trail)
        if pending is None:
            return None, (), None
        pos = self.next_cell()
        checked = self.quasi_ok(pos, ())
        if checked is None:
            return None, (), None
        return pending, checked, (None if pos is None else self.order[pos])

    def branch(self, pending, checked, cell, val):
        self.v[cell] = val
        self.search(pending, checked)
        self.v[cell] = -1

    def algebra(self, flat, name="model"):
        n = self.n
        tables, arities = {}, {}
        for op, arity, off in self.layout:
            tables[op] = tuple(flat[off:off + n ** arity])
            arities[op] = arity
        labels = tuple(str(i) for i in range(n))
        return FiniteAlgebra(name, labels, dict(self.consts), tables, arities)

    def complete(self):
        self.completed += 1
        flat = tuple(self.v)
        alg = self.algebra(flat)
        if self.task.canonical_only and not is_canonical(alg, self.system, self.task.pin_constants):
            return
        consts = tuple(self.consts[c] for c in self.system.constants)
        self.found.append((consts, flat))


def _ops_in(term):
    if isinstance(term, App):
        out = {term.op}
        for a in term.args:
            out |= _ops_in(a)
        return out
    return set()


def _branch_worker(args):
    task, consts, val = args
    s = _Search(task, consts)
    pending, checked, cell = s.root()
    # the parent already counted the root and its prunes
    s.nodes, s.prunes, s.rejected = 0, Counter(), Counter()
    s.branch(pending, checked, cell, val)
    return s.found, s.nodes, s.prunes, s.rejected, s.completed


def _constant_choices(system, task):
    n = task.size
    if task.pin_constants:
        return [pinned_positions(system, n)]
    return [dict(zip(system.constants, combo))
            for combo in itertools.product(range(n), repeat=len(system.constants))]


def enumerate_models(task, jobs=1):
    """All models of ``task.system`` of ``task.size`` up to isomorphism,
    sorted by their canonical key.

    With ``jobs > 1`` the values of the first free cell are explored in
    separate processes; results and statistics do not depend on ``jobs``.
    """
    system = get_system(task.system, task.parameter)
    found, nodes, completed = [], 0, 0
    prunes, rejected = Counter(), Counter()

    def absorb(f, nd, pr, rj, cp):
        nonlocal nodes, completed
        found.extend(f)
        nodes += nd
        prunes.update(pr)
        rejected.update(rj)
        completed += cp

    for consts in _constant_choices(system, task):
        s = _Search(task, consts)
        pending, checked, cell = s.root()
        if pending is not None and cell is None:
            s.complete()
        elif pending is not None and jobs > 1:
            work = [(task, consts, val) for val in range(task.size)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for part in pool.map(_branch_worker, work):
                    absorb(*part)
        elif pending is not None:
            for val in range(task.size):
                s.branch(pending, checked, cell, val)
        absorb(s.found, s.nodes, s.prunes, s.rejected, s.completed)
    if nodes > task.node_budget:
        raise BudgetExceeded(f"node budget {task.node_budget} exhausted")
    return _result(task, system, sorted(set(found)), {
        "nodes": nodes, "completed": completed,
        **{f"prune[{k}]": prunes[k] for k in sorted(prunes)},
        **{f"rejected[{k}]": rejected[k] for k in sorted(rejected)},
    })


def _result(task, system, keys, stats):
    n = task.size
    layout, _ = _layout(system, n)
    models = []
    label = task.system if task.parameter is None else f"{task.system}[n={task.parameter}]"
    for i, (consts, flat) in enumerate(keys, 1):
        tables, arities = {}, {}
        for op, arity, off in layout:
            tables[op] = tuple(flat[off:off + n ** arity])
            arities[op] = arity
        models.append(FiniteAlgebra(f"{label}-{n}-{i}", tuple(str(j) for j in range(n)),
                                    dict(zip(system.constants, consts)), tables, arities))
    return EnumerationResult(task, models, {"count": len(models), **stats})


def enumerate_naive(task):
    """Oracle: every table, filtered by membership, grouped by
    isomorphism.  Shares no evaluation code with the pruned search."""
    system = get_system(task.system, task.parameter)
    n = task.size
    layout, ncells = _layout(system, n)
    keys = set()
    tried = 0
    for consts in _constant_choices(system, task):
        for flat in itertools.product(range(n), repeat=ncells):
            tried += 1
            if tried > task.node_budget:
                raise BudgetExceeded(f"node budget {task.node_budget} exhausted")
            tables, arities = {}, {}
            for op, arity, off in layout:
                tables[op] = flat[off:off + n ** arity]
                arities[op] = arity
            alg = FiniteAlgebra("naive", tuple(str(j) for j in range(n)), dict(consts), tables, arities)
            if not _member_short(alg, system):
                continue
            if task.canonical_only:
                keys.add(canonical_key(alg, system, task.pin_constants))
            else:
                keys.add((tuple(consts[c] for c in system.constants), tuple(flat)))
    return _result(task, system, sorted(keys), {"tables": tried})


def _member_short(alg, system):
    for law in system.laws:
        if check_law(alg, law) is not None:
            return False
    return True


# -- conjectures -------------------------------------------------------------

CONJECTURES = {
    "G35-in-G40": ("G4_0", None, "G'35"),
    "DG-implies-printed-G27": ("DG0", None, "G27-as-printed"),
}


def resolve_conjecture(conjecture, law_text=None, system=None, parameter=None):
    """Return (system id, parameter, law) for a conjecture name, a
    ``<law-id>@<system-id>`` pair, or a formula with a system."""
    if law_text is not None:
        if system is None:
            raise ValueError("a custom law needs a base system")
        return system, parameter, parse_law(conjecture or "custom", law_text,
                                            _macros_for(system, parameter), "succ")
    if conjecture in CONJECTURES:
        sid, param, lid = CONJECTURES[conjecture]
        return sid, param, find_law(lid)
    if conjecture and "@" in conjecture:
        lid, sid = conjecture.split("@", 1)
        return sid, parameter, find_law(lid)
    raise KeyError(f"unknown conjecture {conjecture!r}")


def _macros_for(system_id, parameter=None):
    sys = get_system(system_id, parameter)
    ops = {name for name, _ in sys.operations}
    if ops == {"succ"}:
        return G_MACROS
    if ops == {"succ", "neg"}:
        return C_MACROS
    if ops == {"join", "meet", "neg", "nabla"}:
        return M4_MACROS
    return None


@dataclass
class ConjectureReport:
    conjecture: str
    system: str
    law_id: str
    max_size: int
    counts: dict  # size -> number of models checked
    counterexample: FiniteAlgebra | None = None
    witness: object = None

    @property
    def holds(self):
        return self.counterexample is None

    def verdict_line(self):
        counts = " ".join(f"n{k}={v}" for k, v in sorted(self.counts.items()))
        if self.holds:
            return f"VERDICT {self.conjecture} holds-through {self.max_size} {counts}"
        return (f"VERDICT {self.conjecture} counterexample size={self.counterexample.size} "
                f"{self.counterexample.name} {counts}")


def check_conjecture(conjecture, max_size, law_text=None, system=None, parameter=None,
                     jobs=1, node_budget=DEFAULT_BUDGET, naive=False):
    sid, param, law = resolve_conjecture(conjecture, law_text, system, parameter)
    counts = {}
    for size in range(1, max_size + 1):
        task = EnumerationTask(sid, size, param, node_budget=node_budget)
        result = enumerate_naive(task) if naive else enumerate_models(task, jobs)
        counts[size] = result.count
        for model in result.models:
            alg = check_membership(model, sid, param).algebra
            w = check_law(alg, law)
            if w is not None:
                return ConjectureReport(conjecture or law.id, sid, law.id, max_size, counts, model, w)
    return ConjectureReport(conjecture or law.id, sid, law.id, max_size, counts)


def model_check(models, system_id, law, parameter=None):
    """Models among ``models`` violating ``law`` (with witnesses)."""
    out = []
    for m in models:
        alg = check_membership(m, system_id, parameter).algebra
        w = check_law(alg, law)
        if w is not None:
            out.append((m, w))
    return out
