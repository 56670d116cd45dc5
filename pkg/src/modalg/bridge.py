"""Table-level translations between the varieties, and embeddings into
powers of T4."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import FiniteAlgebra, SignatureError, check_homomorphism, check_law, direct_product, eval_term
from .builtins import t4_modal
from .catalog import (G_MACROS, L_LAWS, M4_MACROS, check_membership, get_system, least_element,
                      prepare)
from .terms import parse_term, variables


@dataclass(frozen=True)
class TranslationSpec:
    id: str
    source: str
    target: str
    recipes: tuple  # (symbol, arity, term); arity 0 for constants
    inverse: str | None = None


def _spec(id, source, target, recipes, macros=None, inverse=None):
    parsed = tuple((sym, arity, parse_term(text, macros)) for sym, arity, text in recipes)
    return TranslationSpec(id, source, target, parsed, inverse)


SPECS = {s.id: s for s in [
    _spec("g_from_cbck", "CBCK", "G", [("succ", 2, "y * x"), ("1", 0, "0")], inverse="cbck_from_g"),
    _spec("cbck_from_g", "G", "CBCK", [("star", 2, "y > x"), ("0", 0, "1")], inverse="g_from_cbck"),
    _spec("i_from_cbck", "CBCK-CI", "I", [("imp", 2, "y * x"), ("1", 0, "0")], inverse="cbck_from_i"),
    _spec("cbck_from_i", "I", "CBCK", [("star", 2, "y -> x"), ("0", 0, "1")], inverse="i_from_cbck"),
    _spec("i_from_w", "W", "I", [("imp", 2, "x -> y"), ("1", 0, "1")]),
    _spec("w_from_i0", "I0", "W", [("imp", 2, "x -> y"), ("neg", 1, "x -> 0"), ("1", 0, "1")]),
    _spec("m4_from_mdg", "MDG4_0", "M4",
          [("join", 2, "x | y"), ("meet", 2, "~(~x | ~y)"), ("neg", 1, "~x"),
           ("nabla", 1, "~x > x"), ("1", 0, "1")], G_MACROS, inverse="mdg_from_m4"),
    _spec("mdg_from_m4", "M4", "MDG4_0",
          [("succ", 2, "msucc(x, y)"), ("1", 0, "1"), ("0", 0, "~1")], M4_MACROS,
          inverse="m4_from_mdg"),
]}


@dataclass
class TranslationReport:
    spec: TranslationSpec
    source: FiniteAlgebra
    output: FiniteAlgebra
    source_report: object
    target_report: object
    round_trip: tuple | None = None  # (recovered?, first discrepancy or None)
    contracts: dict = field(default_factory=dict)  # name -> (ok, detail)

    @property
    def ok(self):
        if not self.target_report.member:
            return False
        if self.round_trip is not None and not self.round_trip[0]:
            return False
        return all(ok for ok, _ in self.contracts.values())

    def verdict_lines(self):
        sid = self.spec.id
        lines = [f"VERDICT {sid} source-member {_pf(self.source_report.member)}",
                 f"VERDICT {sid} target-member {_pf(self.target_report.member)}"]
        if self.round_trip is not None:
            lines.append(f"VERDICT {sid} round-trip {_pf(self.round_trip[0])}")
        for name, (ok, _) in self.contracts.items():
            lines.append(f"VERDICT {sid} {name} {_pf(ok)}")
        return lines


def _pf(ok):
    return "PASS" if ok else "FAIL"


def get_spec(spec_id):
    try:
        return SPECS[spec_id]
    except KeyError:
        raise KeyError(f"unknown translation {spec_id!r}; choose from {', '.join(SPECS)}") from None


def apply_recipes(algebra, spec, name=None):
    """Evaluate every recipe at every argument tuple."""
    n = algebra.size
    tables, arities, consts = {}, {}, {}
    for sym, arity, term in spec.recipes:
        if arity == 0:
            consts[sym] = eval_term(algebra, term, {})
            continue
        names = ["x", "y", "z"][:arity]
        extra = set(variables(term)) - set(names)
        if extra:
            raise ValueError(f"recipe for {sym} uses unexpected variables {sorted(extra)}")
        table = []
        for args in itertools.product(range(n), repeat=arity):
            table.append(eval_term(algebra, term, dict(zip(names, args))))
        tables[sym] = tuple(table)
        arities[sym] = arity
    return FiniteAlgebra(name or f"{spec.id}({algebra.name})", algebra.labels, consts, tables, arities)


def _bind_source(algebra, spec):
    system = get_system(spec.source)
    alg = algebra
    # an explicit negation fixes 0 as ~1 before the order is consulted
    if "0" in system.constants and not alg.has("0") and alg.has("neg") and alg.has("1"):
        alg = alg.with_constant("0", alg.op("neg", alg.constants["1"]))
    if system.bottom_order and not alg.has("0") and least_element(alg, system.bottom_order) is None:
        raise ValueError(f"{algebra.name} has no least element")
    alg, _ = prepare(alg, system)
    return alg


def first_discrepancy(a, b, symbols):
    """First (symbol, argument labels, a value, b value) where the tables
    differ, or None."""
    n = a.size
    for sym in symbols:
        if sym in a.constants or sym in b.constants:
            va, vb = a.constants.get(sym), b.constants.get(sym)
            if va != vb:
                return (sym, (), _lab(a, va), _lab(b, vb))
            continue
        arity = a.arities[sym]
        for i, args in enumerate(itertools.product(range(n), repeat=arity)):
            if a.tables[sym][i] != b.tables[sym][i]:
                return (sym, tuple(a.labels[x] for x in args), a.labels[a.tables[sym][i]],
                        b.labels[b.tables[sym][i]])
    return None


def _lab(alg, v):
    return None if v is None else alg.labels[v]


def translate(algebra, spec_id, round_trip=True):
    spec = get_spec(spec_id)
    src = _bind_source(algebra, spec)
    source_report = check_membership(src, spec.source)
    out = apply_recipes(src, spec)
    target_report = check_membership(out, spec.target)
    report = TranslationReport(spec, src, out, source_report, target_report)
    if round_trip and spec.inverse:
        back = apply_recipes(out, get_spec(spec.inverse))
        symbols = [sym for sym, _, _ in get_spec(spec.inverse).recipes]
        diff = first_discrepancy(src, back, symbols)
        report.round_trip = (diff is None, diff)
    if spec.id == "m4_from_mdg":
        report.contracts["m13-identity"] = _m13_identity(src, out)
    if spec.id == "mdg_from_m4":
        report.contracts["L1-L4"] = _links_hold(out, src)
    return report


def _m13_identity(src, m4):
    """The source succ coincides with the composite implication of the
    derived modal algebra."""
    composite = apply_recipes(m4, get_spec("mdg_from_m4"))
    diff = first_discrepancy(src, composite, ["succ"])
    return diff is None, diff


def _links_hold(succ_alg, m4):
    combined = m4.with_operation("succ", 2, succ_alg.tables["succ"]).with_constant(
        "0", succ_alg.constants["0"])
    fails = [(law.id, w) for law in L_LAWS if (w := check_law(combined, law)) is not None]
    return not fails, (fails[0] if fails else None)


def m4_from_mdg(algebra):
    return translate(algebra, "m4_from_mdg")


def mdg_from_m4(algebra):
    return translate(algebra, "mdg_from_m4")


# -- the succ/neg/1 axiomatization -------------------------------------------

@dataclass
class CAxiomReport:
    membership: object
    neg_agrees: bool
    m4_member: bool
    m13_identity: bool
    m4_report: object = None

    @property
    def c_verdict(self):
        return self.membership.member

    @property
    def m4_verdict(self):
        return self.neg_agrees and self.m4_member and self.m13_identity

    @property
    def agree(self):
        return self.c_verdict == self.m4_verdict


def check_c_axioms(algebra):
    """C1-C8, compared with the route through the modal algebra built
    from succ with 0 = ~1."""
    for sym in ("succ", "neg", "1"):
        if not algebra.has(sym):
            raise SignatureError(f"{algebra.name} does not bind {sym!r}")
    membership = check_membership(algebra, "C")
    n = algebra.size
    zero = algebra.op("neg", algebra.constants["1"])
    s = algebra.tables["succ"]
    neg_agrees = all(algebra.op("neg", x) == s[x * n + zero] for x in range(n))
    src = algebra.reduct(["succ", "1"]).with_constant("0", zero)
    m4 = apply_recipes(src, get_spec("m4_from_mdg"))
    m4_report = check_membership(m4, "M4")
    ok13, _ = _m13_identity(src, m4)
    return CAxiomReport(membership, neg_agrees, m4_report.member, ok13, m4_report)


# -- embeddings into powers of T4 --------------------------------------------

def homomorphisms(src, dst):
    """All homomorphisms ``src -> dst`` in lexicographic order of images."""
    if src.arities != dst.arities or set(src.constants) != set(dst.constants):
        raise SignatureError(f"signature mismatch between {src.name} and {dst.name}")
    n, m = src.size, dst.size
    image = [-1] * n
    for c, v in src.constants.items():
        if image[v] not in (-1, dst.constants[c]):
            return
        image[v] = dst.constants[c]
    ops = [(src.tables[op], dst.tables[op], src.arities[op]) for op in src.arities]
    order = [i for i in range(n) if image[i] < 0]
    # entries become checkable once all arguments and the result are mapped
    entries = []
    for st, dt, arity in ops:
        for i, args in enumerate(itertools.product(range(n), repeat=arity)):
            entries.append((args, st[i], dt, arity))

    def consistent():
        for args, res, dt, arity in entries:
            if image[res] < 0 or any(image[a] < 0 for a in args):
                continue
            idx = 0
            for a in args:
                idx = idx * m + image[a]
            if dt[idx] != image[res]:
                return False
        return True

    if not consistent():
        return

    def rec(k):
        if k == len(order):
            yield tuple(image)
            return
        e = order[k]
        for val in range(m):
            image[e] = val
            if consistent():
                yield from rec(k + 1)
        image[e] = -1

    yield from rec(0)


@dataclass
class Embedding:
    k: int
    homs: list  # k homomorphisms into T4
    images: list  # element -> tuple of T4 indices

    def product_index(self):
        """Element images as indices of the direct power."""
        out = []
        for tup in self.images:
            idx = 0
            for c in tup:
                idx = idx * 4 + c
            out.append(idx)
        return out


def represent_in_t4_power(algebra, max_k):
    """Smallest ``k <= max_k`` and the first ``k`` homomorphisms into T4
    (in enumeration order) that separate all elements."""
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    target = t4_modal()
    src = algebra.reduct(["join", "meet", "neg", "nabla", "1"])
    homs = list(homomorphisms(src, target))
    n = src.size
    for k in range(1, max_k + 1):
        for combo in itertools.combinations(homs, k):
            images = [tuple(h[x] for h in combo) for x in range(n)]
            if len(set(images)) == n:
                return Embedding(k, list(combo), images)
    return None


def verify_embedding(algebra, embedding):
    """Check the embedding is an injective homomorphism into T4^k."""
    src = algebra.reduct(["join", "meet", "neg", "nabla", "1"])
    power = direct_product(*[t4_modal()] * embedding.k)
    mapping = embedding.product_index()
    return len(set(mapping)) == src.size and check_homomorphism(src, power, mapping)
