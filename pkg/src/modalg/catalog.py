"""Axiom systems as data, and variety membership with per-law diagnosis."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import SignatureError, check_law
from .terms import App, Const, Equation, Law, Var, parse_law

# -- abbreviation sets -------------------------------------------------------


def _succ(a, b):
    return App("succ", (a, b))


def _g_join(a, b):
    return _succ(_succ(a, b), b)


def _g_neg(a):
    return _succ(a, Const("0"))


def _g_meet(a, b):
    return _g_neg(_g_join(_g_neg(a), _g_neg(b)))


# bounded G-algebras: everything is spelled in succ, 1 and 0
G_MACROS = {
    "join": _g_join,
    "neg": _g_neg,
    "meet": _g_meet,
    "nabla": lambda a: _succ(_g_neg(a), a),
    "luk": lambda a, b: _succ(a, _succ(a, b)),
}

_C_BOTTOM = App("neg", (Const("1"),))


def _c_meet(a, b):
    # negation spelled x > ~1, which agrees with ~x once x > ~1 = ~x holds
    def n(t):
        return _succ(t, _C_BOTTOM)
    return n(_g_join(n(a), n(b)))


# succ, neg, 1: neg stays a basic operation
C_MACROS = {"join": _g_join, "meet": _c_meet}

# derived operations of a 4-valued modal algebra
M4_MACROS = {
    "delta": lambda a: App("neg", (App("nabla", (App("neg", (a,)),)),)),
    "supset": lambda a, b: App("join", (App("neg", (a,)), b)),
    "arrow": lambda a, b: App("join", (App("nabla", (App("neg", (a,)),)), b)),
    "mapsto": lambda a, b: App("meet", (App("arrow", (a, b)),
                                        App("join", (App("nabla", (b,)), App("neg", (a,)))))),
    "msucc": lambda a, b: App("meet", (App("mapsto", (a, b)),
                                       App("arrow", (App("supset", (a, b)),
                                                     App("join", (App("delta", (App("neg", (a,)),)), b)))))),
}


def _g(law_id, text, note=""):
    return parse_law(law_id, text, G_MACROS, "succ", note=note)


def _raw(law_id, text, order_op=None, note=""):
    return parse_law(law_id, text, None, order_op, note=note)


def _c(law_id, text, note=""):
    return parse_law(law_id, text, C_MACROS, "succ", note=note)


LAWS = {}


def _register(*laws):
    for law in laws:
        if law.id in LAWS:
            raise ValueError(f"duplicate law id {law.id}")
        LAWS[law.id] = law
    return list(laws)


BCK_LAWS = _register(
    _raw("A1", "((x * y) * (x * z)) * (z * y) = 0"),
    _raw("A2", "(x * (x * y)) * y = 0"),
    _raw("A3", "x * x = 0"),
    _raw("A4", "0 * x = 0"),
    _raw("A5", "x * y = 0, y * x = 0 => x = y"),
)

CBCK_LAWS = _register(
    _raw("B1", "(x * y) * z = (x * z) * y"),
    _raw("B2", "x * (x * y) = y * (y * x)"),
    _raw("B3", "x * x = 0"),
    _raw("B4", "x * 0 = x",
         note="printed as x * 0 = 0, which the two-element CBCK-algebra violates"),
)
_register(_raw("B4-as-printed", "x * 0 = 0"))
CI_LAW = _register(_raw("CI", "(x * y) * ((x * y) * (y * x)) = 0"))[0]

W_LAWS = _register(
    _raw("W1", "1 -> x = x"),
    _raw("W2", "(x -> y) -> y = (y -> x) -> x"),
    _raw("W3", "(x -> y) -> ((y -> z) -> (x -> z)) = 1"),
    _raw("W4", "(~x -> ~y) -> (y -> x) = 1"),
)

I_LAWS = _register(
    _raw("I1", "1 -> x = x"),
    _raw("I2", "(x -> y) -> y = (y -> x) -> x"),
    _raw("I3", "(x -> y) -> ((y -> z) -> (x -> z)) = 1"),
    _raw("I4", "((x -> y) -> (y -> x)) -> (y -> x) = 1"),
)
I5 = _register(_raw("I5", "0 -> x = 1"))[0]

G_LAWS = _register(
    _g("G1", "1 > x = x"),
    _g("G2", "x > 1 = 1"),
    _g("G3", "(x > y) > y = (y > x) > x"),
    _g("G4", "x > (y > z) = 1 => y > (x > z) = 1"),
)
G17 = _register(_g("G17", "0 <= x"))[0]
DG1 = _register(_g("DG1", "(x & y) > z <= (x > z) | (y > z)"))[0]
G28 = _register(_g("G'28", "((x > (x > y)) > x) > x = 1"))[0]
G35 = _register(_g("G'35", "luk(nabla(x), 0) = nabla(x) > 0"))[0]

# consequences stated as laws; G11 and G16 are order facts checked in derived
LEMMA_LAWS = _register(
    _g("G5", "x > x = 1"),
    _g("G6", "x > y = 1, y > x = 1 => x = y"),
    _g("G7", "x > (y > x) = 1"),
    _g("G8", "x > ((x > y) > y) = 1"),
    _g("G9", "x > (z > ((x > y) > y)) = 1"),
    _g("G10", "x > y = 1, y > z = 1 => x > z = 1"),
    _g("G12", "x <= (x > y) > y"),
    _g("G13", "y <= (x > y) > y"),
    _g("G14", "x <= y => y > z <= x > z"),
    _g("G15", "x <= z, y <= z => (x > y) > y <= z"),
    _g("G19", "~~x = x"),
    _g("G20", "x <= y => ~y <= ~x"),
    _g("G21", "~(~x | ~y) <= x"),
    _g("G22", "~(~x | ~y) <= y"),
    _g("G23", "z <= x, z <= y => z <= ~(~x | ~y)"),
    _g("G24", "x & y = (((x > 0) > (y > 0)) > (y > 0)) > 0"),
    _g("G25", "~(x | y) = ~x & ~y"),
    _g("G26", "~(x & y) = ~x | ~y"),
    _g("G27", "(x > z) | (y > z) <= (x & y) > z",
       note="printed with (x > y) as the first joinand; stored as the form the argument establishes"),
    _g("G27-as-printed", "(x > y) | (y > z) <= (x & y) > z"),
    _g("DG2", "(x & y) > z <= (x > z) | (y > z)", note="printed identically to DG1"),
    _g("CL", "x & y = x & z, x | y = x | z => y = z"),
    _g("dist-meet", "x & (y | z) = (x & y) | (x & z)"),
    _g("dist-join", "x | (y & z) = (x | y) & (x | z)"),
    _g("top", "x <= 1"),
    _g("G'29", "(x > (x > y)) | x = 1"),
    _g("G'30", "(x > (x > y)) > x = x"),
    _g("G'33", "luk(~x, x) = ~x > x"),
    _g("G'34", "x <= nabla(x)"),
    _g("G'36", "~nabla(x) > nabla(x) = nabla(x)"),
    _g("G'37", "~nabla(x) | nabla(x) = 1"),
    _g("G'38", "nabla(x) & ~nabla(x) = 0",
       note="printed with a join, which contradicts G'37"),
    _g("G'38-as-printed", "nabla(x) | ~nabla(x) = 0"),
)

M4_LAWS = _register(
    _raw("M1", "x & (x | y) = x"),
    _raw("M2", "x & (y | z) = (z & x) | (y & x)",
         note="printed with (z & y) as the second joinand, which fails in T4"),
    _raw("M3", "~~x = x"),
    _raw("M4", "~(x | y) = ~x & ~y"),
    _raw("M5", "nabla(x) | ~x = 1"),
    _raw("M6", "nabla(x) & ~x = ~x & x"),
)
_register(
    _raw("M2-as-printed", "x & (y | z) = (z & x) | (z & y)"),
    _raw("M7", "1 | x = 1"),
)
M6P = _register(_raw("M'6", "nabla(x & y) = nabla(x) & nabla(y)"))[0]
KLEENE = _register(_raw("K", "(x & ~x) | (y | ~y) = y | ~y"))[0]

# links between succ and the modal operations, on algebras binding both
L_LAWS = _register(
    _raw("L1", "x | y = (x > y) > y"),
    _raw("L2", "~x = x > 0"),
    _raw("L3", "nabla(x) = ~x > x"),
    _raw("L4", "x & y = ~(~x | ~y)"),
)

C_LAWS = _register(
    _c("C1", "1 > x = x"),
    _c("C2", "x > 1 = 1"),
    _c("C3", "(x > y) > y = (y > x) > x"),
    _c("C4", "x > (y > z) = 1 => y > (x > z) = 1"),
    _c("C5", "((x > (x > y)) > x) > x = 1"),
    _c("C6", "~1 > x = 1"),
    _c("C7", "x > ~1 = ~x"),
    _c("C8", "((x & y) > z) > ((x > z) | (y > z)) = 1",
       note="printed as ((x | ~y) > z) > ((x > z) & (y > z)) = 1, which fails in T4"),
)
_register(_c("C8-as-printed", "((x | ~y) > z) > ((x > z) & (y > z)) = 1"))


def implication_power(i, x, y):
    """``x =>_i y``: ``y`` for i = 0, else ``x > (x =>_{i-1} y)``."""
    t = y
    for _ in range(i):
        t = _succ(x, t)
    return t


def valued_law(n):
    """``(x =>_n y) | x = 1`` with the join spelled in succ."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"the valued identity needs n >= 1, got {n!r}")
    x, y = Var("x"), Var("y")
    lhs = _g_join(implication_power(n, x, y), x)
    return Law(f"G_{{n+1}}(n={n})", Equation(lhs, Const("1")),
               source=f"(x =>_{n} y) | x = 1")


def find_law(law_id):
    if law_id in LAWS:
        return LAWS[law_id]
    # primes are optional in ids: G28 finds G'28, M6' finds M'6
    bare = law_id.replace("'", "")
    for key, law in LAWS.items():
        if key.replace("'", "") == bare:
            return law
    raise KeyError(f"unknown law {law_id!r}")


# -- axiom systems -----------------------------------------------------------

@dataclass(frozen=True)
class AxiomSystem:
    """A named variety over a signature.

    ``bottom_order`` names the operation whose order locates an implicit
    least element when the algebra does not bind the constant ``0``.
    ``readings`` lets a system over one implication symbol be checked
    on an algebra binding another (``imp`` read as ``succ``).
    ``implied`` are consequences used only to prune model search.
    """

    id: str
    constants: tuple
    operations: tuple
    own_laws: tuple
    parent: str | None = None
    bottom_order: str | None = None
    readings: tuple = ()
    implied: tuple = ()
    description: str = ""
    laws: tuple = field(default=(), compare=False)

    @property
    def signature_symbols(self):
        return (*self.constants, *(name for name, _ in self.operations))


def _sys(id, constants, operations, laws, parent=None, **kw):
    return AxiomSystem(id, tuple(constants), tuple(operations), tuple(laws), parent, **kw)


_SUCC = (("succ", 2),)
_G5 = (LAWS["G5"],)
_M4_IMPLIED = tuple(_raw(f"implied:{i}", t) for i, t in enumerate([
    "x | x = x", "x & x = x", "x | y = y | x", "x & y = y & x",
    "x | (x & y) = x", "(x | y) | z = x | (y | z)", "(x & y) & z = x & (y & z)",
    "1 | x = 1", "x & 1 = x",
]))

_SYSTEMS = [
    _sys("BCK", ["0"], [("star", 2)], BCK_LAWS, description="BCK-algebras"),
    _sys("CBCK", ["0"], [("star", 2)], CBCK_LAWS, description="commutative BCK-algebras"),
    _sys("CBCK-CI", ["0"], [("star", 2)], [CI_LAW], parent="CBCK",
         description="commutative BCK-algebras with the extra identity CI"),
    _sys("W", ["1"], [("imp", 2), ("neg", 1)], W_LAWS, readings=(("imp", "succ"),),
         description="Wajsberg algebras"),
    _sys("I", ["1"], [("imp", 2)], I_LAWS, readings=(("imp", "succ"),), description="I-algebras"),
    _sys("I0", ["1", "0"], [("imp", 2)], [I5], parent="I", bottom_order="imp",
         readings=(("imp", "succ"),), description="bounded I-algebras"),
    _sys("G", ["1"], _SUCC, G_LAWS, implied=_G5, description="generalized I-algebras"),
    _sys("G0", ["1", "0"], _SUCC, [G17], parent="G", bottom_order="succ", implied=_G5,
         description="bounded G-algebras"),
    _sys("DG0", ["1", "0"], _SUCC, [DG1], parent="G0", bottom_order="succ", implied=_G5,
         description="distributive bounded G-algebras"),
    _sys("G4", ["1"], _SUCC, [G28], parent="G", implied=_G5, description="G-algebras with G'28"),
    _sys("G4_0", ["1", "0"], _SUCC, [G28], parent="G0", bottom_order="succ", implied=_G5,
         description="bounded G-algebras with G'28"),
    _sys("DG4_0", ["1", "0"], _SUCC, [DG1], parent="G4_0", bottom_order="succ", implied=_G5,
         description="distributive bounded G4-algebras"),
    _sys("MDG4_0", ["1", "0"], _SUCC, [G35], parent="DG4_0", bottom_order="succ", implied=_G5,
         description="modal distributive bounded G4-algebras"),
    _sys("M4", ["1"], [("join", 2), ("meet", 2), ("neg", 1), ("nabla", 1)], M4_LAWS,
         implied=_M4_IMPLIED, description="4-valued modal algebras"),
    _sys("L3", ["1"], [("join", 2), ("meet", 2), ("neg", 1), ("nabla", 1)], [M6P], parent="M4",
         implied=_M4_IMPLIED, description="3-valued Lukasiewicz algebras"),
    _sys("Kleene", ["1"], [("join", 2), ("meet", 2), ("neg", 1), ("nabla", 1)], [KLEENE],
         parent="M4", implied=_M4_IMPLIED, description="4-valued modal algebras with the Kleene condition"),
    _sys("C", ["1"], [("succ", 2), ("neg", 1)], C_LAWS, implied=_G5,
         description="the succ/neg/1 axiomatization C1-C8"),
]

SYSTEMS = {s.id: s for s in _SYSTEMS}
PARAMETERIZED = "G_{n+1}"
ALIASES = {"C-system": "C", "Gn+1": PARAMETERIZED, "G_n+1": PARAMETERIZED,
           "G40": "G4_0", "DG40": "DG4_0", "MDG40": "MDG4_0"}
CATALOG_ORDER = [*SYSTEMS, PARAMETERIZED]


class UnknownSystem(KeyError):
    pass


def _inline(system):
    laws = []
    if system.parent:
        laws.extend(_inline(SYSTEMS[system.parent]))
    laws.extend(system.own_laws)
    return laws


def get_system(system_id, parameter=None):
    """Return the system with parent laws inlined, oldest ancestor first."""
    system_id = ALIASES.get(system_id, system_id)
    if system_id == PARAMETERIZED:
        if parameter is None:
            raise ValueError("system G_{n+1} needs a parameter n >= 1")
        law = valued_law(parameter)
        base = SYSTEMS["G"]
        own = (law,)
        return AxiomSystem(PARAMETERIZED, base.constants, base.operations, own, "G",
                           implied=_G5, description=f"{parameter + 1}-valued G-algebras",
                           laws=(*_inline(base), *own))
    if system_id not in SYSTEMS:
        raise UnknownSystem(f"unknown system {system_id!r}")
    if parameter is not None:
        raise ValueError(f"system {system_id!r} takes no parameter")
    system = SYSTEMS[system_id]
    return AxiomSystem(system.id, system.constants, system.operations, system.own_laws,
                       system.parent, system.bottom_order, system.readings, system.implied,
                       system.description, laws=tuple(_inline(system)))


# -- membership --------------------------------------------------------------

@dataclass
class MembershipReport:
    system: str
    results: list  # (law id, Witness | None)
    algebra: object = None
    notes: list = field(default_factory=list)

    @property
    def member(self):
        return all(w is None for _, w in self.results)

    @property
    def failures(self):
        return [(lid, w) for lid, w in self.results if w is not None]


def least_element(algebra, order_op):
    """The element ``e`` with ``e op x = 1`` for every x, if any."""
    n = algebra.size
    top = algebra.constants.get("1")
    if top is None or order_op not in algebra.tables:
        return None
    t = algebra.tables[order_op]
    for e in range(n):
        if all(t[e * n + x] == top for x in range(n)):
            return e
    return None


def prepare(algebra, system):
    """Bind the symbols ``system`` needs, returning ``(algebra, notes)``.

    Applies the system's symbol readings and resolves an implicit least
    element.  Raises SignatureError naming the first missing symbol.
    """
    notes = []
    alg = algebra
    for name, arity in system.operations:
        if alg.has(name):
            if alg.arities.get(name) != arity:
                raise SignatureError(f"{algebra.name}: {name!r} must have arity {arity}")
            continue
        alt = dict(system.readings).get(name)
        if alt is not None and alg.arities.get(alt) == arity:
            alg = alg.with_operation(name, arity, alg.tables[alt])
            notes.append(f"reading {name} as {alt}")
            continue
        raise SignatureError(f"{algebra.name} does not bind {name!r} required by {system.id}")
    for c in system.constants:
        if alg.has(c):
            continue
        if c == "0" and system.bottom_order:
            order = system.bottom_order
            bottom = least_element(alg, order)
            if bottom is None:
                # G17-style law then fails with an explicit witness
                bottom = 0
                notes.append(f"no least element; 0 bound to {alg.labels[0]}")
            else:
                notes.append(f"0 bound to least element {alg.labels[bottom]}")
            alg = alg.with_constant("0", bottom)
            continue
        raise SignatureError(f"{algebra.name} does not bind constant {c!r} required by {system.id}")
    return alg, notes


def check_membership(algebra, system_id, parameter=None, extra_laws=()):
    system = get_system(system_id, parameter)
    alg, notes = prepare(algebra, system)
    results = [(law.id, check_law(alg, law)) for law in (*system.laws, *extra_laws)]
    return MembershipReport(system.id, results, alg, notes)


def applicable(algebra, system):
    try:
        prepare(algebra, system)
    except SignatureError:
        return False
    return True


def diagnose(algebra, valued=(1, 2, 3)):
    """One verdict per catalog entry: True, False, or None (not applicable)."""
    out = []
    for sid in CATALOG_ORDER:
        if sid == PARAMETERIZED:
            for n in valued:
                out.append((f"{sid}[n={n}]", _verdict(algebra, sid, n)))
        else:
            out.append((sid, _verdict(algebra, sid, None)))
    return out


def _verdict(algebra, sid, param):
    system = get_system(sid, param)
    if not applicable(algebra, system):
        return None
    return check_membership(algebra, sid, param).member


def catalog_reference():
    """Markdown listing of every law and system."""
    lines = ["# Law catalog", "",
             "Inequalities `s <= t` are checked as `s > t = 1` (or `s -> t = 1`).", "",
             "| id | law (as written) | expanded | note |", "|---|---|---|---|"]
    for law in LAWS.values():
        src = law.source.replace("|", "\\|")
        exp = str(law).replace("|", "\\|")
        lines.append(f"| {law.id} | `{src}` | `{exp}` | {law.note} |")
    lines += ["", "# Systems", "", "| id | signature | parent | own laws | description |",
              "|---|---|---|---|---|"]
    for s in SYSTEMS.values():
        sig = ", ".join([*(f"{o}/{a}" for o, a in s.operations), *s.constants])
        lines.append(f"| {s.id} | {sig} | {s.parent or ''} | "
                     f"{', '.join(l.id for l in s.own_laws)} | {s.description} |")
    lines.append(f"| {PARAMETERIZED} | succ/2, 1 | G | (x =>_n y) \\| x = 1 | (n+1)-valued G-algebras |")
    return "\n".join(lines) + "\n"
