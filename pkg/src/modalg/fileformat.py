"""Line-oriented text format for finite algebras.

    algebra <name>
    size <n>
    elements <lbl0> ... <lbl_{n-1}>
    const <sym> = <lbl>
    op <sym>/<arity> = <n^arity labels, row-major>
    end

``#`` starts a comment.  Entries of an ``op`` line may continue onto the
following lines until ``n^arity`` labels have been read.
"""

from __future__ import annotations

from .algebra import FiniteAlgebra


_DIRECTIVES = ("algebra", "size", "elements", "const", "op", "end")


class AlgebraFileError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


class _Builder:
    def __init__(self, name, lineno):
        self.name, self.lineno = name, lineno
        self.size = None
        self.labels = None
        self.constants, self.tables, self.arities = {}, {}, {}
        self.pending = None  # (sym, arity, entries, lineno) while an op spans lines

    def index(self, lbl, lineno):
        if self.labels is None:
            raise AlgebraFileError(lineno, "'elements' must come before constants and operations")
        try:
            return self.labels.index(lbl)
        except ValueError:
            raise AlgebraFileError(lineno, f"unknown element {lbl!r}") from None

    def defined(self, sym, lineno):
        if sym in self.constants or sym in self.tables or (self.pending and self.pending[0] == sym):
            raise AlgebraFileError(lineno, f"duplicate definition of {sym!r}")

    def feed_entries(self, words, lineno):
        sym, arity, entries, start = self.pending
        entries.extend(self.index(w, lineno) for w in words)
        need = self.size ** arity
        if len(entries) > need:
            raise AlgebraFileError(lineno, f"op {sym}: expected {need} entries, got {len(entries)}")
        if len(entries) == need:
            self.tables[sym] = tuple(entries)
            self.arities[sym] = arity
            self.pending = None

    def finish(self, lineno):
        if self.pending:
            sym, arity, entries, start = self.pending
            raise AlgebraFileError(start, f"op {sym}: expected {self.size ** arity} entries, got {len(entries)}")
        if self.labels is None:
            raise AlgebraFileError(lineno, f"algebra {self.name!r} has no 'elements' line")
        try:
            return FiniteAlgebra(self.name, tuple(self.labels), self.constants, self.tables, self.arities)
        except ValueError as exc:
            raise AlgebraFileError(self.lineno, str(exc)) from None


def parse_algebras(text):
    """Parse every algebra in ``text``."""
    out, cur, names = [], None, set()
    last = 0
    for lineno, line in _tokens(text):
        last = lineno
        words = line.split()
        if cur is not None and cur.pending is not None and words[0] not in _DIRECTIVES:
            cur.feed_entries(words, lineno)
            continue
        head = words[0]
        if head == "algebra":
            if cur is not None:
                raise AlgebraFileError(lineno, f"missing 'end' for algebra {cur.name!r}")
            if len(words) != 2:
                raise AlgebraFileError(lineno, "expected 'algebra <name>'")
            if words[1] in names:
                raise AlgebraFileError(lineno, f"duplicate algebra name {words[1]!r}")
            cur = _Builder(words[1], lineno)
            continue
        if cur is None:
            raise AlgebraFileError(lineno, f"{head!r} outside an algebra block")
        if cur.pending is not None:
            cur.finish(lineno)
        if head == "end":
            if len(words) != 1:
                raise AlgebraFileError(lineno, "unexpected text after 'end'")
            if cur.size is None:
                raise AlgebraFileError(lineno, f"algebra {cur.name!r} has no 'size' line")
            out.append(cur.finish(lineno))
            names.add(cur.name)
            cur = None
        elif head == "size":
            if cur.size is not None:
                raise AlgebraFileError(lineno, "duplicate 'size' line")
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise AlgebraFileError(lineno, "expected 'size <n>' with n >= 1")
            cur.size = int(words[1])
        elif head == "elements":
            if cur.size is None:
                raise AlgebraFileError(lineno, "'size' must come before 'elements'")
            if cur.labels is not None:
                raise AlgebraFileError(lineno, "duplicate 'elements' line")
            labels = words[1:]
            if len(labels) != cur.size:
                raise AlgebraFileError(lineno, f"expected {cur.size} elements, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise AlgebraFileError(lineno, "element labels must be distinct")
            cur.labels = labels
        elif head == "const":
            if len(words) != 4 or words[2] != "=":
                raise AlgebraFileError(lineno, "expected 'const <sym> = <label>'")
            cur.defined(words[1], lineno)
            cur.constants[words[1]] = cur.index(words[3], lineno)
        elif head == "op":
            if len(words) < 3 or words[2] != "=" or "/" not in words[1]:
                raise AlgebraFileError(lineno, "expected 'op <sym>/<arity> = <entries>'")
            sym, _, ar = words[1].partition("/")
            if not sym or not ar.isdigit() or int(ar) < 1:
                raise AlgebraFileError(lineno, f"bad operation declaration {words[1]!r}")
            cur.defined(sym, lineno)
            if cur.labels is None:
                raise AlgebraFileError(lineno, "'elements' must come before operations")
            cur.pending = (sym, int(ar), [], lineno)
            cur.feed_entries(words[3:], lineno)
        else:
            raise AlgebraFileError(lineno, f"unknown directive {head!r}")
    if cur is not None:
        raise AlgebraFileError(last, f"missing 'end' for algebra {cur.name!r}")
    return out


def parse_algebra(text):
    """Parse a document holding exactly one algebra."""
    algebras = parse_algebras(text)
    if len(algebras) != 1:
        raise AlgebraFileError(1, f"expected exactly one algebra, found {len(algebras)}")
    return algebras[0]


def format_algebra(algebra):
    """Render ``algebra``; binary tables are written one row per line."""
    lab = algebra.labels
    for text in (algebra.name, *lab, *algebra.constants, *algebra.tables):
        if not text or "#" in text or text.split() != [text] or text in _DIRECTIVES:
            raise ValueError(f"{text!r} cannot be written as a name, label or symbol")
    lines = [f"algebra {algebra.name}", f"size {algebra.size}", "elements " + " ".join(lab)]
    for sym, v in algebra.constants.items():
        lines.append(f"const {sym} = {lab[v]}")
    n = algebra.size
    for sym, table in algebra.tables.items():
        arity = algebra.arities[sym]
        entries = [lab[v] for v in table]
        if arity == 1:
            lines.append(f"op {sym}/1 = " + " ".join(entries))
            continue
        row = n ** (arity - 1)
        lines.append(f"op {sym}/{arity} =")
        for i in range(0, len(entries), row):
            lines.append("    " + " ".join(entries[i:i + row]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_algebras(algebras):
    return "\n".join(format_algebra(a) for a in algebras)


def read_algebras(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebras(fh.read())


def write_algebras(path, algebras):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_algebras(algebras))
