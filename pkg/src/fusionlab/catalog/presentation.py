"""Parser for finitely presented groups.

Grammar (one presentation per text, ``#`` starts a comment)::

    gens: a b c
    rels: a^3, b^8, b^-1 a b = a^-1,
          (a b)^2

``rels:`` may span several lines; relators are separated by commas.  A
relation ``u = v`` is stored as the relator ``u v^-1``.  Words are
space-separated factors ``name['^' int]`` or ``'(' word ')' ['^' int]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FusionLabError

# a letter is (generator index, +1 or -1)
Letter = tuple[int, int]
Word = tuple[Letter, ...]


class PresentationError(FusionLabError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def word_str(self, w: Word) -> str:
        return " ".join(self.generators[g] + ("" if e == 1 else "^-1") for g, e in w)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()^,=])|(?P<int>-?\d+))")


def _free_reduce(w: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return out


def _invert(w: list[Letter]) -> list[Letter]:
    return [(g, -e) for g, e in reversed(w)]


def _power(w: list[Letter], n: int) -> list[Letter]:
    if n < 0:
        w, n = _invert(w), -n
    return w * n


class _RelParser:
    def __init__(self, gens: dict[str, int], tokens: list[tuple[str, str, int, int]]):
        self.gens = gens
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek() or (self.tokens[-1] if self.tokens else ("", "", 1, 1))
        raise PresentationError(msg, tok[2], tok[3])

    def exponent(self) -> int:
        tok = self.peek()
        if tok is None or tok[1] != "^":
            return 1
        self.take()
        num = self.take()
        if num is None or num[0] != "int":
            self.error("malformed exponent", num)
        n = int(num[1])
        if n == 0:
            self.error("exponent must be nonzero", num)
        return n

    def word(self) -> list[Letter]:
        out: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "op" and tok[1] in ",=)"):
                return out
            self.take()
            if tok[0] == "name":
                if tok[1] not in self.gens:
                    self.error(f"unknown generator {tok[1]!r}", tok)
                out += _power([(self.gens[tok[1]], 1)], self.exponent())
            elif tok[1] == "(":
                inner = self.word()
                close = self.take()
                if close is None or close[1] != ")":
                    self.error("missing ')'", close)
                out += _power(inner, self.exponent())
            else:
                self.error(f"unexpected {tok[1]!r}", tok)

    def relators(self) -> list[list[Letter]]:
        rels = []
        while self.peek() is not None:
            start = self.peek()
            lhs = self.word()
            tok = self.peek()
            if tok is not None and tok[1] == "=":
                self.take()
                rhs = self.word()
                lhs = lhs + _invert(rhs)
            rel = _free_reduce(lhs)
            if not rel:
                self.error("empty relator", start)
            rels.append(rel)
            tok = self.take()
            if tok is not None and tok[1] != ",":
                self.error(f"expected ',' but found {tok[1]!r}", tok)
        return rels


def _tokenize(text: str, line: int, col0: int) -> list[tuple[str, str, int, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PresentationError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(("op" if kind == "op" else kind, m.group(kind), line, col0 + start + 1))
        pos = m.end()
    return out


def parse_presentation(text: str) -> Presentation:
    gens: list[str] | None = None
    rel_tokens: list[tuple[str, str, int, int]] = []
    in_rels = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        offset = len(line) - len(line.lstrip())
        if stripped.startswith("gens:"):
            names = stripped[5:].split()
            for n in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                    raise PresentationError(f"bad generator name {n!r}", lineno, offset + line.lstrip().find(n) + 1)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator name", lineno, offset + 1)
            gens = names
            in_rels = False
        elif stripped.startswith("rels:"):
            if gens is None:
                raise PresentationError("'rels:' before 'gens:'", lineno, offset + 1)
            in_rels = True
            col = line.index("rels:") + 5
            rel_tokens += _tokenize(line[col:], lineno, col)
        elif in_rels:
            rel_tokens += _tokenize(line, lineno, 0)
        else:
            raise PresentationError("expected 'gens:' or 'rels:'", lineno, offset + 1)
    if gens is None:
        raise PresentationError("missing 'gens:' header", 1, 1)
    parser = _RelParser({g: i for i, g in enumerate(gens)}, rel_tokens)
    rels = parser.relators()
    return Presentation(tuple(gens), tuple(tuple(r) for r in rels))


def gm_presentation(m: int) -> str:
    return f"gens: a b\nrels: a^3, b^{2**m}, b^-1 a b = a^-1\n"
