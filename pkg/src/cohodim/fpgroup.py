"""Finitely presented groups: words, presentations, a text parser, and
presentation-level constructions (free/amalgamated products, quotients).

Text syntax::

    < x, y, z | x^z = x^-1, y^z = y^-1, [x,y] = z^4 >

``a^k`` is a power, ``a^b`` is the conjugate b^-1 a b, ``[a,b]`` is
a^-1 b^-1 a b, juxtaposition or ``*`` multiplies, ``1`` is the identity and
``u = v`` becomes the relator u v^-1.  ``^`` binds tighter than
multiplication.  A file may hold one bare presentation or several named
blocks ``name := < ... >``; ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "ParseError",
    "Word",
    "Presentation",
    "free_reduce",
    "parse_presentation",
    "parse_presentations",
    "parse_word",
    "format_presentation",
    "format_word",
    "abelianized_relation_matrix",
    "free_product",
    "amalgamated_product",
    "quotient_by_normal_closure",
]


class ParseError(ValueError):
    """Malformed presentation text.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.line = self.column = None
        if position is not None and text is not None:
            self.line = text.count("\n", 0, position) + 1
            self.column = position - (text.rfind("\n", 0, position) + 1) + 1
            message = f"{message} (line {self.line}, column {self.column})"
        elif position is not None:
            message = f"{message} (offset {position})"
        super().__init__(message)


def free_reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Freely reduce a sequence of (generator, exponent) syllables."""
    out: list[tuple[int, int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            e = out[-1][1] + exp
            out.pop()
            if e:
                out.append((gen, e))
        else:
            out.append((gen, exp))
    return tuple(out)


class Word:
    """A freely reduced word, stored as (generator index, exponent) syllables."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "letters", free_reduce((int(g), int(e)) for g, e in letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "Word":
        return cls([(index, exponent)])

    @classmethod
    def from_ints(cls, seq: Iterable[int]) -> "Word":
        """Build from signed letters: +k is generator k-1, -k its inverse."""
        return cls((abs(s) - 1, 1 if s > 0 else -1) for s in seq)

    def to_ints(self) -> list[int]:
        out = []
        for g, e in self.letters:
            s = g + 1 if e > 0 else -(g + 1)
            out.extend([s] * abs(e))
        return out

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def conjugate(self, by: "Word") -> "Word":
        """``self^by`` = by^-1 * self * by."""
        return by.inverse() * self * by

    def commutator(self, other: "Word") -> "Word":
        return self.inverse() * other.inverse() * self * other

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Word({list(self.letters)!r})"


IDENTITY = Word()


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = field(default_factory=tuple)

    def __post_init__(self):
        names = tuple(self.generator_names)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for r in self.relators:
            if r.max_generator() >= len(names):
                raise ValueError(f"relator {r!r} uses a generator outside 0..{len(names) - 1}")

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    def index(self, name: str) -> int:
        return self.generator_names.index(name)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def __str__(self) -> str:
        return format_presentation(self)


# --------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<assign>:=)
  | (?P<int>\d+)
  | (?P<ident>[^\W\d]\w*'*)
  | (?P<punct>[<>|,\[\]()*^=\-])
    """,
    re.VERBOSE | re.UNICODE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            tokens.append((value if kind == "punct" else kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.names: dict[str, int] = {}

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message: str, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok[2], self.text)

    def expect(self, kind: str, what: str | None = None):
        if self.tok[0] != kind:
            found = self.tok[1] or "end of input"
            raise self.error(f"expected {what or repr(kind)}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def accept(self, kind: str) -> bool:
        if self.tok[0] == kind:
            self.i += 1
            return True
        return False

    # presentation := '<' [ident (',' ident)*] '|' [relation (',' relation)*] '>'
    def presentation(self) -> Presentation:
        self.expect("<", "'<'")
        names: list[str] = []
        if self.tok[0] != "|":
            while True:
                if self.tok[0] != "ident":
                    raise self.error("empty or malformed generator list entry")
                tok = self.expect("ident")
                if tok[1] in names:
                    raise self.error(f"duplicate generator {tok[1]!r}", tok)
                names.append(tok[1])
                if not self.accept(","):
                    break
        self.expect("|", "'|'")
        self.names = {n: k for k, n in enumerate(names)}
        relators: list[Word] = []
        if self.tok[0] != ">":
            while True:
                relators.extend(self.relation())
                if not self.accept(","):
                    break
        self.expect(">", "'>' or ','")
        return Presentation(tuple(names), tuple(relators))

    # relation := word ('=' word)*
    def relation(self) -> list[Word]:
        sides = [self.word()]
        while self.accept("="):
            sides.append(self.word())
        if len(sides) == 1:
            return [sides[0]]
        return [a * b.inverse() for a, b in zip(sides, sides[1:])]

    _STARTS = {"ident", "int", "(", "["}

    # word := power (['*'] power)*
    def word(self) -> Word:
        if self.tok[0] not in self._STARTS:
            raise self.error("expected a word")
        w = self.power()
        while True:
            if self.accept("*"):
                w = w * self.power()
            elif self.tok[0] in self._STARTS:
                w = w * self.power()
            else:
                return w

    # power := atom ('^' (['-'] int | atom))*
    def power(self) -> Word:
        w = self.atom()
        while self.tok[0] == "^":
            caret = self.tok
            self.i += 1
            if self.accept("-"):
                if self.tok[0] != "int":
                    raise self.error("malformed exponent after '^-'", caret)
                w = w ** -int(self.expect("int")[1])
            elif self.tok[0] == "int":
                w = w ** int(self.expect("int")[1])
            elif self.tok[0] in ("ident", "(", "["):
                w = w.conjugate(self.atom())
            else:
                raise self.error("malformed exponent after '^'", caret)
        return w

    # atom := ident | '1' | '(' word ')' | '[' word ',' word ']'
    def atom(self) -> Word:
        kind, value, _ = self.tok
        if kind == "ident":
            if value not in self.names:
                raise self.error(f"unknown generator {value!r}")
            self.i += 1
            return Word.gen(self.names[value])
        if kind == "int":
            if value != "1":
                raise self.error(f"integer {value} is not a word (only 1 denotes the identity)")
            self.i += 1
            return IDENTITY
        if kind == "(":
            self.i += 1
            w = self.word()
            self.expect(")", "')'")
            return w
        if kind == "[":
            self.i += 1
            a = self.word()
            self.expect(",", "',' inside commutator")
            b = self.word()
            self.expect("]", "']'")
            return a.commutator(b)
        raise self.error(f"unexpected {value or 'end of input'!r}")


def parse_presentation(text: str) -> Presentation:
    """Parse a single presentation ``< gens | relations >``."""
    p = _Parser(text)
    pres = p.presentation()
    p.expect("eof", "end of input")
    return pres


def parse_presentations(text: str) -> dict[str, Presentation]:
    """Parse a file body: one bare presentation (key ``""``) or named blocks."""
    p = _Parser(text)
    if p.tok[0] == "<":
        pres = p.presentation()
        p.expect("eof", "end of input")
        return {"": pres}
    out: dict[str, Presentation] = {}
    while p.tok[0] != "eof":
        name = p.expect("ident", "block name")
        p.expect("assign", "':='")
        if name[1] in out:
            raise p.error(f"duplicate block {name[1]!r}", name)
        out[name[1]] = p.presentation()
    if not out:
        raise p.error("no presentation found")
    return out


def parse_word(text: str, generator_names: Sequence[str]) -> Word:
    """Parse a single word over the given generator names."""
    p = _Parser(text)
    p.names = {n: k for k, n in enumerate(generator_names)}
    w = p.word()
    p.expect("eof", "end of input")
    return w


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    return "*".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.letters)


def format_presentation(p: Presentation) -> str:
    gens = ", ".join(p.generator_names)
    rels = ", ".join(format_word(r, p.generator_names) for r in p.relators)
    return f"< {gens} | {rels} >".replace("<  |", "< |").replace("|  >", "| >")


# --------------------------------------------------------------------------
# Constructions


def abelianized_relation_matrix(p: Presentation):
    """Exponent-sum matrix: one row per relator, one column per generator."""
    from .abgroup import IntMatrix

    n = p.num_generators
    rows = []
    for r in p.relators:
        row = [0] * n
        for g, e in r.letters:
            row[g] += e
        rows.append(row)
    return IntMatrix.from_rows(rows, cols=n)


def _unique_names(taken: set[str], names: Sequence[str], suffix: str) -> list[str]:
    out = []
    for name in names:
        new = name
        while new in taken:
            new = f"{new}_{suffix}"
        taken.add(new)
        out.append(new)
    return out


def _shift(w: Word, offset: int) -> Word:
    return Word((g + offset, e) for g, e in w.letters)


def free_product(p1: Presentation, p2: Presentation) -> Presentation:
    """Free product; colliding generator names of ``p2`` get a ``_2`` suffix."""
    return amalgamated_product(p1, p2, Presentation(()), [], [])


def amalgamated_product(
    p1: Presentation,
    p2: Presentation,
    a: Presentation,
    f1: Sequence[Word],
    f2: Sequence[Word],
) -> Presentation:
    """Pushout of ``p1 <- a -> p2``.

    ``f1[k]`` and ``f2[k]`` are the images of generator k of ``a`` as words in
    ``p1`` and ``p2``.  The homomorphism property is not checked; relators of
    ``a`` play no role in the result.
    """
    if len(f1) != a.num_generators or len(f2) != a.num_generators:
        raise ValueError(
            f"need {a.num_generators} images per side, got {len(f1)} and {len(f2)}"
        )
    for w in f1:
        if w.max_generator() >= p1.num_generators:
            raise ValueError(f"image {w!r} is not a word in the first factor")
    for w in f2:
        if w.max_generator() >= p2.num_generators:
            raise ValueError(f"image {w!r} is not a word in the second factor")
    taken = set(p1.generator_names)
    names = list(p1.generator_names) + _unique_names(taken, p2.generator_names, "2")
    off = p1.num_generators
    relators = list(p1.relators) + [_shift(r, off) for r in p2.relators]
    relators += [u * _shift(v, off).inverse() for u, v in zip(f1, f2)]
    return Presentation(tuple(names), tuple(r for r in relators))


def quotient_by_normal_closure(p: Presentation, killers: Sequence[Word]) -> Presentation:
    """Append ``killers`` as relators, i.e. pass to G / <<killers>>."""
    for w in killers:
        if w.max_generator() >= p.num_generators:
            raise ValueError(f"killer {w!r} references a generator outside the presentation")
    return Presentation(p.generator_names, p.relators + tuple(killers))
