"""Polynomial expression parser, printer and the ``.ideal`` file format.

Grammar: integers, variable names, ``+ - * ^ /`` and parentheses.  There
is no implicit multiplication; ``/`` only divides by a nonzero constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coeff import FieldError, FieldSpec
from .ring import GREVLEX, Polynomial, RingError, RingSpec


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class _Tok:
    kind: str  # int, name, op, end
    text: str
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or not m.group(0).strip():
            break
        col = m.start(m.lastindex) + 1
        if m.group(1):
            toks.append(_Tok("int", m.group(1), col))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(_Tok("op", ch, col))
        pos = m.end()
    toks.append(_Tok("end", "", len(text.rstrip()) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, ring: RingSpec, line: int):
        self.ring = ring
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            self.fail("empty expression")
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            if t.kind in ("int", "name") or t.text == "(":
                self.fail(f"expected an operator before {t.text!r}")
            self.fail(f"unexpected {t.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("can only divide by a nonzero constant", self.line, op.col)
                (c,) = q._terms.values()
                p = p.scale(self.ring.field.inv(c))
        return p

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            p = self.unary()
            return -p if t.text == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", self.line, t.col)
            p = p ** int(t.text)
        return p

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return self.ring.const(int(t.text))
        if t.kind == "name":
            if t.text not in self.ring.variables:
                raise ParseError(f"unknown variable {t.text!r}", self.line, t.col)
            return self.ring.var(t.text)
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            close = self.take()
            if close.text != ")":
                raise ParseError("expected ')'", self.line, close.col)
            return p
        if t.kind == "end":
            raise ParseError("unexpected end of expression", self.line, t.col)
        raise ParseError(f"unexpected {t.text!r}", self.line, t.col)


def parse_poly(text: str, ring: RingSpec, line: int = 1) -> Polynomial:
    return _Parser(text, ring, line).parse()


def _coeff_text(fld: FieldSpec, c) -> str:
    c = fld.signed(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return str(c)


def print_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    ring = f.ring
    fld = ring.field
    parts = []
    for exps, c in f.sorted_items(GREVLEX):
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, exps) if e
        )
        ctext = _coeff_text(fld, c)
        neg = ctext.startswith("-")
        if neg:
            ctext = ctext[1:]
        if mono:
            body = mono if ctext == "1" else f"{ctext}*{mono}"
        else:
            body = ctext
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_HEADER = re.compile(r"^ring\s+(\S+)\s+\[([^\]]*)\]\s+(\S+)\s*$")


def parse_ring_header(text: str, line: int = 1) -> RingSpec:
    m = _HEADER.match(text.strip())
    if not m:
        raise ParseError("expected 'ring <p|QQ> [w1,...] name1,...'", line, 1)
    try:
        fld = FieldSpec.parse(m.group(1))
    except FieldError as e:
        raise ParseError(str(e), line, text.index(m.group(1)) + 1) from None
    try:
        weights = [int(w) for w in m.group(2).split(",")]
    except ValueError:
        raise ParseError("weights must be integers", line, text.index("[") + 2) from None
    names = m.group(3).split(",")
    try:
        return RingSpec(tuple(names), tuple(weights), fld)
    except RingError as e:
        raise ParseError(str(e), line, 1) from None


def read_ideal_text(text: str) -> tuple[RingSpec, list[Polynomial]]:
    ring = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ring is None:
            ring = parse_ring_header(body, lineno)
            continue
        gens.append(parse_poly(body, ring, lineno))
    if ring is None:
        raise ParseError("missing ring header", 1, 1)
    return ring, gens


def format_ideal(ring: RingSpec, gens, comment: str | None = None) -> str:
    lines = [str(ring)]
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [print_poly(g) for g in gens]
    return "\n".join(lines) + "\n"


def read_ideal_file(path) -> tuple[RingSpec, list[Polynomial]]:
    with open(path) as fh:
        return read_ideal_text(fh.read())


def write_ideal_file(path, ring: RingSpec, gens, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_ideal(ring, gens, comment))
