"""Text grammar for univariate polynomials.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"

Division is only by nonzero constants.  Whitespace is ignored; errors carry
the byte offset of the offending character.
"""

import re
from fractions import Fraction

from .errors import LabError
from .exact import QQ, Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _error(pos, msg):
    err = LabError("PARSE_ERROR", f"{msg} at offset {pos}")
    err.offset = pos
    return err


class _Parser:
    def __init__(self, src, var, field, constants):
        self.src = src
        self.var = var
        self.field = field
        self.constants = constants or {}
        self.toks = []
        for m in _TOKEN.finditer(src):
            if m.group(0).strip() == "":
                continue
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            text = m.group(1) or m.group(2) or m.group(3)
            self.toks.append((kind, text, m.start(m.lastindex)))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.src.encode()))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def offset(self, tok):
        return len(self.src[: tok[2]].encode()) if tok[0] != "end" else tok[2]

    def parse(self):
        if not self.toks:
            raise _error(0, "empty input")
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise _error(self.offset(tok), f"unexpected {tok[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if rhs.degree() != 0:
                    raise _error(self.offset(op), "division by a non-constant")
                acc = acc.scale(self.field.one / rhs.coeffs[0])
        return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.peek()
            if exp[0] != "int":
                raise _error(self.offset(exp), "expected a non-negative integer exponent")
            self.take()
            return base ** int(exp[1])
        return base

    def atom(self):
        tok = self.take()
        kind, text, _ = tok
        if kind == "int":
            return Poly([self.field(Fraction(int(text)))], self.field)
        if kind == "name":
            if text == self.var:
                return Poly.x(self.field)
            if text in self.constants:
                return Poly([self.field(self.constants[text])], self.field)
            raise _error(self.offset(tok), f"unknown name {text!r}")
        if kind == "op" and text == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")" or close[0] != "op":
                raise _error(self.offset(close), "expected ')'")
            return inner
        raise _error(self.offset(tok), f"unexpected {text or 'end of input'!r}")


def parse_poly(src, var="x", field=QQ, constants=None):
    """Parse src into a Poly in ``var`` over ``field``; ``constants`` maps names to field elements."""
    return _Parser(src, var, field, constants).parse()


def parse_rational(src):
    try:
        return Fraction(src.strip())
    except (ValueError, ZeroDivisionError):
        raise LabError("PARSE_ERROR", f"not a rational number: {src!r}") from None
