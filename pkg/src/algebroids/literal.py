"""Parser for the scalar literal grammar.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | INT '/' INT | IDENT | '(' expr ')' | 'exp' '(' ['-'|'+'] (INT '*' 't' | 't') ')'

Division by anything other than an exp-free value is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .scalar import LINE_VAR, Scalar

__all__ = ["LiteralSyntaxError", "UnknownVariableError", "parse_scalar"]


class LiteralSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnknownVariableError(LiteralSyntaxError):
    pass


# U+2212 reads as '-'
_MINUS_ALIASES = {"\u2212": "-"}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class _Tok:
    kind: str  # "int", "ident", "op", "end"
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), col0 + start))
        elif m.group(2) is not None:
            toks.append(_Tok("ident", m.group(2), col0 + start))
        else:
            ch = _MINUS_ALIASES.get(m.group(3), m.group(3))
            if ch not in "+-*/^()":
                raise LiteralSyntaxError(f"unexpected character {ch!r}", line, col0 + start)
            toks.append(_Tok("op", ch, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables, line: int, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line
        self.variables = None if variables is None else tuple(variables)
        self.ring_vars = self.variables or ()

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise LiteralSyntaxError(msg, self.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.take()

    def parse(self) -> Scalar:
        if self.peek().kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    self.fail("division by zero", tok)
                if not rhs.is_exp_free() and len(rhs.bands) != 1:
                    self.fail("division by a multi-band exponential", tok)
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            value = self.unary()
            return -value if tok.text == "-" else value
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "int":
                self.fail("exponent must be a non-negative integer literal")
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self) -> Scalar:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return Scalar.const(int(tok.text), self.ring_vars)
        if tok.kind == "ident":
            self.take()
            if tok.text == "exp":
                return self.exp_call()
            if self.variables is not None and tok.text not in self.variables and tok.text != LINE_VAR:
                raise UnknownVariableError(f"unknown variable {tok.text!r}", self.line, tok.col)
            return Scalar.var(tok.text, self.ring_vars)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        self.fail(f"unexpected {tok.text or 'end of input'!r}")

    def exp_call(self) -> Scalar:
        self.expect("(")
        sign = 1
        if self.peek().kind == "op" and self.peek().text in "+-":
            sign = -1 if self.take().text == "-" else 1
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            k = int(tok.text)
            self.expect("*")
            tvar = self.peek()
            if tvar.kind != "ident" or tvar.text != LINE_VAR:
                self.fail("exp argument must be k*t with an integer literal k", tvar)
            self.take()
        elif tok.kind == "ident" and tok.text == LINE_VAR:
            self.take()
            k = 1
        else:
            self.fail("exp argument must be k*t with an integer literal k", tok)
        self.expect(")")
        return Scalar.exp(sign * k, self.ring_vars)


def parse_scalar(text, variables: Iterable[str] | None = None, line: int = 1, column: int = 1) -> Scalar:
    """Parse one scalar literal.

    ``variables`` restricts the admissible identifiers (``t`` is always
    admissible); ``line``/``column`` offset error positions when the literal
    sits inside a larger file.
    """
    if isinstance(text, bool):
        raise LiteralSyntaxError("booleans are not scalars", line, column)
    if isinstance(text, int):
        return Scalar.const(text, variables or ())
    return _Parser(str(text), variables, line, column).parse()
