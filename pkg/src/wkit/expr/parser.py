"""Recursive-descent parser for the expression grammar.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" INT)?
    primary := INT | "p" | "X" INT | "t" ("^" (INT | "(" rational ")"))?
             | NAME "(" args ")" | NAME | "(" expr ")"

Calls: gamma(e), wp(e), inv(e), kfrac(f; g), sosinv(e1, e2, ...).
Any other bare name is a series atom supplied by the caller.
"""

import re
from fractions import Fraction

from ..errors import ArityError, ExprSyntaxError
from .ast import Add, Div, Gamma, Inv, KFrac, Mul, Neg, Num, Param, Pow, SeriesAtom, SosInv, Sub, TPow, Var, Wp

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))", re.S)

_UNARY_CALLS = {"gamma": Gamma, "wp": Wp, "inv": Inv}
_CALLS = set(_UNARY_CALLS) | {"kfrac", "sosinv"}


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def describe(self):
        return "end of input" if self.kind == "eof" else repr(self.text)


def _tokenize(src):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while True:
        m = _TOKEN.match(src, pos)
        skipped = src[pos : m.start(m.lastindex)] if m and m.lastindex else src[pos:]
        for i, ch in enumerate(skipped):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        if not m or m.lastindex is None:
            tokens.append(_Token("eof", "", line, len(src) - line_start + 1))
            return tokens
        start = m.start(m.lastindex)
        col = start - line_start + 1
        if m.group(1):
            tokens.append(_Token("int", m.group(1), line, col))
        elif m.group(2):
            tokens.append(_Token("name", m.group(2), line, col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),;":
                raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
            tokens.append(_Token("op", ch, line, col))
        pos = m.end()


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def _fail(self, expected, message=None):
        tok = self.tok
        raise ExprSyntaxError(message or f"unexpected {tok.describe()}", tok.line, tok.column, expected)

    def _at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    def _expect(self, text):
        if not self._at(text):
            self._fail([text])
        self.i += 1

    def parse(self):
        if self.tok.kind == "eof":
            self._fail(["expression"], "empty expression")
        node = self.expr()
        if self._at("^"):
            self._fail(["+", "-", "*", "/", "end of input"], "exponent towers need parentheses")
        if self.tok.kind != "eof":
            self._fail(["+", "-", "*", "/", "^", "end of input"])
        return node

    def expr(self):
        node = self.term()
        while self._at("+") or self._at("-"):
            op = self.tok.text
            self.i += 1
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self):
        node = self.unary()
        while self._at("*") or self._at("/"):
            op = self.tok.text
            self.i += 1
            tok = self.tok
            right = self.unary()
            if op == "/":
                if isinstance(right, Num) and right.value == 0:
                    raise ExprSyntaxError("division by a literal zero", tok.line, tok.column)
                node = Div(node, right)
            else:
                node = Mul(node, right)
        return node

    def unary(self):
        if self._at("-"):
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def _int(self):
        if self.tok.kind != "int":
            self._fail(["integer"])
        value = int(self.tok.text)
        self.i += 1
        return value

    def power(self):
        base = self.primary()
        if self._at("^"):
            self.i += 1
            return Pow(base, self._int())
        return base

    def _t_exponent(self):
        if self._at("("):
            self.i += 1
            sign = 1
            if self._at("-"):
                self.i += 1
                sign = -1
            q = Fraction(self._int())
            if self._at("/"):
                self.i += 1
                den = self._int()
                if den == 0:
                    self._fail(["nonzero integer"], "zero denominator in exponent")
                q /= den
            self._expect(")")
            return sign * q
        return Fraction(self._int())

    def primary(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if self._at("("):
            self.i += 1
            node = self.expr()
            self._expect(")")
            return node
        if tok.kind != "name":
            self._fail(["integer", "name", "(", "-"])
        name = tok.text
        self.i += 1
        if name == "p":
            return Param()
        if name == "t":
            if self._at("^"):
                self.i += 1
                return TPow(self._t_exponent())
            return TPow(Fraction(1))
        if re.fullmatch(r"X[1-9][0-9]*", name):
            return Var(int(name[1:]))
        if self._at("("):
            if name not in _CALLS:
                raise ExprSyntaxError(f"unknown function {name!r}", tok.line, tok.column, sorted(_CALLS))
            return self.call(name, tok)
        if name in _CALLS:
            self._fail(["("])
        return SeriesAtom(name)

    def call(self, name, tok):
        self._expect("(")
        if name == "kfrac":
            first = self.expr()
            if self._at(","):
                raise ArityError(f"kfrac takes 'f; g' (line {tok.line}, column {tok.column})")
            self._expect(";")
            second = self.expr()
            self._expect(")")
            return KFrac(first, second)
        args = [self.expr()]
        while self._at(","):
            self.i += 1
            args.append(self.expr())
        if self._at(";"):
            raise ArityError(f"{name} does not take ';' (line {tok.line}, column {tok.column})")
        self._expect(")")
        if name == "sosinv":
            return SosInv(tuple(args))
        if len(args) != 1:
            raise ArityError(f"{name} takes one argument, got {len(args)} (line {tok.line}, column {tok.column})")
        return _UNARY_CALLS[name](args[0])


def parse_expression(src):
    """Parse text into an expression tree; raises ExprSyntaxError or ArityError."""
    return _Parser(src).parse()
