"""Scalar expression grammar.

::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('-'|'+') unary | factor
    factor := base ('^' uint)?
    base   := rational-literal | identifier | '(' expr ')'

Parsing produces a small tuple AST which can be folded either into a
:class:`~bihom.scalar.Scalar` or, given numeric values for the parameters,
straight into a ``Fraction``.  The second route never touches the polynomial
engine; the numeric oracle relies on that.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DivisionByZero, ExprSyntaxError, MissingAssignment, PoleAtPoint, UnknownIdentifier
from .scalar import ONE, Scalar, format_scalar

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, _byte_offset(text, m.start(3)))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _byte_offset(text: str, idx: int) -> int:
    return len(text[:idx].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok):
        raise ExprSyntaxError(msg, self.text, _byte_offset(self.text, tok[2]))

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression", self.peek())
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}", self.peek())
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return ("neg", inner) if tok[1] == "-" else inner
        return self.factor()

    def factor(self):
        node = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.fail("exponent must be an unsigned integer", tok)
            node = ("pow", node, int(tok[1]))
        return node

    def base(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return ("num", Fraction(val))
        if kind == "id":
            return ("var", val, tok[2])
        if kind == "op" and val == "(":
            node = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail("expected ')'", close)
            return node
        self.fail("expected a number, identifier or '('", tok)


@lru_cache(maxsize=4096)
def parse_ast(text: str):
    """Parse ``text`` into a tuple AST (cached)."""
    return _Parser(text).parse()


def identifiers(node) -> set:
    kind = node[0]
    if kind == "var":
        return {node[1]}
    if kind == "num":
        return set()
    if kind in ("neg",):
        return identifiers(node[1])
    if kind == "pow":
        return identifiers(node[1])
    return identifiers(node[1]) | identifiers(node[2])


def _to_scalar(node) -> Scalar:
    kind = node[0]
    if kind == "num":
        return Scalar.from_rational(node[1])
    if kind == "var":
        return Scalar.variable(node[1])
    if kind == "neg":
        return -_to_scalar(node[1])
    if kind == "pow":
        return _to_scalar(node[1]) ** node[2] if node[2] else ONE
    a, b = _to_scalar(node[1]), _to_scalar(node[2])
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if b.is_zero():
        raise DivisionByZero("division by zero in expression")
    return a / b


def _to_rational(node, env) -> Fraction:
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise MissingAssignment(node[1]) from None
    if kind == "neg":
        return -_to_rational(node[1], env)
    if kind == "pow":
        return _to_rational(node[1], env) ** node[2]
    a, b = _to_rational(node[1], env), _to_rational(node[2], env)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if not b:
        raise PoleAtPoint("division by zero at the evaluation point")
    return a / b


def _check_identifiers(text: str, node, parameters):
    if parameters is None:
        return
    allowed = set(parameters)
    for name in identifiers(node):
        if name not in allowed:
            idx = re.search(rf"(?<![A-Za-z0-9_]){re.escape(name)}(?![A-Za-z0-9_])", text)
            raise UnknownIdentifier(name, _byte_offset(text, idx.start()) if idx else None)


@lru_cache(maxsize=8192)
def _parse_scalar_cached(text: str, parameters) -> Scalar:
    node = parse_ast(text)
    _check_identifiers(text, node, parameters)
    return _to_scalar(node)


def parse_scalar(text, parameters: Iterable[str] | None = None) -> Scalar:
    """Parse an expression into a canonical Scalar.

    ``parameters`` restricts the identifiers that may appear; ``None`` accepts
    any identifier.
    """
    if isinstance(text, (int, Fraction)):
        return Scalar.from_rational(text)
    if not isinstance(text, str):
        raise TypeError(f"expected expression text, got {type(text).__name__}")
    params = None if parameters is None else tuple(sorted(set(parameters)))
    return _parse_scalar_cached(text, params)


def eval_expr(text, env: Mapping[str, Fraction]) -> Fraction:
    """Evaluate expression text numerically without building polynomials."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return _to_rational(parse_ast(text), env)


def print_scalar(s: Scalar) -> str:
    return format_scalar(s)
