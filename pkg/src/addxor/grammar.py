"""Text syntax for expressions.

::

    expr     := xorchain
    xorchain := addchain ( "^" addchain )*
    addchain := atom ( "+" atom )*
    atom     := var | int "*" atom | "[" expr "," expr "]"
              | "circ(" expr "," expr ")" | "(" expr ")"

Variables are lowercase identifiers.  Unless told otherwise, the
variables of a text are numbered in sorted order.
"""

from __future__ import annotations

import re
from typing import Sequence

from .errors import ExprSyntaxError, UnknownVariable
from .expr import Add, Expr, Var, Xor, commutator_expr, multiple
from .synth import synthesize_circ
from .word import Modulus

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-z][a-z0-9_]*)|(?P<op>[+^*\[\](),=]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into ``(kind, text, offset)``; kind is ``int``, ``name``, ``op`` or ``end``."""
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def scan_variables(text: str) -> list[str]:
    """Sorted variable names used in ``text`` (``circ`` calls excluded)."""
    toks = tokenize(text)
    names = set()
    for n, (kind, val, _) in enumerate(toks):
        if kind == "name" and not (val == "circ" and toks[n + 1][1] == "("):
            names.add(val)
    return sorted(names, key=lambda s: (len(s), s))


class _Parser:
    def __init__(self, text: str, modulus: Modulus, names: Sequence[str], reduce_multiples: bool) -> None:
        self.toks = tokenize(text)
        self.pos = 0
        self.modulus = modulus
        self.index = {name: i for i, name in enumerate(names)}
        self.reduce = reduce_multiples

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.pos]

    def take(self, op: str | None = None) -> tuple[str, str, int]:
        tok = self.toks[self.pos]
        if op is not None and tok[1] != op:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {op!r}, found {found}", tok[2])
        self.pos += 1
        return tok

    def expr(self) -> Expr:
        out = self.addchain()
        while self.peek()[1] == "^":
            self.take()
            out = Xor(out, self.addchain())
        return out

    def addchain(self) -> Expr:
        out = self.atom()
        while self.peek()[1] == "+":
            self.take()
            out = Add(out, self.atom())
        return out

    def atom(self) -> Expr:
        kind, val, off = self.peek()
        if kind == "int":
            self.take()
            self.take("*")
            operand = self.atom()
            return multiple(int(val), operand, self.modulus.q if self.reduce else None)
        if kind == "name":
            self.take()
            if val == "circ" and self.peek()[1] == "(":
                self.take("(")
                a = self.expr()
                self.take(",")
                b = self.expr()
                self.take(")")
                return synthesize_circ(a, b, self.modulus)
            if val not in self.index:
                raise UnknownVariable(f"unknown variable {val!r} at offset {off}")
            return Var(self.index[val])
        if val == "[":
            self.take()
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return commutator_expr(a, b)
        if val == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"unexpected {found}", off)


def parse(
    text: str,
    modulus: Modulus,
    names: Sequence[str] | None = None,
    *,
    reduce_multiples: bool = True,
) -> Expr:
    """Parse ``text`` into an :class:`~addxor.expr.Expr`.

    ``n*e`` becomes an ``n``-fold sum, with ``n`` reduced mod q unless
    ``reduce_multiples`` is false (then ``q*x`` really is ``q`` copies of
    ``x``).  ``[a,b]`` expands to the commutator and ``circ(a,b)`` to a
    synthesized ADD/XOR expression for ``2 (a AND b)``.
    """
    names = scan_variables(text) if names is None else list(names)
    p = _Parser(text, modulus, names, reduce_multiples)
    out = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {val!r}", off)
    return out
