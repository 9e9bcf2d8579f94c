"""Expression language for operators in scenario files.

Grammar (lowest precedence first)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | primary
    primary := NUMBER | NUMBER 'i' | '(' expr ')'
             | 'sigma_x' | 'sigma_y' | 'sigma_z'
             | NAME '(' expr (',' expr)* ')'

Functions: ``id(n)``, ``kron(a, b, ...)``, ``adj(a)`` and the catalog models
``pt_dimer(gamma, v)``, ``decay(gamma, n)``, ``chain(n, j, g)``,
``proj(k, n)``.  Complex literals are written ``a+bi`` (``0.5i``, ``1-2i``);
there is no bare ``i``.  Scalar-only subexpressions are folded while
parsing, so ``0.5 + 0.25i`` becomes a single literal.

Grammar version: 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import (DimMismatch, ExprError, ExprSyntaxError, NHError,
                     UnknownSymbol)
from .models import CATALOG, MAX_DIM, builtin_model
from .operators import SIGMA_X, SIGMA_Y, SIGMA_Z

GRAMMAR_VERSION = 1

Span = tuple[int, int]


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Scalar(Node):
    value: complex
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Atom(Node):
    name: str
    size: int | None = None
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Add(Node):
    terms: tuple[Node, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Mul(Node):
    factors: tuple[Node, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Scale(Node):
    factor: complex
    operand: Node
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Kron(Node):
    factors: tuple[Node, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Adjoint(Node):
    operand: Node
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Call(Node):
    """Catalog model call with folded numeric arguments."""

    name: str
    args: tuple[complex, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


ExprAst = Node

PAULI = {"sigma_x": SIGMA_X, "sigma_y": SIGMA_Y, "sigma_z": SIGMA_Z}
FUNCTIONS = ("id", "kron", "adj") + tuple(CATALOG)

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)(?![A-Za-z0-9_.])
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", (pos, pos + 1))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text:
            raise ExprSyntaxError(f"unexpected {self._describe(self.tok)}",
                                  (self.tok.start, self.tok.end), (repr(text),))
        return self.advance()

    @staticmethod
    def _describe(t: _Tok) -> str:
        return "end of input" if t.kind == "eof" else repr(t.text)

    def parse(self) -> Node:
        if not self.text.strip():
            raise ExprSyntaxError("empty expression", (0, 0), ("operand",))
        node = self.expr()
        if self.tok.kind != "eof":
            raise ExprSyntaxError(f"unexpected {self._describe(self.tok)}",
                                  (self.tok.start, self.tok.end), ("'+'", "'-'", "'*'", "end of input"))
        return node

    def expr(self) -> Node:
        start = self.tok.start
        terms = [self.term()]
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            t = self.term()
            terms.append(_negate(t) if op == "-" else t)
        if len(terms) == 1:
            return terms[0]
        span = (start, self.toks[self.i - 1].end)
        if all(isinstance(t, Scalar) for t in terms):
            return Scalar(sum(t.value for t in terms), span)
        return Add(tuple(terms), span)

    def term(self) -> Node:
        start = self.tok.start
        factors = [self.unary()]
        while self.tok.text == "*":
            self.advance()
            factors.append(self.unary())
        if len(factors) == 1:
            return factors[0]
        span = (start, self.toks[self.i - 1].end)
        coeff, has_coeff, ops = 1 + 0j, False, []
        for f in factors:
            if isinstance(f, Scalar):
                coeff *= f.value
                has_coeff = True
            else:
                ops.append(f)
        if not ops:
            return Scalar(coeff, span)
        body = ops[0] if len(ops) == 1 else Mul(tuple(ops), span)
        return Scale(coeff, body, span) if has_coeff else body

    def unary(self) -> Node:
        if self.tok.text == "-":
            start = self.advance().start
            inner = self.unary()
            return _negate(inner, (start, inner.span[1]))
        return self.primary()

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            if t.text.endswith("i"):
                return Scalar(complex(0.0, float(t.text[:-1])), (t.start, t.end))
            return Scalar(complex(float(t.text)), (t.start, t.end))
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            self.advance()
            if t.text in PAULI:
                return Atom(t.text, None, (t.start, t.end))
            if t.text in FUNCTIONS:
                return self.call(t)
            raise UnknownSymbol(f"unknown symbol {t.text!r}", (t.start, t.end))
        raise ExprSyntaxError(f"unexpected {self._describe(t)}", (t.start, t.end),
                              ("number", "'('", "'-'", "symbol"))

    def call(self, name: _Tok) -> Node:
        self.expect("(")
        args = [self.expr()]
        while self.tok.text == ",":
            self.advance()
            args.append(self.expr())
        close = self.expect(")")
        span = (name.start, close.end)
        fn = name.text
        if fn == "kron":
            if len(args) < 2:
                raise ExprSyntaxError("kron takes at least two arguments", span)
            return Kron(tuple(args), span)
        if fn == "adj":
            if len(args) != 1:
                raise ExprSyntaxError("adj takes exactly one argument", span)
            return Adjoint(args[0], span)
        values = []
        for a in args:
            if not isinstance(a, Scalar):
                raise ExprSyntaxError(f"{fn} arguments must be numeric", a.span, ("number",))
            values.append(a.value)
        if fn == "id":
            if len(values) != 1:
                raise ExprSyntaxError("id takes exactly one argument", span)
            n = values[0]
            if n.imag != 0 or n.real != int(n.real) or not 1 <= n.real <= MAX_DIM:
                raise ExprSyntaxError(f"id dimension must be an integer in [1, {MAX_DIM}]",
                                      args[0].span)
            return Atom("id", int(n.real), span)
        return Call(fn, tuple(values), span)


def _negate(node: Node, span: Span | None = None) -> Node:
    span = span or node.span
    if isinstance(node, Scalar):
        return Scalar(-node.value, span)
    if isinstance(node, Scale):
        return Scale(-node.factor, node.operand, span)
    return Scale(-1 + 0j, node, span)


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


def _fmt_real(x: float) -> str:
    return repr(float(x))


def format_scalar(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return _fmt_real(z.real)
    im = f"{_fmt_real(abs(z.imag))}i"
    if z.real == 0:
        return f"-{im}" if z.imag < 0 else im
    sign = "-" if z.imag < 0 else "+"
    return f"({_fmt_real(z.real)}{sign}{im})"


def to_source(node: Node) -> str:
    """Print an AST so that ``parse_expression`` rebuilds an equal tree."""
    if isinstance(node, Scalar):
        s = format_scalar(node.value)
        return f"({s})" if s.startswith("-") else s
    if isinstance(node, Atom):
        return node.name if node.size is None else f"id({node.size})"
    if isinstance(node, Add):
        return " + ".join(_wrap(t, (Add,)) for t in node.terms)
    if isinstance(node, Mul):
        return "*".join(_wrap(f, (Add, Mul, Scale)) for f in node.factors)
    if isinstance(node, Scale):
        return f"{format_scalar(node.factor)}*{_wrap(node.operand, (Add, Scale, Mul))}"
    if isinstance(node, Kron):
        return f"kron({', '.join(to_source(f) for f in node.factors)})"
    if isinstance(node, Adjoint):
        return f"adj({to_source(node.operand)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(format_scalar(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node: Node, kinds) -> str:
    s = to_source(node)
    return f"({s})" if isinstance(node, kinds) else s


def _eval(node: Node):
    if isinstance(node, Scalar):
        return node.value
    if isinstance(node, Atom):
        if node.name == "id":
            return np.eye(node.size, dtype=complex)
        return PAULI[node.name].copy()
    if isinstance(node, Call):
        try:
            return builtin_model(node.name, node.args)
        except NHError as exc:
            raise ExprError(str(exc), node.span) from exc
    if isinstance(node, Scale):
        return node.factor * _as_matrix(node.operand)
    if isinstance(node, Adjoint):
        return _as_matrix(node.operand).conj().T
    if isinstance(node, Kron):
        return reduce(np.kron, (_as_matrix(f) for f in node.factors))
    if isinstance(node, (Add, Mul)):
        parts = node.terms if isinstance(node, Add) else node.factors
        mats = [_as_matrix(p) for p in parts]
        for p, m in zip(parts[1:], mats[1:]):
            if m.shape != mats[0].shape:
                raise DimMismatch(
                    f"dimension mismatch: {mats[0].shape[0]} vs {m.shape[0]}", p.span)
        if isinstance(node, Add):
            return reduce(np.add, mats)
        return reduce(np.matmul, mats)
    raise TypeError(f"not an expression node: {node!r}")


def _as_matrix(node: Node) -> np.ndarray:
    v = _eval(node)
    if not isinstance(v, np.ndarray):
        raise DimMismatch("scalar where an operator is required (use c*id(n))", node.span)
    return v


def evaluate(ast: Node) -> np.ndarray:
    """Evaluate an expression tree to a dense complex matrix."""
    return _as_matrix(ast)


def evaluate_scalar(ast: Node) -> complex:
    if not isinstance(ast, Scalar):
        raise ExprError("expected a numeric expression", ast.span)
    return ast.value


def operator_from_text(text: str) -> np.ndarray:
    return evaluate(parse_expression(text))
