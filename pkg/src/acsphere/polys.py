"""Mini-grammar for polynomial expressions in chart coordinates.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := NUMBER | VAR | '-' factor | '(' expr ')'
    VAR    := 'u1', 'u2', ... (1-based coordinate names)

Expressions parse to sparse monomial dictionaries, with the total degree
capped (default 4).  Evaluation is plain arithmetic, so dual coordinates
pass through and yield exact derivatives.
"""

import re

from .errors import GeometryError

MAX_POLY_DEGREE = 4

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|(u\d+)|([()+\-*]))")


class PolyParseError(GeometryError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError("bad token at %r" % text[pos:])
            break
        if m.group(1):
            out.append(("num", float(m.group(1))))
        elif m.group(2):
            out.append(("var", int(m.group(2)[1:]) - 1))
        else:
            out.append((m.group(3), None))
        pos = m.end()
    out.append(("end", None))
    return out


class Polynomial:
    """Sparse multivariate polynomial: {exponent tuple: coefficient}."""

    def __init__(self, dim, monomials):
        self.dim = dim
        self.monomials = {k: v for k, v in monomials.items() if v != 0.0}

    @property
    def degree(self):
        return max((sum(k) for k in self.monomials), default=0)

    def __call__(self, u):
        total = 0.0
        for expo, coeff in sorted(self.monomials.items()):
            term = coeff
            for i, e in enumerate(expo):
                for _ in range(e):
                    term = term * u[i]
            total = total + term
        return total

    def _binop(self, other, f):
        keys = set(self.monomials) | set(other.monomials)
        return Polynomial(
            self.dim,
            {k: f(self.monomials.get(k, 0.0), other.monomials.get(k, 0.0)) for k in keys},
        )

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return Polynomial(self.dim, {k: -v for k, v in self.monomials.items()})

    def __mul__(self, other):
        out = {}
        for ka, va in self.monomials.items():
            for kb, vb in other.monomials.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, 0.0) + va * vb
        return Polynomial(self.dim, out)


class _Parser:
    def __init__(self, tokens, dim):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in "+-":
            op, _ = self.take()
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.factor()
        while self.peek() == "*":
            self.take()
            node = node * self.factor()
        return node

    def factor(self):
        kind, val = self.take()
        if kind == "num":
            return Polynomial(self.dim, {(0,) * self.dim: val})
        if kind == "var":
            if not 0 <= val < self.dim:
                raise PolyParseError(
                    "coordinate u%d out of range for dimension %d" % (val + 1, self.dim)
                )
            expo = [0] * self.dim
            expo[val] = 1
            return Polynomial(self.dim, {tuple(expo): 1.0})
        if kind == "-":
            return -self.factor()
        if kind == "(":
            node = self.expr()
            kind, _ = self.take()
            if kind != ")":
                raise PolyParseError("unbalanced parentheses")
            return node
        raise PolyParseError("unexpected token %r" % kind)


def parse_polynomial(text, dim, max_degree=MAX_POLY_DEGREE):
    """Parse a single polynomial expression over u1..u<dim>."""
    parser = _Parser(_tokenize(text), dim)
    poly = parser.expr()
    if parser.peek() != "end":
        raise PolyParseError("trailing input in %r" % text)
    if poly.degree > max_degree:
        raise PolyParseError(
            "degree %d exceeds the cap %d in %r" % (poly.degree, max_degree, text)
        )
    return poly


def parse_polynomial_list(text, dim, expected=None, max_degree=MAX_POLY_DEGREE):
    """Comma-separated polynomial expressions."""
    parts = [s for s in text.split(",")]
    if expected is not None and len(parts) != expected:
        raise PolyParseError(
            "expected %d comma-separated expressions, got %d" % (expected, len(parts))
        )
    return [parse_polynomial(s, dim, max_degree) for s in parts]
