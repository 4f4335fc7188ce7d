"""Expression grammar: parser, canonical renderer, and evaluator.

Because the target rings are non-associative, ``*`` parses left-associatively
and the parse tree is the mathematical object: ``a*b*c`` means ``(a*b)*c``
and ``a*(b*c)`` stays distinct. The renderer re-inserts parentheses exactly
where a tree is not left-leaning, so rendering then reparsing is the
identity on trees.

Atoms are nonnegative rational literals (``7``, ``3/4``, ``1.5``), named ring
constants (``i j k``, ``e0..e15``, polynomial variables), the indeterminates
``X`` (or ``X1..Xn`` in iterated structures) with integer exponents, matrix
literals ``[[..],[..]]``, and the series tail marker ``O(X^p)``. Exponents
``^`` attach only to named atoms; negative exponents exist only where the
structure supports them. Adding ``O(X^p)`` truncates to precision ``p``.

In series structures the evaluator keeps polynomial subexpressions exact and
lets precision enter only through tail markers (or, if none appears, the
session precision applied to the final value).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .rings import (
    CayleyDickson,
    JordanPlus,
    Matrix,
    Poly1,
    Poly2,
    Rationals,
    RingDescriptor,
    RingElement,
    basis_element,
    element,
    monomial_element,
    scalar,
)
from .series import (
    TruncatedSeries,
    poly_times_series,
    series_times_poly,
)
from .skewpoly import (
    IteratedLaurentContext,
    LaurentContext,
    LaurentPoly,
    MultiLaurentPoly,
    OreContext,
    OrePoly,
)


class ExprError(ValueError):
    """Syntax or semantic error in an expression, with a source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --- abstract syntax --------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: Fraction  # nonnegative; unary minus wraps in Neg
    span: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    exponent: int = 1
    span: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    span: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Bin:
    op: str  # '+', '-', '*'
    left: object
    right: object
    span: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Mat:
    rows: tuple
    span: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class OTail:
    precision: int
    span: tuple | None = field(default=None, compare=False)


# --- profiles and constant tables -------------------------------------------

STRUCTURES = (
    "ore",
    "laurent",
    "iterated_laurent",
    "power_series",
    "laurent_series",
    "element",
)
_NEGATIVE_X_OK = {"laurent", "laurent_series", "iterated_laurent"}
_SERIES_STRUCTURES = {"power_series", "laurent_series"}


@dataclass(frozen=True)
class ExprProfile:
    structure: str
    ring: RingDescriptor
    num_indeterminates: int = 1

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise ValueError(f"unknown structure {self.structure!r}")

    def indeterminate_names(self) -> tuple[str, ...]:
        if self.structure == "element":
            return ()
        if self.structure == "iterated_laurent":
            return tuple(f"X{i + 1}" for i in range(self.num_indeterminates))
        return ("X",)


def constant_table(ring: RingDescriptor) -> dict:
    """Name -> ("unit", RingElement) or ("var", exponent -> RingElement)."""
    table: dict = {}
    if isinstance(ring, Rationals):
        return table
    if isinstance(ring, Poly1):
        table[ring.variable] = ("var", lambda e: monomial_element(ring, e))
        return table
    if isinstance(ring, Poly2):
        v1, v2 = ring.variables
        table[v1] = ("var", lambda e: monomial_element(ring, (e, 0)))
        table[v2] = ("var", lambda e: monomial_element(ring, (0, e)))
        return table
    if isinstance(ring, CayleyDickson):
        dim = 1 << ring.level
        for idx in range(dim):
            table[f"e{idx}"] = ("unit", basis_element(ring, idx))
        if ring.level >= 1:
            table["i"] = ("unit", basis_element(ring, 1))
        if ring.level >= 2:
            table["j"] = ("unit", basis_element(ring, 2))
            table["k"] = ("unit", basis_element(ring, 3))
        if not isinstance(ring.base, Rationals):
            zero_rest = [ring.base.zero_value()] * ((1 << ring.level) - 1)
            for name, entry in constant_table(ring.base).items():
                if name in table:
                    continue
                kind, payload = entry
                if kind == "unit":
                    table[name] = (
                        "unit",
                        RingElement(
                            ring, ring.from_flat([payload.value] + zero_rest)
                        ),
                    )
                else:
                    table[name] = (
                        "var",
                        lambda e, _p=payload: RingElement(
                            ring, ring.from_flat([_p(e).value] + zero_rest)
                        ),
                    )
        return table
    if isinstance(ring, JordanPlus):
        for name, entry in constant_table(ring.base).items():
            kind, payload = entry
            if kind == "unit":
                table[name] = ("unit", RingElement(ring, payload.value))
            else:
                table[name] = (
                    "var",
                    lambda e, _p=payload: RingElement(ring, _p(e).value),
                )
        return table
    if isinstance(ring, Matrix):
        return table  # entries are parsed through matrix literals
    return table


# --- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>[+\-*^()\[\],]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'number' | 'name' | one of + - * ^ ( ) [ ] , | 'eof'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.lastgroup == "number":
            out.append(_Token("number", m.group("number"), m.start("number")))
        elif m.lastgroup == "name":
            out.append(_Token("name", m.group("name"), m.start("name")))
        else:
            op = m.group("op")
            out.append(_Token(op, op, m.start("op")))
        pos = m.end()
    rest = text[pos:].strip()
    if rest:
        bad = pos + text[pos:].index(rest[0])
        raise ExprError(f"unexpected character {rest[0]!r}", bad)
    out.append(_Token("eof", "", len(text)))
    return out


# --- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, profile: ExprProfile):
        self.text = text
        self.profile = profile
        self.tokens = _tokenize(text)
        self.idx = 0
        self.table = constant_table(profile.ring)
        self.indets = profile.indeterminate_names()

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def next(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ExprError(f"expected {kind!r}, found {tok.text or 'end'!r}", tok.pos)
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ExprError(f"unexpected {tok.text!r}", tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            right = self.term()
            node = Bin(op.kind, node, right, span=(_span(node)[0], _span(right)[1]))
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            self.next()
            right = self.factor()
            node = Bin("*", node, right, span=(_span(node)[0], _span(right)[1]))
        return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "-":
            self.next()
            operand = self.factor()
            return Neg(operand, span=(tok.pos, _span(operand)[1]))
        return self.primary()

    def primary(self):
        tok = self.next()
        if tok.kind == "number":
            try:
                value = Fraction(tok.text)
            except ZeroDivisionError:
                raise ExprError("literal has a zero denominator", tok.pos) from None
            return Lit(value, span=(tok.pos, tok.pos + len(tok.text)))
        if tok.kind == "(":
            node = self.expr()
            closing = self.expect(")")
            return _respan(node, (tok.pos, closing.pos + 1))
        if tok.kind == "[":
            return self.matrix(tok)
        if tok.kind == "name":
            if tok.text == "O":
                return self.o_tail(tok)
            return self.named(tok)
        raise ExprError(f"unexpected {tok.text or 'end'!r}", tok.pos)

    def exponent(self) -> int:
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        tok = self.expect("number")
        frac = Fraction(tok.text)
        if frac.denominator != 1:
            raise ExprError("exponent must be an integer", tok.pos)
        return sign * int(frac)

    def named(self, tok: _Token):
        name = tok.text
        exponent = 1
        has_caret = self.peek().kind == "^"
        if has_caret:
            self.next()
            exponent = self.exponent()
        end = self.tokens[self.idx - 1]
        span = (tok.pos, end.pos + len(end.text))
        if name in self.indets:
            if exponent < 0 and self.profile.structure not in _NEGATIVE_X_OK:
                raise ExprError(
                    f"negative exponents on {name} are not allowed in "
                    f"{self.profile.structure} structures",
                    tok.pos,
                )
            return Name(name, exponent, span=span)
        entry = self.table.get(name)
        if entry is None:
            raise ExprError(f"unknown constant {name!r}", tok.pos)
        kind, _payload = entry
        if kind == "unit" and has_caret:
            raise ExprError(
                f"exponents attach to polynomial variables and {'/'.join(self.indets) or 'X'}, "
                f"not to {name!r}",
                tok.pos,
            )
        if kind == "var" and exponent < 0:
            raise ExprError(f"negative exponent on variable {name!r}", tok.pos)
        return Name(name, exponent, span=span)

    def o_tail(self, tok: _Token):
        if self.profile.structure not in _SERIES_STRUCTURES:
            raise ExprError(
                "the O(X^p) tail marker belongs to series structures", tok.pos
            )
        self.expect("(")
        xtok = self.expect("name")
        if xtok.text != "X":
            raise ExprError("the tail marker reads O(X^p)", xtok.pos)
        self.expect("^")
        precision = self.exponent()
        closing = self.expect(")")
        return OTail(precision, span=(tok.pos, closing.pos + 1))

    def matrix(self, tok: _Token):
        rows = [self.matrix_row()]
        while self.peek().kind == ",":
            self.next()
            rows.append(self.matrix_row())
        closing = self.expect("]")
        return Mat(tuple(rows), span=(tok.pos, closing.pos + 1))

    def matrix_row(self):
        self.expect("[")
        entries = [self.expr()]
        while self.peek().kind == ",":
            self.next()
            entries.append(self.expr())
        self.expect("]")
        return tuple(entries)


def _span(node):
    return node.span or (0, 0)


def _respan(node, span):
    object.__setattr__(node, "span", span)
    return node


def parse(text: str, profile: ExprProfile):
    """Parse ``text`` against the profile; raises :class:`ExprError`."""
    if not text.strip():
        raise ExprError("empty expression", 0)
    return _Parser(text, profile).parse()


# --- canonical renderer ------------------------------------------------------

def render_ast(node) -> str:
    if isinstance(node, Lit):
        return str(node.value)
    if isinstance(node, Name):
        if node.exponent == 1:
            return node.name
        return f"{node.name}^{node.exponent}"
    if isinstance(node, Neg):
        inner = render_ast(node.operand)
        if isinstance(node.operand, (Bin, Neg)):
            return f"-({inner})"
        return "-" + inner
    if isinstance(node, Bin):
        left = render_ast(node.left)
        right = render_ast(node.right)
        if node.op == "*":
            if isinstance(node.left, Bin) and node.left.op != "*":
                left = f"({left})"
            if isinstance(node.right, (Bin, Neg)):
                right = f"({right})"
            return f"{left}*{right}"
        if isinstance(node.right, Neg) or (
            isinstance(node.right, Bin) and node.right.op in "+-"
        ):
            right = f"({right})"
        return f"{left} {node.op} {right}"
    if isinstance(node, Mat):
        rows = ", ".join(
            "[" + ", ".join(render_ast(x) for x in row) + "]" for row in node.rows
        )
        return f"[{rows}]"
    if isinstance(node, OTail):
        return f"O(X^{node.precision})"
    raise TypeError(f"not an AST node: {node!r}")


# --- evaluation --------------------------------------------------------------

class EvalError(ValueError):
    """Semantic failure while evaluating a parsed expression."""


@dataclass(frozen=True)
class EvalTarget:
    """Everything the evaluator needs: structure, ring, built contexts."""

    structure: str
    ring: RingDescriptor
    ore_context: OreContext | None = None
    laurent_context: LaurentContext | None = None
    iterated_context: IteratedLaurentContext | None = None
    series_context: object | None = None
    precision: int | None = None

    def profile(self) -> ExprProfile:
        n = len(self.iterated_context.sigmas) if self.iterated_context else 1
        return ExprProfile(self.structure, self.ring, n)


def eval_element(node, ring: RingDescriptor) -> RingElement:
    """Evaluate an expression with no indeterminates to a ring element."""
    if isinstance(node, Lit):
        return scalar(ring, node.value)
    if isinstance(node, Name):
        entry = constant_table(ring).get(node.name)
        if entry is None:
            raise EvalError(f"unknown constant {node.name!r} in {ring}")
        kind, payload = entry
        if kind == "unit":
            if node.exponent != 1:
                raise EvalError(f"exponent not allowed on {node.name!r}")
            return payload
        return payload(node.exponent)
    if isinstance(node, Neg):
        return -eval_element(node.operand, ring)
    if isinstance(node, Bin):
        a = eval_element(node.left, ring)
        b = eval_element(node.right, ring)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Mat):
        if not isinstance(ring, Matrix):
            raise EvalError("matrix literal outside a matrix ring")
        if len(node.rows) != ring.n or any(len(r) != ring.n for r in node.rows):
            raise EvalError(f"matrix literal must be {ring.n}x{ring.n}")
        rows = [
            [eval_element(x, ring.base).value for x in row] for row in node.rows
        ]
        return element(ring, rows)
    if isinstance(node, OTail):
        raise EvalError("the O(X^p) marker has no meaning for plain elements")
    raise TypeError(f"not an AST node: {node!r}")


def _series_poly_class(ctx):
    return LaurentPoly if isinstance(ctx, LaurentContext) else OrePoly


def evaluate(node, target: EvalTarget):
    """Evaluate honoring the tree's association exactly."""
    structure = target.structure
    if structure == "element":
        return eval_element(node, target.ring)
    if structure == "ore":
        return _eval_poly(node, target, target.ore_context, OrePoly)
    if structure == "laurent":
        return _eval_poly(node, target, target.laurent_context, LaurentPoly)
    if structure == "iterated_laurent":
        return _eval_iterated(node, target)
    value = _eval_series(node, target)
    if not isinstance(value, TruncatedSeries):
        value = TruncatedSeries.from_poly(value, target.precision)
    return value


def _eval_poly(node, target, ctx, poly_cls):
    if isinstance(node, Lit):
        return poly_cls.constant(ctx, scalar(target.ring, node.value))
    if isinstance(node, Name):
        if node.name == "X":
            return poly_cls.x(ctx, node.exponent)
        return poly_cls.constant(ctx, eval_element(node, target.ring))
    if isinstance(node, Neg):
        return -_eval_poly(node.operand, target, ctx, poly_cls)
    if isinstance(node, Bin):
        a = _eval_poly(node.left, target, ctx, poly_cls)
        b = _eval_poly(node.right, target, ctx, poly_cls)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Mat):
        return poly_cls.constant(ctx, eval_element(node, target.ring))
    if isinstance(node, OTail):
        raise EvalError("the O(X^p) marker belongs to series structures")
    raise TypeError(f"not an AST node: {node!r}")


def _eval_iterated(node, target):
    ctx = target.iterated_context
    names = {f"X{i + 1}": i for i in range(len(ctx.sigmas))}
    if isinstance(node, Lit):
        return MultiLaurentPoly.constant(ctx, scalar(target.ring, node.value))
    if isinstance(node, Name):
        if node.name in names:
            return MultiLaurentPoly.variable(ctx, names[node.name], node.exponent)
        return MultiLaurentPoly.constant(ctx, eval_element(node, target.ring))
    if isinstance(node, Neg):
        return -_eval_iterated(node.operand, target)
    if isinstance(node, Bin):
        a = _eval_iterated(node.left, target)
        b = _eval_iterated(node.right, target)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Mat):
        return MultiLaurentPoly.constant(ctx, eval_element(node, target.ring))
    if isinstance(node, OTail):
        raise EvalError("the O(X^p) marker belongs to series structures")
    raise TypeError(f"not an AST node: {node!r}")


def _eval_series(node, target):
    """Returns either an exact polynomial or a TruncatedSeries."""
    ctx = target.series_context
    poly_cls = _series_poly_class(ctx)
    if isinstance(node, Lit):
        return poly_cls.constant(ctx, scalar(target.ring, node.value))
    if isinstance(node, Name):
        if node.name == "X":
            return poly_cls.x(ctx, node.exponent)
        return poly_cls.constant(ctx, eval_element(node, target.ring))
    if isinstance(node, Mat):
        return poly_cls.constant(ctx, eval_element(node, target.ring))
    if isinstance(node, OTail):
        return TruncatedSeries.zero_window(ctx, node.precision)
    if isinstance(node, Neg):
        return -_eval_series(node.operand, target)
    if isinstance(node, Bin):
        a = _eval_series(node.left, target)
        b = _eval_series(node.right, target)
        a_poly = not isinstance(a, TruncatedSeries)
        b_poly = not isinstance(b, TruncatedSeries)
        if node.op in "+-":
            if b_poly != a_poly:
                if a_poly:
                    a = TruncatedSeries.from_poly(a, b.precision)
                else:
                    b = TruncatedSeries.from_poly(b, a.precision)
            return a + b if node.op == "+" else a - b
        if a_poly and b_poly:
            return a * b
        if a_poly:
            return poly_times_series(a, b)
        if b_poly:
            return series_times_poly(a, b)
        return a * b
    raise TypeError(f"not an AST node: {node!r}")
