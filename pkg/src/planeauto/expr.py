"""Parser for polynomial expressions over exact square-root towers.

Grammar (EBNF)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" NAT)?
    atom   := NAT | "x" | "y" | "i" | "sqrt" "(" expr ")" | "(" expr ")"

Division is only by constants and ``sqrt`` only applies to constants.
Products must be written with ``*``; ``2x`` is rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import PlaneAutoError
from .field import QQ, FieldElement, FieldTower, sqrt
from .poly import Poly


class ExprError(PlaneAutoError, ValueError):
    """Base class for parse and lowering errors of the expression language."""


class ExprSyntaxError(ExprError):
    def __init__(self, position: int, expected: str, source: str = ""):
        self.position = position
        self.expected = expected
        self.source = source
        msg = f"at position {position}: expected {expected}"
        if source:
            msg += f"\n  {source}\n  {' ' * position}^"
        super().__init__(msg)


class SqrtOfNonConstant(ExprError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"at position {position}: sqrt applies only to constant expressions")


class NonConstantDivisor(ExprError):
    def __init__(self, position: int):
        self.position = position
        super().__init__(f"at position {position}: division is only by nonzero constants")


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"
    pos: int = 0


@dataclass(frozen=True)
class ImagUnit:
    pos: int = 0


@dataclass(frozen=True)
class Sqrt:
    arg: object
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: object
    right: object
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: int = 0


@dataclass(frozen=True)
class Group:
    inner: object
    pos: int = 0


def is_constant(node) -> bool:
    if isinstance(node, Var):
        return False
    if isinstance(node, (Num, ImagUnit)):
        return True
    if isinstance(node, (Sqrt, Neg)):
        return is_constant(node.arg)
    if isinstance(node, BinOp):
        return is_constant(node.left) and is_constant(node.right)
    if isinstance(node, Pow):
        return is_constant(node.base)
    if isinstance(node, Group):
        return is_constant(node.inner)
    raise TypeError(node)


# -- tokenizer and parser ----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(src: str):
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.end() == pos or (not m.group(1) and not m.group(2) and not m.group(3)):
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(start, "an operator, number, x, y, i, sqrt or parenthesis", src)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def fail(self, expected: str):
        raise ExprSyntaxError(self.peek()[2], expected, self.src)

    def expect_op(self, ch: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != ch:
            self.fail(f"'{ch}'")
        return self.take()

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            if kind in ("num", "name") or (kind == "op" and val == "("):
                self.fail("an operator ('*' is required between factors)")
            self.fail("an operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = BinOp(val, node, self.term(), pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                right = self.unary()
                if val == "/" and not is_constant(right):
                    raise NonConstantDivisor(pos)
                node = BinOp(val, node, right, pos)
            else:
                return node

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary(), pos)
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                self.fail("a natural-number exponent")
            self.take()
            return Pow(base, int(val), pos)
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(int(val), pos)
        if kind == "name":
            self.take()
            if val in ("x", "y"):
                return Var(val, pos)
            if val == "i":
                return ImagUnit(pos)
            if val == "sqrt":
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                if not is_constant(arg):
                    raise SqrtOfNonConstant(pos)
                return Sqrt(arg, pos)
            if re.fullmatch(r"[xyi]+", val):
                raise ExprSyntaxError(pos, "'*' between factors (implicit multiplication is not supported)",
                                      self.src)
            raise ExprSyntaxError(pos, "x, y, i or sqrt", self.src)
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return Group(inner, pos)
        self.fail("a number, x, y, i, sqrt or '('")


def parse(src: str):
    """Parse src into an AST; raises ExprSyntaxError or SqrtOfNonConstant."""
    return _Parser(src).parse()


# -- lowering ----------------------------------------------------------------

class _Lowering:
    """Evaluates an AST while threading a growing tower left to right."""

    def __init__(self, tower: FieldTower):
        self.tower = tower

    def _grow(self, value):
        t = value.tower
        if len(t.radicands) > len(self.tower.radicands):
            self.tower = t
        return value

    def const(self, node) -> FieldElement:
        if isinstance(node, Num):
            return self.tower(node.value)
        if isinstance(node, ImagUnit):
            return self._grow(sqrt(self.tower(-1)))
        if isinstance(node, Sqrt):
            arg = self.const(node.arg).in_tower(self.tower)
            if not arg:
                return self.tower(0)
            return self._grow(sqrt(arg))
        if isinstance(node, Neg):
            return -self.const(node.arg)
        if isinstance(node, Group):
            return self.const(node.inner)
        if isinstance(node, Pow):
            return self.const(node.base) ** node.exp
        if isinstance(node, BinOp):
            a = self.const(node.left)
            b = self.const(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if not b:
                raise NonConstantDivisor(node.pos)
            return a / b
        raise TypeError(node)

    def poly(self, node) -> Poly:
        if is_constant(node):
            c = self.const(node)
            return Poly.const(c, c.tower)
        if isinstance(node, Var):
            return Poly.x(self.tower) if node.name == "x" else Poly.y(self.tower)
        if isinstance(node, Neg):
            return -self.poly(node.arg)
        if isinstance(node, Group):
            return self.poly(node.inner)
        if isinstance(node, Pow):
            return self.poly(node.base) ** node.exp
        if isinstance(node, BinOp):
            a = self.poly(node.left)
            if node.op == "/":
                b = self.const(node.right)
                if not b:
                    raise NonConstantDivisor(node.pos)
                return a / b
            b = self.poly(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            return a * b
        raise TypeError(node)


def lower(node, tower: FieldTower = QQ) -> Poly:
    """Turn an AST into a Poly; sqrt and i extend ``tower`` as needed."""
    low = _Lowering(tower)
    p = low.poly(node)
    return p.in_tower(low.tower)


def parse_poly(src: str, tower: FieldTower = QQ) -> Poly:
    return lower(parse(src), tower)


def parse_constant(src: str, tower: FieldTower = QQ) -> FieldElement:
    node = parse(src)
    if not is_constant(node):
        raise ExprSyntaxError(0, "a constant expression", src)
    low = _Lowering(tower)
    return low.const(node).in_tower(low.tower)


def parse_polys(sources, tower: FieldTower = QQ) -> list[Poly]:
    """Parse several expressions into one shared tower."""
    out = []
    for src in sources:
        p = parse_poly(src, tower)
        tower = p.tower
        out.append(p)
    return [p.in_tower(tower) for p in out]


_MAP = re.compile(r"^\s*x\s*->\s*(?P<p>[^;]+);\s*y\s*->\s*(?P<q>.+?)\s*$")


def split_map(src: str) -> tuple[str, str]:
    """Split 'x -> P; y -> Q' or 'P; Q' into the two image expressions."""
    m = _MAP.match(src)
    if m:
        return m.group("p"), m.group("q")
    parts = src.split(";")
    if len(parts) != 2:
        raise ExprSyntaxError(0, "a map written 'x -> P; y -> Q' or 'P; Q'", src)
    return parts[0].strip(), parts[1].strip()
