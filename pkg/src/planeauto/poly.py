"""Sparse bivariate polynomials over a :class:`~planeauto.field.FieldTower`.

Terms are kept in a dict ``{(i, j): raw}`` for the monomial ``x**i * y**j``
where ``raw`` is the tower's raw coefficient (see :mod:`planeauto.field`).
Zero coefficients are never stored.
"""
from __future__ import annotations

from enum import Enum

import gmpy2
from gmpy2 import mpq

from .errors import ZeroPolynomial
from .field import QQ, FieldElement, FieldTower, embed, join, to_mpq

NEG_INF = float("-inf")


class Parity(Enum):
    ALL_EVEN = "AllEven"
    ALL_ODD = "AllOdd"
    MIXED = "Mixed"


def _monomial_key(m):
    # graded lex, x > y
    return (m[0] + m[1], m[0])


def _coeff_key(raw):
    if isinstance(raw, tuple):
        k = len(raw)
        while k > 1 and not raw[k - 1]:
            k -= 1
        return raw[0] if k == 1 else raw[:k]
    return raw


_INT_PRODUCT_THRESHOLD = 64


def _common_denominator(terms, ops):
    return gmpy2.lcm(*(d for c in terms.values() for d in ops.denominators(c)), 1)


def _mul_terms(a, b, ops):
    if len(a) < len(b):
        a, b = b, a
    if len(a) * len(b) >= _INT_PRODUCT_THRESHOLD and ops.int_mul is not None:
        # clear denominators so the inner loop adds integers instead of normalising rationals
        da, db = _common_denominator(a, ops), _common_denominator(b, ops)
        ai = {k: ops.to_int(c, da) for k, c in a.items()}
        bi = {k: ops.to_int(c, db) for k, c in b.items()}
        out = _mul_loop(ai, bi, ops.int_mul, ops.add)
        den = da * db
        nz, from_int = ops.nonzero, ops.from_int
        return {k: from_int(v, den) for k, v in out.items() if nz(v)}
    out = _mul_loop(a, b, ops.mul, ops.add)
    nz = ops.nonzero
    return {k: v for k, v in out.items() if nz(v)}


def _mul_loop(a, b, mul, add):
    out = {}
    get = out.get
    for (i2, j2), c2 in b.items():
        for (i1, j1), c1 in a.items():
            k = (i1 + i2, j1 + j2)
            old = get(k)
            out[k] = mul(c1, c2) if old is None else add(old, mul(c1, c2))
    return out


def _add_into(dst, src, ops, factor=None):
    """dst += factor * src (in place, raw terms); zeros are pruned by the caller."""
    add, mul = ops.add, ops.mul
    get = dst.get
    for k, c in src.items():
        if factor is not None:
            c = mul(c, factor)
        old = get(k)
        dst[k] = c if old is None else add(old, c)


def _prune(terms, ops):
    nz = ops.nonzero
    return {k: v for k, v in terms.items() if nz(v)}


class Poly:
    """An immutable polynomial in ``x`` and ``y``."""

    __slots__ = ("tower", "terms")

    def __init__(self, terms=None, tower: FieldTower = QQ):
        self.tower = tower
        self.terms = terms if terms is not None else {}

    # -- construction ----------------------------------------------------

    @classmethod
    def from_dict(cls, mapping, tower: FieldTower = QQ) -> "Poly":
        for c in mapping.values():
            if isinstance(c, FieldElement):
                tower = join(tower, c.tower)
        ops = tower.ops
        terms = {}
        for (i, j), c in mapping.items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            raw = tower(c).raw
            if ops.nonzero(raw):
                terms[(int(i), int(j))] = raw
        return cls(terms, tower)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, tower: FieldTower = QQ) -> "Poly":
        return cls.from_dict({(i, j): coeff}, tower)

    @classmethod
    def const(cls, value, tower: FieldTower = QQ) -> "Poly":
        return cls.from_dict({(0, 0): value}, tower)

    @classmethod
    def x(cls, tower: FieldTower = QQ) -> "Poly":
        return cls({(1, 0): tower.ops.one}, tower)

    @classmethod
    def y(cls, tower: FieldTower = QQ) -> "Poly":
        return cls({(0, 1): tower.ops.one}, tower)

    @classmethod
    def zero(cls, tower: FieldTower = QQ) -> "Poly":
        return cls({}, tower)

    @classmethod
    def one(cls, tower: FieldTower = QQ) -> "Poly":
        return cls({(0, 0): tower.ops.one}, tower)

    def in_tower(self, tower: FieldTower) -> "Poly":
        """The same polynomial viewed in a tower that contains ours."""
        if tower is self.tower or tower == self.tower:
            return self if tower is self.tower else Poly(self.terms, tower)
        t = join(self.tower, tower)
        src = self.tower
        return Poly({k: embed(c, src, t) for k, c in self.terms.items()}, t)

    # -- coercion --------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Poly):
            if other.tower is self.tower:
                return self.tower, self.terms, other.terms
            t = join(self.tower, other.tower)
            return t, self.in_tower(t).terms, other.in_tower(t).terms
        if isinstance(other, FieldElement):
            t = join(self.tower, other.tower)
            raw = embed(other.raw, other.tower, t)
        else:
            t = self.tower
            raw = t.ops.from_mpq(to_mpq(other))
        b = {(0, 0): raw} if t.ops.nonzero(raw) else {}
        return t, self.in_tower(t).terms, b

    def _scalar(self, other):
        """(tower, terms, raw scalar) when other is a field scalar, else None."""
        if isinstance(other, Poly):
            return None
        if isinstance(other, FieldElement):
            t = join(self.tower, other.tower)
            return t, self.in_tower(t).terms, embed(other.raw, other.tower, t)
        t = self.tower
        return t, self.terms, t.ops.from_mpq(to_mpq(other))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        out = dict(a)
        _add_into(out, b, t.ops)
        return Poly(_prune(out, t.ops), t)

    __radd__ = __add__

    def __neg__(self):
        neg = self.tower.ops.neg
        return Poly({k: neg(c) for k, c in self.terms.items()}, self.tower)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        out = dict(a)
        neg = t.ops.neg
        _add_into(out, {k: neg(c) for k, c in b.items()}, t.ops)
        return Poly(_prune(out, t.ops), t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            s = self._scalar(other)
        except TypeError:
            return NotImplemented
        if s is not None:
            t, a, c = s
            if not t.ops.nonzero(c):
                return Poly({}, t)
            mul = t.ops.mul
            return Poly({k: mul(v, c) for k, v in a.items()}, t)
        t, a, b = self._pair(other)
        return Poly(_mul_terms(a, b, t.ops), t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise TypeError("division by a non-constant polynomial")
            other = other.constant_value()
        try:
            s = self._scalar(other)
        except TypeError:
            return NotImplemented
        t, a, c = s
        inv = t.ops.inv(c)
        mul = t.ops.mul
        return Poly({k: mul(v, inv) for k, v in a.items()}, t)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.tower)
        for _ in range(n):
            result = result * self
        return result

    def powers(self, n: int) -> list["Poly"]:
        """[self**0, ..., self**n] by repeated multiplication."""
        out = [Poly.one(self.tower)]
        for _ in range(n):
            out.append(out[-1] * self)
        return out

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        try:
            _, a, b = self._pair(other)
        except Exception:
            return NotImplemented
        return a == b

    def __hash__(self):
        return hash(frozenset((k, _coeff_key(c)) for k, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeff(0, 0)

    def coeff(self, i: int, j: int) -> FieldElement:
        raw = self.terms.get((i, j))
        return FieldElement(self.tower, self.tower.ops.zero if raw is None else raw)

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(i + j for i, j in self.terms)

    def weighted_degree(self, w) -> int | float:
        if not self.terms:
            return NEG_INF
        w1, w2 = w
        return max(w1 * i + w2 * j for i, j in self.terms)

    def degree_in(self, var: str):
        return self.weighted_degree((1, 0) if var == "x" else (0, 1))

    def leading_monomial(self) -> tuple[int, int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return max(self.terms, key=_monomial_key)

    def leading_coeff(self) -> FieldElement:
        return self.coeff(*self.leading_monomial())

    def graded_parts(self, w=(1, 1)) -> list[tuple[int, "Poly"]]:
        """The w-homogeneous components, ascending by weighted degree."""
        w1, w2 = w
        parts: dict[int, dict] = {}
        for (i, j), c in self.terms.items():
            parts.setdefault(w1 * i + w2 * j, {})[(i, j)] = c
        return [(d, Poly(parts[d], self.tower)) for d in sorted(parts)]

    def leading_form(self, w=(1, 1)) -> "Poly":
        parts = self.graded_parts(w)
        if not parts:
            return Poly({}, self.tower)
        return parts[-1][1]

    def homogeneous_part(self, d: int, w=(1, 1)) -> "Poly":
        w1, w2 = w
        return Poly({k: c for k, c in self.terms.items() if w1 * k[0] + w2 * k[1] == d}, self.tower)

    def parity_profile(self, axis=(0, 1)) -> Parity:
        if not self.terms:
            raise ZeroPolynomial("parity profile of the zero polynomial")
        w1, w2 = axis
        parities = {(w1 * i + w2 * j) % 2 for i, j in self.terms}
        if parities == {0}:
            return Parity.ALL_EVEN
        if parities == {1}:
            return Parity.ALL_ODD
        return Parity.MIXED

    def variables(self) -> set[str]:
        out = set()
        for i, j in self.terms:
            if i:
                out.add("x")
            if j:
                out.add("y")
        return out

    def univariate_coeffs(self, var: str) -> list[FieldElement]:
        """Coefficients c0, c1, ... of a polynomial in ``var`` alone."""
        other = "y" if var == "x" else "x"
        if other in self.variables():
            raise ValueError(f"{self} involves {other}")
        idx = 0 if var == "x" else 1
        if not self.terms:
            return []
        n = max(k[idx] for k in self.terms)
        return [self.coeff(*((e, 0) if idx == 0 else (0, e))) for e in range(n + 1)]

    # -- calculus and substitution ---------------------------------------

    def diff(self, var: str) -> "Poly":
        out = {}
        if var == "x":
            for (i, j), c in self.terms.items():
                if i:
                    out[(i - 1, j)] = c * i if not isinstance(c, tuple) else tuple(v * i for v in c)
        else:
            for (i, j), c in self.terms.items():
                if j:
                    out[(i, j - 1)] = c * j if not isinstance(c, tuple) else tuple(v * j for v in c)
        return Poly(out, self.tower)

    def is_x(self) -> bool:
        return len(self.terms) == 1 and (1, 0) in self.terms and self.terms[(1, 0)] == self.tower.ops.one

    def is_y(self) -> bool:
        return len(self.terms) == 1 and (0, 1) in self.terms and self.terms[(0, 1)] == self.tower.ops.one

    def subs(self, px: "Poly", qy: "Poly") -> "Poly":
        """Substitute ``x -> px`` and ``y -> qy``.

        Horner's scheme runs over the variable whose image has more terms;
        the other variable's image is expanded through a power cache.
        """
        t = join(join(self.tower, px.tower), qy.tower)
        if px.is_x() and qy.is_y():
            return self.in_tower(t)
        terms = self.in_tower(t).terms
        px, qy = px.in_tower(t), qy.in_tower(t)
        ops = t.ops
        if not terms:
            return Poly({}, t)
        outer_is_x = len(px.terms) >= len(qy.terms)
        oi = 0 if outer_is_x else 1
        outer, inner = (px, qy) if outer_is_x else (qy, px)
        rows: dict[int, dict[int, object]] = {}
        for k, c in terms.items():
            rows.setdefault(k[oi], {})[k[1 - oi]] = c
        inner_trivial = inner.is_y() if outer_is_x else inner.is_x()
        if not inner_trivial:
            max_inner = max(e for row in rows.values() for e in row)
            inner_pows = inner.powers(max_inner)

        def row_value(row):
            if inner_trivial:
                if outer_is_x:
                    return {(0, e): c for e, c in row.items()}
                return {(e, 0): c for e, c in row.items()}
            acc = {}
            for e, c in row.items():
                _add_into(acc, inner_pows[e].terms, ops, c)
            return _prune(acc, ops)

        acc: dict = {}
        outer_terms = outer.terms
        for e in range(max(rows), -1, -1):
            if acc:
                acc = _mul_terms(acc, outer_terms, ops)
            row = rows.get(e)
            if row is not None:
                _add_into(acc, row_value(row), ops)
                acc = _prune(acc, ops)
        return Poly(acc, t)

    # -- rendering -------------------------------------------------------

    def render(self, names=("x", "y")) -> str:
        if not self.terms:
            return "0"
        xn, yn = names
        pieces = []
        for k in sorted(self.terms, key=_monomial_key, reverse=True):
            i, j = k
            factors = []
            if i:
                factors.append(xn if i == 1 else f"{xn}^{i}")
            if j:
                factors.append(yn if j == 1 else f"{yn}^{j}")
            mono = "*".join(factors)
            c = self.coeff(i, j)
            coords = c.coords
            if not mono:
                pieces.append(str(c))
            elif not any(coords[1:]):
                r = coords[0]
                pieces.append(mono if r == 1 else "-" + mono if r == -1 else f"{r}*{mono}")
            elif sum(1 for v in coords if v) == 1:
                pieces.append(f"{c}*{mono}")
            else:
                pieces.append(f"({c})*{mono}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render()!r})"


def jacobian(p: Poly, q: Poly) -> Poly:
    """dp/dx * dq/dy - dp/dy * dq/dx."""
    return p.diff("x") * q.diff("y") - p.diff("y") * q.diff("x")


def ring_op(op: str, u: Poly, v) -> Poly:
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "pow":
        return u ** v
    raise ValueError(f"unknown ring operation {op!r}")


def univariate(coeffs, var: str = "x", tower: FieldTower = QQ) -> Poly:
    """sum(c_k * var**k) as a bivariate polynomial."""
    if var == "x":
        return Poly.from_dict({(k, 0): c for k, c in enumerate(coeffs)}, tower)
    return Poly.from_dict({(0, k): c for k, c in enumerate(coeffs)}, tower)


HALF = mpq(1, 2)
