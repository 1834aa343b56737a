"""Exact arithmetic in towers ``Q(i)(sqrt(d1), ..., sqrt(dm))``.

An element of a tower with generators ``g0, ..., g(m-1)`` is stored as its
coordinate vector over the multiplicative basis ``prod(g_k ** b_k)`` where
``b_k`` is bit ``k`` of the basis index.  Because bit ``k`` belongs to
generator ``k``, an element of a prefix tower embeds into a longer tower by
zero padding, and the upper half of a coordinate vector is the coefficient
of the top generator.  The imaginary unit, when present, is generator 0 with
radicand ``-1``.

Degree-one towers (plain ``Q``) store a bare ``gmpy2.mpq`` instead of a
1-tuple so that polynomial arithmetic over ``Q`` stays cheap.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import gmpy2
import mpmath
from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    IncompatibleTowers,
    NotReal,
    TowerLimit,
    ZeroRadicand,
)

MAX_GENERATORS = 6

ZERO = mpq(0)
ONE = mpq(1)
MINUS_ONE = mpq(-1)
I_RADICAND = (MINUS_ONE,)


def to_mpq(value) -> mpq:
    if isinstance(value, type(ZERO)):
        return value
    if isinstance(value, (int, Fraction, Rational)) and not isinstance(value, bool):
        return mpq(value)
    if isinstance(value, str):
        return mpq(value)
    raise TypeError(f"cannot convert {value!r} to a rational")


# -- coordinate-tuple arithmetic; ``rads`` is the radicand list of the level --

def _tadd(a, b):
    return tuple(map(operator.add, a, b))


def _tsub(a, b):
    return tuple(map(operator.sub, a, b))


def _tneg(a):
    return tuple(-c for c in a)


def _tscale(a, s):
    return tuple(c * s for c in a)


def _tmul(a, b, rads):
    m = len(rads)
    if m == 0:
        return (a[0] * b[0],)
    if m == 1:
        (a0, a1), (b0, b1) = a, b
        return (a0 * b0 + rads[0][0] * a1 * b1, a0 * b1 + a1 * b0)
    h = 1 << (m - 1)
    low = rads[:-1]
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    a1z = not any(a1)
    b1z = not any(b1)
    if a1z and b1z:
        return _tmul(a0, b0, low) + (a0[0] * 0,) * h
    if a1z:
        return _tmul(a0, b0, low) + _tmul(a0, b1, low)
    if b1z:
        return _tmul(a0, b0, low) + _tmul(a1, b0, low)
    lo = _tadd(_tmul(a0, b0, low), _tmul(_tmul(a1, b1, low), rads[-1], low))
    hi = _tadd(_tmul(a0, b1, low), _tmul(a1, b0, low))
    return lo + hi


def _tinv(a, rads):
    m = len(rads)
    if m == 0:
        if not a[0]:
            raise DivisionByZero("division by zero")
        return (1 / a[0],)
    h = 1 << (m - 1)
    low = rads[:-1]
    a0, a1 = a[:h], a[h:]
    if not any(a1):
        return _tinv(a0, low) + (ZERO,) * h
    # (a0 + a1 g)^-1 = (a0 - a1 g) / (a0^2 - a1^2 r); the norm vanishes only for a = 0
    norm = _tsub(_tmul(a0, a0, low), _tmul(_tmul(a1, a1, low), rads[-1], low))
    n_inv = _tinv(norm, low)
    return _tmul(a0, n_inv, low) + _tneg(_tmul(a1, n_inv, low))


def _rational_sqrt(c):
    if c < 0:
        return None
    num, den = c.numerator, c.denominator
    if gmpy2.is_square(num) and gmpy2.is_square(den):
        return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return None


def _tsqrt(d, rads):
    """A square root of ``d`` inside the level, or None.

    Writing d = a + b g and z = u + v g gives u^2 + v^2 r = a, 2uv = b, so
    a^2 - b^2 r = (u^2 - v^2 r)^2 must be a square one level down and
    u^2 = (a +/- n) / 2.
    """
    m = len(rads)
    if m == 0:
        s = _rational_sqrt(d[0])
        return None if s is None else (s,)
    h = 1 << (m - 1)
    low = rads[:-1]
    r = rads[-1]
    a, b = d[:h], d[h:]
    zeros = (ZERO,) * h
    if not any(b):
        u = _tsqrt(a, low)
        if u is not None:
            return u + zeros
        v = _tsqrt(_tmul(a, _tinv(r, low), low), low)
        if v is not None:
            return zeros + v
        return None
    n = _tsqrt(_tsub(_tmul(a, a, low), _tmul(_tmul(b, b, low), r, low)), low)
    if n is None:
        return None
    half = mpq(1, 2)
    for cand in (_tadd(a, n), _tsub(a, n)):
        u2 = _tscale(cand, half)
        if not any(u2):
            continue
        u = _tsqrt(u2, low)
        if u is not None:
            v = _tmul(_tscale(b, half), _tinv(u, low), low)
            return u + v
    return None


def _canonical_sign(coords):
    for c in coords:
        if c:
            return coords if c > 0 else _tneg(coords)
    return coords


class _Ops:
    """Raw-coefficient operations for one tower; consumed by :mod:`poly`."""

    __slots__ = ("degree", "add", "sub", "mul", "neg", "inv", "nonzero",
                 "zero", "one", "from_mpq", "coords", "from_coords", "scale",
                 "int_mul", "denominators", "to_int", "from_int")


def _rational_inv(a):
    if not a:
        raise DivisionByZero("division by zero")
    return 1 / a


@lru_cache(maxsize=256)
def _ops(rads) -> _Ops:
    ops = _Ops()
    n = 1 << len(rads)
    ops.degree = n
    if n == 1:
        ops.add = operator.add
        ops.sub = operator.sub
        ops.mul = operator.mul
        ops.neg = operator.neg
        ops.inv = _rational_inv
        ops.nonzero = bool
        ops.zero = ZERO
        ops.one = ONE
        ops.from_mpq = lambda c: c
        ops.coords = lambda a: (a,)
        ops.from_coords = lambda c: c[0]
        ops.scale = operator.mul
        ops.int_mul = operator.mul
        ops.denominators = lambda a: (a.denominator,)
        ops.to_int = lambda a, d: a.numerator * (d // a.denominator)
        ops.from_int = mpq
    else:
        pad = (ZERO,) * (n - 1)
        ops.add = _tadd
        ops.sub = _tsub
        ops.mul = lambda a, b: _tmul(a, b, rads)
        ops.neg = _tneg
        ops.inv = lambda a: _tinv(a, rads)
        ops.nonzero = any
        ops.zero = (ZERO,) * n
        ops.one = (ONE,) + pad
        ops.from_mpq = lambda c: (c,) + pad
        ops.coords = lambda a: a
        ops.from_coords = tuple
        ops.scale = _tscale
        # integer arithmetic on denominator-cleared coordinates needs integral radicands
        if all(c.denominator == 1 for r in rads for c in r):
            irads = tuple(tuple(gmpy2.mpz(c) for c in r) for r in rads)
            ops.int_mul = lambda a, b: _tmul(a, b, irads)
        else:
            ops.int_mul = None
        ops.denominators = lambda a: [c.denominator for c in a]
        ops.to_int = lambda a, d: tuple(c.numerator * (d // c.denominator) for c in a)
        ops.from_int = lambda a, d: tuple(mpq(c, d) for c in a)
    return ops


def _is_minus_one(r) -> bool:
    return r[0] == MINUS_ONE and not any(r[1:])


def _gen_name(rads, k):
    r = rads[k]
    if _is_minus_one(r):
        return "i"
    return f"sqrt({_render(r, rads[:k])})"


def _render(coords, rads):
    parts = []
    for idx, c in enumerate(coords):
        if not c:
            continue
        if idx == 0:
            parts.append(str(c))
            continue
        mono = "*".join(_gen_name(rads, k) for k in range(len(rads)) if idx >> k & 1)
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


@dataclass(frozen=True)
class FieldTower:
    """A tower ``Q(g0)(g1)...`` with ``g_k ** 2 = radicands[k]``.

    ``radicands[k]`` is the coordinate tuple of an element of level ``k``.
    With ``real=True`` only positive radicands may be adjoined.
    """

    radicands: tuple = ()
    real: bool = False

    def __post_init__(self):
        if self.real and self.contains_i:
            raise NotReal("a real tower cannot contain i")

    @property
    def ops(self) -> _Ops:
        return _ops(self.radicands)

    @property
    def degree(self) -> int:
        return 1 << len(self.radicands)

    @property
    def contains_i(self) -> bool:
        return any(_is_minus_one(r) for r in self.radicands)

    @property
    def generators(self) -> list:
        """Adjoined radicands other than the imaginary unit, as elements."""
        return [FieldElement(self.level(k), self.level(k).ops.from_coords(r))
                for k, r in enumerate(self.radicands) if not _is_minus_one(r)]

    def level(self, k: int) -> "FieldTower":
        return FieldTower(self.radicands[:k], self.real)

    def embeds_in(self, other: "FieldTower") -> bool:
        n = len(self.radicands)
        return other.radicands[:n] == self.radicands

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            t = join(self, value.tower)
            if t != self:
                raise IncompatibleTowers(f"{value} does not live in {self}")
            return FieldElement(self, embed(value.raw, value.tower, self))
        return FieldElement(self, self.ops.from_mpq(to_mpq(value)))

    def from_coords(self, coords) -> "FieldElement":
        coords = tuple(to_mpq(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, self.ops.from_coords(coords))

    def gen(self, k: int) -> "FieldElement":
        coords = [ZERO] * self.degree
        coords[1 << k] = ONE
        return FieldElement(self, self.ops.from_coords(tuple(coords)))

    @property
    def i(self) -> "FieldElement":
        if not self.contains_i:
            raise ValueError(f"{self} does not contain i")
        return self.gen(next(k for k, r in enumerate(self.radicands) if _is_minus_one(r)))

    def zero(self) -> "FieldElement":
        return FieldElement(self, self.ops.zero)

    def one(self) -> "FieldElement":
        return FieldElement(self, self.ops.one)

    def adjoin(self, d) -> "FieldTower":
        """The tower extended by ``sqrt(d)``; unchanged if the root already exists."""
        return sqrt(self(d)).tower

    def generator_names(self) -> list[str]:
        return [_gen_name(self.radicands, k) for k in range(len(self.radicands))]

    def radicand_strings(self) -> list[str]:
        return [_render(r, self.radicands[:k]) for k, r in enumerate(self.radicands)]

    def __str__(self):
        return "Q" + "".join(f"({name})" for name in self.generator_names())


QQ = FieldTower()
GAUSSIAN = FieldTower((I_RADICAND,))


def join(t1: FieldTower, t2: FieldTower) -> FieldTower:
    if t1 is t2:
        return t1
    if t1.embeds_in(t2):
        return t2 if len(t2.radicands) > len(t1.radicands) else t1
    if t2.embeds_in(t1):
        return t1
    raise IncompatibleTowers(f"{t1} and {t2} have no common extension in this workbench")


def embed(raw, src: FieldTower, dst: FieldTower):
    n1, n2 = src.degree, dst.degree
    if n1 == n2:
        return raw
    if n1 == 1:
        return (raw,) + (ZERO,) * (n2 - 1)
    return raw + (ZERO,) * (n2 - n1)


class FieldElement:
    """An immutable element of a :class:`FieldTower`."""

    __slots__ = ("tower", "raw")

    def __init__(self, tower: FieldTower, raw):
        self.tower = tower
        self.raw = raw

    @property
    def coords(self) -> tuple:
        return self.tower.ops.coords(self.raw)

    def in_tower(self, tower: FieldTower) -> "FieldElement":
        if tower == self.tower:
            return self
        return FieldElement(tower, embed(self.raw, self.tower, tower))

    def _pair(self, other):
        if isinstance(other, FieldElement):
            t = join(self.tower, other.tower)
            return t, embed(self.raw, self.tower, t), embed(other.raw, other.tower, t)
        return self.tower, self.raw, self.tower.ops.from_mpq(to_mpq(other))

    def __add__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElement(t, t.ops.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElement(t, t.ops.sub(a, b))

    def __rsub__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElement(t, t.ops.sub(b, a))

    def __mul__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElement(t, t.ops.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElement(t, t.ops.mul(a, t.ops.inv(b)))

    def __rtruediv__(self, other):
        try:
            t, a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return FieldElement(t, t.ops.mul(b, t.ops.inv(a)))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.ops.neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        ops = self.tower.ops
        acc, b = ops.one, base.raw
        while n:
            if n & 1:
                acc = ops.mul(acc, b)
            n >>= 1
            if n:
                b = ops.mul(b, b)
        return FieldElement(self.tower, acc)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.tower.ops.inv(self.raw))

    def __bool__(self):
        return bool(self.tower.ops.nonzero(self.raw))

    def __eq__(self, other):
        try:
            _, a, b = self._pair(other)
        except (TypeError, IncompatibleTowers):
            return NotImplemented
        return a == b

    def __hash__(self):
        c = self.coords
        if not any(c[1:]):
            return hash(c[0])
        k = len(c)
        while not c[k - 1]:
            k -= 1
        return hash(c[:k])

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        c = self.coords[0]
        return Fraction(int(c.numerator), int(c.denominator))

    def complex_value(self, dps: int = 30) -> complex:
        with mpmath.workdps(dps):
            return complex(_numeric(self.coords, self.tower.radicands))

    def sign(self) -> int:
        """Sign of a real-tower element, decided with interval arithmetic."""
        if not self.tower.real:
            raise NotReal("sign is only defined in real towers")
        if not self:
            return 0
        iv = mpmath.iv
        saved = iv.prec
        prec = 64
        try:
            while True:
                iv.prec = prec
                v = _interval(self.coords, self.tower.radicands)
                if v.a > 0:
                    return 1
                if v.b < 0:
                    return -1
                prec *= 2
        finally:
            iv.prec = saved

    def __str__(self):
        return _render(self.coords, self.tower.radicands)

    def __repr__(self):
        return f"FieldElement({self}, tower={self.tower})"


def _numeric(coords, rads):
    gens = [mpmath.sqrt(_numeric(r, rads[:k])) for k, r in enumerate(rads)]
    total = mpmath.mpc(0)
    for idx, c in enumerate(coords):
        if not c:
            continue
        term = mpmath.mpf(int(c.numerator)) / int(c.denominator)
        for k, g in enumerate(gens):
            if idx >> k & 1:
                term *= g
        total += term
    return total


def _interval(coords, rads):
    iv = mpmath.iv
    gens = [iv.sqrt(_interval(r, rads[:k])) for k, r in enumerate(rads)]
    total = iv.mpf(0)
    for idx, c in enumerate(coords):
        if not c:
            continue
        term = iv.mpf(int(c.numerator)) / int(c.denominator)
        for k, g in enumerate(gens):
            if idx >> k & 1:
                term *= g
        total += term
    return total


def sqrt(d) -> FieldElement:
    """A square root of ``d``, extending the tower only when none exists.

    Existing roots are normalised so that their first nonzero coordinate is
    positive; a freshly adjoined root is the new generator itself.
    """
    if not isinstance(d, FieldElement):
        d = QQ(d)
    t = d.tower
    coords = d.coords
    if not any(coords):
        raise ZeroRadicand("square root of zero requested")
    root = _tsqrt(coords, t.radicands)
    if root is not None:
        return FieldElement(t, t.ops.from_coords(_canonical_sign(root)))
    if t.real and d.sign() < 0:
        raise NotReal(f"sqrt({d}) is not real")
    scale = ONE
    if not any(coords[1:]):
        # rational radicand n/m: adjoin the square-free part k of n*m instead
        q = coords[0]
        s, k = _squarefree(int(q.numerator) * int(q.denominator))
        scale = mpq(s, int(q.denominator))
        coords = (mpq(k),) + coords[1:]
    new = FieldTower(t.radicands + (coords,), t.real)
    extra = len(new.radicands) - (1 if new.contains_i else 0)
    if extra > MAX_GENERATORS:
        raise TowerLimit(f"tower would exceed {MAX_GENERATORS} generators")
    return new.gen(len(t.radicands)) * scale


def _squarefree(n: int, bound: int = 1000) -> tuple[int, int]:
    """(s, k) with n = s^2 * k; square factors are removed by trial division
    up to ``bound`` and by a final perfect-square test."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s = 1
    p = 2
    while p <= bound and p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        p += 1 if p == 2 else 2
    if n > 1 and gmpy2.is_square(n):
        r = int(gmpy2.isqrt(n))
        s, n = s * r, 1
    return s, sign * n


def tower_with_radicands(elements, real: bool = False) -> FieldTower:
    """Rebuild a tower by adjoining each radicand as a fresh generator."""
    t = FieldTower((), real)
    for r in elements:
        r = t(r)
        if _tsqrt(r.coords, t.radicands) is not None:
            raise ValueError(f"radicand {r} already has a square root in {t}")
        t = FieldTower(t.radicands + (r.coords,), real)
    return t
