"""Tame decomposition of plane automorphisms.

A certificate is an ordered factor list ``[F1, ..., Fm]`` whose product
``F1 F2 ... Fm`` (in the :func:`~planeauto.endo.compose` convention) is the
subject map.  Because ``apply(F1 ... Fm, r) = F1(F2(... Fm(r)))``, applying
a certificate to a polynomial runs the factors from last to first, one
small substitution at a time; that is how the identity checks avoid
expanding large compositions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

from .endo import Endo, compose
from .errors import CorruptCertificate, DivisionByZero, InternalError, NotKeller, NotReducible, ResourceLimit
from .field import QQ, FieldElement, FieldTower, join
from .poly import NEG_INF, Poly

log = logging.getLogger(__name__)


def _elt(value, tower: FieldTower = QQ) -> FieldElement:
    return value if isinstance(value, FieldElement) else tower(value)


@dataclass(frozen=True)
class Affine:
    """x -> m00*x + m01*y + e0, y -> m10*x + m11*y + e1."""

    matrix: tuple
    translation: tuple = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        entries = (a, b, c, d, *self.translation)
        tower = QQ
        for v in entries:
            if isinstance(v, FieldElement):
                tower = join(tower, v.tower)
        a, b, c, d, e0, e1 = (_elt(v, tower).in_tower(tower) for v in entries)
        object.__setattr__(self, "matrix", ((a, b), (c, d)))
        object.__setattr__(self, "translation", (e0, e1))
        if not self.det():
            raise DivisionByZero("affine factor with zero determinant")

    kind = "Affine"

    def det(self) -> FieldElement:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    @property
    def tower(self) -> FieldTower:
        return self.matrix[0][0].tower

    @cached_property
    def endo(self) -> Endo:
        (a, b), (c, d) = self.matrix
        e0, e1 = self.translation
        t = a.tower
        x, y = Poly.x(t), Poly.y(t)
        return Endo(a * x + b * y + e0, c * x + d * y + e1)

    def inverse(self) -> "Affine":
        (a, b), (c, d) = self.matrix
        e0, e1 = self.translation
        k = self.det().inverse()
        ia, ib, ic, id_ = d * k, -b * k, -c * k, a * k
        return Affine(((ia, ib), (ic, id_)), (-(ia * e0 + ib * e1), -(ic * e0 + id_ * e1)))

    def jacobian_constant(self) -> FieldElement:
        return self.det()

    def is_identity(self) -> bool:
        return self.endo.is_identity()

    def apply(self, r: Poly) -> Poly:
        return self.endo.apply(r)


@dataclass(frozen=True)
class ElementaryX:
    """x -> scale*x + h(y), y -> y."""

    h: Poly
    scale: object = 1

    kind = "ElementaryX"

    def __post_init__(self):
        if "x" in self.h.variables():
            raise ValueError("ElementaryX needs h in y alone")
        s = _elt(self.scale, self.h.tower)
        object.__setattr__(self, "scale", s)
        if not s:
            raise DivisionByZero("elementary factor with zero scale")

    @cached_property
    def endo(self) -> Endo:
        t = join(self.h.tower, self.scale.tower)
        return Endo(self.scale * Poly.x(t) + self.h, Poly.y(t))

    def inverse(self) -> "ElementaryX":
        k = self.scale.inverse()
        return ElementaryX(-(self.h * k), k)

    def jacobian_constant(self) -> FieldElement:
        return self.scale

    def apply(self, r: Poly) -> Poly:
        return self.endo.apply(r)


@dataclass(frozen=True)
class ElementaryY:
    """x -> x, y -> scale*y + h(x)."""

    h: Poly
    scale: object = 1

    kind = "ElementaryY"

    def __post_init__(self):
        if "y" in self.h.variables():
            raise ValueError("ElementaryY needs h in x alone")
        s = _elt(self.scale, self.h.tower)
        object.__setattr__(self, "scale", s)
        if not s:
            raise DivisionByZero("elementary factor with zero scale")

    @cached_property
    def endo(self) -> Endo:
        t = join(self.h.tower, self.scale.tower)
        return Endo(Poly.x(t), self.scale * Poly.y(t) + self.h)

    def inverse(self) -> "ElementaryY":
        k = self.scale.inverse()
        return ElementaryY(-(self.h * k), k)

    def jacobian_constant(self) -> FieldElement:
        return self.scale

    def apply(self, r: Poly) -> Poly:
        return self.endo.apply(r)


Factor = Affine | ElementaryX | ElementaryY


def affine_from_endo(f: Endo) -> Affine:
    """Read an affine factor off a map whose images have degree <= 1."""
    if f.p.degree() > 1 or f.q.degree() > 1:
        raise ValueError("map is not affine")
    return Affine(((f.p.coeff(1, 0), f.p.coeff(0, 1)), (f.q.coeff(1, 0), f.q.coeff(0, 1))),
                  (f.p.coeff(0, 0), f.q.coeff(0, 0)))


def recompose(factors) -> Endo:
    factors = list(factors)
    if not factors:
        return Endo.identity()
    cur = factors[0].endo
    for fac in factors[1:]:
        cur = compose(cur, fac.endo)
    return cur


def compose_through(h: Endo, factors) -> Endo:
    """compose(h, recompose(factors)), one factor at a time.

    By associativity this is exact, and when h inverts the product the
    intermediate maps are inverses of partial products, so their degrees
    stay small instead of reaching deg(h) * deg(product).
    """
    for fac in factors:
        h = compose(h, fac.endo)
    return h


def chain_apply(factors, r: Poly) -> Poly:
    """apply(F1 ... Fm, r), computed as F1(F2(... Fm(r)))."""
    for fac in reversed(list(factors)):
        r = fac.apply(r)
    return r


@dataclass(frozen=True)
class TameCertificate:
    factors: tuple
    subject: Endo
    trace: tuple = field(default=(), compare=False)

    def recompose(self) -> Endo:
        return recompose(self.factors)

    def verify(self) -> bool:
        return self._verified

    @cached_property
    def _verified(self) -> bool:
        # factors and subject are immutable, so the answer can be kept
        try:
            return self.recompose() == self.subject
        except Exception:  # malformed factors count as a failed check
            return False

    def apply(self, r: Poly) -> Poly:
        return chain_apply(self.factors, r)

    def jacobian_constant(self) -> FieldElement:
        out = QQ.one()
        for fac in self.factors:
            out = out * fac.jacobian_constant()
        return out


def _reduce_step(u: Poly, v: Poly):
    """Return (c, k) with lf(u) = c*lf(v)^k, or None."""
    du, dv = u.degree(), v.degree()
    if dv < 1 or du % dv:
        return None
    k = du // dv
    lu, lv = u.leading_form(), v.leading_form() ** k
    mono = lu.leading_monomial()
    if lv.leading_monomial() != mono:
        return None
    c = lu.coeff(*mono) / lv.coeff(*mono)
    if lu != lv * c:
        return None
    return c, k


def decompose(f: Endo) -> TameCertificate:
    """Factor f into affine and elementary automorphisms by degree reduction.

    Raises NotKeller when the Jacobian is not a nonzero constant and
    NotReducible (with the stuck pair attached) when a Keller map cannot be
    reduced.  A successful reduction already proves f is an automorphism, so
    the Jacobian is only computed when the reduction stops.
    """
    tower = f.tower
    p, q = f.p.in_tower(tower), f.q.in_tower(tower)
    start = max(p.degree(), q.degree())
    limit = 10 * max(start, 1)
    steps = []  # elementary factors E_i with f E_1 ... E_r affine
    trace = [(p.degree(), q.degree())]
    while max(p.degree(), q.degree()) > 1:
        dp, dq = p.degree(), q.degree()
        if dp < 1 or dq < 1:
            raise NotKeller("an image of the map is constant")
        if dp >= dq:
            red = _reduce_step(p, q)
            if red is not None:
                c, k = red
                step = ElementaryX(-(Poly.y(tower) ** k) * c)
                p = p - q ** k * c
        else:
            red = _reduce_step(q, p)
            if red is not None:
                c, k = red
                step = ElementaryY(-(Poly.x(tower) ** k) * c)
                q = q - p ** k * c
        if red is None:
            if not Endo(p, q).is_keller():
                raise NotKeller(f"Jacobian of ({f.p}, {f.q}) is not a nonzero constant")
            log.warning("degree reduction stuck on a Keller pair: (%s, %s)", p, q)
            raise NotReducible(
                f"degree reduction stuck on Keller pair ({p}, {q}); this would contradict "
                "the two-dimensional Jacobian conjecture", p, q)
        if max(p.degree(), q.degree()) > limit:
            raise ResourceLimit("intermediate degree exceeded the guard")
        if p.degree() + q.degree() >= dp + dq:
            raise InternalError("degree reduction did not decrease the degree")
        steps.append(step)
        trace.append((p.degree(), q.degree()))
    if p.degree() < 1 or q.degree() < 1:
        raise NotKeller("an image of the map is constant")
    try:
        a = affine_from_endo(Endo(p, q))
    except DivisionByZero:
        raise NotKeller("linear part is singular") from None
    factors = [] if (a.is_identity() and steps) else [a]
    factors.extend(e.inverse() for e in reversed(steps))
    cert = TameCertificate(tuple(factors), f, tuple(trace))
    if not cert.verify():
        raise InternalError("decomposition does not recompose to its subject")
    return cert


def verify(c: TameCertificate) -> bool:
    return c.verify()


def invert_certificate(c: TameCertificate, check: bool = True) -> TameCertificate:
    """Certificate of the inverse map; both composition orders are checked."""
    if check and not c.verify():
        raise CorruptCertificate("factors do not recompose to the subject")
    inv = tuple(fac.inverse() for fac in reversed(c.factors))
    h = recompose(inv)
    s = c.subject
    ident = Endo.identity(s.tower)
    # h s = id, folding the subject's factors into h
    if compose_through(h, c.factors) != ident:
        raise CorruptCertificate("inverse fails h f = id")
    # s h = id, folding h's factors into the subject
    if compose_through(s, inv) != ident:
        raise CorruptCertificate("inverse fails f h = id")
    return TameCertificate(inv, h)


def invert(c: TameCertificate) -> Endo:
    return invert_certificate(c).subject


def inverse_of(f: Endo) -> Endo:
    return invert(decompose(f))


__all__ = ["Affine", "ElementaryX", "ElementaryY", "Factor", "TameCertificate", "affine_from_endo",
           "chain_apply", "decompose", "invert", "invert_certificate", "inverse_of", "recompose",
           "verify", "NEG_INF"]
