"""Endomorphisms of k[x, y] given by the images of x and y.

Composition follows the convention ``compose(g, f) = gf`` where
``(gf)(x) = g(f(x))``: the images of g are substituted into the image
polynomials of f.
"""
from __future__ import annotations

from dataclasses import dataclass

from .field import QQ, FieldTower
from .poly import NEG_INF, Poly, jacobian


@dataclass(frozen=True)
class Endo:
    p: Poly
    q: Poly

    @classmethod
    def identity(cls, tower: FieldTower = QQ) -> "Endo":
        return cls(Poly.x(tower), Poly.y(tower))

    @property
    def tower(self) -> FieldTower:
        from .field import join

        return join(self.p.tower, self.q.tower)

    def apply(self, r: Poly) -> Poly:
        """Substitute x -> p, y -> q in r."""
        return r.subs(self.p, self.q)

    def jacobian(self) -> Poly:
        return jacobian(self.p, self.q)

    def is_keller(self) -> bool:
        j = self.jacobian()
        return j.is_constant() and not j.is_zero()

    def jacobian_constant(self):
        """The Jacobian as a field element, or None when it is not constant."""
        j = self.jacobian()
        return j.constant_value() if j.is_constant() else None

    def degree(self):
        return max(self.p.degree(), self.q.degree())

    def is_identity(self) -> bool:
        return self.p.is_x() and self.q.is_y()

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __str__(self):
        return f"x -> {self.p}; y -> {self.q}"


def apply(f: Endo, r: Poly) -> Poly:
    return f.apply(r)


def compose(g: Endo, f: Endo) -> Endo:
    """The endomorphism gf: x -> g(f(x)), y -> g(f(y))."""
    return Endo(g.apply(f.p), g.apply(f.q))


def compose_all(maps) -> Endo:
    """compose(m1, compose(m2, ...)) for maps = [m1, m2, ...]."""
    maps = list(maps)
    if not maps:
        return Endo.identity()
    cur = maps[0]
    for m in maps[1:]:
        cur = compose(cur, m)
    return cur


def jacobian_of(f: Endo) -> Poly:
    return f.jacobian()


def is_keller(f: Endo) -> bool:
    return f.is_keller()


def order(f: Endo, max_order: int) -> int | None:
    """Least n <= max_order with f^n = id, or None when unknown."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    cur = f
    for n in range(1, max_order + 1):
        if cur.is_identity():
            return n
        if n < max_order:
            cur = compose(cur, f)
    return None


def is_involution(f: Endo) -> bool:
    return not f.is_identity() and order(f, 2) == 2


__all__ = ["Endo", "apply", "compose", "compose_all", "jacobian_of", "is_keller", "order",
           "is_involution", "NEG_INF"]
