"""Expressing Jacobian-orthogonal polynomials as polynomials in a given one.

If Jac(A, R) = 0 and A has a Jacobian mate, then R = H(A) for a univariate
H.  :func:`express_in` finds H by repeatedly cancelling the leading term of
R against a power of A.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .endo import Endo
from .errors import (InternalError, JacobianNotZero, NonzeroJacobian, NotInSubalgebra, NotKeller,
                     PreconditionSymmetry)
from .field import QQ, FieldElement, FieldTower
from .poly import Poly, jacobian


class UniPoly:
    """c0 + c1*t + ... with trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, tower: FieldTower = QQ):
        cs = [c if isinstance(c, FieldElement) else tower(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __call__(self, a: Poly) -> Poly:
        acc = Poly.zero(a.tower)
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs: list(cs) + [0] * (n - len(cs))
        return all(u == v for u, v in zip(pad(self.coeffs), pad(other.coeffs)))

    def __hash__(self):
        return hash(self.coeffs)

    def render(self, var: str = "t") -> str:
        # ascending powers; reuse the bivariate printer for the signs
        pieces = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            term = Poly.monomial(0, 0, c, c.tower).render()
            if not mono:
                pieces.append(term)
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            elif term.startswith("-") and c.is_rational():
                pieces.append(f"{term}*{mono}")
            elif sum(1 for v in c.coords if v) == 1:
                pieces.append(f"{term}*{mono}")
            else:
                pieces.append(f"({term})*{mono}")
        if not pieces:
            return "0"
        out = pieces[0]
        for piece in pieces[1:]:
            out += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"UniPoly({self.render()!r})"


def express_in(a: Poly, r: Poly) -> UniPoly:
    """H with H(a) = r, given Jac(a, r) = 0.

    Raises NonzeroJacobian when the precondition fails and NotInSubalgebra
    when a leading term cannot be matched by a power of a.
    """
    if a.is_constant():
        raise ValueError("express_in needs a non-constant A")
    if not jacobian(a, r).is_zero():
        raise NonzeroJacobian("Jac(A, R) is not zero")
    da = a.degree()
    powers = [Poly.one(a.tower)]
    coeffs: dict[int, FieldElement] = {}
    cur = r
    while not cur.is_constant():
        dr = cur.degree()
        if dr % da:
            raise NotInSubalgebra(f"degree {dr} is not a multiple of {da}")
        t = dr // da
        while len(powers) <= t:
            powers.append(powers[-1] * a)
        at = powers[t]
        mono = cur.leading_monomial()
        if at.leading_monomial() != mono:
            raise NotInSubalgebra(f"leading monomial of R does not match that of A^{t}")
        c = cur.coeff(*mono) / at.coeff(*mono)
        coeffs[t] = coeffs.get(t, c.tower.zero()) + c
        cur = cur - at * c
    coeffs[0] = coeffs.get(0, cur.tower.zero()) + (cur.constant_value() if cur else 0)
    top = max(coeffs)
    return UniPoly([coeffs.get(k, 0) for k in range(top + 1)], r.tower)


class SubalgebraExpr:
    """A polynomial in the formal symbols P and Q, standing for f.p and f.q."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly  # x plays P, y plays Q

    def evaluate(self, f: Endo) -> Poly:
        return self.poly.subs(f.p, f.q)

    def __str__(self):
        return self.poly.render(("P", "Q"))

    def __eq__(self, other):
        return isinstance(other, SubalgebraExpr) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)


def formal_jacobian(u: SubalgebraExpr, v: SubalgebraExpr) -> Poly:
    return jacobian(u.poly, v.poly)


class RestrictionMode(Enum):
    SymmetricP = "SymmetricP"
    SkewP = "SkewP"


@dataclass(frozen=True)
class AlphaRestriction:
    mode: RestrictionMode
    h: UniPoly
    alpha_p: SubalgebraExpr
    alpha_q: SubalgebraExpr
    formal_jacobian: Poly


def _alpha(r: Poly) -> Poly:
    return r.subs(Poly.y(r.tower), Poly.x(r.tower))


def alpha_restriction_check(f: Endo, mode: RestrictionMode | str | None = None) -> AlphaRestriction:
    """Express alpha(p) and alpha(q) inside k[p, q] for a (skew-)symmetric p.

    The mode is detected from p when not given.
    """
    if isinstance(mode, str):
        mode = RestrictionMode(mode)
    if not f.is_keller():
        raise NotKeller("alpha restriction needs a Keller map")
    p, q = f.p, f.q
    ap, aq = _alpha(p), _alpha(q)
    detected = RestrictionMode.SymmetricP if ap == p else RestrictionMode.SkewP if ap == -p else None
    if detected is None:
        raise PreconditionSymmetry("p is neither symmetric nor skew-symmetric under alpha")
    if mode is not None and mode is not detected:
        raise PreconditionSymmetry(f"p is not {mode.value}")
    mode = detected
    s = q + aq if mode is RestrictionMode.SymmetricP else q - aq
    if not jacobian(p, s).is_zero():
        raise JacobianNotZero("Jac(p, q +/- alpha(q)) is not zero")
    h = express_in(p, s)
    tower = f.tower
    big_p, big_q = Poly.x(tower), Poly.y(tower)
    hp = h(big_p)
    if mode is RestrictionMode.SymmetricP:
        alpha_p, alpha_q = SubalgebraExpr(big_p), SubalgebraExpr(-big_q + hp)
    else:
        alpha_p, alpha_q = SubalgebraExpr(-big_p), SubalgebraExpr(big_q - hp)
    if alpha_p.evaluate(f) != ap or alpha_q.evaluate(f) != aq:
        raise InternalError("restricted alpha does not reproduce alpha(p), alpha(q)")
    return AlphaRestriction(mode, h, alpha_p, alpha_q, formal_jacobian(alpha_p, alpha_q))
