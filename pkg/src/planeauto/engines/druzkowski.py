"""Cubic-linear maps x -> x + l1^3, y -> y + l2^3 in the plane."""
from __future__ import annotations

from dataclasses import dataclass

from ..endo import Endo, compose
from ..errors import InternalError, Rejected
from ..field import FieldElement
from ..poly import Poly
from ..tame import Affine, ElementaryX, TameCertificate, affine_from_endo, chain_apply, recompose


@dataclass(frozen=True)
class DruzkowskiResult:
    map: Endo
    inverse: Endo
    certificate: TameCertificate  # certificate of the inverse
    conjugator: Endo | None  # linear T with T d T^-1 = (x + mu*y^3, y)
    mu: FieldElement | None


def linear_form(l) -> Poly:
    """Accept a Poly or a coefficient pair (u, v) meaning u*x + v*y."""
    if isinstance(l, Poly):
        if any(i + j != 1 for i, j in l.terms):
            raise ValueError(f"{l} is not a linear form")
        return l
    u, v = l
    return Poly.x() * u + Poly.y() * v


def druzkowski2(l1, l2) -> DruzkowskiResult:
    """Build d = (x + l1^3, y + l2^3), accept it iff its Jacobian is 1, and invert it.

    For an accepted map l1 = c1*l and l2 = c2*l for a single form l = u*x + v*y.
    With T^-1 = (m*x + n*y, l), the conjugate T d T^-1 is (x + mu*y^3, y)
    where mu = m*c1^3 + n*c2^3, so d^-1 = T^-1 N^-1 T.
    """
    l1, l2 = linear_form(l1), linear_form(l2)
    x, y = Poly.x(l1.tower), Poly.y(l1.tower)
    d = Endo(x + l1 ** 3, y + l2 ** 3)
    j = d.jacobian()
    if j != 1:
        raise Rejected(f"NonConstantJacobian: Jacobian is {j}")
    if l1.is_zero() and l2.is_zero():
        ident = Endo.identity(d.tower)
        return DruzkowskiResult(d, ident, TameCertificate((), ident), None, None)
    ell = l1 if not l1.is_zero() else l2
    u, v = ell.coeff(1, 0), ell.coeff(0, 1)
    c1 = l1.leading_coeff() / ell.leading_coeff() if not l1.is_zero() else 0
    c2 = l2.leading_coeff() / ell.leading_coeff() if not l2.is_zero() else 0
    if l1 != ell * c1 or l2 != ell * c2:
        raise InternalError("accepted map with independent linear forms")
    m, n = (1, 0) if v else (0, 1)
    t_inv = Affine(((m, n), (u, v)))
    t = t_inv.inverse()
    mu = c1 ** 3 * m + c2 ** 3 * n
    big_n = compose(compose(t.endo, d), t_inv.endo)
    if big_n != Endo(x + y ** 3 * mu, y):
        raise InternalError(f"conjugate is {big_n}, expected x + mu*y^3")
    n_inv = ElementaryX(-(y ** 3) * mu)
    chain = [t_inv, n_inv, t]
    inverse = recompose(chain)
    one_x, one_y = Poly.x(), Poly.y()
    if chain_apply(chain, d.p) != one_x or chain_apply(chain, d.q) != one_y:
        raise InternalError("inverse fails h d = id")
    if d.apply(inverse.p) != one_x or d.apply(inverse.q) != one_y:
        raise InternalError("inverse fails d h = id")
    return DruzkowskiResult(d, inverse, TameCertificate(tuple(chain), inverse), t.endo, mu)
