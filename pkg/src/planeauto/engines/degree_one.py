"""Inversion of Keller maps with a coordinate of degree 1, and of maps with
both coordinates of degree at most 2."""
from __future__ import annotations

from dataclasses import dataclass

from ..endo import Endo, compose
from ..errors import DegreeMismatch, DegreeTooHigh, InternalError, NotKeller
from ..field import FieldElement
from ..involutions import builtin
from ..poly import Poly, jacobian
from ..tame import Affine, ElementaryY, TameCertificate, affine_from_endo, chain_apply, recompose


@dataclass(frozen=True)
class Degree1Result:
    inverse: Endo
    certificate: TameCertificate  # certificate of the inverse
    normalizer: Endo  # g with g f = (x + e, a*y + H(x))
    normalized: Endo
    e: FieldElement
    a: FieldElement
    h: Poly
    swapped: bool  # True when f(y) had degree 1 and alpha was composed on the right


def _check_inverse(chain, f: Endo, inverse: Endo):
    x, y = Poly.x(), Poly.y()
    if chain_apply(chain, f.p) != x or chain_apply(chain, f.q) != y:
        raise InternalError("computed inverse fails h f = id")
    # f h = id, with f applied to h's images
    if f.apply(inverse.p) != x or f.apply(inverse.q) != y:
        raise InternalError("computed inverse fails f h = id")


def degree1_reduce(f: Endo) -> Degree1Result:
    """Invert a Keller map one of whose coordinates has degree 1.

    p = a*x + b*y + e is moved to x + e by an affine g; the Keller condition
    then forces (g f)(y) = a'*y + H(x), which inverts explicitly.
    """
    swapped = False
    if f.p.degree() != 1:
        if f.q.degree() != 1:
            raise DegreeMismatch("neither image has degree 1")
        alpha = builtin("alpha").endo
        f0, f = f, compose(f, alpha)
        swapped = True
    p, q = f.p, f.q
    t = f.tower
    a, b, e = p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)
    x, y = Poly.x(t), Poly.y(t)
    if a and b:
        g = Endo((x - y) / a, y / b)
    elif b:
        g = Endo(y, x / b)
    else:
        g = Endo(x / a, y)
    gf = compose(g, f)
    if gf.p != x + e:
        raise InternalError("normalizer did not produce x + e")
    qq = gf.q
    a2 = qq.coeff(0, 1)
    h = qq - y * a2
    if not a2 or "y" in h.variables():
        raise NotKeller(f"Jacobian of ({p}, {q}) is not a nonzero constant")
    ey = ElementaryY(h, a2)
    tr = Affine(((1, 0), (0, 1)), (e, 0))
    g_fac = affine_from_endo(g)
    chain = [tr.inverse(), ey.inverse(), g_fac]
    if swapped:
        chain = [affine_from_endo(alpha)] + chain
        f = f0
    inverse = recompose(chain)
    _check_inverse(chain, f, inverse)
    return Degree1Result(inverse, TameCertificate(tuple(chain), inverse), g, gf, e, a2, h, swapped)


@dataclass(frozen=True)
class WangResult:
    inverse: Endo
    certificate: TameCertificate
    branch: str  # "degree1", "R-linear" or "R-quadratic"
    lam: FieldElement | None = None
    mu: FieldElement | None = None
    r: Poly | None = None
    r_tilde: Poly | None = None
    g: Endo | None = None
    reduced: Degree1Result | None = None


def wang_special(f: Endo) -> WangResult:
    """Invert a Keller map whose coordinates both have degree <= 2.

    The quadratic parts are proportional, p2 = lam*Rt and q2 = mu*Rt, so
    g = (x - (lam/mu)*y, y) makes (f g)(x) of degree 1.
    """
    dp, dq = f.p.degree(), f.q.degree()
    if dp > 2 or dq > 2:
        raise DegreeTooHigh("both images must have degree at most 2")
    if not f.is_keller():
        raise NotKeller(f"Jacobian of ({f.p}, {f.q}) is not a nonzero constant")
    if dp <= 1 or dq <= 1:
        # includes mu = 0: f(y) is then of degree 1
        d1 = degree1_reduce(f)
        return WangResult(d1.inverse, d1.certificate, "degree1", reduced=d1)
    t = f.tower
    x, y = Poly.x(t), Poly.y(t)
    p2, q2 = f.p.homogeneous_part(2), f.q.homogeneous_part(2)
    if not jacobian(p2, q2).is_zero():
        raise InternalError("Jac(p2, q2) is nonzero for a Keller map")
    ca, cb, cc = q2.coeff(2, 0), q2.coeff(1, 1), q2.coeff(0, 2)
    if cb * cb - ca * cc * 4 == 0:
        branch = "R-linear"
        if ca:
            mu, r = ca, x + y * (cb / (ca * 2))
        else:
            mu, r = cc, y
        r_tilde = r * r
    else:
        branch = "R-quadratic"
        mu = q2.leading_coeff()
        r = q2 / mu
        r_tilde = r
    if q2 != r_tilde * mu:
        raise InternalError("q2 is not mu * Rt")
    lam = p2.leading_coeff() / r_tilde.leading_coeff()
    if p2 != r_tilde * lam:
        raise InternalError("p2 is not lam * Rt")
    g = Endo(x - y * (lam / mu), y)
    fg = compose(f, g)
    if fg.p.degree() != 1:
        raise NotKeller("(f g)(x) is constant")
    d1 = degree1_reduce(fg)
    # f = (f g) g^-1, so f^-1 = g (f g)^-1
    chain = [affine_from_endo(g)] + list(d1.certificate.factors)
    inverse = compose(g, d1.inverse)
    _check_inverse(chain, f, inverse)
    return WangResult(inverse, TameCertificate(tuple(chain), inverse), branch, lam, mu, r, r_tilde, g, d1)
