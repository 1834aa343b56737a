"""Involutions of the plane, their conjugacy classes and symmetry tests."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .endo import Endo, compose
from .errors import InternalError, NonConstantJacobian, NotInvertible, NotInvolution, NotKeller, NotReducible
from .field import QQ
from .poly import Poly
from .tame import TameCertificate, compose_through, decompose, invert_certificate


class ConjClass(Enum):
    Cminus1 = "Cminus1"
    Cplus1 = "Cplus1"


class SymmetryType(Enum):
    Symmetric = "Symmetric"
    Skew = "Skew"
    Neither = "Neither"


@dataclass(frozen=True)
class Involution:
    endo: Endo
    conj_class: ConjClass
    name: str | None = None

    def apply(self, r: Poly) -> Poly:
        return self.endo.apply(r)

    def __str__(self):
        return self.name or str(self.endo)


def _builtin_maps():
    x, y = Poly.x(QQ), Poly.y(QQ)
    return {
        "alpha": Endo(y, x),
        "beta": Endo(x, -y),
        "gamma": Endo(-x, y),
        "epsilon": Endo(-x, -y),
        "a": Endo(-x - y ** 2, y),
        "b": Endo(-x - y ** 2, -y),
    }


BUILTIN_NAMES = ("alpha", "beta", "gamma", "epsilon", "a", "b")


def classify(s: Endo) -> ConjClass:
    """Conjugacy class of an involution, read off its constant Jacobian.

    The square s s is formed by folding s through its own tame factors,
    which is exact and avoids expanding s(s) directly.
    """
    j = s.jacobian()
    if not j.is_constant() or j.is_zero():
        raise NotInvolution(f"({s}) is not an involution: its Jacobian {j} is not a nonzero constant")
    try:
        cert = decompose(s)
    except (NotKeller, NotReducible) as exc:
        raise NotInvolution(f"({s}) is not an automorphism") from exc
    if s.is_identity() or compose_through(s, cert.factors) != Endo.identity(s.tower):
        raise NotInvolution(f"({s}) is not an involution")
    c = j.constant_value()
    if c == -1:
        return ConjClass.Cminus1
    if c == 1:
        return ConjClass.Cplus1
    raise NonConstantJacobian(f"involution with Jacobian {c}")


def builtin(name: str) -> Involution:
    maps = _builtin_maps()
    if name not in maps:
        raise KeyError(f"unknown involution {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    f = maps[name]
    return Involution(f, classify(f), name)


def make_involution(s: Endo, name: str | None = None) -> Involution:
    return Involution(s, classify(s), name)


def resolve(spec) -> Involution:
    """Accept a builtin name, an Endo or an Involution."""
    if isinstance(spec, Involution):
        return spec
    if isinstance(spec, str):
        return builtin(spec)
    return make_involution(spec)


def _certificate(g: Endo, certificate: TameCertificate | None) -> TameCertificate:
    if certificate is not None:
        if certificate.subject != g or not certificate.verify():
            raise NotInvertible("supplied certificate does not certify g")
        return certificate
    try:
        return decompose(g)
    except (NotKeller, NotReducible) as exc:
        raise NotInvertible(f"g is not invertible: {exc}") from exc


def verify_conjugation(g: Endo, s: Endo, t: Endo, certificate: TameCertificate | None = None) -> bool:
    """True iff t = g^-1 s g, checked as s g = g t.

    g must be invertible; its certificate is computed when not supplied.
    """
    _certificate(g, certificate)
    return compose(s, g) == compose(g, t)


def is_sigma_tau_morphism(g: Endo, sigma: Endo, tau: Endo) -> bool:
    """True iff g sigma = tau g."""
    return compose(g, sigma) == compose(tau, g)


def conjugate(s: Endo, u: Endo, certificate: TameCertificate | None = None) -> Endo:
    """u^-1 s u for an invertible u."""
    cert = _certificate(u, certificate)
    u_inv = invert_certificate(cert).subject
    return compose_through(compose(u_inv, s), cert.factors)


def symmetry_type(p: Poly, s) -> SymmetryType:
    """Symmetric iff s(p) = p, Skew iff s(p) = -p."""
    s = s.endo if isinstance(s, Involution) else (builtin(s).endo if isinstance(s, str) else s)
    image = s.apply(p)
    if image == p:
        return SymmetryType.Symmetric
    if image == -p:
        return SymmetryType.Skew
    return SymmetryType.Neither


def alpha_conjugator(name: str) -> Endo:
    """An automorphism v with alpha v = v s for a builtin s of class Cminus1.

    If s(w) = +-w then alpha(v(w)) = +-v(w), so v carries s-symmetric
    polynomials to alpha-symmetric ones.
    """
    x, y = Poly.x(QQ), Poly.y(QQ)
    maps = _builtin_maps()
    g = Endo((x + y) / 2, y - x)  # alpha g = g beta
    h = Endo(-y, -x - y ** 2 / 2)  # a h = h beta
    if name == "alpha":
        v = Endo.identity(QQ)
    elif name == "beta":
        v = g
    elif name == "gamma":
        v = compose(g, maps["alpha"])
    elif name == "a":
        v = compose(g, invert_certificate(decompose(h)).subject)
    else:
        raise NotInvolution(f"{name!r} is not a builtin involution of class Cminus1")
    if compose(maps["alpha"], v) != compose(v, maps[name]):
        raise InternalError(f"conjugator for {name} does not intertwine with alpha")
    return v
