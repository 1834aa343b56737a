"""Making the image of x symmetric under an involution of Jacobian -1.

:func:`symmetrize_poly` runs the full case table on a polynomial of degree
at most 2 by left-applying affine moves ``g_i`` (so each step replaces p by
``g_i(p)``).  After every move the coefficients are compared with the
closed forms of the case table; a mismatch is an :class:`InternalError`.

For Keller maps only some branches are reachable: the quadratic part of p
must be a multiple of the square of a linear form, which rules out Case I,
II(2), III(1) and III(2) with t != 0.  Those branches still run on bare
polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..endo import Endo, compose, compose_all
from ..errors import DegreeTooHigh, InternalError, NotApplicable, NotKeller, RealModeUnsupported
from ..field import FieldElement, sqrt
from ..involutions import Involution, SymmetryType, builtin, symmetry_type
from ..poly import Parity, Poly
from ..tame import Affine, TameCertificate, affine_from_endo, chain_apply, decompose, invert_certificate, recompose
from .degree_one import degree1_reduce


@dataclass(frozen=True)
class Step:
    g: Endo
    certificate: TameCertificate
    label: str


@dataclass(frozen=True)
class SymmetrizationTranscript:
    case: str
    path: tuple
    steps: tuple
    target: Involution
    witness: Poly
    symmetry: SymmetryType
    source: Poly  # the polynomial the steps act on, after any right factors
    right: tuple = ()  # builtin involutions composed on the right of f, in order
    subject: Endo | None = field(default=None, compare=False)

    @property
    def mirrored(self) -> bool:
        return "II.mirror" in self.path

    @property
    def negated(self) -> bool:
        return "negate" in self.path

    def product(self) -> Endo:
        """g_l ... g_1."""
        if not self.steps:
            return Endo.identity(self.witness.tower)
        return compose_all([s.g for s in reversed(self.steps)])

    def check(self) -> bool:
        cur = self.source
        for s in self.steps:
            if not s.certificate.verify():
                return False
            cur = s.g.apply(cur)
        return cur == self.witness and symmetry_type(self.witness, self.target) is self.symmetry \
            and self.symmetry is not SymmetryType.Neither


class _State:
    def __init__(self, p: Poly, real: bool):
        self.cur = p
        self.real = real
        self.steps: list[Step] = []
        self.path: list[str] = []
        self.case: str | None = None

    def coeffs(self):
        c = self.cur.coeff
        return c(2, 0), c(1, 1), c(0, 2), c(1, 0), c(0, 1), c(0, 0)

    def move(self, g: Endo, label: str, expected: Poly | None = None):
        if not g.is_identity():
            # identity moves (a coefficient that is already 1) are not recorded
            cert = TameCertificate((affine_from_endo(g),), g)
            if not cert.verify():
                raise InternalError("step certificate does not verify")
            self.steps.append(Step(g, cert, label))
            self.cur = g.apply(self.cur)
        if expected is not None and self.cur != expected:
            raise InternalError(f"{label}: got {self.cur}, case table predicts {expected}")

    def label(self, name: str):
        if self.case is None:
            self.case = name
        self.path.append(name)

    def xy(self):
        t = self.cur.tower
        return Poly.x(t), Poly.y(t)

    def root(self, v: FieldElement) -> FieldElement:
        if self.real and v.sign() < 0:
            raise RealModeUnsupported(f"sqrt({v}) is not real")
        return sqrt(v)


def _first_option(st: _State) -> str:
    x, y = st.xy()
    a, b, r = st.cur.coeff(1, 0), st.cur.coeff(0, 1), st.cur.coeff(0, 0)
    if not b:
        st.label("First.I")
        return "beta"
    if not a:
        st.label("First.II")
        return "gamma"
    st.label("First.III")
    st.move(Endo(x * b, y * a), "First.III", (x + y) * (a * b) + r)
    return "alpha"


def _case_i(st: _State) -> str:
    x, y = st.xy()
    a, b, c, d, e, r = st.coeffs()
    if not d and not e:
        st.label("I(1)")
    elif not e:
        st.label("I(2)")
        st.move(Endo(x, y / b - d / b), "I(2)", x * y + r)
    elif not d:
        st.label("I(3)")
        st.move(Endo(x / b - e / b, y), "I(3)", x * y + r)
    else:
        st.label("I(4)")
        st.move(Endo(x * e, y * d), "I(4)", x * y * (b * d * e) + (x + y) * (d * e) + r)
    return "alpha"


def _case_ii1(st: _State) -> str:
    """p = a*x^2 + d*x + e*y + r with a != 0."""
    x, y = st.xy()
    a, b, c, d, e, r = st.coeffs()
    if b or c or not a:
        raise InternalError(f"II(1) reached with {st.cur}")
    if not d and not e:
        st.label("II(1).d0e0")
        return "beta"
    if not e:
        st.label("II(1).e0")
        return "beta"
    if not d:
        st.label("II(1).d0")
        return "gamma"
    st.label("II(1).de")
    st.move(Endo(x * e, y * d), "II(1).de", x * x * (a * e * e) + (x + y) * (d * e) + r)
    st.move(Endo(x, y - x), "II(1).de", x * x * (a * e * e) + y * (d * e) + r)
    return "gamma"


def _case_ii2(st: _State) -> str:
    if st.real:
        raise RealModeUnsupported("II(2) needs the imaginary unit")
    x, y = st.xy()
    a, b, c, d, e, r = st.coeffs()
    st.label("II(2)")
    i = sqrt(a.tower(-1))
    sa = st.root(a.in_tower(i.tower))
    i = i.in_tower(sa.tower)
    x, y = Poly.x(i.tower), Poly.y(i.tower)
    dd = d / sa
    ee = -(d * i) / sa + e * sa * i * 2 / b
    st.move(Endo(x / sa - y * i / sa, y * (sa * i * 2) / b), "II(2)", x * x + y * y + x * dd + y * ee + r)
    st.move(Endo(x - dd / 2, y - ee / 2), "II(2)", x * x + y * y - dd * dd / 4 - ee * ee / 4 + r)
    return "alpha"


def _complete_square(st: _State, label: str) -> str:
    """x^2 + y^2 + D*x + E*y + r  ->  x^2 + y^2 + const."""
    x, y = st.xy()
    a, b, c, d, e, r = st.coeffs()
    st.move(Endo(x - d / 2, y - e / 2), label, x * x + y * y - d * d / 4 - e * e / 4 + r)
    return "alpha"


def _case_iii(st: _State) -> str:
    a, b, c, d, e, r = st.coeffs()
    if st.real:
        sa_, sc_ = a.sign(), c.sign()
        if sa_ != sc_:
            raise RealModeUnsupported("a and c have opposite signs")
        if sa_ < 0:
            st.path.append("negate")
            st.cur = -st.cur
            a, b, c, d, e, r = st.coeffs()
    sa = st.root(a)
    sc = st.root(c.in_tower(sa.tower))
    sa = sa.in_tower(sc.tower)
    x, y = Poly.x(sc.tower), Poly.y(sc.tower)
    if not b:
        st.label("III(1)")
        st.move(Endo(x / sa, y / sc), "III(1)", x * x + y * y + x * (d / sa) + y * (e / sc) + r)
        return _complete_square(st, "III(1)")
    bb, dd, ee = b / (sa * sc), d / sa, e / sc
    t = 1 - bb * bb / 4
    if t:
        st.label("III(2).t")
        st.move(Endo(x / sa, y / sc), "III(2).t", x * x + x * y * bb + y * y + x * dd + y * ee + r)
        st_t = st.root(t)
        bb, dd, ee = bb.in_tower(st_t.tower), dd.in_tower(st_t.tower), ee.in_tower(st_t.tower)
        x, y = Poly.x(st_t.tower), Poly.y(st_t.tower)
        et = -(dd * bb) / (st_t * 2) + ee / st_t
        st.move(Endo(x - y * bb / (st_t * 2), y / st_t), "III(2).t", x * x + y * y + x * dd + y * et + r)
        return _complete_square(st, "III(2).t")
    if bb == 2:
        st.label("III(2).t0.B+2")
        st.move(Endo(x / sa, y / sc), "III(2).t0.B+2", (x + y) ** 2 + x * dd + y * ee + r)
        st.move(Endo(x + y, -y), "III(2).t0.B+2", x * x + x * dd + y * (dd - ee) + r)
    elif bb == -2:
        st.label("III(2).t0.B-2")
        st.move(Endo(x / sa, y / sc), "III(2).t0.B-2", (x - y) ** 2 + x * dd + y * ee + r)
        st.move(Endo(x + y, y), "III(2).t0.B-2", x * x + x * dd + y * (dd + ee) + r)
    else:
        raise InternalError(f"t = 0 but B = {bb}")
    return _case_ii1(st)


def symmetrize_poly(p: Poly, real: bool | None = None) -> SymmetrizationTranscript:
    """Run the case table on p of degree 1 or 2 without a Keller check."""
    if real is None:
        real = p.tower.real
    deg = p.degree()
    if deg > 2:
        raise DegreeTooHigh(f"degree {deg} > 2; use the bounded search")
    if deg < 1:
        raise ValueError("p must have degree 1 or 2")
    st = _State(p, real)
    if deg == 1:
        target = _first_option(st)
    else:
        a, b, c, *_ = st.coeffs()
        if not a and not c:
            target = _case_i(st)
        elif not a or not c:
            if not a:
                x, y = st.xy()
                st.path.append("II.mirror")
                mirror = Endo(y, x)
                st.steps.append(Step(mirror, TameCertificate((affine_from_endo(mirror),), mirror), "II.mirror"))
                st.cur = mirror.apply(st.cur)
                a, b, c, *_ = st.coeffs()
            target = _case_ii1(st) if not b else _case_ii2(st)
        else:
            target = _case_iii(st)
    # the mirror step carries the label of the sub-case it leads into
    steps = tuple(Step(s.g, s.certificate, st.case) if s.label == "II.mirror" else s for s in st.steps)
    inv = builtin(target)
    sym = symmetry_type(st.cur, inv)
    if sym is SymmetryType.Neither:
        raise InternalError(f"witness {st.cur} is not symmetric under {target}")
    source = -p if "negate" in st.path else p
    return SymmetrizationTranscript(st.case, tuple(st.path), steps, inv, st.cur, sym, source,
                                    ("gamma",) if "negate" in st.path else ())


def symmetrize_deg2(f: Endo, use_q: bool = False) -> SymmetrizationTranscript:
    """Case-table symmetrization of f(x) (or of f(y) when use_q is set).

    With use_q, alpha is composed on the right so that (f alpha)(x) = f(y).
    In real mode with a, c < 0 the transcript acts on -p, that is on
    (f gamma)(x).
    """
    if use_q:
        f = compose(f, builtin("alpha").endo)
    if f.p.degree() > 2:
        raise DegreeTooHigh(f"deg p = {f.p.degree()} > 2")
    if not f.is_keller():
        raise NotKeller(f"Jacobian of ({f.p}, {f.q}) is not a nonzero constant")
    t = symmetrize_poly(f.p, f.tower.real)
    right = (("alpha",) if use_q else ()) + t.right
    return SymmetrizationTranscript(t.case, t.path, t.steps, t.target, t.witness, t.symmetry, t.source,
                                    right, f)


@dataclass(frozen=True)
class ParityHit:
    axis: tuple
    involution: str
    type: SymmetryType


def parity_classify(f) -> list[ParityHit]:
    """All (involution, type) pairs given by the parity of f(x) on each axis.

    Accepts an Endo (Keller is required) or a bare polynomial.  Raises
    NotApplicable when the parity is mixed on both axes.
    """
    if isinstance(f, Endo):
        if not f.is_keller():
            raise NotKeller("parity classification needs a Keller map")
        p = f.p
    else:
        p = f
    hits = []
    for axis, name in (((0, 1), "beta"), ((1, 0), "gamma")):
        prof = p.parity_profile(axis)
        if prof is Parity.MIXED:
            continue
        typ = SymmetryType.Symmetric if prof is Parity.ALL_EVEN else SymmetryType.Skew
        if symmetry_type(p, name) is not typ:
            raise InternalError(f"parity says {typ.value} under {name} but substitution disagrees")
        hits.append(ParityHit(axis, name, typ))
    if not hits:
        raise NotApplicable(f"{p} has mixed parity on both axes")
    return hits


@dataclass(frozen=True)
class SymmetryInverse:
    inverse: Endo
    certificate: TameCertificate  # certificate of the inverse
    route: str  # how the symmetric image was inverted: degree1, elementary or decompose
    transcript: SymmetrizationTranscript | None


def _right_endo(names) -> Endo:
    return compose_all([builtin(n).endo for n in names])


def invert_via_symmetry(f: Endo, transcript: SymmetrizationTranscript | None = None) -> SymmetryInverse:
    """Invert f through a symmetric image of x.

    The transcript (case table for deg p <= 2, else the parity criterion)
    gives G = g_l ... g_1 and right factors R with (G f R)(x) symmetric.
    F = G f R is inverted directly from the shape of its first image, then
    f^-1 = R F^-1 G.  Both h f = id and f h = id are checked along factor
    chains.
    """
    if transcript is None:
        if f.p.degree() <= 2:
            transcript = symmetrize_deg2(f)
        else:
            hit = parity_classify(f)[0]
            transcript = SymmetrizationTranscript("parity", ("parity",), (), builtin(hit.involution), f.p,
                                                  hit.type, f.p, (), f)
    right = transcript.right
    fr = compose(f, _right_endo(right)) if right else f
    g_chain = [affine_from_endo(s.g) for s in reversed(transcript.steps)]  # G = g_l ... g_1
    big_f = compose(recompose(g_chain), fr) if g_chain else fr
    if big_f.p != transcript.witness:
        raise InternalError("transcript witness does not match (G f R)(x)")
    w = big_f.p
    t = big_f.tower
    x, y = Poly.x(t), Poly.y(t)
    pre: list = []  # extra left moves k with k F normalized
    if w.degree() == 1:
        route = "degree1"
    elif w.coeff(0, 1) and (w - y * w.coeff(0, 1)).variables() <= {"x"}:
        # w = h(x) + e*y; k = (y, (x - h(y))/e) gives (k F)(x) = x
        route = "elementary"
        e = w.coeff(0, 1)
        h = w - y * e
        pre = [Endo(y, (x - h.subs(y, x)) / e)]
    elif w.coeff(1, 0) and (w - x * w.coeff(1, 0)).variables() <= {"y"}:
        route = "elementary"
        e = w.coeff(1, 0)
        h = w - x * e
        pre = [Endo((x - h) / e, y)]
    else:
        route = "decompose"
    if route == "decompose":
        f_inv_cert = invert_certificate(decompose(big_f))
        inv_chain = list(f_inv_cert.factors)
    else:
        k_chain = []
        kf = big_f
        for k in pre:
            kf = compose(k, kf)
            k_chain.append(k)
        d1 = degree1_reduce(kf)
        # F = k^-1 (k F), so F^-1 = (k F)^-1 k
        inv_chain = list(d1.certificate.factors)
        for k in k_chain:
            inv_chain.extend(decompose(k).factors)
    r_chain = [affine_from_endo(builtin(n).endo) for n in right]
    chain = r_chain + inv_chain + g_chain
    inverse = recompose(chain)
    one_x, one_y = Poly.x(), Poly.y()
    if chain_apply(chain, f.p) != one_x or chain_apply(chain, f.q) != one_y:
        raise InternalError("inverse via symmetry fails h f = id")
    # f = G^-1 F R^-1; R consists of involutions
    f_chain = [fac.inverse() for fac in reversed(g_chain)] + [fac.inverse() for fac in reversed(inv_chain)] \
        + list(reversed(r_chain))
    if chain_apply(f_chain, inverse.p) != one_x or chain_apply(f_chain, inverse.q) != one_y:
        raise InternalError("inverse via symmetry fails f h = id")
    return SymmetryInverse(inverse, TameCertificate(tuple(chain), inverse), route, transcript)

