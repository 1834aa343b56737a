import itertools
import time

import pytest
import sympy

from planeauto.endo import Endo, compose, compose_all
from planeauto.engines import (
    degree1_reduce, druzkowski2, invert_via_symmetry, parity_classify, symmetrize_deg2, symmetrize_poly,
    symmetrize_search, wang_special,
)
from planeauto.engines.search import moves
from planeauto.errors import (
    DegreeMismatch, DegreeTooHigh, NotApplicable, NotFound, NotKeller, RealModeUnsupported, Rejected,
)
from planeauto.expr import parse_poly as P
from planeauto.field import FieldTower
from planeauto.harness import GenSpec, random_keller_with_quadratic_x
from planeauto.involutions import ConjClass, SymmetryType, builtin, symmetry_type
from planeauto.poly import Parity, Poly
from planeauto.tame import decompose, invert

from conftest import X, Y, sym_jacobian


def E(p: str, q: str) -> Endo:
    return Endo(P(p), P(q))


def right_map(t) -> Endo:
    return compose_all([Endo.identity(t.witness.tower)] + [builtin(n).endo for n in t.right])


# -- degree 1 --------------------------------------------------------------

def test_degree1_normalizes_linear_x():
    f = E("2*x + 5*y + 7", "y")
    r = degree1_reduce(f)
    assert r.normalized.p == P("x + 7")
    assert compose(r.inverse, f) == Endo.identity()


def test_degree1_elementary():
    r = degree1_reduce(E("x", "y + x^5"))
    assert r.inverse == E("x", "y - x^5")


def test_degree1_example():
    r = degree1_reduce(E("x + 1", "3*y + x^2"))
    assert r.inverse == E("x - 1", "(y - (x - 1)^2)/3")


def test_degree1_swaps_when_y_image_is_linear():
    f = E("y + x^3", "x + 2")
    r = degree1_reduce(f)
    assert r.swapped
    assert compose(f, r.inverse) == Endo.identity()


def test_degree1_errors():
    with pytest.raises(DegreeMismatch):
        degree1_reduce(E("x^2 + y", "y^2 + x"))
    with pytest.raises(NotKeller):
        degree1_reduce(E("x", "x*y"))


# -- special Wang case -----------------------------------------------------

def test_wang_r_linear():
    r = wang_special(E("x + y^2", "x + y + y^2"))
    assert r.branch == "R-linear"
    assert r.lam == 1 and r.mu == 1
    assert r.r == P("y")
    assert r.inverse == E("x - (y - x)^2", "y - x")


def test_wang_affine_passthrough():
    r = wang_special(E("2*x + y", "x - y + 1"))
    assert r.branch == "degree1"
    assert r.inverse == E("(x + y - 1)/3", "(x - 2*y + 2)/3")


def test_wang_mu_zero():
    # f(y) of degree 1 means mu = 0; handled by the degree one reduction
    r = wang_special(E("x + y^2", "y + 3"))
    assert r.branch == "degree1"
    assert r.inverse == E("x - (y - 3)^2", "y - 3")


def test_wang_errors():
    with pytest.raises(DegreeTooHigh):
        wang_special(E("x + y^3", "y"))
    with pytest.raises(NotKeller):
        wang_special(E("x^2", "y"))


@pytest.mark.parametrize("seed", range(30))
def test_wang_matches_decompose(seed):
    f = random_keller_with_quadratic_x(GenSpec(seed, factor_count=2 + seed % 3, max_elem_degree=2, label="wang"))
    if f.q.degree() > 2:
        return
    assert wang_special(f).inverse == invert(decompose(f))


# -- case table ------------------------------------------------------------

def test_case_i2_example():
    t = symmetrize_poly(P("2*x*y + 3*x"))
    assert t.case == "I(2)"
    assert [s.g for s in t.steps] == [E("x", "y/2 - 3/2")]
    assert t.witness == P("x*y")
    assert t.target.name == "alpha"


def test_case_i1_already_symmetric():
    t = symmetrize_poly(P("5*x*y + 4"))
    assert t.case == "I(1)"
    assert t.steps == ()
    assert t.witness == P("5*x*y + 4")


def test_case_iii2_example():
    t = symmetrize_poly(P("x^2 + x*y + y^2 + x"))
    assert t.case == "III(2).t"
    assert t.witness == P("x^2 + y^2 - 1/3")
    assert symmetry_type(t.witness, t.target) is SymmetryType.Symmetric
    assert t.check()


# one representative per label, with the expected involution
LABEL_EXAMPLES = {
    "I(1)": ("3*x*y + 11", "alpha"),
    "I(2)": ("3*x*y + 5*x + 11", "alpha"),
    "I(3)": ("3*x*y + 7*y", "alpha"),
    "I(4)": ("3*x*y + 5*x + 7*y + 11", "alpha"),
    "II(1).d0e0": ("2*y^2 + 11", None),
    "II(1).e0": ("2*y^2 + 7*y", None),
    "II(1).d0": ("2*y^2 + 5*x", None),
    "II(1).de": ("2*y^2 + 5*x + 7*y + 11", None),
    "II(2)": ("3*x*y + 2*y^2 + 5*x", None),
    "III(1)": ("x^2 + 2*y^2 + 5*x", None),
    "III(2).t": ("x^2 + 3*x*y + 2*y^2 + 7*y", None),
    "III(2).t0.B+2": ("x^2 + 2*x*y + y^2 + x", None),
    "III(2).t0.B-2": ("x^2 - 2*x*y + y^2 + x", None),
}


@pytest.mark.parametrize("label", sorted(LABEL_EXAMPLES))
def test_every_label_reaches_a_symmetric_witness(label):
    src, target = LABEL_EXAMPLES[label]
    t = symmetrize_poly(P(src))
    assert t.case == label
    assert t.check()
    assert t.target.conj_class is ConjClass.Cminus1
    assert t.symmetry is not SymmetryType.Neither
    if target:
        assert t.target.name == target
    for s in t.steps:
        assert s.certificate.verify()
        assert s.certificate.subject == s.g


def test_mirror_case_prepends_alpha():
    t = symmetrize_poly(P("3*x*y + 2*y^2 + 5*x"))
    assert t.case == "II(2)"
    assert t.mirrored
    assert t.steps[0].g == E("y", "x")
    assert t.check()
    assert not symmetrize_poly(P("2*x^2 + 3*x*y + 5*y")).mirrored


def test_first_option_linear():
    for src, label in [("3*x + 2", "First.I"), ("7*y", "First.II"), ("x + y", "First.III")]:
        t = symmetrize_poly(P(src))
        assert t.case == label
        assert t.check()


def test_every_pattern_gets_exactly_one_label():
    mons = dict(a=(2, 0), b=(1, 1), c=(0, 2), d=(1, 0), e=(0, 1), r=(0, 0))
    vals = dict(a=1, b=3, c=2, d=5, e=7, r=11)
    labels = set()
    for bits in itertools.product([0, 1], repeat=6):
        pat = [k for k, bit in zip("abcder", bits) if bit]
        if not set(pat) & set("abc"):
            continue
        t = symmetrize_poly(Poly.from_dict({mons[k]: vals[k] for k in pat}))
        assert t.check()
        labels.add(t.case)
    assert len(labels) == 11


def test_real_mode():
    real = FieldTower((), True)
    # both squares negative: work with -p
    t = symmetrize_poly(P("-x^2 - 2*y^2 + x", real))
    assert t.case == "III(1)"
    assert t.negated
    assert t.check()
    with pytest.raises(RealModeUnsupported):
        symmetrize_poly(P("x^2 - 2*y^2", real))
    with pytest.raises(RealModeUnsupported):
        symmetrize_poly(P("3*x*y + 2*y^2", real))


def test_symmetrize_deg2_requires_keller():
    with pytest.raises(NotKeller):
        symmetrize_deg2(E("2*x*y + 3*x + 1", "y"))


def test_symmetrize_deg2_use_q():
    f = E("x - y", "y + (x - y)^2")
    t = symmetrize_deg2(f, use_q=True)
    assert t.source == f.q or t.right
    assert t.check()


# -- inversion through the symmetric image ---------------------------------

def test_invert_via_symmetry_example():
    r = invert_via_symmetry(E("x + y^2", "x + y + y^2"))
    assert r.inverse == E("x - (y - x)^2", "y - x")


def test_invert_via_symmetry_affine():
    r = invert_via_symmetry(E("2*x + y + 1", "x + y"))
    assert r.inverse == E("x - y - 1", "-x + 2*y + 1")


@pytest.mark.parametrize("seed", range(40))
def test_invert_via_symmetry_matches_decompose(seed):
    f = random_keller_with_quadratic_x(GenSpec(seed, factor_count=2 + seed % 3, max_elem_degree=2, label="sym"))
    t = symmetrize_deg2(f)
    assert t.check()
    g = t.product()
    assert compose(g, compose(f, right_map(t))).p == t.witness
    r = invert_via_symmetry(f, t)
    assert r.inverse == invert(decompose(f))
    assert r.certificate.verify()


# -- parity ------------------------------------------------------------------

def test_parity_all_even():
    hits = parity_classify(P("x^2 + y^2"))
    assert {(h.involution, h.type) for h in hits} == {
        ("beta", SymmetryType.Symmetric), ("gamma", SymmetryType.Symmetric)}


def test_parity_all_odd():
    hits = parity_classify(P("x*y"))
    assert {(h.involution, h.type) for h in hits} == {("beta", SymmetryType.Skew), ("gamma", SymmetryType.Skew)}


def test_parity_not_applicable():
    with pytest.raises(NotApplicable):
        parity_classify(P("x + y^3"))


@pytest.mark.parametrize("src", ["x + y^4", "x + 3*y^2 - y^4 + 1", "x*y^2 + y^4", "x^3*y + x*y + y", "x^2*y^3 - y"])
def test_parity_hits_confirmed_by_substitution(src):
    p = P(src)
    for h in parity_classify(p):
        image = builtin(h.involution).endo.apply(p)
        assert image == (p if h.type is SymmetryType.Symmetric else -p)
        profile = p.parity_profile(h.axis)
        assert profile is (Parity.ALL_EVEN if h.type is SymmetryType.Symmetric else Parity.ALL_ODD)


@pytest.mark.parametrize("p,q", [("x + y^4", "y"), ("x + y^2 + y^4", "y"), ("y", "x + y^2")])
def test_parity_route_inverts(p, q):
    f = E(p, q)
    r = invert_via_symmetry(f)
    assert compose(r.inverse, f) == Endo.identity()
    assert compose(f, r.inverse) == Endo.identity()
    assert r.inverse == invert(decompose(f))


# -- bounded search ----------------------------------------------------------

def test_search_cubic_example():
    start = time.perf_counter()
    r = symmetrize_search(P("x + y^3"), 1, 3, 1)
    assert time.perf_counter() - start < 1.0
    assert r.moves == (E("x - y^3", "y"),)
    assert r.witness == P("x")
    assert (r.involution, r.type) == ("beta", SymmetryType.Symmetric)


def test_search_already_symmetric():
    r = symmetrize_search(P("x*y"), 1, 3, 1)
    assert r.moves == ()


def test_search_degree_cap():
    with pytest.raises(NotFound):
        symmetrize_search(P("x + y^3"), 1, 2, 1)


def test_move_basis_is_invertible():
    for g in moves(2, 1):
        assert g.is_keller()


# -- cubic-linear maps ----------------------------------------------------------

def test_druzkowski_examples():
    r = druzkowski2(P("y"), Poly.zero())
    assert r.map == E("x + y^3", "y")
    assert r.inverse == E("x - y^3", "y")
    r = druzkowski2(Poly.zero(), Poly.zero())
    assert r.inverse == Endo.identity()
    with pytest.raises(Rejected) as exc:
        druzkowski2(P("y"), P("x"))
    assert "-9*x^2*y^2 + 1" in str(exc.value)


def test_druzkowski_cross_check_with_sympy():
    import numpy as np
    rng = np.random.default_rng(2)
    accepted = 0
    for k in range(100):
        if k % 3 == 0:
            # dependent pair l2 = c*l1 with the Jacobian condition satisfied by construction
            u, v = (int(c) for c in rng.integers(-5, 6, 2))
            c = int(rng.integers(-5, 6))
            # (x + (u x + v y)^3, y + c^3 (u x + v y)^3) is Keller iff u + c^3 v = 0
            v = 0 if c == 0 else v
            u = -c ** 3 * v if c else 0
            pair = ((u, v), (c * u, c * v))
        else:
            pair = tuple(tuple(int(c) for c in rng.integers(-5, 6, 2)) for _ in range(2))
        (u1, v1), (u2, v2) = pair
        l1, l2 = u1 * X + v1 * Y, u2 * X + v2 * Y
        expected = sym_jacobian(X + l1 ** 3, Y + l2 ** 3) == 1
        try:
            r = druzkowski2((u1, v1), (u2, v2))
        except Rejected:
            assert not expected
            continue
        assert expected
        accepted += 1
        ident = Endo.identity(r.map.tower)
        assert compose(r.inverse, r.map) == ident
        assert compose(r.map, r.inverse) == ident
    assert accepted > 10
