"""Shared helpers: a sympy oracle and hypothesis strategies."""
import re
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from planeauto.expr import parse_poly
from planeauto.field import QQ
from planeauto.poly import Poly

X, Y = sympy.symbols("x y")


def sym(p) -> sympy.Expr:
    """Independent sympy image of a Poly or FieldElement, read from its text form."""
    text = re.sub(r"\bi\b", "I", str(p)).replace("^", "**")
    return sympy.expand(sympy.sympify(text, locals={"x": X, "y": Y}))


def from_sym(expr, tower=QQ) -> Poly:
    text = str(sympy.expand(expr)).replace("**", "^")
    text = re.sub(r"\bI\b", "i", text)
    return parse_poly(text, tower)


def sym_jacobian(p, q):
    return sympy.expand(sympy.diff(p, X) * sympy.diff(q, Y) - sympy.diff(p, Y) * sympy.diff(q, X))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5)
nonzero_rationals = rationals.filter(lambda r: r != 0)


@st.composite
def polys(draw, max_degree=3, max_terms=5):
    mono = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)).filter(
        lambda m: m[0] + m[1] <= max_degree)
    terms = draw(st.dictionaries(mono, rationals, max_size=max_terms))
    return Poly.from_dict({k: Fraction(v) for k, v in terms.items()}, QQ)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
