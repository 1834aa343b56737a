"""Command-line interface: ``planeauto <command> [options]``.

Exit codes: 0 success, 1 mathematical negative (e.g. Rejected, NotKeller,
NotApplicable, a conjugation that does not hold), 2 usage or parse error,
3 resource limits and internal errors.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import serialize as ser
from .cmw import alpha_restriction_check, express_in
from .endo import Endo, compose
from .engines.degree_one import degree1_reduce, wang_special
from .engines.druzkowski import druzkowski2
from .engines.search import symmetrize_search
from .engines.symmetrize import invert_via_symmetry, parity_classify, symmetrize_deg2, symmetrize_poly
from .errors import MathematicalNegative, PlaneAutoError
from .expr import ExprError, parse_poly, split_map
from .field import QQ, FieldTower, join
from .harness import FIELD_MODES, GenSpec, random_tame
from .involutions import BUILTIN_NAMES, builtin, classify, verify_conjugation
from .poly import Poly, jacobian
from .tame import decompose, invert_certificate

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Reader:
    """Parses every expression of one invocation into a single growing tower."""

    def __init__(self, real: bool = False):
        self.tower = FieldTower((), real)

    def poly(self, src: str) -> Poly:
        p = parse_poly(src, self.tower)
        self.tower = p.tower
        return p

    def endo(self, p_src: str, q_src: str) -> Endo:
        p = self.poly(p_src)
        q = self.poly(q_src)
        return Endo(p.in_tower(q.tower), q)

    def map(self, src: str) -> Endo:
        if src in BUILTIN_NAMES:
            return builtin(src).endo
        return self.endo(*split_map(src))


def _tower_of(*items) -> FieldTower:
    t = QQ
    for it in items:
        t = join(t, it.tower)
    return t


def _result(command: str, text: str, data: dict, tower: FieldTower | None = None) -> tuple[int, str, dict]:
    doc = {"command": command, "ok": True}
    if tower is not None:
        doc["tower"] = ser.tower_to_json(tower)
    doc.update(data)
    return EXIT_OK, text, doc


def _map_text(f: Endo) -> str:
    return f"x -> {f.p}; y -> {f.q}"


def _cert_text(c) -> str:
    lines = []
    for k, fac in enumerate(c.factors, 1):
        lines.append(f"  {k}. {fac.kind}: {_map_text(fac.endo)}")
    return "\n".join(lines) if lines else "  (identity)"


# -- command handlers ------------------------------------------------------

def cmd_jacobian(a, rd):
    f = rd.endo(a.p, a.q)
    j = jacobian(f.p, f.q)
    return _result("jacobian", str(j), {"jacobian": str(j), "keller": f.is_keller()}, j.tower)


def cmd_compose(a, rd):
    g, f = rd.map(a.g), rd.map(a.f)
    h = compose(g, f)
    return _result("compose", _map_text(h), {"map": ser.endo_to_json(h)}, h.tower)


def cmd_apply(a, rd):
    f = rd.map(a.f)
    r = rd.poly(a.r)
    out = f.apply(r)
    return _result("apply", str(out), {"result": str(out)}, out.tower)


def cmd_decompose(a, rd):
    f = rd.endo(a.p, a.q)
    c = decompose(f)
    doc = ser.certificate_to_json(c)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(ser.dumps(doc) + "\n")
    return _result("decompose", f"{len(c.factors)} factor(s):\n{_cert_text(c)}", {"certificate": doc})


def cmd_invert(a, rd):
    if a.certificate:
        with open(a.certificate, encoding="utf-8") as fh:
            c = ser.certificate_from_json(json.load(fh))
    else:
        if a.p is None or a.q is None:
            raise UsageError("invert needs -p and -q, or --certificate")
        c = decompose(rd.endo(a.p, a.q))
    inv = invert_certificate(c)
    return _result("invert", _map_text(inv.subject),
                   {"inverse": ser.endo_to_json(inv.subject), "certificate": ser.certificate_to_json(inv)},
                   inv.subject.tower)


def cmd_classify(a, rd):
    if a.name:
        s = builtin(a.name).endo
    else:
        if a.p is None or a.q is None:
            raise UsageError("classify-involution needs --name or -p and -q")
        s = rd.endo(a.p, a.q)
    cls = classify(s)
    return _result("classify-involution", cls.value, {"class": cls.value, "map": ser.endo_to_json(s)}, s.tower)


def cmd_verify_conjugation(a, rd):
    g, s, t = rd.map(a.g), rd.map(a.s), rd.map(a.t)
    cert = None
    if a.certificate:
        with open(a.certificate, encoding="utf-8") as fh:
            cert = ser.certificate_from_json(json.load(fh))
    ok = verify_conjugation(g, s, t, cert)
    doc = {"command": "verify-conjugation", "ok": ok, "holds": ok}
    return (EXIT_OK if ok else EXIT_NEGATIVE), ("true" if ok else "false"), doc


def cmd_cmw(a, rd):
    big_a = rd.poly(a.A)
    r = rd.poly(a.R)
    h = express_in(big_a.in_tower(r.tower), r)
    return _result("cmw-express", str(h), {"H": str(h), "coefficients": [str(c) for c in h.coeffs]}, r.tower)


def cmd_alpha(a, rd):
    f = rd.endo(a.p, a.q)
    res = alpha_restriction_check(f, a.mode)
    text = (f"mode {res.mode.value}\nH(t) = {res.h}\nalpha(p) = {res.alpha_p}\nalpha(q) = {res.alpha_q}\n"
            f"formal Jacobian = {res.formal_jacobian}")
    return _result("alpha-restriction", text, {
        "mode": res.mode.value, "H": str(res.h), "alpha_p": str(res.alpha_p), "alpha_q": str(res.alpha_q),
        "formal_jacobian": str(res.formal_jacobian)}, f.tower)


def cmd_degree1(a, rd):
    f = rd.endo(a.p, a.q)
    r = degree1_reduce(f)
    text = (f"normalizer: {_map_text(r.normalizer)}\nnormalized: {_map_text(r.normalized)}\n"
            f"inverse: {_map_text(r.inverse)}")
    return _result("degree1", text, {
        "swapped": r.swapped, "normalizer": ser.endo_to_json(r.normalizer),
        "normalized": ser.endo_to_json(r.normalized), "e": str(r.e), "a": str(r.a), "H": str(r.h),
        "inverse": ser.endo_to_json(r.inverse), "certificate": ser.certificate_to_json(r.certificate)},
        r.inverse.tower)


def cmd_wang(a, rd):
    f = rd.endo(a.p, a.q)
    r = wang_special(f)
    data = {"branch": r.branch, "inverse": ser.endo_to_json(r.inverse),
            "certificate": ser.certificate_to_json(r.certificate)}
    text = f"branch: {r.branch}\n"
    if r.g is not None:
        data.update({"lambda": str(r.lam), "mu": str(r.mu), "R": str(r.r), "R_tilde": str(r.r_tilde),
                     "g": ser.endo_to_json(r.g)})
        text += f"lambda = {r.lam}, mu = {r.mu}, R = {r.r}\ng: {_map_text(r.g)}\n"
    text += f"inverse: {_map_text(r.inverse)}"
    return _result("wang", text, data, r.inverse.tower)


def _transcript_text(t) -> str:
    lines = [f"case {t.case}" + (f" (path {' > '.join(t.path)})" if len(t.path) > 1 else "")]
    if t.right:
        lines.append("right factors: " + ", ".join(t.right))
    for k, s in enumerate(t.steps, 1):
        lines.append(f"  g{k} [{s.label}]: {_map_text(s.g)}")
    lines.append(f"witness: {t.witness}")
    lines.append(f"{t.symmetry.value} under {t.target.name}")
    return "\n".join(lines)


def cmd_symmetrize(a, rd):
    if a.q is None:
        if a.use_q:
            raise UsageError("--use-q needs -q")
        p = rd.poly(a.p)
        t = symmetrize_poly(p, a.real or None)
        data = {"keller_checked": False}
    else:
        f = rd.endo(a.p, a.q)
        t = symmetrize_deg2(f, use_q=a.use_q)
        data = {"keller_checked": True}
    data["transcript"] = ser.transcript_to_json(t)
    if a.invert and a.q is not None:
        inv = invert_via_symmetry(f, t)
        data["inverse"] = ser.endo_to_json(inv.inverse)
        data["inverse_route"] = inv.route
    text = _transcript_text(t)
    if "inverse" in data:
        text += f"\ninverse: {_map_text(inv.inverse)}"
    return _result("symmetrize", text, data)


def cmd_parity(a, rd):
    if a.q is None:
        target = rd.poly(a.p)
    else:
        target = rd.endo(a.p, a.q)
    hits = parity_classify(target)
    text = "\n".join(f"{h.type.value} under {h.involution} (axis {h.axis[0]},{h.axis[1]})" for h in hits)
    return _result("parity", text, {"hits": [
        {"axis": list(h.axis), "involution": h.involution, "type": h.type.value} for h in hits]})


def cmd_search(a, rd):
    big_a = rd.poly(a.A)
    r = symmetrize_search(big_a, a.depth, a.degree_cap, a.height_cap, a.node_cap)
    text = "\n".join(f"  g{k}: {_map_text(g)}" for k, g in enumerate(r.moves, 1)) or "  (no moves)"
    text += f"\nwitness: {r.witness}\n{r.type.value} under {r.involution}"
    return _result("search-symmetrize", text, {
        "moves": [ser.endo_to_json(g) for g in r.moves], "witness": str(r.witness),
        "involution": r.involution, "type": r.type.value, "nodes": r.nodes}, r.witness.tower)


def cmd_druzkowski(a, rd):
    l1, l2 = rd.poly(a.l1), rd.poly(a.l2)
    r = druzkowski2(l1.in_tower(l2.tower), l2)
    text = f"map: {_map_text(r.map)}\ninverse: {_map_text(r.inverse)}"
    return _result("druzkowski", text, {
        "map": ser.endo_to_json(r.map), "inverse": ser.endo_to_json(r.inverse),
        "mu": None if r.mu is None else str(r.mu),
        "conjugator": None if r.conjugator is None else ser.endo_to_json(r.conjugator)}, r.map.tower)


def cmd_random_tame(a, rd):
    spec = GenSpec(a.seed, a.factors, a.max_elem_degree, a.height, a.field, a.label)
    f, c = random_tame(spec)
    return _result("random-tame", _map_text(f), {
        "spec": {"seed": spec.seed, "factor_count": spec.factor_count, "max_elem_degree": spec.max_elem_degree,
                 "coeff_height": spec.coeff_height, "field_mode": spec.field_mode, "label": spec.label},
        "map": ser.endo_to_json(f), "certificate": ser.certificate_to_json(c)})


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--real", action="store_true", help="only adjoin real square roots")

    parser = argparse.ArgumentParser(prog="planeauto", description="Exact workbench for plane polynomial maps.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, handler, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(handler=handler)
        return sp

    def pq(sp, required=True):
        sp.add_argument("-p", required=required, help="image of x")
        sp.add_argument("-q", required=required, help="image of y")

    pq(add("jacobian", cmd_jacobian, "Jacobian determinant of (p, q)"))
    sp = add("compose", cmd_compose, "the map g f, with (g f)(x) = g(f(x))")
    sp.add_argument("--g", required=True, help="'x -> P; y -> Q', 'P; Q' or a builtin involution name")
    sp.add_argument("--f", required=True)
    sp = add("apply", cmd_apply, "substitute x -> f(x), y -> f(y) in r")
    sp.add_argument("--f", required=True)
    sp.add_argument("-r", required=True)
    sp = add("decompose", cmd_decompose, "tame decomposition certificate")
    pq(sp)
    sp.add_argument("--out", help="write the certificate JSON to this file")
    sp = add("invert", cmd_invert, "inverse map, from (p, q) or a certificate file")
    pq(sp, required=False)
    sp.add_argument("--certificate")
    sp = add("classify-involution", cmd_classify, "conjugacy class of an involution")
    pq(sp, required=False)
    sp.add_argument("--name", choices=BUILTIN_NAMES)
    sp = add("verify-conjugation", cmd_verify_conjugation, "check t = g^-1 s g")
    sp.add_argument("--g", required=True)
    sp.add_argument("--s", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--certificate", help="certificate of g")
    sp = add("cmw-express", cmd_cmw, "write R as H(A) when Jac(A, R) = 0")
    sp.add_argument("-A", required=True)
    sp.add_argument("-R", required=True)
    sp = add("alpha-restriction", cmd_alpha, "express alpha(p), alpha(q) in k[p, q]")
    pq(sp)
    sp.add_argument("--mode", choices=("SymmetricP", "SkewP"))
    pq(add("degree1", cmd_degree1, "invert a Keller map with a coordinate of degree 1"))
    pq(add("wang", cmd_wang, "invert a Keller map with both coordinates of degree <= 2"))
    sp = add("symmetrize", cmd_symmetrize, "case-table symmetrization of p (degree <= 2)")
    sp.add_argument("-p", required=True)
    sp.add_argument("-q", help="Jacobian mate; enables the Keller check")
    sp.add_argument("--use-q", action="store_true", help="symmetrize q instead of p")
    sp.add_argument("--invert", action="store_true", help="also invert the map via the symmetric image")
    sp = add("parity", cmd_parity, "parity classification of p")
    sp.add_argument("-p", required=True)
    sp.add_argument("-q")
    sp = add("search-symmetrize", cmd_search, "bounded search for symmetrizing moves")
    sp.add_argument("-A", required=True)
    sp.add_argument("--depth", type=int, default=1)
    sp.add_argument("--degree-cap", type=int, default=3)
    sp.add_argument("--height-cap", type=int, default=1)
    sp.add_argument("--node-cap", type=int, default=200_000)
    sp = add("druzkowski", cmd_druzkowski, "cubic-linear map (x + l1^3, y + l2^3)")
    sp.add_argument("--l1", required=True)
    sp.add_argument("--l2", required=True)
    sp = add("random-tame", cmd_random_tame, "seeded random tame automorphism")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--factors", type=int, default=3)
    sp.add_argument("--max-elem-degree", type=int, default=3)
    sp.add_argument("--height", type=int, default=5)
    sp.add_argument("--field", choices=FIELD_MODES, default="rational")
    sp.add_argument("--label", default="cli")
    return parser


_VALUE_FLAGS = {"-p", "-q", "-r", "-A", "-R", "--g", "--f", "--s", "--t", "--l1", "--l2"}


def _attach_values(argv: list[str]) -> list[str]:
    """Glue expression values to their flag so that '-p -x-y^2' is not read as an option."""
    out = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok in _VALUE_FLAGS and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _attach_values(sys.argv[1:] if argv is None else list(argv))
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rd = _Reader(real=args.real)
    try:
        code, text, doc = args.handler(args, rd)
    except MathematicalNegative as exc:
        name = type(exc).__name__
        if args.json:
            print(ser.dumps({"command": args.command, "ok": False, "negative": name, "message": str(exc)}), file=out)
        else:
            print(f"{name}: {exc}", file=out)
        return EXIT_NEGATIVE
    except (UsageError, ExprError, KeyError, ValueError) as exc:
        print(f"planeauto {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except PlaneAutoError as exc:
        print(f"planeauto {args.command}: {type(exc).__name__}: {exc}", file=err)
        return EXIT_ERROR
    print(ser.dumps(doc) if args.json else text, file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
