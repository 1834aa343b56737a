"""JSON forms of towers, maps, certificates and transcripts.

Every coefficient is written in the textual syntax of :mod:`planeauto.expr`
and every document that carries coefficients also records its tower, so
reading a document back reproduces the same tower and the same values.
"""
from __future__ import annotations

import json

from .endo import Endo
from .field import FieldElement, FieldTower, join
from .expr import parse_constant, parse_poly
from .poly import Poly
from .tame import Affine, ElementaryX, ElementaryY, TameCertificate


def tower_to_json(t: FieldTower) -> dict:
    return {"radicands": t.radicand_strings(), "real": t.real}


def tower_from_json(obj: dict) -> FieldTower:
    t = FieldTower((), bool(obj.get("real", False)))
    for src in obj.get("radicands", []):
        d = parse_constant(src, t)
        if d.tower != t:
            raise ValueError(f"radicand {src!r} refers to a generator that is not yet adjoined")
        t = FieldTower(t.radicands + (tuple(d.coords),), t.real)
    return t


def endo_to_json(f: Endo) -> dict:
    return {"p": str(f.p), "q": str(f.q)}


def endo_from_json(obj: dict, tower: FieldTower) -> Endo:
    return Endo(parse_poly(obj["p"], tower).in_tower(tower), parse_poly(obj["q"], tower).in_tower(tower))


def factor_tower(fac) -> FieldTower:
    if isinstance(fac, Affine):
        return fac.tower
    return join(fac.h.tower, fac.scale.tower)


def factor_to_json(fac) -> dict:
    if isinstance(fac, Affine):
        (a, b), (c, d) = fac.matrix
        return {"kind": "Affine", "matrix": [[str(a), str(b)], [str(c), str(d)]],
                "translation": [str(v) for v in fac.translation]}
    return {"kind": fac.kind, "h": str(fac.h), "scale": str(fac.scale)}


def factor_from_json(obj: dict, tower: FieldTower):
    kind = obj["kind"]
    const = lambda s: parse_constant(s, tower).in_tower(tower)
    if kind == "Affine":
        (a, b), (c, d) = obj["matrix"]
        return Affine(((const(a), const(b)), (const(c), const(d))), tuple(const(v) for v in obj["translation"]))
    h = parse_poly(obj["h"], tower).in_tower(tower)
    if kind == "ElementaryX":
        return ElementaryX(h, const(obj["scale"]))
    if kind == "ElementaryY":
        return ElementaryY(h, const(obj["scale"]))
    raise ValueError(f"unknown factor kind {kind!r}")


def certificate_tower(c: TameCertificate) -> FieldTower:
    t = c.subject.tower
    for fac in c.factors:
        t = join(t, factor_tower(fac))
    return t


def certificate_to_json(c: TameCertificate) -> dict:
    return {
        "tower": tower_to_json(certificate_tower(c)),
        "subject": endo_to_json(c.subject),
        "factors": [factor_to_json(f) for f in c.factors],
    }


def certificate_from_json(obj: dict) -> TameCertificate:
    t = tower_from_json(obj["tower"])
    return TameCertificate(tuple(factor_from_json(f, t) for f in obj["factors"]),
                           endo_from_json(obj["subject"], t))


def transcript_to_json(tr) -> dict:
    t = tr.witness.tower
    for s in tr.steps:
        t = join(t, s.g.tower)
    return {
        "tower": tower_to_json(t),
        "case": tr.case,
        "path": list(tr.path),
        "right": list(tr.right),
        "steps": [{"label": s.label, "g": endo_to_json(s.g), "certificate": certificate_to_json(s.certificate)}
                  for s in tr.steps],
        "target": tr.target.name,
        "symmetry": tr.symmetry.value,
        "witness": str(tr.witness),
    }


def elt_to_str(e: FieldElement) -> str:
    return str(e)


def poly_to_str(p: Poly) -> str:
    return str(p)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
