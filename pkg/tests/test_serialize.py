import json

import pytest

from planeauto.endo import Endo
from planeauto.engines import symmetrize_poly
from planeauto.expr import parse_poly as P
from planeauto.harness import FIELD_MODES, GenSpec, random_tame
from planeauto.serialize import (
    certificate_from_json, certificate_to_json, dumps, tower_from_json, tower_to_json, transcript_to_json,
)
from planeauto.tame import decompose


@pytest.mark.parametrize("mode", FIELD_MODES)
@pytest.mark.parametrize("seed", range(5))
def test_certificate_round_trip(mode, seed):
    _, cert = random_tame(GenSpec(seed, factor_count=4, field_mode=mode, label="ser"))
    text = dumps(certificate_to_json(cert))
    back = certificate_from_json(json.loads(text))
    assert back == cert
    assert back.verify()
    assert dumps(certificate_to_json(back)) == text


def test_decompose_output_round_trip():
    cert = decompose(Endo(P("x + y^3"), P("y")))
    assert certificate_from_json(json.loads(dumps(certificate_to_json(cert)))) == cert


def test_tower_round_trip():
    t = P("sqrt(2)*i*x + sqrt(3)").tower
    assert tower_from_json(tower_to_json(t)) == t


def test_transcript_fields():
    doc = transcript_to_json(symmetrize_poly(P("x^2 + x*y + y^2 + x")))
    assert doc["case"] == "III(2).t"
    assert doc["target"] == "alpha"
    assert doc["symmetry"] == "Symmetric"
    assert doc["witness"] == "x^2 + y^2 - 1/3"
    assert doc["tower"]["radicands"] == ["3"]
    assert set(doc) == {"tower", "case", "path", "right", "steps", "target", "symmetry", "witness"}
