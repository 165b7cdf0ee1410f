from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from gmk import serialize
from gmk.cyclotomic import CycloScalar
from gmk.iteration import GradedNearly, UnivExponent
from gmk.iwasawa import binom_wprime, build_un
from gmk.nearly import FormWeight, NearlyForm, nabla
from gmk.padic import PadicScalar
from gmk.qexp import QExpansion
from gmk.triple import DeltaKernelSpec, TripleEigenData, TripleWeights
from gmk.unramified import UnramifiedRing
from gmk.weights import VectorChar, WeightChar, eval_univ_char

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(obj, schema_file: str):
    schema = json.loads((SCHEMAS / schema_file).read_text())
    Draft202012Validator.check_schema(schema)
    Draft202012Validator(schema, registry=REGISTRY).validate(obj)


R = UnramifiedRing(5, 2, prec=8)
SCALARS = [
    7,
    Fraction(-7, 4),
    PadicScalar.from_rational(Fraction(18, 5), 3, 6),
    PadicScalar.exact_zero(5),
    PadicScalar.bigoh(7, 3),
    CycloScalar(3, 2, [1, 0, Fraction(1, 3), 0, 0, 2]),
    CycloScalar(3, 1, [PadicScalar.from_rational(4, 3, 5), 0]),
    R.element([2, PadicScalar.from_rational(3, 5, 8)]),
    build_un(3, 2, 9),
    binom_wprime(5, 1, 6, 3),
    eval_univ_char(3, 1, 4, prec=4),
]


@pytest.mark.parametrize("x", SCALARS, ids=lambda x: type(x).__name__)
def test_scalar_round_trip(x):
    d = serialize.dump(x)
    validate(d, "scalar.json")
    y = serialize.load(json.loads(json.dumps(d)))
    assert type(y) is type(x) and y == x
    assert serialize.dumps(y) == serialize.dumps(x)


def test_iwasawa_json_fields():
    s = build_un(3, 2, 9)
    d = serialize.dump(s)
    assert d["trunc"] == 9 and len(d["floors"]) == 10
    assert d["coeffs"][0] == {"deg": 1, "c": "1"}
    assert d["floors"][3] <= -1


def test_padic_precision_survives():
    x = PadicScalar.from_rational(Fraction(1, 9), 3, 4)
    y = serialize.load(serialize.dump(x))
    assert (y.val, y.unit, y.prec) == (x.val, x.unit, x.prec)


F = NearlyForm(FormWeight.classical(3, 2), {(0, 1): Fraction(1, 2), (1, 4): PadicScalar.from_rational(5, 3, 6)}, "V", 2)
OBJECTS = [
    (QExpansion(3, 10, {1: 2, 4: Fraction(-1, 3)}), "qexp.json"),
    (F, "nearly.json"),
    (NearlyForm(FormWeight.universal(3, 1, 5, 2), {(0, 1): build_un(3, 1, 5)}), "nearly.json"),
    (GradedNearly(FormWeight.classical(3, 2), {0: F, 1: nabla(F)}, "V", 2), "graded.json"),
    (UnivExponent(5, 1, 2, 8, 10), "univ_exponent.json"),
    (TripleWeights(2, 4, 8, 1, 2), "triple_weights.json"),
    (TripleEigenData(3, 1, 2, Fraction(1, 3), 4, PadicScalar.from_rational(2, 3, 5), 0, ((2, 2, 2), (2, 2, 4))),
     "eigen.json"),
    (DeltaKernelSpec((VectorChar((1, 0)), VectorChar((0, 1)), VectorChar((2, 3))), (3, 1, 4)), "delta_spec.json"),
    (WeightChar.classical(5, 3, prec=6), "weight_char.json"),
    (WeightChar.finite_order(3, 2, 2), "weight_char.json"),
]


@pytest.mark.parametrize("obj,schema", OBJECTS, ids=lambda x: x if isinstance(x, str) else type(x).__name__)
def test_object_round_trip(obj, schema):
    d = serialize.dump(obj)
    validate(d, schema)
    back = serialize.loads(serialize.dumps(obj))
    assert back == obj
    assert serialize.dumps(back) == serialize.dumps(obj)


def test_legacy_nearly_terms_accepted():
    d = {"type": "nearly", "weight": {"p": 3, "k": 2}, "terms": [[0, 1, "3"]]}
    assert serialize.load(d) == NearlyForm(FormWeight.classical(3, 2), {(0, 1): 3})


def test_schema_errors_name_their_location():
    with pytest.raises(serialize.SchemaError) as err:
        serialize.load({"type": "qexp", "p": 3, "N": 5, "terms": [[1, "x/y"]]})
    assert "terms[0]" in str(err.value)
    with pytest.raises(serialize.SchemaError):
        serialize.load({"type": "qexp", "p": 3})
    with pytest.raises(serialize.SchemaError):
        serialize.load({"type": "mystery"})
    with pytest.raises(serialize.SchemaError):
        serialize.loads("{not json")
    with pytest.raises(serialize.SchemaError):
        serialize.load({"type": "iwasawa", "p": 3, "n": 1, "trunc": 2, "coeffs": [{"deg": 5, "c": "1"}],
                        "pieces": [[0, 0, "inf"]]})
    with pytest.raises(TypeError):
        serialize.dump(True)
